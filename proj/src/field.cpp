#include "opal/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opal {

// ---------------------------------------------------------------- primality

static unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
  return static_cast<unsigned long long>((__uint128_t)a * b % m);
}

static unsigned long long powmod_u64(unsigned long long a, unsigned long long e,
                                     unsigned long long m) {
  unsigned long long r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic Miller-Rabin base set for 64-bit inputs
  for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    unsigned long long x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

static long mod_reduce(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

static long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod_reduce(a, p);
  while (nr != 0) {
    long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw Error("element not invertible mod p");
  return mod_reduce(t, p);
}

// ---------------------------------------------------------------- Scalar

static void require_same_field(const Scalar& a, const Scalar& b) {
  if (!a.field() || !b.field() || !a.field()->same(*b.field()))
    throw Error("scalar operation across distinct fields");
}

bool Scalar::is_zero() const {
  for (const auto& c : q_)
    if (c != 0) return false;
  for (long c : p_)
    if (c != 0) return false;
  return true;
}

bool Scalar::operator==(const Scalar& o) const {
  require_same_field(*this, o);
  return q_ == o.q_ && p_ == o.p_;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(*this, o);
  Scalar r = *this;
  for (size_t i = 0; i < r.q_.size(); ++i) r.q_[i] += o.q_[i];
  long p = fld_->characteristic();
  for (size_t i = 0; i < r.p_.size(); ++i) r.p_[i] = mod_reduce(r.p_[i] + o.p_[i], p);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.q_) c = -c;
  long p = fld_ ? fld_->characteristic() : 0;
  for (auto& c : r.p_) c = c == 0 ? 0 : p - c;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(*this, o);
  if (fld_->characteristic() == 0) return Scalar(fld_, fld_->mul_q(q_, o.q_));
  return Scalar(fld_, fld_->mul_p(p_, o.p_));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division by zero");
  if (fld_->characteristic() == 0) return Scalar(fld_, fld_->inv_q(q_));
  return Scalar(fld_, fld_->inv_p(p_));
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (fld_ && fld_->characteristic() == 0) {
    if (q_.size() == 1) return q_[0].get_str();
    os << "(";
    for (size_t i = 0; i < q_.size(); ++i) os << (i ? "," : "") << q_[i].get_str();
    os << ")";
    return os.str();
  }
  if (p_.size() == 1) return std::to_string(p_[0]);
  os << "(";
  for (size_t i = 0; i < p_.size(); ++i) os << (i ? "," : "") << p_[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- Field

FieldPtr Field::rationals() {
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = 0;
  f->finalize();
  return f;
}

FieldPtr Field::prime_field(long p) {
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    throw Error("characteristic must be 0 or a prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->finalize();
  return f;
}

FieldPtr Field::extension_q(const std::vector<mpq_class>& poly) {
  if (poly.size() < 3 || poly.size() > 4)
    throw Error("characteristic-0 tower steps are limited to one extension of degree 2 or 3");
  if (poly.back() != 1) throw Error("defining polynomial must be monic");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = 0;
  Step s;
  s.degree = static_cast<int>(poly.size()) - 1;
  s.qcoeffs.assign(poly.begin(), poly.end() - 1);
  f->steps_.push_back(std::move(s));
  f->finalize();
  return f;
}

FieldPtr Field::tower_p(long p, const std::vector<std::vector<long>>& polys) {
  if (p < 2 || !is_prime_u64(static_cast<unsigned long long>(p)))
    throw Error("characteristic must be 0 or a prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  int below = 1;
  for (const auto& poly : polys) {
    if (poly.size() < 3) throw Error("tower step degree must be at least 2");
    if (poly.back() != 1) throw Error("defining polynomial must be monic");
    Step s;
    s.degree = static_cast<int>(poly.size()) - 1;
    s.raw_codes.assign(poly.begin(), poly.end() - 1);
    // decode base-p integer codes into coordinate vectors over the field below
    for (long code : s.raw_codes) {
      if (code < 0) throw Error("coefficient codes must be non-negative");
      std::vector<long> c(below, 0);
      long v = code;
      for (int i = 0; i < below && v; ++i) {
        c[i] = v % p;
        v /= p;
      }
      if (v) throw Error("coefficient code exceeds the field below this step");
      s.pcoeffs.push_back(std::move(c));
    }
    below *= s.degree;
    f->steps_.push_back(std::move(s));
  }
  f->finalize();
  return f;
}

void Field::finalize() {
  dim_ = 1;
  stride_.clear();
  for (const auto& s : steps_) {
    stride_.push_back(dim_);
    dim_ *= s.degree;
  }
  check_steps();
}

bool Field::same(const Field& o) const {
  if (p_ != o.p_ || steps_.size() != o.steps_.size()) return false;
  for (size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i].degree != o.steps_[i].degree) return false;
    if (steps_[i].qcoeffs != o.steps_[i].qcoeffs) return false;
    if (steps_[i].pcoeffs != o.steps_[i].pcoeffs) return false;
  }
  return true;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long n) const {
  if (p_ == 0) {
    std::vector<mpq_class> c(dim_, mpq_class(0));
    c[0] = n;
    return Scalar(shared_from_this(), std::move(c));
  }
  std::vector<long> c(dim_, 0);
  c[0] = mod_reduce(n, p_);
  return Scalar(shared_from_this(), std::move(c));
}

Scalar Field::from_mpq(const mpq_class& v) const {
  if (p_ == 0) {
    std::vector<mpq_class> c(dim_, mpq_class(0));
    c[0] = v;
    c[0].canonicalize();
    return Scalar(shared_from_this(), std::move(c));
  }
  // embed a rational with denominator invertible mod p
  mpz_class num = v.get_num(), den = v.get_den();
  long n = mod_reduce(mpz_fdiv_ui(num.get_mpz_t(), p_), p_);
  long d = mod_reduce(mpz_fdiv_ui(den.get_mpz_t(), p_), p_);
  std::vector<long> c(dim_, 0);
  c[0] = mod_reduce(n * inv_mod(d, p_), p_);
  return Scalar(shared_from_this(), std::move(c));
}

Scalar Field::generator(int level) const {
  if (level < 0 || level >= levels()) throw Error("tower level out of range");
  if (p_ == 0) {
    std::vector<mpq_class> c(dim_, mpq_class(0));
    c[stride_[level]] = 1;
    return Scalar(shared_from_this(), std::move(c));
  }
  std::vector<long> c(dim_, 0);
  c[stride_[level]] = 1;
  return Scalar(shared_from_this(), std::move(c));
}

Scalar Field::from_qcoords(std::vector<mpq_class> c) const {
  if (p_ != 0) throw Error("rational coordinates on a positive-characteristic field");
  if (static_cast<int>(c.size()) != dim_) throw Error("coordinate vector has wrong length");
  for (auto& v : c) v.canonicalize();
  return Scalar(shared_from_this(), std::move(c));
}

Scalar Field::from_pcoords(std::vector<long> c) const {
  if (p_ == 0) throw Error("mod-p coordinates on a characteristic-0 field");
  if (static_cast<int>(c.size()) != dim_) throw Error("coordinate vector has wrong length");
  for (auto& v : c) v = mod_reduce(v, p_);
  return Scalar(shared_from_this(), std::move(c));
}

std::string Field::describe() const {
  std::ostringstream os;
  if (p_ == 0)
    os << "Q";
  else
    os << "F" << p_;
  for (const auto& s : steps_) os << "[x^" << s.degree << "]";
  if (!steps_.empty()) os << " (dim " << dim_ << ")";
  return os.str();
}

// school multiplication + reduction by the monic step polynomial, recursively
// on tower levels; `level` indexes steps_, chunks below have size stride_[level].
void Field::mul_level_q(int level, const mpq_class* a, const mpq_class* b, mpq_class* out) const {
  if (level < 0) {
    *out = *a * *b;
    return;
  }
  int d = steps_[level].degree, w = stride_[level];
  std::vector<mpq_class> prod(static_cast<size_t>(2 * d - 1) * w, mpq_class(0));
  std::vector<mpq_class> tmp(w);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (level == 0) {
        prod[i + j] += a[i] * b[j];
      } else {
        mul_level_q(level - 1, a + static_cast<size_t>(i) * w, b + static_cast<size_t>(j) * w, tmp.data());
        for (int t = 0; t < w; ++t) prod[static_cast<size_t>(i + j) * w + t] += tmp[t];
      }
    }
  const auto& cf = steps_[level].qcoeffs;  // x^d = -(cf[0] + cf[1] x + ...)
  for (int j = 2 * d - 2; j >= d; --j) {
    for (int i = 0; i < d; ++i) {
      if (cf[i] == 0) continue;
      // chunk (j-d+i) -= cf[i] * chunk j ; char-0 towers have one level, so
      // coefficients are plain rationals here.
      for (int t = 0; t < w; ++t)
        prod[static_cast<size_t>(j - d + i) * w + t] -= cf[i] * prod[static_cast<size_t>(j) * w + t];
    }
    for (int t = 0; t < w; ++t) prod[static_cast<size_t>(j) * w + t] = 0;
  }
  for (int t = 0; t < d * w; ++t) out[t] = prod[t];
}

void Field::mul_level_p(int level, const long* a, const long* b, long* out) const {
  if (level < 0) {
    *out = mod_reduce(*a * *b, p_);
    return;
  }
  int d = steps_[level].degree, w = stride_[level];
  std::vector<long> prod(static_cast<size_t>(2 * d - 1) * w, 0);
  std::vector<long> tmp(w), coefprod(w);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (level == 0) {
        prod[i + j] = mod_reduce(prod[i + j] + a[i] * b[j], p_);
      } else {
        mul_level_p(level - 1, a + static_cast<size_t>(i) * w, b + static_cast<size_t>(j) * w, tmp.data());
        long* dst = prod.data() + static_cast<size_t>(i + j) * w;
        for (int t = 0; t < w; ++t) dst[t] = mod_reduce(dst[t] + tmp[t], p_);
      }
    }
  const auto& cf = steps_[level].pcoeffs;
  for (int j = 2 * d - 2; j >= d; --j) {
    long* high = prod.data() + static_cast<size_t>(j) * w;
    bool high_zero = std::all_of(high, high + w, [](long v) { return v == 0; });
    if (!high_zero) {
      for (int i = 0; i < d; ++i) {
        const auto& c = cf[i];
        if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) continue;
        if (level == 0) {
          coefprod[0] = mod_reduce(c[0] * high[0], p_);
        } else {
          mul_level_p(level - 1, c.data(), high, coefprod.data());
        }
        long* dst = prod.data() + static_cast<size_t>(j - d + i) * w;
        for (int t = 0; t < w; ++t) dst[t] = mod_reduce(dst[t] - coefprod[t], p_);
      }
    }
    std::fill(high, high + w, 0L);
  }
  std::copy(prod.begin(), prod.begin() + static_cast<size_t>(d) * w, out);
}

std::vector<mpq_class> Field::mul_q(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const {
  std::vector<mpq_class> out(dim_, mpq_class(0));
  mul_level_q(levels() - 1, a.data(), b.data(), out.data());
  return out;
}

std::vector<long> Field::mul_p(const std::vector<long>& a, const std::vector<long>& b) const {
  std::vector<long> out(dim_, 0);
  mul_level_p(levels() - 1, a.data(), b.data(), out.data());
  return out;
}

// Inverse by solving the D x D linear system (mult-by-a matrix) exactly.
std::vector<mpq_class> Field::inv_q(const std::vector<mpq_class>& a) const {
  if (dim_ == 1) {
    if (a[0] == 0) throw Error("division by zero");
    return {mpq_class(1) / a[0]};
  }
  auto qf = Field::rationals();
  Matrix m(dim_, std::vector<Scalar>());
  for (int j = 0; j < dim_; ++j) {
    std::vector<mpq_class> e(dim_, mpq_class(0));
    e[j] = 1;
    auto col = mul_q(a, e);
    for (int i = 0; i < dim_; ++i) m[i].push_back(Scalar(qf, std::vector<mpq_class>{col[i]}));
  }
  std::vector<Scalar> rhs(dim_, qf->zero()), x;
  rhs[0] = qf->one();
  if (!solve_linear(m, rhs, x, qf)) throw Error("element not invertible");
  std::vector<mpq_class> out;
  for (auto& s : x) out.push_back(s.qcoords()[0]);
  return out;
}

std::vector<long> Field::inv_p(const std::vector<long>& a) const {
  if (dim_ == 1) return {inv_mod(a[0], p_)};
  auto pf = Field::prime_field(p_);
  Matrix m(dim_, std::vector<Scalar>());
  for (int j = 0; j < dim_; ++j) {
    std::vector<long> e(dim_, 0);
    e[j] = 1;
    auto col = mul_p(a, e);
    for (int i = 0; i < dim_; ++i) m[i].push_back(Scalar(pf, std::vector<long>{col[i]}));
  }
  std::vector<Scalar> rhs(dim_, pf->zero()), x;
  rhs[0] = pf->one();
  if (!solve_linear(m, rhs, x, pf)) throw Error("element not invertible");
  std::vector<long> out;
  for (auto& s : x) out.push_back(s.pcoords()[0]);
  return out;
}

// ------------------------------------------------- irreducibility validation

namespace {

// polynomial remainder of `poly` (monic, coefficient vectors over sub) by a
// monic candidate divisor; arithmetic through Scalar over the field `sub`.
bool divides_poly(const std::vector<Scalar>& cand, const std::vector<Scalar>& poly) {
  std::vector<Scalar> r = poly;
  int dc = static_cast<int>(cand.size()) - 1;
  while (static_cast<int>(r.size()) - 1 >= dc) {
    Scalar lead = r.back();
    int shift = static_cast<int>(r.size()) - 1 - dc;
    if (!lead.is_zero())
      for (int i = 0; i <= dc; ++i) r[shift + i] = r[shift + i] - lead * cand[i];
    r.pop_back();
  }
  for (const auto& c : r)
    if (!c.is_zero()) return false;
  return true;
}

void all_divisors(const mpz_class& n, std::vector<mpz_class>& out) {
  mpz_class a = abs(n);
  if (a > mpz_class("1000000000000"))
    throw Error("coefficient too large for the desk-scale irreducibility check");
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
}

}  // namespace

void Field::check_steps() const {
  if (p_ == 0 && !steps_.empty()) {
    // rational-root test: a monic polynomial of degree 2 or 3 over Q is
    // irreducible iff it has no rational root
    const auto& s = steps_[0];
    std::vector<mpq_class> poly = s.qcoeffs;
    poly.push_back(1);
    mpz_class lcm = 1;
    for (const auto& c : poly) lcm = lcm / gcd(lcm, c.get_den()) * c.get_den();
    std::vector<mpz_class> ip;
    for (const auto& c : poly) {
      mpq_class v = c * lcm;
      v.canonicalize();
      ip.push_back(v.get_num());
    }
    if (ip[0] == 0) throw Error("defining polynomial is reducible (root 0)");
    std::vector<mpz_class> dn, dd;
    all_divisors(ip[0], dn);
    all_divisors(ip.back(), dd);
    for (const auto& num : dn)
      for (const auto& den : dd)
        for (int sign : {1, -1}) {
          mpq_class root(sign * num, den);
          root.canonicalize();
          mpq_class acc = 0;
          for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) acc = acc * root + poly[i];
          if (acc == 0)
            throw Error("defining polynomial is reducible (rational root " + root.get_str() + ")");
        }
    return;
  }
  // characteristic p: brute-force factor search at every level, candidates
  // drawn from the field below the step
  for (int lev = 0; lev < levels(); ++lev) {
    const auto& s = steps_[lev];
    auto sub = lev == 0 ? Field::prime_field(p_)
                        : [&] {
                            std::vector<std::vector<long>> below;
                            for (int i = 0; i < lev; ++i) {
                              auto codes = steps_[i].raw_codes;
                              codes.push_back(1);
                              below.push_back(codes);
                            }
                            return Field::tower_p(p_, below);
                          }();
    std::vector<Scalar> poly;
    for (const auto& c : s.pcoeffs) {
      std::vector<long> cc = c;
      cc.resize(sub->dim(), 0);
      poly.push_back(sub->from_pcoords(cc));
    }
    poly.push_back(sub->one());
    double q = std::pow(static_cast<double>(p_), sub->dim());
    for (int dc = 1; dc <= s.degree / 2; ++dc) {
      if (std::pow(q, dc) > 2e6)
        throw Error("irreducibility search space exceeds the desk-scale cap");
      long count = static_cast<long>(std::pow(q, dc));
      for (long idx = 0; idx < count; ++idx) {
        // decode idx into dc sub-field coefficients
        std::vector<Scalar> cand;
        long v = idx;
        long qq = static_cast<long>(q);
        for (int i = 0; i < dc; ++i) {
          long code = v % qq;
          v /= qq;
          std::vector<long> cc(sub->dim(), 0);
          long w = code;
          for (int t = 0; t < sub->dim() && w; ++t) {
            cc[t] = w % p_;
            w /= p_;
          }
          cand.push_back(sub->from_pcoords(cc));
        }
        cand.push_back(sub->one());
        if (divides_poly(cand, poly)) {
          std::string cs;
          for (const auto& c : cand) cs += (cs.empty() ? "" : ",") + c.str();
          throw Error("tower step " + std::to_string(lev) +
                      " is reducible (monic factor with coefficients [" + cs + "])");
        }
      }
    }
  }
}

// ---------------------------------------------------------------- linalg

int row_echelon(Matrix& m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
    size_t piv = rows;
    for (size_t r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    Scalar ip = m[rank][c].inv();
    for (size_t j = c; j < cols; ++j) m[rank][j] = m[rank][j] * ip;
    for (size_t r = 0; r < rows; ++r) {
      if (r == static_cast<size_t>(rank) || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

int rank(Matrix m) { return row_echelon(m); }

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m0, const FieldPtr& f) {
  if (m0.empty() || m0[0].empty()) return {};
  Matrix m = m0;
  size_t cols = m[0].size();
  int rk = row_echelon(m);
  // identify pivot columns
  std::vector<int> pivot_col(rk, -1);
  std::vector<bool> is_pivot(cols, false);
  for (int r = 0; r < rk; ++r) {
    for (size_t c = 0; c < cols; ++c)
      if (!m[r][c].is_zero()) {
        pivot_col[r] = static_cast<int>(c);
        is_pivot[c] = true;
        break;
      }
  }
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, f->zero());
    v[free] = f->one();
    for (int r = 0; r < rk; ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_linear(const Matrix& m, const std::vector<Scalar>& rhs, std::vector<Scalar>& out,
                  const FieldPtr& f) {
  if (m.empty()) return false;
  size_t rows = m.size(), cols = m[0].size();
  Matrix aug = m;
  for (size_t r = 0; r < rows; ++r) aug[r].push_back(rhs[r]);
  int rk = row_echelon(aug);
  out.assign(cols, f->zero());
  for (int r = 0; r < rk; ++r) {
    size_t c = 0;
    while (c < cols && aug[r][c].is_zero()) ++c;
    if (c == cols) return false;  // pivot in the rhs column: inconsistent
    out[c] = aug[r][cols];
  }
  // verify (handles underdetermined/inconsistent systems uniformly)
  for (size_t r = 0; r < rows; ++r) {
    Scalar acc = f->zero();
    for (size_t c = 0; c < cols; ++c) acc = acc + m[r][c] * out[c];
    if (!(acc == rhs[r])) return false;
  }
  return true;
}

}  // namespace opal
