#include "opal/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace opal {

// ------------------------------------------------------------ base helpers

std::vector<Scalar> GradedAlgebra::zero_vec(long degree) const {
  return std::vector<Scalar>(static_cast<size_t>(dim(degree)), field()->zero());
}

std::vector<Scalar> GradedAlgebra::mul_vec(long d1, const std::vector<Scalar>& x, long d2,
                                           const std::vector<Scalar>& y) const {
  if (static_cast<long>(x.size()) != dim(d1) || static_cast<long>(y.size()) != dim(d2))
    throw Error("mul_vec: coordinate length does not match component dimension");
  auto out = zero_vec(d1 + d2);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < y.size(); ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      auto t = mul_basis(d1, static_cast<long>(i), d2, static_cast<long>(j));
      for (size_t k = 0; k < out.size(); ++k) out[k] += c * t[k];
    }
  }
  return out;
}

std::string GradedAlgebra::render(long degree, const std::vector<Scalar>& v) const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!first) os << " + ";
    std::string c = v[k].str();
    if (c == "1") {
      os << basis_label(degree, static_cast<long>(k));
    } else {
      os << "(" << c << ")*" << basis_label(degree, static_cast<long>(k));
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

HilbertSeries GradedAlgebra::hilbert(long horizon) const {
  std::vector<mpz_class> c(static_cast<size_t>(horizon) + 1);
  for (long d = 0; d <= horizon; ++d) c[static_cast<size_t>(d)] = dim(d);
  return HilbertSeries::from_dense(std::move(c));
}

GradedVec basis_vec(const GradedAlgebra& A, long degree, long index) {
  if (index < 0 || index >= A.dim(degree)) throw Error("basis_vec: index out of range");
  GradedVec v;
  v.degree = degree;
  v.coords = A.zero_vec(degree);
  v.coords[static_cast<size_t>(index)] = A.field()->one();
  v.label = A.basis_label(degree, index);
  return v;
}

namespace {

bool vec_eq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool vec_zero(const std::vector<Scalar>& a) {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace

// ------------------------------------------------------------ dense backend

long DenseAlgebra::dim(long degree) const {
  if (degree < 0) return 0;
  if (degree > horizon_) throw Error("degree beyond materialized horizon");
  return static_cast<long>(labels_[static_cast<size_t>(degree)].size());
}

std::string DenseAlgebra::basis_label(long degree, long index) const {
  if (index < 0 || index >= dim(degree)) throw Error("basis_label: index out of range");
  return labels_[static_cast<size_t>(degree)][static_cast<size_t>(index)];
}

TypeLabel DenseAlgebra::type_label(long degree, long index) const {
  if (!typed_) return TypeLabel::Even;
  if (index < 0 || index >= dim(degree)) throw Error("type_label: index out of range");
  return types_[static_cast<size_t>(degree)][static_cast<size_t>(index)];
}

std::vector<Scalar> DenseAlgebra::mul_basis(long d1, long i, long d2, long j) const {
  if (d1 < 0 || d2 < 0) throw Error("mul_basis: negative degree");
  if (d1 + d2 > horizon_) throw Error("product beyond materialized horizon");
  if (i < 0 || i >= dim(d1) || j < 0 || j >= dim(d2))
    throw Error("mul_basis: index out of range");
  return products_[static_cast<size_t>(d1)][static_cast<size_t>(d2)][static_cast<size_t>(i)]
                  [static_cast<size_t>(j)];
}

AlgebraPtr dense_from_function(
    std::string name, FieldPtr f, long horizon, const std::vector<long>& dims,
    const std::function<std::string(long, long)>& label_fn,
    const std::function<std::vector<Scalar>(long, long, long, long)>& mul_fn,
    const std::function<TypeLabel(long, long)>& type_fn) {
  if (!f) throw Error("dense_from_function: null field");
  if (horizon < 0) throw Error("dense_from_function: negative horizon");
  if (static_cast<long>(dims.size()) != horizon + 1)
    throw Error("dense_from_function: dims must list every degree up to the horizon");
  auto A = std::make_shared<DenseAlgebra>();
  A->name_ = std::move(name);
  A->field_ = f;
  A->horizon_ = horizon;
  A->typed_ = static_cast<bool>(type_fn);
  A->labels_.resize(static_cast<size_t>(horizon) + 1);
  A->types_.resize(static_cast<size_t>(horizon) + 1);
  for (long d = 0; d <= horizon; ++d) {
    if (dims[static_cast<size_t>(d)] < 0) throw Error("dense_from_function: negative dimension");
    for (long i = 0; i < dims[static_cast<size_t>(d)]; ++i) {
      A->labels_[static_cast<size_t>(d)].push_back(label_fn(d, i));
      A->types_[static_cast<size_t>(d)].push_back(type_fn ? type_fn(d, i) : TypeLabel::Even);
    }
  }
  A->products_.resize(static_cast<size_t>(horizon) + 1);
  for (long d1 = 0; d1 <= horizon; ++d1) {
    A->products_[static_cast<size_t>(d1)].resize(static_cast<size_t>(horizon - d1) + 1);
    for (long d2 = 0; d2 + d1 <= horizon; ++d2) {
      auto& block = A->products_[static_cast<size_t>(d1)][static_cast<size_t>(d2)];
      long n1 = dims[static_cast<size_t>(d1)], n2 = dims[static_cast<size_t>(d2)];
      long nt = dims[static_cast<size_t>(d1 + d2)];
      block.resize(static_cast<size_t>(n1));
      for (long i = 0; i < n1; ++i) {
        block[static_cast<size_t>(i)].resize(static_cast<size_t>(n2));
        for (long j = 0; j < n2; ++j) {
          auto v = mul_fn(d1, i, d2, j);
          if (static_cast<long>(v.size()) != nt)
            throw Error("dense_from_function: product vector has wrong length");
          block[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(v);
        }
      }
    }
  }
  return A;
}

AlgebraPtr materialize(const GradedAlgebra& A, long horizon) {
  std::vector<long> dims;
  for (long d = 0; d <= horizon; ++d) dims.push_back(A.dim(d));
  std::function<TypeLabel(long, long)> type_fn = nullptr;
  if (A.has_type_labels())
    type_fn = [&A](long d, long i) { return A.type_label(d, i); };
  return dense_from_function(
      A.name(), A.field(), horizon, dims,
      [&A](long d, long i) { return A.basis_label(d, i); },
      [&A](long d1, long i, long d2, long j) { return A.mul_basis(d1, i, d2, j); }, type_fn);
}

// -------------------------------------------------- normal-word backend

namespace {
constexpr long kWordEnumerationCap = 2000000;
}

WordAlgebra::WordAlgebra(std::string name, FieldPtr f,
                         std::vector<std::pair<std::string, long>> generators, WordRules rules)
    : name_(std::move(name)), field_(std::move(f)), gens_(std::move(generators)), rules_(rules) {
  if (!field_) throw Error("normal-word algebra: null field");
  bool commutative_shape = rules_.commutative && !rules_.pattern_e621;
  bool pattern_shape = rules_.pattern_e621 && !rules_.commutative && !rules_.squarefree;
  if (!(commutative_shape || pattern_shape))
    throw Error("unsupported rule shape: expected commutative (optionally squarefree) or the "
                "pattern family alone");
  if (gens_.empty()) throw Error("normal-word algebra: no generators");
  for (const auto& [nm, deg] : gens_) {
    if (nm.empty()) throw Error("normal-word algebra: empty generator name");
    if (deg < 1) throw Error("normal-word algebra: generator degrees must be positive");
  }
  for (size_t a = 0; a < gens_.size(); ++a)
    for (size_t b = a + 1; b < gens_.size(); ++b)
      if (gens_[a].first == gens_[b].first)
        throw Error("normal-word algebra: duplicate generator name " + gens_[a].first);
  if (rules_.pattern_e621 && gens_.size() > 62)
    throw Error("normal-word algebra: pattern family supports at most 62 generators");
}

long WordAlgebra::generator_degree(int letter) const {
  if (letter < 1 || letter > static_cast<int>(gens_.size()))
    throw Error("generator_degree: letter out of range");
  return gens_[static_cast<size_t>(letter - 1)].second;
}

const std::string& WordAlgebra::generator_name(int letter) const {
  if (letter < 1 || letter > static_cast<int>(gens_.size()))
    throw Error("generator_name: letter out of range");
  return gens_[static_cast<size_t>(letter - 1)].first;
}

bool WordAlgebra::word_normal(const std::vector<int>& w) const {
  if (rules_.pattern_e621) {
    // Direct pattern scan, independent of the incremental blocked-letter
    // account used during enumeration: x_s u x_s with all letters of u below s.
    long L = static_cast<long>(w.size());
    for (long p = 0; p < L; ++p) {
      for (long q = p + 1; q < L; ++q) {
        if (w[static_cast<size_t>(p)] != w[static_cast<size_t>(q)]) continue;
        bool all_below = true;
        for (long r = p + 1; r < q; ++r)
          if (w[static_cast<size_t>(r)] >= w[static_cast<size_t>(p)]) {
            all_below = false;
            break;
          }
        if (all_below) return false;
      }
    }
    return true;
  }
  if (rules_.squarefree) {
    for (size_t a = 1; a < w.size(); ++a)
      if (w[a] == w[a - 1]) return false;  // letters are kept sorted
  }
  return true;
}

const WordAlgebra::DegreeBasis& WordAlgebra::basis(long degree) const {
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto it = memo_.find(degree);
  if (it != memo_.end()) return *it->second;

  auto out = std::make_shared<DegreeBasis>();
  if (degree == 0) {
    out->words.push_back({});
  } else if (degree > 0) {
    if (rules_.pattern_e621) {
      // Letters appended left to right; `blocked` holds letters whose next
      // occurrence would close a forbidden pattern.
      std::vector<int> cur;
      std::function<void(long, unsigned long long)> dfs = [&](long rem,
                                                              unsigned long long blocked) {
        if (rem == 0) {
          out->words.push_back(cur);
          if (static_cast<long>(out->words.size()) > kWordEnumerationCap)
            throw Error("normal-word enumeration exceeds cap");
          return;
        }
        for (int c = 1; c <= static_cast<int>(gens_.size()); ++c) {
          if (blocked & (1ULL << c)) continue;
          long dc = gens_[static_cast<size_t>(c - 1)].second;
          if (dc > rem) continue;
          // Letters below c lose their pending status; c becomes pending.
          unsigned long long next = (blocked & ~((2ULL << c) - 1)) | (1ULL << c);
          cur.push_back(c);
          dfs(rem - dc, next);
          cur.pop_back();
        }
      };
      dfs(degree, 0);
    } else {
      // Commutative: multisets as sorted words. Enumerate from the
      // largest-degree generator down so the remaining-capacity prune is
      // sharp (linear for power-of-two squarefree degrees).
      std::vector<int> order(gens_.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i + 1);
      std::sort(order.begin(), order.end(), [this](int a, int b) {
        long da = gens_[static_cast<size_t>(a - 1)].second;
        long db = gens_[static_cast<size_t>(b - 1)].second;
        return da != db ? da > db : a > b;
      });
      std::vector<long> suffix_cap(order.size() + 1, 0);
      if (rules_.squarefree)
        for (size_t i = order.size(); i-- > 0;)
          suffix_cap[i] = suffix_cap[i + 1] + gens_[static_cast<size_t>(order[i] - 1)].second;

      std::vector<int> cur;
      std::function<void(size_t, long)> dfs = [&](size_t pos, long rem) {
        if (rem == 0) {
          auto w = cur;
          std::sort(w.begin(), w.end());
          out->words.push_back(std::move(w));
          if (static_cast<long>(out->words.size()) > kWordEnumerationCap)
            throw Error("normal-word enumeration exceeds cap");
          return;
        }
        if (pos >= order.size()) return;
        if (rules_.squarefree && rem > suffix_cap[pos]) return;
        long dg = gens_[static_cast<size_t>(order[pos] - 1)].second;
        if (dg <= rem) {
          cur.push_back(order[pos]);
          dfs(rules_.squarefree ? pos + 1 : pos, rem - dg);
          cur.pop_back();
        }
        dfs(pos + 1, rem);
      };
      dfs(0, degree);
      std::sort(out->words.begin(), out->words.end());
    }
  }
  for (size_t k = 0; k < out->words.size(); ++k)
    out->index[out->words[k]] = static_cast<long>(k);
  auto& slot = memo_[degree];
  slot = std::move(out);
  return *slot;
}

long WordAlgebra::dim(long degree) const {
  if (degree < 0) return 0;
  return static_cast<long>(basis(degree).words.size());
}

const std::vector<std::vector<int>>& WordAlgebra::words(long degree) const {
  return basis(degree).words;
}

long WordAlgebra::word_index(long degree, const std::vector<int>& w) const {
  const auto& b = basis(degree);
  auto it = b.index.find(w);
  return it == b.index.end() ? -1 : it->second;
}

std::string WordAlgebra::basis_label(long degree, long index) const {
  const auto& b = basis(degree);
  if (index < 0 || index >= static_cast<long>(b.words.size()))
    throw Error("basis_label: index out of range");
  const auto& w = b.words[static_cast<size_t>(index)];
  if (w.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!first) os << "*";
    os << gens_[static_cast<size_t>(w[i] - 1)].first;
    if (j - i > 1) os << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

std::vector<Scalar> WordAlgebra::mul_basis(long d1, long i, long d2, long j) const {
  const auto& wa = basis(d1).words;
  const auto& wb = basis(d2).words;
  if (i < 0 || i >= static_cast<long>(wa.size()) || j < 0 || j >= static_cast<long>(wb.size()))
    throw Error("mul_basis: index out of range");
  std::vector<int> w = wa[static_cast<size_t>(i)];
  const auto& y = wb[static_cast<size_t>(j)];
  w.insert(w.end(), y.begin(), y.end());
  if (rules_.commutative) std::sort(w.begin(), w.end());
  auto out = zero_vec(d1 + d2);
  if (!word_normal(w)) return out;
  long idx = word_index(d1 + d2, w);
  if (idx < 0) throw Error("internal: normal word missing from enumerated basis");
  out[static_cast<size_t>(idx)] = field_->one();
  return out;
}

AlgebraPtr normal_word_algebra(std::string name, FieldPtr f,
                               std::vector<std::pair<std::string, long>> generators,
                               WordRules rules) {
  return std::make_shared<WordAlgebra>(std::move(name), std::move(f), std::move(generators),
                                       rules);
}

AlgebraPtr poly_algebra(FieldPtr f, long deg_t, std::string var) {
  WordRules r;
  r.commutative = true;
  std::string nm = "k[" + var + "]";
  return normal_word_algebra(nm, std::move(f), {{var, deg_t}}, r);
}

// -------------------------------------------------------- B{c} construction

BDesc BDesc::truncated_poly(FieldPtr f, long b) {
  BDesc B;
  B.field = f;
  B.b = b;
  B.star.assign(static_cast<size_t>(b) + 1,
                std::vector<Scalar>(static_cast<size_t>(b) + 1, f->zero()));
  for (long i = 0; i <= b; ++i)
    for (long j = 0; j <= b; ++j)
      if (i + j <= b) B.star[static_cast<size_t>(i)][static_cast<size_t>(j)] = f->one();
  return B;
}

BDesc BDesc::zero_products(FieldPtr f, long b) {
  BDesc B;
  B.field = f;
  B.b = b;
  B.star.assign(static_cast<size_t>(b) + 1,
                std::vector<Scalar>(static_cast<size_t>(b) + 1, f->zero()));
  for (long i = 0; i <= b; ++i) {
    B.star[static_cast<size_t>(i)][0] = f->one();
    B.star[0][static_cast<size_t>(i)] = f->one();
  }
  return B;
}

namespace {

const Scalar& star_at(const BDesc& B, long i, long j) {
  return B.star[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

void validate_bdesc(const BDesc& B, BcType type) {
  if (!B.field) throw Error("B{c}: null field");
  if (B.b < 0) throw Error("B{c}: b must be non-negative");
  long n = B.b + 1;
  if (static_cast<long>(B.star.size()) != n) throw Error("B{c}: star table has wrong shape");
  for (const auto& row : B.star)
    if (static_cast<long>(row.size()) != n) throw Error("B{c}: star table has wrong shape");
  for (long j = 0; j < n; ++j) {
    if (star_at(B, 0, j) != B.field->one() || star_at(B, j, 0) != B.field->one())
      throw Error("B{c}: x_0 must be the unit of B");
  }
  if (type == BcType::Even) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        if (star_at(B, i, j) != star_at(B, j, i))
          throw Error("B{c}: B must be commutative for even type");
  } else {
    if (B.b % 2 == 0) throw Error("B{c}: odd type requires b odd");
    if (B.field->characteristic() == 2)
      throw Error("B{c}: odd type requires characteristic != 2");
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        Scalar rhs = star_at(B, j, i);
        if ((i * j) % 2 == 1) rhs = -rhs;
        if (star_at(B, i, j) != rhs)
          throw Error("B{c}: B must be graded commutative for odd type (classes " +
                      std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < n; ++k) {
        Scalar lhs = star_at(B, i, j) * star_at(B, (i + j) % n, k);
        Scalar rhs = star_at(B, j, k) * star_at(B, i, (j + k) % n);
        if (lhs != rhs)
          throw Error("B{c}: star multiplication not associative at classes (" +
                      std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                      ")");
      }
}

}  // namespace

bool b_is_nilpotent(const BDesc& B) {
  long n = B.b + 1;
  if (B.b == 0) return true;  // positive part is zero
  std::vector<char> reach(static_cast<size_t>(n), 0);
  for (long i = 1; i < n; ++i) reach[static_cast<size_t>(i)] = 1;
  // Products of basis elements are scalar multiples of basis elements, so a
  // nonzero k-fold product extends to a nonzero (k+1)-fold product exactly
  // when the corresponding star entry is nonzero.
  for (long step = 0; step <= n; ++step) {
    std::vector<char> next(static_cast<size_t>(n), 0);
    bool empty = true;
    for (long c = 0; c < n; ++c) {
      if (!reach[static_cast<size_t>(c)]) continue;
      for (long j = 1; j < n; ++j) {
        if (star_at(B, c, j).is_zero()) continue;
        next[static_cast<size_t>((c + j) % n)] = 1;
        empty = false;
      }
    }
    if (empty) return true;
    reach = std::move(next);
  }
  return false;  // a cycle of nonzero products exists
}

AlgebraPtr build_Bc(const BDesc& B, BcType type, long horizon, std::string name) {
  validate_bdesc(B, type);
  long n = B.b + 1;
  if (name.empty())
    name = "B{c}(b=" + std::to_string(B.b) + (type == BcType::Even ? ",even" : ",odd") + ")";

  auto label = [&B, n](long d, long) {
    long bar = d % n, q = d / n;
    std::string s;
    if (bar > 0) s = "x" + std::to_string(bar);
    if (q > 0) {
      if (!s.empty()) s += "*";
      s += q == 1 ? "c" : "c^" + std::to_string(q);
    }
    return s.empty() ? std::string("1") : s;
  };
  auto mul = [&B, n](long d1, long, long d2, long) {
    return std::vector<Scalar>{star_at(B, d1 % n, d2 % n)};
  };
  std::function<TypeLabel(long, long)> type_fn;
  if (type == BcType::Even) {
    type_fn = [](long, long) { return TypeLabel::Even; };
  } else {
    type_fn = [](long d, long) { return d == 0 ? TypeLabel::Even : TypeLabel::Odd; };
  }
  std::vector<long> dims(static_cast<size_t>(horizon) + 1, 1);
  auto A = dense_from_function(name, B.field, horizon, dims, label, mul, type_fn);

  if (b_is_nilpotent(B)) {
    // c is asserted to be a nonzerodivisor; verify against every basis
    // element that fits under the horizon.
    for (long d = 0; d + n <= horizon; ++d) {
      auto prod = A->mul_basis(n, 0, d, 0);
      if (vec_zero(prod))
        throw Error("B{c}: c must be a nonzerodivisor (killed degree " + std::to_string(d) + ")");
    }
  }
  return A;
}

// ------------------------------------------------------------ validations

AlgebraCheckReport check_algebra(const GradedAlgebra& A, long horizon) {
  AlgebraCheckReport rep;
  auto add = [&rep](const std::string& msg) {
    rep.ok = false;
    if (rep.violations.size() < 20) rep.violations.push_back(msg);
  };
  if (A.dim(0) != 1) {
    add("degree-0 component must be one-dimensional (the unit line)");
    return rep;
  }
  for (long d = 0; d <= horizon; ++d) {
    for (long j = 0; j < A.dim(d); ++j) {
      auto e = A.zero_vec(d);
      e[static_cast<size_t>(j)] = A.field()->one();
      if (!vec_eq(A.mul_basis(0, 0, d, j), e))
        add("left unit law fails on " + A.basis_label(d, j));
      if (!vec_eq(A.mul_basis(d, j, 0, 0), e))
        add("right unit law fails on " + A.basis_label(d, j));
    }
  }
  for (long d1 = 1; d1 <= horizon; ++d1)
    for (long d2 = 1; d1 + d2 <= horizon; ++d2)
      for (long d3 = 1; d1 + d2 + d3 <= horizon; ++d3)
        for (long i = 0; i < A.dim(d1); ++i)
          for (long j = 0; j < A.dim(d2); ++j)
            for (long k = 0; k < A.dim(d3); ++k) {
              auto xy = A.mul_basis(d1, i, d2, j);
              auto yz = A.mul_basis(d2, j, d3, k);
              auto z = A.zero_vec(d3);
              z[static_cast<size_t>(k)] = A.field()->one();
              auto x = A.zero_vec(d1);
              x[static_cast<size_t>(i)] = A.field()->one();
              auto lhs = A.mul_vec(d1 + d2, xy, d3, z);
              auto rhs = A.mul_vec(d1, x, d2 + d3, yz);
              if (!vec_eq(lhs, rhs))
                add("associativity fails on (" + A.basis_label(d1, i) + ", " +
                    A.basis_label(d2, j) + ", " + A.basis_label(d3, k) + ")");
            }
  return rep;
}

bool is_commutative(const GradedAlgebra& A, long horizon, std::string* witness) {
  for (long d1 = 1; d1 <= horizon; ++d1)
    for (long d2 = d1; d1 + d2 <= horizon; ++d2)
      for (long i = 0; i < A.dim(d1); ++i)
        for (long j = 0; j < A.dim(d2); ++j) {
          if (!vec_eq(A.mul_basis(d1, i, d2, j), A.mul_basis(d2, j, d1, i))) {
            if (witness)
              *witness = A.basis_label(d1, i) + " and " + A.basis_label(d2, j) +
                         " do not commute";
            return false;
          }
        }
  return true;
}

AlgebraCheckReport check_pgc(const GradedAlgebra& A, long horizon) {
  AlgebraCheckReport rep;
  auto add = [&rep](const std::string& msg) {
    rep.ok = false;
    if (rep.violations.size() < 20) rep.violations.push_back(msg);
  };
  if (!A.has_type_labels()) {
    add("algebra carries no even/odd type labels");
    return rep;
  }
  if (A.dim(0) != 1) add("degree-0 component must be one-dimensional");

  auto support_type_ok = [&A](const std::vector<Scalar>& v, long degree, TypeLabel t) {
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero() && A.type_label(degree, static_cast<long>(k)) != t) return false;
    return true;
  };

  for (long d1 = 0; d1 <= horizon; ++d1)
    for (long d2 = 0; d1 + d2 <= horizon; ++d2)
      for (long i = 0; i < A.dim(d1); ++i)
        for (long j = 0; j < A.dim(d2); ++j) {
          auto xy = A.mul_basis(d1, i, d2, j);
          TypeLabel t1 = A.type_label(d1, i), t2 = A.type_label(d2, j);
          long dt = d1 + d2;
          if (d1 >= 1 && d2 >= 1 && t1 != t2) {
            if (!vec_zero(xy))
              add("opposite-type product not zero: " + A.basis_label(d1, i) + " * " +
                  A.basis_label(d2, j));
          } else if (dt >= 1) {
            TypeLabel want = d1 == 0 ? t2 : t1;
            if (!support_type_ok(xy, dt, want))
              add("ideal closure fails: " + A.basis_label(d1, i) + " * " +
                  A.basis_label(d2, j) + " leaves its type component");
          }
          // Commutation sign rule on every ordered pair.
          auto yx = A.mul_basis(d2, j, d1, i);
          bool flip = (d1 % 2) && (d2 % 2) && t1 == TypeLabel::Odd && t2 == TypeLabel::Odd;
          if (flip)
            for (auto& c : yx) c = -c;
          if (!vec_eq(xy, yx))
            add("commutation sign rule fails on (" + A.basis_label(d1, i) + ", " +
                A.basis_label(d2, j) + ")");
        }
  return rep;
}

std::optional<std::string> central_violation(const GradedAlgebra& A, const GradedVec& v,
                                             long horizon) {
  if (static_cast<long>(v.coords.size()) != A.dim(v.degree))
    throw Error("central_violation: coordinate length mismatch");
  for (long d = 1; d + v.degree <= horizon; ++d)
    for (long j = 0; j < A.dim(d); ++j) {
      auto e = A.zero_vec(d);
      e[static_cast<size_t>(j)] = A.field()->one();
      auto left = A.mul_vec(v.degree, v.coords, d, e);
      auto right = A.mul_vec(d, e, v.degree, v.coords);
      if (!vec_eq(left, right))
        return v.label + " does not commute with " + A.basis_label(d, j) + " (degree " +
               std::to_string(d) + ")";
    }
  return std::nullopt;
}

// ------------------------------------------------------------ torsion

TorsionReport torsion_elements(const GradedAlgebra& A, Side side, long horizon) {
  if (horizon < 2) throw Error("torsion_elements: horizon must be at least 2");
  TorsionReport rep;
  rep.horizon = horizon;
  rep.side = side;
  for (long dx = 1; dx <= horizon / 2; ++dx) {
    long cols = A.dim(dx);
    if (cols == 0) continue;
    Matrix m;
    for (long d = 1; d + dx <= horizon; ++d) {
      for (long j = 0; j < A.dim(d); ++j) {
        auto e = A.zero_vec(d);
        e[static_cast<size_t>(j)] = A.field()->one();
        // One row per target coordinate of x -> x*e_j (right) or e_j*x (left).
        std::vector<std::vector<Scalar>> cols_img(static_cast<size_t>(cols));
        for (long c = 0; c < cols; ++c) {
          auto x = A.zero_vec(dx);
          x[static_cast<size_t>(c)] = A.field()->one();
          cols_img[static_cast<size_t>(c)] = side == Side::Right
                                                 ? A.mul_vec(dx, x, d, e)
                                                 : A.mul_vec(d, e, dx, x);
        }
        long tdim = A.dim(dx + d);
        for (long t = 0; t < tdim; ++t) {
          std::vector<Scalar> row(static_cast<size_t>(cols));
          for (long c = 0; c < cols; ++c)
            row[static_cast<size_t>(c)] = cols_img[static_cast<size_t>(c)][static_cast<size_t>(t)];
          m.push_back(std::move(row));
        }
      }
    }
    std::vector<std::vector<Scalar>> kern;
    if (m.empty()) {
      // Nothing to annihilate against; every element qualifies vacuously.
      for (long c = 0; c < cols; ++c) {
        auto v = A.zero_vec(dx);
        v[static_cast<size_t>(c)] = A.field()->one();
        kern.push_back(std::move(v));
      }
    } else {
      kern = kernel_basis(m, A.field());
    }
    if (!kern.empty()) {
      std::vector<std::string> labels;
      for (const auto& v : kern) labels.push_back(A.render(dx, v));
      rep.elements.push_back({dx, std::move(labels)});
    }
  }
  return rep;
}

// ------------------------------------------------- saturation / cancellation

namespace {

// Left-multiplication block A_src -> A_{src+a} as a matrix acting on
// coordinate columns.
Matrix lmul_block(const GradedAlgebra& A, const GradedVec& alpha, long src) {
  long cols = A.dim(src), rows = A.dim(src + alpha.degree);
  Matrix m(static_cast<size_t>(rows), std::vector<Scalar>(static_cast<size_t>(cols)));
  for (long j = 0; j < cols; ++j) {
    auto e = A.zero_vec(src);
    e[static_cast<size_t>(j)] = A.field()->one();
    auto img = A.mul_vec(alpha.degree, alpha.coords, src, e);
    for (long t = 0; t < rows; ++t)
      m[static_cast<size_t>(t)][static_cast<size_t>(j)] = img[static_cast<size_t>(t)];
  }
  return m;
}

// Kernel of a block, treating a rowless matrix (zero-dimensional target) as
// the zero map: its kernel is the whole source.
std::vector<std::vector<Scalar>> block_kernel(const GradedAlgebra& A, const Matrix& m,
                                              long src_degree) {
  if (!m.empty()) return kernel_basis(m, A.field());
  std::vector<std::vector<Scalar>> kern;
  for (long c = 0; c < A.dim(src_degree); ++c) {
    auto v = A.zero_vec(src_degree);
    v[static_cast<size_t>(c)] = A.field()->one();
    kern.push_back(std::move(v));
  }
  return kern;
}

// First standard basis vector of the row space's ambient not hit by the
// column span, as a printable cokernel witness.
std::string cokernel_witness(const GradedAlgebra& A, const Matrix& m, long target_degree) {
  long rows = static_cast<long>(m.size());
  for (long t = 0; t < rows; ++t) {
    std::vector<Scalar> rhs(static_cast<size_t>(rows), A.field()->zero());
    rhs[static_cast<size_t>(t)] = A.field()->one();
    std::vector<Scalar> sol;
    if (!solve_linear(m, rhs, sol, A.field()))
      return "cokernel witness " + A.basis_label(target_degree, t) + " (degree " +
             std::to_string(target_degree) + ")";
  }
  return "cokernel at degree " + std::to_string(target_degree);
}

}  // namespace

SaturationReport saturation_condition_check(const GradedAlgebra& A,
                                            const std::vector<GradedVec>& alphas, long d,
                                            long central_horizon) {
  if (alphas.empty()) throw Error("saturation check: no alphas supplied");
  if (d < 0) throw Error("saturation check: d must be non-negative");
  for (size_t s = 0; s < alphas.size(); ++s) {
    if (vec_zero(alphas[s].coords))
      throw Error("saturation check: alpha_" + std::to_string(s + 1) + " is zero");
    if (s > 0 && alphas[s].degree <= alphas[s - 1].degree)
      throw Error("saturation check: alpha degrees must be strictly increasing");
    if (auto viol = central_violation(A, alphas[s], central_horizon))
      throw Error("saturation check: alpha_" + std::to_string(s + 1) +
                  " is not central: " + *viol);
  }

  SaturationReport rep;
  rep.d = d;
  long S = static_cast<long>(alphas.size());
  for (long s = 1; s <= S; ++s) {
    const auto& alpha = alphas[static_cast<size_t>(s - 1)];
    SaturationStep step;
    step.s = s;
    step.alpha_degree = alpha.degree;
    step.bijective = true;
    for (long i = 0; i <= d && step.bijective; ++i) {
      long sd = A.dim(i), td = A.dim(i + alpha.degree);
      Matrix block = lmul_block(A, alpha, i);
      if (sd > td) {
        auto kern = block_kernel(A, block, i);
        step.bijective = false;
        step.witness = kern.empty() ? "dimension drop at degree " + std::to_string(i)
                                    : "kernel witness " + A.render(i, kern.front()) +
                                          " (degree " + std::to_string(i) + ")";
      } else if (sd < td) {
        step.bijective = false;
        step.witness = cokernel_witness(A, block, i + alpha.degree);
      } else if (sd > 0) {
        auto kern = block_kernel(A, block, i);
        if (!kern.empty()) {
          step.bijective = false;
          step.witness = "kernel witness " + A.render(i, kern.front()) + " (degree " +
                         std::to_string(i) + ")";
        }
      }
    }
    rep.steps.push_back(std::move(step));
  }

  long t = S + 1;  // minimal index from which every later step is bijective
  for (long s = S; s >= 1; --s) {
    if (!rep.steps[static_cast<size_t>(s - 1)].bijective) break;
    t = s;
  }
  if (t == S + 1) {
    rep.pass = false;
    const auto& bad = rep.steps.back();
    rep.message = "condition fails at the last supplied index s=" + std::to_string(bad.s) +
                  ": " + bad.witness;
    return rep;
  }
  rep.t_d = std::max(t, d + 1);
  if (rep.t_d > S) {
    rep.inconclusive = true;
    rep.message = "bijectivity holds from s=" + std::to_string(t) + " on, but no supplied " +
                  "index reaches t_d=" + std::to_string(rep.t_d) +
                  " > d; supply more alphas";
    return rep;
  }
  rep.pass = true;
  rep.message = "bijective for every supplied s >= t_d = " + std::to_string(rep.t_d);
  return rep;
}

CancellationReport cancellation_check(const GradedAlgebra& A, const GradedVec& alpha,
                                      long degree_bound) {
  if (vec_zero(alpha.coords)) throw Error("cancellation check: alpha is zero");
  CancellationReport rep;
  for (long i = 0; i <= degree_bound; ++i) {
    if (A.dim(i) == 0) continue;
    Matrix block = lmul_block(A, alpha, i);
    auto kern = block_kernel(A, block, i);
    if (!kern.empty()) {
      rep.pass = false;
      rep.witness_degree = i;
      rep.witness = A.render(i, kern.front());
      return rep;
    }
  }
  return rep;
}

}  // namespace opal
