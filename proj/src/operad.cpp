#include "opal/operad.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opal {

namespace {

std::vector<Scalar> zero_coords(const FieldPtr& f, long d) {
  return std::vector<Scalar>(static_cast<size_t>(d), f->zero());
}

bool coords_zero(const std::vector<Scalar>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

bool coords_eq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operad core

Operad::Operad(std::string name, FieldPtr field, int horizon, std::vector<long> dims,
               std::function<std::string(int, long)> label_fn, OperadComposeFn compose_fn,
               std::function<ActionSpec(int)> action_fn, std::vector<Scalar> identity_coords)
    : name_(std::move(name)),
      field_(std::move(field)),
      horizon_(horizon),
      dims_(std::move(dims)),
      identity_(std::move(identity_coords)),
      compose_fn_(std::move(compose_fn)) {
  if (!field_) throw Error("operad requires a field");
  if (horizon_ < 1) throw Error("operad horizon must be at least 1");
  if (dims_.size() != static_cast<size_t>(horizon_) + 1)
    throw Error("dimension list must cover arities 0..horizon");
  if (dims_[0] != 0) throw Error("arity-0 component must be zero (reduced operad)");
  for (long d : dims_)
    if (d < 0) throw Error("negative component dimension");
  if (identity_.size() != static_cast<size_t>(dims_[1]))
    throw Error("identity coordinate length must match the arity-1 dimension");
  if (coords_zero(identity_)) throw Error("identity element must be nonzero");

  labels_.resize(static_cast<size_t>(horizon_) + 1);
  actions_.resize(static_cast<size_t>(horizon_) + 1);
  for (int n = 1; n <= horizon_; ++n) {
    long d = dims_[static_cast<size_t>(n)];
    auto& lab = labels_[static_cast<size_t>(n)];
    lab.reserve(static_cast<size_t>(d));
    for (long b = 0; b < d; ++b) lab.push_back(label_fn(n, b));
    ActionSpec spec = action_fn(n);
    switch (spec.kind) {
      case ActionKind::Trivial:
      case ActionKind::Sign:
        break;
      case ActionKind::PerBasisSign:
        if (spec.per_basis.size() != static_cast<size_t>(d))
          throw Error("per-basis sign exponents must match the component dimension");
        for (int e : spec.per_basis)
          if (e != 0 && e != 1) throw Error("per-basis sign exponent must be 0 or 1");
        break;
      case ActionKind::Explicit:
        if (spec.adjacent.size() != static_cast<size_t>(n > 0 ? n - 1 : 0))
          throw Error("explicit action needs one matrix per adjacent transposition");
        for (const auto& m : spec.adjacent) {
          if (m.size() != static_cast<size_t>(d))
            throw Error("action matrix row count must match the component dimension");
          for (const auto& row : m)
            if (row.size() != static_cast<size_t>(d))
              throw Error("action matrix must be square");
        }
        break;
    }
    actions_[static_cast<size_t>(n)] = std::move(spec);
  }
}

long Operad::dim(int n) const {
  if (n < 0) throw Error("negative arity");
  if (n > horizon_) throw Error("arity beyond materialized horizon");
  return dims_[static_cast<size_t>(n)];
}

const std::string& Operad::label(int n, long b) const {
  if (b < 0 || b >= dim(n)) throw Error("basis index out of range");
  return labels_[static_cast<size_t>(n)][static_cast<size_t>(b)];
}

const ActionSpec& Operad::action(int n) const {
  if (n < 1 || n > horizon_) throw Error("arity beyond materialized horizon");
  return actions_[static_cast<size_t>(n)];
}

std::vector<Scalar> Operad::act_adjacent_row(int n, int k, long b) const {
  long d = dim(n);
  if (b < 0 || b >= d) throw Error("basis index out of range");
  if (k < 1 || k >= n) throw Error("adjacent transposition index out of range");
  const ActionSpec& spec = actions_[static_cast<size_t>(n)];
  switch (spec.kind) {
    case ActionKind::Trivial: {
      auto row = zero_coords(field_, d);
      row[static_cast<size_t>(b)] = field_->one();
      return row;
    }
    case ActionKind::Sign: {
      auto row = zero_coords(field_, d);
      row[static_cast<size_t>(b)] = -field_->one();
      return row;
    }
    case ActionKind::PerBasisSign: {
      auto row = zero_coords(field_, d);
      row[static_cast<size_t>(b)] =
          spec.per_basis[static_cast<size_t>(b)] == 0 ? field_->one() : -field_->one();
      return row;
    }
    case ActionKind::Explicit:
      return spec.adjacent[static_cast<size_t>(k - 1)][static_cast<size_t>(b)];
  }
  throw Error("unreachable action kind");
}

OperadElement Operad::act(const OperadElement& x, const Perm& sigma) const {
  long d = dim(x.arity);
  if (x.coords.size() != static_cast<size_t>(d))
    throw Error("coordinate length does not match the component dimension");
  if (sigma.degree() != x.arity) throw Error("permutation degree must equal the arity");
  const ActionSpec& spec = actions_[static_cast<size_t>(x.arity)];
  if (spec.kind == ActionKind::Trivial) return x;
  if (spec.kind == ActionKind::Sign) {
    if (sigma.sign() == 1) return x;
    OperadElement r = x;
    for (auto& c : r.coords) c = -c;
    return r;
  }
  if (spec.kind == ActionKind::PerBasisSign) {
    if (sigma.sign() == 1) return x;
    OperadElement r = x;
    for (long b = 0; b < d; ++b)
      if (spec.per_basis[static_cast<size_t>(b)] == 1)
        r.coords[static_cast<size_t>(b)] = -r.coords[static_cast<size_t>(b)];
    return r;
  }
  // Explicit: apply the adjacent factorization left to right (right action).
  OperadElement r = x;
  for (int k : sigma.adjacent_word()) {
    const Matrix& mk = spec.adjacent[static_cast<size_t>(k - 1)];
    auto next = zero_coords(field_, d);
    for (long b = 0; b < d; ++b) {
      const Scalar& cb = r.coords[static_cast<size_t>(b)];
      if (cb.is_zero()) continue;
      for (long a = 0; a < d; ++a) {
        const Scalar& mba = mk[static_cast<size_t>(b)][static_cast<size_t>(a)];
        if (!mba.is_zero()) next[static_cast<size_t>(a)] += cb * mba;
      }
    }
    r.coords = std::move(next);
  }
  return r;
}

const Operad::Block& Operad::block(int m, int i, int n) const {
  if (m < 1 || m > horizon_ || n < 1 || n > horizon_)
    throw Error("composition arity beyond materialized horizon");
  if (i < 1 || i > m) throw Error("composition slot out of range");
  if (m + n - 1 > horizon_) throw Error("composition result exceeds the horizon");
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto key = std::make_tuple(m, i, n);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  long dm = dims_[static_cast<size_t>(m)];
  long dn = dims_[static_cast<size_t>(n)];
  long dr = dims_[static_cast<size_t>(m + n - 1)];
  Block blk(static_cast<size_t>(dm * dn));
  for (long b = 0; b < dm; ++b)
    for (long c = 0; c < dn; ++c) {
      auto v = compose_fn_(m, b, i, n, c);
      if (v.size() != static_cast<size_t>(dr))
        throw Error("composition table entry has the wrong length");
      blk[static_cast<size_t>(b * dn + c)] = std::move(v);
    }
  return cache_.emplace(key, std::move(blk)).first->second;
}

const std::vector<Scalar>& Operad::compose_basis(int m, long b, int i, int n, long c) const {
  const Block& blk = block(m, i, n);
  long dm = dims_[static_cast<size_t>(m)];
  long dn = dims_[static_cast<size_t>(n)];
  if (b < 0 || b >= dm || c < 0 || c >= dn) throw Error("basis index out of range");
  return blk[static_cast<size_t>(b * dn + c)];
}

OperadElement Operad::compose(const OperadElement& x, int i, const OperadElement& y) const {
  long dm = dim(x.arity);
  long dn = dim(y.arity);
  if (x.coords.size() != static_cast<size_t>(dm) || y.coords.size() != static_cast<size_t>(dn))
    throw Error("coordinate length does not match the component dimension");
  if (i < 1 || i > x.arity) throw Error("composition slot out of range");
  int r = x.arity + y.arity - 1;
  if (r > horizon_) throw Error("composition result exceeds the horizon");
  OperadElement out{r, zero_coords(field_, dims_[static_cast<size_t>(r)])};
  for (long b = 0; b < dm; ++b) {
    const Scalar& xb = x.coords[static_cast<size_t>(b)];
    if (xb.is_zero()) continue;
    for (long c = 0; c < dn; ++c) {
      const Scalar& yc = y.coords[static_cast<size_t>(c)];
      if (yc.is_zero()) continue;
      const auto& sc = compose_basis(x.arity, b, i, y.arity, c);
      Scalar w = xb * yc;
      for (size_t t = 0; t < sc.size(); ++t)
        if (!sc[t].is_zero()) out.coords[t] += w * sc[t];
    }
  }
  return out;
}

OperadElement Operad::identity_element() const { return OperadElement{1, identity_}; }

OperadElement Operad::basis_element(int n, long b) const {
  long d = dim(n);
  if (b < 0 || b >= d) throw Error("basis index out of range");
  OperadElement x{n, zero_coords(field_, d)};
  x.coords[static_cast<size_t>(b)] = field_->one();
  return x;
}

OperadElement Operad::zero_element(int n) const {
  return OperadElement{n, zero_coords(field_, dim(n))};
}

std::string Operad::render(int n, const std::vector<Scalar>& coords) const {
  long d = dim(n);
  if (coords.size() != static_cast<size_t>(d))
    throw Error("coordinate length does not match the component dimension");
  std::string out;
  for (long b = 0; b < d; ++b) {
    const Scalar& c = coords[static_cast<size_t>(b)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (c == field_->one())
      out += labels_[static_cast<size_t>(n)][static_cast<size_t>(b)];
    else
      out += "(" + c.str() + ")*" + labels_[static_cast<size_t>(n)][static_cast<size_t>(b)];
  }
  return out.empty() ? "0" : out;
}

HilbertSeries Operad::hilbert(long horizon) const {
  if (horizon < 0 || horizon > horizon_) throw Error("arity beyond materialized horizon");
  std::vector<mpz_class> coeffs(static_cast<size_t>(horizon) + 1, 0);
  for (long n = 1; n <= horizon; ++n) coeffs[static_cast<size_t>(n)] = dims_[static_cast<size_t>(n)];
  return HilbertSeries::from_dense(std::move(coeffs));
}

void Operad::materialize_tables(int max_arity) const {
  if (max_arity > horizon_) throw Error("arity beyond materialized horizon");
  for (int m = 1; m <= max_arity; ++m)
    for (int n = 1; m + n - 1 <= max_arity; ++n)
      for (int i = 1; i <= m; ++i) block(m, i, n);
}

OperadPtr operad_from_function(std::string name, FieldPtr field, int horizon,
                               std::vector<long> dims,
                               std::function<std::string(int, long)> label_fn,
                               OperadComposeFn compose_fn,
                               std::function<ActionSpec(int)> action_fn,
                               std::vector<Scalar> identity_coords) {
  return std::make_shared<Operad>(std::move(name), std::move(field), horizon, std::move(dims),
                                  std::move(label_fn), std::move(compose_fn),
                                  std::move(action_fn), std::move(identity_coords));
}

// ---------------------------------------------------------------------------
// Axiom checking

namespace {

// One unit of axiom-checking work; kinds partition the instance space so the
// parallel sweep has meaningful granularity and a deterministic merge order.
struct AxiomTask {
  int kind;  // 0 identity, 1 sequential, 2 parallel, 3 inner equiv, 4 outer equiv, 5 action
  int a1 = 0, a2 = 0, a3 = 0;
};

struct TaskResult {
  long checked = 0;
  std::vector<std::string> violations;
};

std::string desc(const Operad& P, int n, long b) {
  return P.label(n, b) + "(arity " + std::to_string(n) + ")";
}

void run_identity_task(const Operad& P, int n, TaskResult& out) {
  OperadElement one = P.identity_element();
  for (long b = 0; b < P.dim(n); ++b) {
    OperadElement e = P.basis_element(n, b);
    for (int i = 1; i <= n; ++i) {
      OperadElement lhs = P.compose(e, i, one);
      ++out.checked;
      if (!coords_eq(lhs.coords, e.coords))
        out.violations.push_back("identity law violated: " + desc(P, n, b) + " o_" +
                                 std::to_string(i) + " 1 = " + P.render(lhs) +
                                 " differs from the element");
    }
    OperadElement lhs = P.compose(one, 1, e);
    ++out.checked;
    if (!coords_eq(lhs.coords, e.coords))
      out.violations.push_back("identity law violated: 1 o_1 " + desc(P, n, b) + " = " +
                               P.render(lhs) + " differs from the element");
  }
}

void run_sequential_task(const Operad& P, int l, int m, int n, TaskResult& out) {
  for (long a = 0; a < P.dim(l); ++a)
    for (long b = 0; b < P.dim(m); ++b)
      for (long c = 0; c < P.dim(n); ++c) {
        OperadElement ea = P.basis_element(l, a);
        OperadElement eb = P.basis_element(m, b);
        OperadElement ec = P.basis_element(n, c);
        for (int i = 1; i <= l; ++i) {
          OperadElement ab = P.compose(ea, i, eb);
          for (int j = 1; j <= m; ++j) {
            OperadElement lhs = P.compose(ab, i - 1 + j, ec);
            OperadElement rhs = P.compose(ea, i, P.compose(eb, j, ec));
            ++out.checked;
            if (!coords_eq(lhs.coords, rhs.coords))
              out.violations.push_back(
                  "E1.1.1 violated: lambda=" + desc(P, l, a) + ", mu=" + desc(P, m, b) +
                  ", nu=" + desc(P, n, c) + ", i=" + std::to_string(i) +
                  ", j=" + std::to_string(j) + ": lhs = " + P.render(lhs) +
                  ", rhs = " + P.render(rhs));
          }
        }
      }
}

void run_parallel_axiom_task(const Operad& P, int l, int m, int n, TaskResult& out) {
  for (long a = 0; a < P.dim(l); ++a)
    for (long b = 0; b < P.dim(m); ++b)
      for (long c = 0; c < P.dim(n); ++c) {
        OperadElement ea = P.basis_element(l, a);
        OperadElement eb = P.basis_element(m, b);
        OperadElement ec = P.basis_element(n, c);
        for (int i = 1; i <= l; ++i)
          for (int k = i + 1; k <= l; ++k) {
            OperadElement lhs = P.compose(P.compose(ea, i, eb), k - 1 + m, ec);
            OperadElement rhs = P.compose(P.compose(ea, k, ec), i, eb);
            ++out.checked;
            if (!coords_eq(lhs.coords, rhs.coords))
              out.violations.push_back(
                  "E1.1.2 violated: lambda=" + desc(P, l, a) + ", mu=" + desc(P, m, b) +
                  ", nu=" + desc(P, n, c) + ", i=" + std::to_string(i) +
                  ", k=" + std::to_string(k) + ": lhs = " + P.render(lhs) +
                  ", rhs = " + P.render(rhs));
          }
      }
}

void run_inner_equivariance_task(const Operad& P, int m, int n, TaskResult& out) {
  for (int k = 1; k < n; ++k) {
    Perm sigma = Perm::adjacent(n, k);
    for (long b = 0; b < P.dim(m); ++b)
      for (long c = 0; c < P.dim(n); ++c) {
        OperadElement eb = P.basis_element(m, b);
        OperadElement ec = P.basis_element(n, c);
        for (int i = 1; i <= m; ++i) {
          OperadElement lhs = P.compose(eb, i, P.act(ec, sigma));
          OperadElement rhs = P.act(P.compose(eb, i, ec), inflate_inner(m, i, sigma));
          ++out.checked;
          if (!coords_eq(lhs.coords, rhs.coords))
            out.violations.push_back(
                "E1.1.3 violated: mu=" + desc(P, m, b) + ", nu=" + desc(P, n, c) +
                ", i=" + std::to_string(i) + ", sigma=" + sigma.str() +
                ": lhs = " + P.render(lhs) + ", rhs = " + P.render(rhs));
        }
      }
  }
}

void run_outer_equivariance_task(const Operad& P, int m, int n, TaskResult& out) {
  for (int k = 1; k < m; ++k) {
    Perm phi = Perm::adjacent(m, k);
    for (long b = 0; b < P.dim(m); ++b)
      for (long c = 0; c < P.dim(n); ++c) {
        OperadElement eb = P.basis_element(m, b);
        OperadElement ec = P.basis_element(n, c);
        for (int i = 1; i <= m; ++i) {
          OperadElement lhs = P.compose(P.act(eb, phi), i, ec);
          OperadElement rhs = P.act(P.compose(eb, phi(i), ec), inflate_outer(phi, i, n));
          ++out.checked;
          if (!coords_eq(lhs.coords, rhs.coords))
            out.violations.push_back(
                "E1.1.4 violated: mu=" + desc(P, m, b) + ", nu=" + desc(P, n, c) +
                ", phi=" + phi.str() + ", i=" + std::to_string(i) +
                ": lhs = " + P.render(lhs) + ", rhs = " + P.render(rhs));
        }
      }
  }
}

void run_action_functoriality_task(const Operad& P, int n, TaskResult& out) {
  auto group = symmetric_group(n);
  for (long b = 0; b < P.dim(n); ++b) {
    OperadElement e = P.basis_element(n, b);
    for (const Perm& s : group)
      for (const Perm& t : group) {
        OperadElement lhs = P.act(P.act(e, s), t);
        OperadElement rhs = P.act(e, s.compose(t));
        ++out.checked;
        if (!coords_eq(lhs.coords, rhs.coords))
          out.violations.push_back("action functoriality violated at " + desc(P, n, b) +
                                   ": sigma=" + s.str() + ", tau=" + t.str() +
                                   ": (x*sigma)*tau = " + P.render(lhs) +
                                   ", x*(sigma tau) = " + P.render(rhs));
      }
  }
}

AxiomReport run_axiom_check(const Operad& P, int horizon, bool parallel) {
  if (horizon < 3) throw Error("axiom check requires horizon >= 3");
  if (horizon > P.horizon()) throw Error("axiom check horizon exceeds the materialized arity");
  P.materialize_tables(horizon);

  std::vector<AxiomTask> tasks;
  for (int n = 1; n <= horizon; ++n) tasks.push_back({0, n, 0, 0});
  for (int l = 1; l <= horizon; ++l)
    for (int m = 1; l + m - 1 <= horizon; ++m)
      for (int n = 1; l + m + n - 2 <= horizon; ++n) tasks.push_back({1, l, m, n});
  for (int l = 2; l <= horizon; ++l)
    for (int m = 1; l + m - 1 <= horizon; ++m)
      for (int n = 1; l + m + n - 2 <= horizon; ++n) tasks.push_back({2, l, m, n});
  for (int m = 1; m <= horizon; ++m)
    for (int n = 2; m + n - 1 <= horizon; ++n) tasks.push_back({3, m, n, 0});
  for (int m = 2; m <= horizon; ++m)
    for (int n = 1; m + n - 1 <= horizon; ++n) tasks.push_back({4, m, n, 0});
  for (int n = 2; n <= std::min(horizon, 4); ++n) tasks.push_back({5, n, 0, 0});

  std::vector<TaskResult> results(tasks.size());
  long count = static_cast<long>(tasks.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long t = 0; t < count; ++t) {
    const AxiomTask& task = tasks[static_cast<size_t>(t)];
    TaskResult& res = results[static_cast<size_t>(t)];
    switch (task.kind) {
      case 0: run_identity_task(P, task.a1, res); break;
      case 1: run_sequential_task(P, task.a1, task.a2, task.a3, res); break;
      case 2: run_parallel_axiom_task(P, task.a1, task.a2, task.a3, res); break;
      case 3: run_inner_equivariance_task(P, task.a1, task.a2, res); break;
      case 4: run_outer_equivariance_task(P, task.a1, task.a2, res); break;
      case 5: run_action_functoriality_task(P, task.a1, res); break;
    }
  }
  (void)parallel;

  AxiomReport rep;
  std::vector<int> kept(6, 0);
  for (size_t t = 0; t < tasks.size(); ++t) {
    rep.checked += results[t].checked;
    int kind = tasks[t].kind;
    for (const auto& v : results[t].violations)
      if (kept[static_cast<size_t>(kind)] < kAxiomViolationCap) {
        rep.violations.push_back(v);
        ++kept[static_cast<size_t>(kind)];
      }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace

std::string AxiomReport::describe() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL") << " (" << checked << " instances checked";
  if (!violations.empty()) os << ", " << violations.size() << " violations recorded";
  os << ")";
  for (const auto& v : violations) os << "\n  " << v;
  return os.str();
}

AxiomReport check_axioms(const Operad& P, int horizon) {
  return run_axiom_check(P, horizon, true);
}

AxiomReport check_axioms_serial(const Operad& P, int horizon) {
  return run_axiom_check(P, horizon, false);
}

// ---------------------------------------------------------------------------
// Constructions

OperadPtr truncate(const OperadPtr& P, int w) {
  if (!P) throw Error("null operad");
  if (w < 2) throw Error("truncation parameter must be at least 2");
  int H = P->horizon();
  FieldPtr f = P->field();
  std::vector<long> dims(static_cast<size_t>(H) + 1, 0);
  dims[1] = 1;
  for (int n = w; n <= H; ++n) dims[static_cast<size_t>(n)] = P->dim(n);
  auto label_fn = [P](int n, long b) -> std::string {
    if (n == 1) return "1";
    return P->label(n, b);
  };
  auto compose_fn = [P, f](int m, long b, int i, int n, long c) -> std::vector<Scalar> {
    (void)i;
    if (m == 1 && n == 1) return {f->one()};
    if (m == 1) {  // 1 o_1 e_c = e_c
      auto v = zero_coords(f, P->dim(n));
      v[static_cast<size_t>(c)] = f->one();
      return v;
    }
    if (n == 1) {  // e_b o_i 1 = e_b
      auto v = zero_coords(f, P->dim(m));
      v[static_cast<size_t>(b)] = f->one();
      return v;
    }
    return P->compose_basis(m, b, i, n, c);
  };
  auto action_fn = [P](int n) -> ActionSpec {
    if (n == 1) return ActionSpec{};
    return P->action(n);
  };
  return operad_from_function(P->name() + "_{" + std::to_string(w) + "}", f, H,
                              std::move(dims), label_fn, compose_fn, action_fn, {f->one()});
}

namespace {

// Sign exponent of basis b at arity n for non-Explicit action kinds.
int sign_exponent(const Operad& P, int n, long b) {
  const ActionSpec& spec = P.action(n);
  switch (spec.kind) {
    case ActionKind::Trivial: return 0;
    case ActionKind::Sign: return 1;
    case ActionKind::PerBasisSign: return spec.per_basis[static_cast<size_t>(b)];
    case ActionKind::Explicit: throw Error("explicit action has no per-basis sign");
  }
  throw Error("unreachable action kind");
}

Matrix action_matrix(const Operad& P, int n, int k) {
  Matrix m;
  long d = P.dim(n);
  m.reserve(static_cast<size_t>(d));
  for (long b = 0; b < d; ++b) m.push_back(P.act_adjacent_row(n, k, b));
  return m;
}

}  // namespace

OperadPtr direct_sum(const OperadPtr& P, const OperadPtr& Q) {
  if (!P || !Q) throw Error("null operad");
  FieldPtr f = P->field();
  if (!f->same(*Q->field())) throw Error("direct sum requires operads over the same field");
  int H = std::min(P->horizon(), Q->horizon());
  std::vector<long> dims(static_cast<size_t>(H) + 1, 0);
  for (int n = 1; n <= H; ++n) dims[static_cast<size_t>(n)] = P->dim(n) + Q->dim(n);
  auto label_fn = [P, Q](int n, long b) -> std::string {
    long dp = P->dim(n);
    return b < dp ? "s1." + P->label(n, b) : "s2." + Q->label(n, b - dp);
  };
  auto compose_fn = [P, Q, f](int m, long b, int i, int n, long c) -> std::vector<Scalar> {
    long pm = P->dim(m), pn = P->dim(n);
    long rp = P->dim(m + n - 1), rq = Q->dim(m + n - 1);
    auto out = zero_coords(f, rp + rq);
    if (b < pm && c < pn) {
      const auto& v = P->compose_basis(m, b, i, n, c);
      for (long t = 0; t < rp; ++t) out[static_cast<size_t>(t)] = v[static_cast<size_t>(t)];
    } else if (b >= pm && c >= pn) {
      const auto& v = Q->compose_basis(m, b - pm, i, n, c - pn);
      for (long t = 0; t < rq; ++t) out[static_cast<size_t>(rp + t)] = v[static_cast<size_t>(t)];
    }
    return out;  // cross terms vanish
  };
  auto action_fn = [P, Q](int n) -> ActionSpec {
    const ActionSpec& ap = P->action(n);
    const ActionSpec& aq = Q->action(n);
    long dp = P->dim(n), dq = Q->dim(n);
    if (ap.kind == ActionKind::Explicit || aq.kind == ActionKind::Explicit) {
      ActionSpec spec;
      spec.kind = ActionKind::Explicit;
      for (int k = 1; k < n; ++k) {
        Matrix mp = action_matrix(*P, n, k);
        Matrix mq = action_matrix(*Q, n, k);
        Matrix blockdiag(static_cast<size_t>(dp + dq),
                         zero_coords(P->field(), dp + dq));
        for (long r = 0; r < dp; ++r)
          for (long s = 0; s < dp; ++s)
            blockdiag[static_cast<size_t>(r)][static_cast<size_t>(s)] =
                mp[static_cast<size_t>(r)][static_cast<size_t>(s)];
        for (long r = 0; r < dq; ++r)
          for (long s = 0; s < dq; ++s)
            blockdiag[static_cast<size_t>(dp + r)][static_cast<size_t>(dp + s)] =
                mq[static_cast<size_t>(r)][static_cast<size_t>(s)];
        spec.adjacent.push_back(std::move(blockdiag));
      }
      return spec;
    }
    if (ap.kind == aq.kind && ap.kind != ActionKind::PerBasisSign && (dp > 0 && dq > 0))
      return ActionSpec{ap.kind, {}, {}};
    if (dp == 0 && aq.kind != ActionKind::PerBasisSign) return ActionSpec{aq.kind, {}, {}};
    if (dq == 0 && ap.kind != ActionKind::PerBasisSign) return ActionSpec{ap.kind, {}, {}};
    ActionSpec spec;
    spec.kind = ActionKind::PerBasisSign;
    for (long b = 0; b < dp; ++b) spec.per_basis.push_back(sign_exponent(*P, n, b));
    for (long b = 0; b < dq; ++b) spec.per_basis.push_back(sign_exponent(*Q, n, b));
    return spec;
  };
  std::vector<Scalar> identity = P->identity_element().coords;
  for (const auto& c : Q->identity_element().coords) identity.push_back(c);
  return operad_from_function(P->name() + "+" + Q->name(), f, H, std::move(dims), label_fn,
                              compose_fn, action_fn, std::move(identity));
}

OperadPtr base_change(const OperadPtr& P, const FieldPtr& R) {
  if (!P || !R) throw Error("null operad or field");
  FieldPtr k = P->field();
  if (k->dim() != 1)
    throw Error("base change requires an operad over the prime field");
  if (R->characteristic() != k->characteristic())
    throw Error("base change requires an extension of the operad's base field");
  long e = R->dim();
  bool char0 = k->characteristic() == 0;

  // Structure constants of R over k in its flat power basis.
  auto r_basis = [&](long a) {
    if (char0) {
      std::vector<mpq_class> co(static_cast<size_t>(e), 0);
      co[static_cast<size_t>(a)] = 1;
      return R->from_qcoords(std::move(co));
    }
    std::vector<long> co(static_cast<size_t>(e), 0);
    co[static_cast<size_t>(a)] = 1;
    return R->from_pcoords(std::move(co));
  };
  auto to_k = [&](const Scalar& r) {
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(e));
    if (char0)
      for (const auto& q : r.qcoords()) out.push_back(k->from_mpq(q));
    else
      for (long p : r.pcoords()) out.push_back(k->from_int(p));
    return out;
  };
  auto rtable = std::make_shared<std::vector<std::vector<std::vector<Scalar>>>>();
  rtable->resize(static_cast<size_t>(e));
  for (long a = 0; a < e; ++a) {
    (*rtable)[static_cast<size_t>(a)].resize(static_cast<size_t>(e));
    for (long b = 0; b < e; ++b)
      (*rtable)[static_cast<size_t>(a)][static_cast<size_t>(b)] = to_k(r_basis(a) * r_basis(b));
  }

  int H = P->horizon();
  std::vector<long> dims(static_cast<size_t>(H) + 1, 0);
  for (int n = 1; n <= H; ++n) dims[static_cast<size_t>(n)] = P->dim(n) * e;
  auto label_fn = [P, e](int n, long idx) -> std::string {
    return P->label(n, idx / e) + "*f" + std::to_string(idx % e);
  };
  auto compose_fn = [P, k, e, rtable](int m, long bi, int i, int n, long ci) -> std::vector<Scalar> {
    long b = bi / e, a = bi % e;
    long c = ci / e, a2 = ci % e;
    const auto& v = P->compose_basis(m, b, i, n, c);
    const auto& w = (*rtable)[static_cast<size_t>(a)][static_cast<size_t>(a2)];
    auto out = zero_coords(k, P->dim(m + n - 1) * e);
    for (size_t d = 0; d < v.size(); ++d) {
      if (v[d].is_zero()) continue;
      for (long g = 0; g < e; ++g)
        if (!w[static_cast<size_t>(g)].is_zero())
          out[d * static_cast<size_t>(e) + static_cast<size_t>(g)] =
              v[d] * w[static_cast<size_t>(g)];
    }
    return out;
  };
  auto action_fn = [P, k, e](int n) -> ActionSpec {
    const ActionSpec& ap = P->action(n);
    if (ap.kind == ActionKind::Trivial || ap.kind == ActionKind::Sign) return ActionSpec{ap.kind, {}, {}};
    if (ap.kind == ActionKind::PerBasisSign) {
      ActionSpec spec;
      spec.kind = ActionKind::PerBasisSign;
      for (long b = 0; b < P->dim(n); ++b)
        for (long a = 0; a < e; ++a)
          spec.per_basis.push_back(ap.per_basis[static_cast<size_t>(b)]);
      return spec;
    }
    ActionSpec spec;  // Explicit: Kronecker product with the identity on R
    spec.kind = ActionKind::Explicit;
    long d = P->dim(n);
    for (int kk = 1; kk < n; ++kk) {
      Matrix big(static_cast<size_t>(d * e), zero_coords(k, d * e));
      for (long b = 0; b < d; ++b) {
        auto row = P->act_adjacent_row(n, kk, b);
        for (long b2 = 0; b2 < d; ++b2)
          if (!row[static_cast<size_t>(b2)].is_zero())
            for (long a = 0; a < e; ++a)
              big[static_cast<size_t>(b * e + a)][static_cast<size_t>(b2 * e + a)] =
                  row[static_cast<size_t>(b2)];
      }
      spec.adjacent.push_back(std::move(big));
    }
    return spec;
  };
  std::vector<Scalar> identity = zero_coords(k, P->dim(1) * e);
  auto idP = P->identity_element().coords;
  for (size_t b = 0; b < idP.size(); ++b) identity[b * static_cast<size_t>(e)] = idP[b];
  return operad_from_function(P->name() + "_R", k, H, std::move(dims), label_fn, compose_fn,
                              action_fn, std::move(identity));
}

OperadPtr with_mutated_composition(const OperadPtr& P, int m, long b, int i, int n, long c,
                                   std::vector<Scalar> coeffs) {
  if (!P) throw Error("null operad");
  if (m + n - 1 > P->horizon()) throw Error("composition result exceeds the horizon");
  if (coeffs.size() != static_cast<size_t>(P->dim(m + n - 1)))
    throw Error("mutated entry has the wrong length");
  int H = P->horizon();
  std::vector<long> dims(static_cast<size_t>(H) + 1, 0);
  for (int a = 1; a <= H; ++a) dims[static_cast<size_t>(a)] = P->dim(a);
  auto compose_fn = [P, m, b, i, n, c, coeffs](int mm, long bb, int ii, int nn,
                                               long cc) -> std::vector<Scalar> {
    if (mm == m && bb == b && ii == i && nn == n && cc == c) return coeffs;
    return P->compose_basis(mm, bb, ii, nn, cc);
  };
  return operad_from_function(P->name() + "(mutated)", P->field(), H, std::move(dims),
                              [P](int a, long bb) { return P->label(a, bb); }, compose_fn,
                              [P](int a) { return P->action(a); },
                              P->identity_element().coords);
}

EqualReport operads_equal(const Operad& P, const Operad& Q, int horizon) {
  if (horizon > P.horizon() || horizon > Q.horizon())
    throw Error("equality horizon exceeds a materialized arity");
  EqualReport rep;
  auto fail = [&rep](std::string msg) {
    rep.equal = false;
    rep.mismatch = std::move(msg);
    return rep;
  };
  if (!P.field()->same(*Q.field())) return fail("fields differ");
  for (int n = 0; n <= horizon; ++n)
    if (P.dim(n) != Q.dim(n))
      return fail("dimension mismatch at arity " + std::to_string(n) + ": " +
                  std::to_string(P.dim(n)) + " vs " + std::to_string(Q.dim(n)));
  if (!coords_eq(P.identity_element().coords, Q.identity_element().coords))
    return fail("identity elements differ");
  for (int n = 2; n <= horizon; ++n)
    for (int k = 1; k < n; ++k)
      for (long b = 0; b < P.dim(n); ++b)
        if (!coords_eq(P.act_adjacent_row(n, k, b), Q.act_adjacent_row(n, k, b)))
          return fail("action mismatch at arity " + std::to_string(n) + ", basis " +
                      std::to_string(b) + ", transposition (" + std::to_string(k) + " " +
                      std::to_string(k + 1) + ")");
  for (int m = 1; m <= horizon; ++m)
    for (int n = 1; m + n - 1 <= horizon; ++n)
      for (int i = 1; i <= m; ++i)
        for (long b = 0; b < P.dim(m); ++b)
          for (long c = 0; c < P.dim(n); ++c)
            if (!coords_eq(P.compose_basis(m, b, i, n, c), Q.compose_basis(m, b, i, n, c)))
              return fail("composition mismatch at (" + std::to_string(m) + "," +
                          std::to_string(b) + ") o_" + std::to_string(i) + " (" +
                          std::to_string(n) + "," + std::to_string(c) + ")");
  return rep;
}

// ---------------------------------------------------------------------------
// Ideals and primeness

namespace {

// Drop zero rows after echelonization.
void compact(Matrix& m) {
  row_echelon(m);
  while (!m.empty() && coords_zero(m.back())) m.pop_back();
}

// Returns true if appending v enlarged the row space.
bool absorb(Matrix& span, const std::vector<Scalar>& v) {
  if (coords_zero(v)) return false;
  long before = static_cast<long>(span.size());
  span.push_back(v);
  compact(span);
  return static_cast<long>(span.size()) > before;
}

}  // namespace

bool Ideal::is_zero() const {
  for (const auto& m : span)
    if (!m.empty()) return false;
  return true;
}

long Ideal::rank(int n) const {
  if (n < 0 || n >= static_cast<int>(span.size())) return 0;
  return static_cast<long>(span[static_cast<size_t>(n)].size());
}

std::string Ideal::describe(const Operad& P) const {
  std::ostringstream os;
  bool first = true;
  for (int n = 1; n < static_cast<int>(span.size()); ++n) {
    if (span[static_cast<size_t>(n)].empty()) continue;
    if (!first) os << ", ";
    first = false;
    os << "arity " << n << ": rank " << span[static_cast<size_t>(n)].size();
  }
  (void)P;
  if (first) os << "zero ideal";
  return os.str();
}

Ideal ideal_generated_by(const Operad& P, const std::vector<OperadElement>& gens,
                         int horizon) {
  if (horizon < 1 || horizon > P.horizon())
    throw Error("ideal horizon exceeds the materialized arity");
  Ideal I;
  I.span.resize(static_cast<size_t>(horizon) + 1);
  for (const auto& g : gens) {
    if (g.arity < 1 || g.arity > horizon) throw Error("generator arity out of range");
    if (g.coords.size() != static_cast<size_t>(P.dim(g.arity)))
      throw Error("generator coordinate length mismatch");
    absorb(I.span[static_cast<size_t>(g.arity)], g.coords);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 1; n <= horizon; ++n) {
      Matrix snapshot = I.span[static_cast<size_t>(n)];
      for (const auto& row : snapshot) {
        OperadElement x{n, row};
        for (int k = 1; k < n; ++k)
          changed |= absorb(I.span[static_cast<size_t>(n)],
                            P.act(x, Perm::adjacent(n, k)).coords);
        for (int m = 1; m <= horizon; ++m) {
          if (n + m - 1 > horizon || P.dim(m) == 0) continue;
          for (long b = 0; b < P.dim(m); ++b) {
            OperadElement e = P.basis_element(m, b);
            for (int i = 1; i <= n; ++i)
              changed |= absorb(I.span[static_cast<size_t>(n + m - 1)],
                                P.compose(x, i, e).coords);
            for (int i = 1; i <= m; ++i)
              changed |= absorb(I.span[static_cast<size_t>(n + m - 1)],
                                P.compose(e, i, x).coords);
          }
        }
      }
    }
  }
  return I;
}

Ideal ideal_product(const Operad& P, const Ideal& I, const Ideal& J, int horizon) {
  if (horizon < 1 || horizon > P.horizon())
    throw Error("ideal horizon exceeds the materialized arity");
  Ideal K;
  K.span.resize(static_cast<size_t>(horizon) + 1);
  int hi = static_cast<int>(I.span.size()) - 1;
  int hj = static_cast<int>(J.span.size()) - 1;
  for (int m = 1; m <= hi; ++m)
    for (const auto& vrow : I.span[static_cast<size_t>(m)])
      for (int n = 1; n <= hj; ++n) {
        if (m + n - 1 > horizon) continue;
        for (const auto& wrow : J.span[static_cast<size_t>(n)])
          for (int i = 1; i <= m; ++i)
            absorb(K.span[static_cast<size_t>(m + n - 1)],
                   P.compose(OperadElement{m, vrow}, i, OperadElement{n, wrow}).coords);
      }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 2; n <= horizon; ++n) {
      Matrix snapshot = K.span[static_cast<size_t>(n)];
      for (const auto& row : snapshot)
        for (int k = 1; k < n; ++k)
          changed |= absorb(K.span[static_cast<size_t>(n)],
                            P.act(OperadElement{n, row}, Perm::adjacent(n, k)).coords);
    }
  }
  return K;
}

bool ideal_contains(const Ideal& I, const OperadElement& x) {
  if (coords_zero(x.coords)) return true;
  if (x.arity < 0 || x.arity >= static_cast<int>(I.span.size())) return false;
  Matrix m = I.span[static_cast<size_t>(x.arity)];
  long before = static_cast<long>(m.size());
  m.push_back(x.coords);
  compact(m);
  return static_cast<long>(m.size()) == before;
}

PrimeReport prime_at_horizon(const Operad& P, int horizon) {
  if (horizon < 2 || horizon > P.horizon())
    throw Error("primeness horizon exceeds the materialized arity");
  PrimeReport rep;
  for (int n = 1; n <= horizon; ++n)
    if (P.dim(n) > kPrimeDimCap) {
      rep.inconclusive = true;
      rep.message = "inconclusive: component at arity " + std::to_string(n) +
                    " too large (dim " + std::to_string(P.dim(n)) + " > cap " +
                    std::to_string(kPrimeDimCap) + ")";
      return rep;
    }
  std::vector<OperadElement> pool;
  for (int n = 1; n <= horizon; ++n) {
    long d = P.dim(n);
    if (d == 0) continue;
    if (d <= 3) {
      for (long mask = 1; mask < (1L << d); ++mask) {
        OperadElement x{n, std::vector<Scalar>(static_cast<size_t>(d), P.field()->zero())};
        for (long b = 0; b < d; ++b)
          if (mask & (1L << b)) x.coords[static_cast<size_t>(b)] = P.field()->one();
        pool.push_back(std::move(x));
      }
    } else {
      for (long b = 0; b < d; ++b) pool.push_back(P.basis_element(n, b));
    }
  }
  std::vector<Ideal> ideals;
  ideals.reserve(pool.size());
  for (const auto& g : pool) ideals.push_back(ideal_generated_by(P, {g}, horizon));
  // The lowest occupied arity of each ideal decides whether a pair can be
  // tested at all: when even the smallest compositions overflow the horizon,
  // a zero product is vacuous and must not count as a witness.
  std::vector<int> min_arity(pool.size(), horizon + 1);
  for (size_t a = 0; a < pool.size(); ++a)
    for (int n = 1; n <= horizon; ++n)
      if (ideals[a].rank(n) > 0) {
        min_arity[a] = n;
        break;
      }
  size_t tested = 0;
  for (size_t a = 0; a < pool.size(); ++a)
    for (size_t b = 0; b < pool.size(); ++b) {
      if (ideals[a].is_zero() || ideals[b].is_zero()) continue;
      if (min_arity[a] + min_arity[b] - 1 > horizon) continue;
      ++tested;
      Ideal prod = ideal_product(P, ideals[a], ideals[b], horizon);
      if (prod.is_zero()) {
        rep.witness_found = true;
        rep.gen_i = P.render(pool[a].arity, pool[a].coords);
        rep.gen_j = P.render(pool[b].arity, pool[b].coords);
        rep.message = "witness: ideal(" + rep.gen_i + ") o ideal(" + rep.gen_j +
                      ") = 0 at horizon " + std::to_string(horizon);
        return rep;
      }
    }
  rep.message = "no violation found over " + std::to_string(tested) +
                " generator pairs at horizon " + std::to_string(horizon) +
                " (not a primeness proof)";
  return rep;
}

// ---------------------------------------------------------------------------
// Centrality and triviality

CentralReport is_central(const Operad& P, const OperadElement& x, int horizon) {
  if (horizon < 1 || horizon > P.horizon())
    throw Error("centrality horizon exceeds the materialized arity");
  CentralReport rep;
  int a = x.arity;
  if (x.coords.size() != static_cast<size_t>(P.dim(a)))
    throw Error("coordinate length does not match the component dimension");
  for (int n = 1; n <= horizon && a + n - 1 <= horizon; ++n)
    for (long c = 0; c < P.dim(n); ++c) {
      OperadElement nu = P.basis_element(n, c);
      for (int i = 1; i <= a; ++i) {
        OperadElement lhs = P.compose(x, i, nu);
        for (int j = 1; j <= n; ++j) {
          OperadElement rhs = P.compose(nu, j, x);
          if (!coords_eq(lhs.coords, rhs.coords)) {
            rep.central = false;
            rep.violation = "x o_" + std::to_string(i) + " nu != nu o_" + std::to_string(j) +
                            " x for nu=" + P.label(n, c) + " (arity " + std::to_string(n) +
                            "): " + P.render(lhs) + " vs " + P.render(rhs);
            return rep;
          }
        }
      }
    }
  return rep;
}

namespace {

bool matrix_is_scaled_identity(const Matrix& m, const Scalar& s, const FieldPtr& f) {
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) {
      const Scalar& want = r == c ? s : f->zero();
      if (m[r][c] != want) return false;
    }
  return true;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, const FieldPtr& f) {
  size_t n = a.size();
  Matrix out(n, std::vector<Scalar>(n, f->zero()));
  for (size_t r = 0; r < n; ++r)
    for (size_t k = 0; k < n; ++k) {
      if (a[r][k].is_zero()) continue;
      for (size_t c = 0; c < n; ++c)
        if (!b[k][c].is_zero()) out[r][c] += a[r][k] * b[k][c];
    }
  return out;
}

}  // namespace

Triviality classify_triviality(const Operad& P, int n) {
  if (n < 1 || n > P.horizon()) throw Error("arity beyond materialized horizon");
  if (n == 1 || P.dim(n) == 0) return Triviality::STrivial;
  FieldPtr f = P.field();
  std::vector<Matrix> mats;
  for (int k = 1; k < n; ++k) mats.push_back(action_matrix(P, n, k));
  bool all_id = true, all_neg = true;
  for (const auto& m : mats) {
    if (!matrix_is_scaled_identity(m, f->one(), f)) all_id = false;
    if (!matrix_is_scaled_identity(m, -f->one(), f)) all_neg = false;
  }
  if (all_id) return Triviality::STrivial;
  if (all_neg) return Triviality::SSigned;
  if (n == 2) return Triviality::ATrivialOnly;  // A_2 is trivial
  for (size_t k = 0; k + 1 < mats.size(); ++k)
    if (!matrix_is_scaled_identity(mat_mul(mats[k], mats[k + 1], f), f->one(), f))
      return Triviality::None;
  return Triviality::ATrivialOnly;
}

std::string triviality_name(Triviality t) {
  switch (t) {
    case Triviality::STrivial: return "S-trivial";
    case Triviality::SSigned: return "S-signed";
    case Triviality::ATrivialOnly: return "A-trivial-only";
    case Triviality::None: return "none";
  }
  throw Error("unreachable triviality label");
}

}  // namespace opal
