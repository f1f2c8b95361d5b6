// Locally finite symmetric operads via structure constants: composition,
// symmetric-group action, axiom checking, truncation, direct sum, base
// change, ideals, and horizon-bounded primeness / centrality verdicts.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "opal/error.hpp"
#include "opal/field.hpp"
#include "opal/permutation.hpp"
#include "opal/series.hpp"

namespace opal {

// How one arity component transforms under the right S_n action. Closed-form
// tags cover every built-in construction; Explicit carries one matrix per
// adjacent transposition (k, k+1), row b = image coordinates of basis b.
enum class ActionKind { Trivial, Sign, PerBasisSign, Explicit };

struct ActionSpec {
  ActionKind kind = ActionKind::Trivial;
  std::vector<int> per_basis;     // PerBasisSign: sign exponent (0/1) per basis elt
  std::vector<Matrix> adjacent;   // Explicit: index k-1 holds the matrix of (k, k+1)
};

struct OperadElement {
  int arity = 0;
  std::vector<Scalar> coords;
};

class Operad;
using OperadPtr = std::shared_ptr<const Operad>;

// Structure constants of e_b o_i e_c for arities (m, n); the returned vector
// has one coefficient per basis element of the arity-(m+n-1) component.
using OperadComposeFn =
    std::function<std::vector<Scalar>(int m, long b, int i, int n, long c)>;

// Immutable operad materialized up to a maximal arity ("horizon"). The
// arity-0 component is always zero. Composition blocks are computed lazily
// from the supplied function and memoized; all other data is fixed up front.
class Operad {
 public:
  Operad(std::string name, FieldPtr field, int horizon, std::vector<long> dims,
         std::function<std::string(int, long)> label_fn, OperadComposeFn compose_fn,
         std::function<ActionSpec(int)> action_fn, std::vector<Scalar> identity_coords);

  const std::string& name() const { return name_; }
  const FieldPtr& field() const { return field_; }
  int horizon() const { return horizon_; }
  long dim(int n) const;  // 0 <= n <= horizon
  const std::string& label(int n, long b) const;
  const ActionSpec& action(int n) const;

  // Image of basis element b under the adjacent transposition (k, k+1).
  std::vector<Scalar> act_adjacent_row(int n, int k, long b) const;
  OperadElement act(const OperadElement& x, const Perm& sigma) const;

  const std::vector<Scalar>& compose_basis(int m, long b, int i, int n, long c) const;
  OperadElement compose(const OperadElement& x, int i, const OperadElement& y) const;

  OperadElement identity_element() const;
  OperadElement basis_element(int n, long b) const;
  OperadElement zero_element(int n) const;

  std::string render(int n, const std::vector<Scalar>& coords) const;
  std::string render(const OperadElement& x) const { return render(x.arity, x.coords); }

  // Coefficients: degree n = dim of the arity-n component (degree 0 is 0).
  HilbertSeries hilbert(long horizon) const;

  // Precompute all composition blocks with result arity <= max_arity.
  void materialize_tables(int max_arity) const;

 private:
  std::string name_;
  FieldPtr field_;
  int horizon_ = 0;
  std::vector<long> dims_;                       // index = arity, [0] == 0
  std::vector<std::vector<std::string>> labels_; // per arity
  std::vector<ActionSpec> actions_;              // per arity
  std::vector<Scalar> identity_;
  OperadComposeFn compose_fn_;

  using Block = std::vector<std::vector<Scalar>>;  // [b * dim(n) + c] -> coeffs
  const Block& block(int m, int i, int n) const;
  mutable std::map<std::tuple<int, int, int>, Block> cache_;
  mutable std::mutex cache_mu_;
};

OperadPtr operad_from_function(std::string name, FieldPtr field, int horizon,
                               std::vector<long> dims,
                               std::function<std::string(int, long)> label_fn,
                               OperadComposeFn compose_fn,
                               std::function<ActionSpec(int)> action_fn,
                               std::vector<Scalar> identity_coords);

// ---------------------------------------------------------------------------
// Axiom checking

struct AxiomReport {
  bool pass = true;
  std::vector<std::string> violations;  // capped per axiom, deterministic order
  long checked = 0;                     // number of verified instances
  std::string describe() const;
};

inline constexpr int kAxiomViolationCap = 20;  // retained per axiom family

// Exhaustively verifies, for all basis instances with result arity <= horizon:
// the identity laws, the sequential and parallel composition axioms, and
// equivariance on adjacent transpositions (inflating inner/outer factors),
// plus full-group action functoriality for arities <= 4.
AxiomReport check_axioms(const Operad& P, int horizon);
AxiomReport check_axioms_serial(const Operad& P, int horizon);

// ---------------------------------------------------------------------------
// Constructions

// Arity 1 cut to the span of the identity, arities 2..w-1 zeroed, >= w kept.
OperadPtr truncate(const OperadPtr& P, int w);

// Componentwise direct sum: cross compositions vanish, identity is the pair.
OperadPtr direct_sum(const OperadPtr& P, const OperadPtr& Q);

// P over its prime field k, tensored with a finite extension R of k: the
// arity-n component becomes P(n) (x) R viewed as a k-space, with composition
// multiplying the R parts and the action fixing them.
OperadPtr base_change(const OperadPtr& P, const FieldPtr& R);

// Copy of P with one composition structure-constant vector replaced
// (negative-control material for the axiom checker).
OperadPtr with_mutated_composition(const OperadPtr& P, int m, long b, int i, int n,
                                   long c, std::vector<Scalar> coeffs);

// Structural equality at horizon: dims, identity, action matrices, and all
// composition constants (labels are not compared).
struct EqualReport {
  bool equal = true;
  std::string mismatch;
};
EqualReport operads_equal(const Operad& P, const Operad& Q, int horizon);

// ---------------------------------------------------------------------------
// Ideals and primeness at horizon

// Arity-indexed spanning sets, kept in reduced row echelon form; closed under
// the group action and two-sided composition up to the horizon it was built at.
struct Ideal {
  std::vector<Matrix> span;  // span[n] for 1 <= n <= horizon; span[0] unused
  bool is_zero() const;
  long rank(int n) const;
  std::string describe(const Operad& P) const;
};

Ideal ideal_generated_by(const Operad& P, const std::vector<OperadElement>& gens,
                         int horizon);
// S-submodule spanned by all x o_i y with x in I, y in J (closed under the
// action but not under further composition with P).
Ideal ideal_product(const Operad& P, const Ideal& I, const Ideal& J, int horizon);
bool ideal_contains(const Ideal& I, const OperadElement& x);

// Searches pairs of ideals generated by single basis elements (plus all 0/1
// coordinate vectors when dim <= 3) for an annihilating pair I o J = 0. Pairs
// whose smallest compositions already overflow the horizon are skipped, so a
// reported zero product always reflects compositions that were evaluated. Can
// certify non-primeness only; "no violation found" is not a primeness proof.
struct PrimeReport {
  bool witness_found = false;
  bool inconclusive = false;
  std::string message;
  std::string gen_i, gen_j;  // rendered witness generators
};
inline constexpr long kPrimeDimCap = 8;
PrimeReport prime_at_horizon(const Operad& P, int horizon);

// ---------------------------------------------------------------------------
// Centrality and triviality labels

// x is central up to horizon if x o_i nu = nu o_j x for every basis element
// nu, whenever the result arity stays within the horizon.
struct CentralReport {
  bool central = true;
  std::string violation;
};
CentralReport is_central(const Operad& P, const OperadElement& x, int horizon);

enum class Triviality { STrivial, SSigned, ATrivialOnly, None };
Triviality classify_triviality(const Operad& P, int n);
std::string triviality_name(Triviality t);

}  // namespace opal
