// Locally finite N-graded unital algebras over an exact field: dense
// structure-constant backing, normal-word presentations, the B{c}
// construction, torsion scans, and the saturation/cancellation checks.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opal/error.hpp"
#include "opal/field.hpp"
#include "opal/series.hpp"

namespace opal {

// Type label of a homogeneous basis element: degree-0 elements and the "e"
// part carry t(x) = 0, the "o" part t(x) = 1.
enum class TypeLabel { Even, Odd };

class GradedAlgebra {
 public:
  virtual ~GradedAlgebra() = default;
  virtual std::string name() const = 0;
  virtual FieldPtr field() const = 0;
  virtual long dim(long degree) const = 0;
  virtual std::string basis_label(long degree, long index) const = 0;
  // Product of two basis elements as a coefficient vector in degree d1+d2.
  virtual std::vector<Scalar> mul_basis(long d1, long i, long d2, long j) const = 0;
  virtual bool has_type_labels() const { return false; }
  virtual TypeLabel type_label(long degree, long index) const {
    (void)degree;
    (void)index;
    return TypeLabel::Even;
  }

  // Bilinear extension; x lives in degree d1, y in degree d2.
  std::vector<Scalar> mul_vec(long d1, const std::vector<Scalar>& x, long d2,
                              const std::vector<Scalar>& y) const;
  std::vector<Scalar> zero_vec(long degree) const;
  std::string render(long degree, const std::vector<Scalar>& v) const;
  HilbertSeries hilbert(long horizon) const;
};
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// A homogeneous element together with a printable name.
struct GradedVec {
  long degree = 0;
  std::vector<Scalar> coords;
  std::string label;
};
GradedVec basis_vec(const GradedAlgebra& A, long degree, long index);

// ------------------------------------------------------- dense backend

// Fully materialized components and products up to a fixed degree horizon.
class DenseAlgebra final : public GradedAlgebra {
 public:
  std::string name() const override { return name_; }
  FieldPtr field() const override { return field_; }
  long dim(long degree) const override;
  std::string basis_label(long degree, long index) const override;
  std::vector<Scalar> mul_basis(long d1, long i, long d2, long j) const override;
  bool has_type_labels() const override { return typed_; }
  TypeLabel type_label(long degree, long index) const override;
  long horizon() const { return horizon_; }

  friend AlgebraPtr dense_from_function(
      std::string name, FieldPtr f, long horizon, const std::vector<long>& dims,
      const std::function<std::string(long, long)>& label_fn,
      const std::function<std::vector<Scalar>(long, long, long, long)>& mul_fn,
      const std::function<TypeLabel(long, long)>& type_fn);

 private:
  std::string name_;
  FieldPtr field_;
  long horizon_ = 0;
  bool typed_ = false;
  std::vector<std::vector<std::string>> labels_;  // degree -> labels
  std::vector<std::vector<TypeLabel>> types_;
  // products_[d1][d2][i][j] -> coefficient vector in degree d1+d2
  std::vector<std::vector<std::vector<std::vector<std::vector<Scalar>>>>> products_;
};

// Materializes every product with d1+d2 <= horizon. Passing a null type_fn
// produces an untyped (plain graded) algebra. Requires dims[0] == 1; the
// degree-0 element must behave as the unit (validated).
AlgebraPtr dense_from_function(
    std::string name, FieldPtr f, long horizon, const std::vector<long>& dims,
    const std::function<std::string(long, long)>& label_fn,
    const std::function<std::vector<Scalar>(long, long, long, long)>& mul_fn,
    const std::function<TypeLabel(long, long)>& type_fn = nullptr);

// Snapshot of any algebra as a dense one (used to mutate copies in tests).
AlgebraPtr materialize(const GradedAlgebra& A, long horizon);

// -------------------------------------------------- normal-word backend

// Monomial presentations whose normal words are decided by one of three
// supported rule shapes; no general rewriting engine.
struct WordRules {
  bool commutative = false;
  bool squarefree = false;     // only with commutative
  bool pattern_e621 = false;   // noncommutative pattern family: x_s u x_s = 0
                               // whenever every letter of u has index < s
};

class WordAlgebra final : public GradedAlgebra {
 public:
  WordAlgebra(std::string name, FieldPtr f,
              std::vector<std::pair<std::string, long>> generators, WordRules rules);
  std::string name() const override { return name_; }
  FieldPtr field() const override { return field_; }
  long dim(long degree) const override;
  std::string basis_label(long degree, long index) const override;
  std::vector<Scalar> mul_basis(long d1, long i, long d2, long j) const override;

  // Normal words of a degree, deterministically ordered. Letters are 1-based
  // generator indices.
  const std::vector<std::vector<int>>& words(long degree) const;
  bool word_normal(const std::vector<int>& w) const;
  long generator_count() const { return static_cast<long>(gens_.size()); }
  long generator_degree(int letter) const;
  const std::string& generator_name(int letter) const;
  long word_index(long degree, const std::vector<int>& w) const;  // -1 if absent

 private:
  struct DegreeBasis {
    std::vector<std::vector<int>> words;
    std::map<std::vector<int>, long> index;
  };
  const DegreeBasis& basis(long degree) const;

  std::string name_;
  FieldPtr field_;
  std::vector<std::pair<std::string, long>> gens_;
  WordRules rules_;
  mutable std::mutex memo_mu_;
  mutable std::map<long, std::shared_ptr<const DegreeBasis>> memo_;
};

AlgebraPtr normal_word_algebra(std::string name, FieldPtr f,
                               std::vector<std::pair<std::string, long>> generators,
                               WordRules rules);
AlgebraPtr poly_algebra(FieldPtr f, long deg_t, std::string var = "t");

// -------------------------------------------------------- B{c} construction

// A Z/(b+1)-graded algebra with one basis element x_i per class, x_0 = 1:
// x_i * x_j = star[i][j] · x_{(i+j) mod (b+1)}.
struct BDesc {
  FieldPtr field;
  long b = 0;
  Matrix star;

  static BDesc truncated_poly(FieldPtr f, long b);  // y^{b+1} = 0
  static BDesc zero_products(FieldPtr f, long b);   // all positive products 0
};
enum class BcType { Even, Odd };

bool b_is_nilpotent(const BDesc& B);

// The connected N-graded algebra on basis {x_i c^j} with deg c = b+1 and the
// carry rule: a factor c is inserted whenever i1+i2 wraps past b. Odd type
// labels every positive-degree element "o" and requires b odd, char != 2.
AlgebraPtr build_Bc(const BDesc& B, BcType type, long horizon, std::string name = "");

// ------------------------------------------------------------ validations

struct AlgebraCheckReport {
  bool ok = true;
  std::vector<std::string> violations;
};
// Unit laws and associativity on all basis triples within the degree horizon.
AlgebraCheckReport check_algebra(const GradedAlgebra& A, long horizon);
bool is_commutative(const GradedAlgebra& A, long horizon, std::string* witness = nullptr);
// The three conditions on typed algebras: the two parts are ideals, opposite
// parts annihilate, and the commutation sign rule holds on all basis pairs.
AlgebraCheckReport check_pgc(const GradedAlgebra& A, long horizon);

// Returns a violation description if v fails to commute with some basis
// element at the horizon, nothing when central.
std::optional<std::string> central_violation(const GradedAlgebra& A, const GradedVec& v,
                                             long horizon);

// ------------------------------------------------------------ torsion

enum class Side { Left, Right };

struct TorsionReport {
  long horizon = 0;
  Side side = Side::Right;
  // degree -> basis of the detected subspace, with printable forms
  std::vector<std::pair<long, std::vector<std::string>>> elements;
  bool any() const { return !elements.empty(); }
};
// Right case: x with x·A_d = 0 for all 1 <= d <= horizon - deg(x); mirrored
// on the left. Candidate degrees run to horizon/2 so every candidate faces at
// least half a horizon of tests; verdicts are horizon-bounded by nature.
TorsionReport torsion_elements(const GradedAlgebra& A, Side side, long horizon);

// ------------------------------------------------- saturation / cancellation

struct SaturationStep {
  long s = 0;
  long alpha_degree = 0;
  bool bijective = false;
  std::string witness;  // kernel or cokernel description when not bijective
};
struct SaturationReport {
  bool pass = false;
  bool inconclusive = false;
  long d = 0;
  long t_d = -1;
  std::vector<SaturationStep> steps;
  std::string message;
};
// Condition: some index t_d > d exists with l_{alpha_s} bijective from the
// degree-<=d block onto its shift for every supplied s >= t_d. Alphas must be
// central (checked to central_horizon) with strictly increasing degrees.
SaturationReport saturation_condition_check(const GradedAlgebra& A,
                                            const std::vector<GradedVec>& alphas, long d,
                                            long central_horizon);

struct CancellationReport {
  bool pass = true;
  long witness_degree = -1;
  std::string witness;  // nonzero f with alpha*f = 0 when failing
};
// alpha*f = alpha*g forces f = g for deg f, deg g <= degree_bound.
CancellationReport cancellation_check(const GradedAlgebra& A, const GradedVec& alpha,
                                      long degree_bound);

}  // namespace opal
