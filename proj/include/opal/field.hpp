// Exact field arithmetic: Q, prime fields, and finite extension towers.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "opal/error.hpp"

namespace opal {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Element of a Field, stored as a coordinate vector over the prime field with
// respect to the flat product power basis of the tower. For Q the vector has
// length 1. Coordinates are mpq for characteristic 0 and reduced longs for
// characteristic p.
class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldPtr f, std::vector<mpq_class> qc) : fld_(std::move(f)), q_(std::move(qc)) {}
  Scalar(FieldPtr f, std::vector<long> pc) : fld_(std::move(f)), p_(std::move(pc)) {}

  const FieldPtr& field() const { return fld_; }
  bool is_zero() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar inv() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  std::string str() const;  // "3/2" for dim 1, "(c0,c1,...)" otherwise

  const std::vector<mpq_class>& qcoords() const { return q_; }
  const std::vector<long>& pcoords() const { return p_; }

 private:
  friend class Field;
  FieldPtr fld_;
  std::vector<mpq_class> q_;  // characteristic 0
  std::vector<long> p_;       // characteristic p
};

// A field presented as a tower of extensions over Q or F_p. Each step is a
// monic irreducible polynomial over the step below; irreducibility is checked
// by brute-force factor search at construction (desk scale).
class Field : public std::enable_shared_from_this<Field> {
 public:
  // Tower step. Coefficients are low-degree-first and exclude the leading 1.
  // For characteristic p each coefficient is an element of the previous step
  // encoded as a base-p integer code in the flat power basis; for
  // characteristic 0 coefficients are rationals (single step over Q only).
  struct Step {
    int degree = 0;
    std::vector<mpq_class> qcoeffs;            // char 0
    std::vector<std::vector<long>> pcoeffs;    // char p, decoded coordinate vectors
    std::vector<long> raw_codes;               // char p, as given (for serialization)
  };

  static FieldPtr rationals();
  static FieldPtr prime_field(long p);
  // One extension step over Q, degree 2 or 3 (rational-root irreducibility test).
  static FieldPtr extension_q(const std::vector<mpq_class>& poly);
  // Tower over F_p; polys[i] is the coded coefficient list (with leading 1) of step i.
  static FieldPtr tower_p(long p, const std::vector<std::vector<long>>& polys);

  long characteristic() const { return p_; }
  int dim() const { return dim_; }  // degree over the prime field (product of step degrees)
  int levels() const { return static_cast<int>(steps_.size()); }
  const std::vector<Step>& steps() const { return steps_; }
  bool same(const Field& o) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long n) const;
  Scalar from_mpq(const mpq_class& v) const;
  Scalar generator(int level) const;  // power-basis generator of tower step `level` (0-based)
  Scalar from_qcoords(std::vector<mpq_class> c) const;
  Scalar from_pcoords(std::vector<long> c) const;  // entries reduced mod p

  std::string describe() const;

 private:
  friend class Scalar;
  Field() = default;
  void finalize();       // compute dims/strides, validate steps
  void check_steps() const;

  std::vector<mpq_class> mul_q(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;
  std::vector<long> mul_p(const std::vector<long>& a, const std::vector<long>& b) const;
  std::vector<mpq_class> inv_q(const std::vector<mpq_class>& a) const;
  std::vector<long> inv_p(const std::vector<long>& a) const;

  void mul_level_q(int level, const mpq_class* a, const mpq_class* b, mpq_class* out) const;
  void mul_level_p(int level, const long* a, const long* b, long* out) const;

  long p_ = 0;  // 0 for characteristic zero
  std::vector<Step> steps_;
  int dim_ = 1;
  std::vector<int> stride_;  // stride_[k] = dim of the field below step k
};

bool is_prime_u64(unsigned long long n);

// Dense exact linear algebra over a Field (desk scale).
using Matrix = std::vector<std::vector<Scalar>>;

// Reduce `m` to row echelon form in place; returns rank.
int row_echelon(Matrix& m);
int rank(Matrix m);
// Basis of the right kernel of m (vectors of length = #columns).
std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m, const FieldPtr& f);
// Solve m*x = rhs; returns empty optional-like flag via bool.
bool solve_linear(const Matrix& m, const std::vector<Scalar>& rhs, std::vector<Scalar>& out,
                  const FieldPtr& f);

}  // namespace opal
