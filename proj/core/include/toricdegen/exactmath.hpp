#pragma once

// Exact integer/rational arithmetic and the small amount of lattice linear
// algebra the rest of the library needs: Hermite normal form, Bareiss
// determinants, integer and rational kernels, rational solves, and rational
// affine functions.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricdegen {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;  // row major
using RatMatrix = std::vector<RatVector>;  // row major

/// Raised when an operation's mathematical precondition is violated.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars

/// Canonical num/den; throws on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);
bool is_integer(const Rational& value);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd_of(std::span<const Integer> values);

// ---------------------------------------------------------------------------
// Vectors

IntVector zero_int_vector(std::size_t n);
RatVector zero_rat_vector(std::size_t n);
IntVector unit_int_vector(std::size_t n, std::size_t i);

bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const IntVector& a, const RatVector& b);
Rational dot(const RatVector& a, const IntVector& b);

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& v, const Integer& k);
IntVector negate(const IntVector& v);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const RatVector& v, const Rational& k);

RatVector to_rational(const IntVector& v);
RatMatrix to_rational(const IntMatrix& m);
bool is_integral(const RatVector& v);
std::optional<IntVector> to_integer(const RatVector& v);

/// v divided by the gcd of its entries; direction is preserved.
IntVector primitive(const IntVector& v);

/// Smallest positive integer multiple of a rational vector, made primitive.
IntVector primitive_integer_direction(const RatVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

// ---------------------------------------------------------------------------
// Matrices

IntMatrix transpose(const IntMatrix& m);
RatMatrix transpose(const RatMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& v);
RatVector multiply(const IntMatrix& a, const RatVector& v);
RatVector multiply(const RatMatrix& a, const RatVector& v);
IntMatrix identity_matrix(std::size_t n);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

struct HermiteForm {
  IntMatrix basis;  // nonzero rows in row-echelon form, pivots positive
  std::size_t rank = 0;
};

/// Triangular basis of the integer row span.
HermiteForm hermite_normal_form(const IntMatrix& rows);

/// True iff the n given vectors of length n form a basis of Z^n.
bool is_unimodular_basis(const IntMatrix& vectors);

/// gcd of the maximal minors of a k x n matrix (k <= n); 0 when rank < k.
Integer maximal_minors_gcd(const IntMatrix& rows);

/// True iff the rows form a basis of (their real span) intersected with Z^n.
bool is_saturated_basis(const IntMatrix& rows);

/// Basis of the lattice {x in Z^n : A x = 0}, in Hermite form.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t columns);

/// Basis of {x in Q^n : A x = 0} (reduced echelon, one vector per free column).
RatMatrix rational_kernel(const RatMatrix& a, std::size_t columns);

/// Unique solution of A x = b; nullopt when inconsistent or underdetermined.
std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& b);

/// Inverse of a square rational matrix; throws when singular.
RatMatrix inverse(const RatMatrix& m);

/// True iff x reduces to zero against the Hermite basis (lattice membership).
bool in_lattice(const HermiteForm& hnf, const IntVector& x);

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when visit returns false.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------
// Rational affine functions  x -> <linear, x> + constant

struct AffineFunction {
  RatVector linear;
  Rational constant;

  static AffineFunction zero(std::size_t n);

  std::size_t rank() const { return linear.size(); }
  Rational operator()(const RatVector& x) const;
  Rational operator()(const IntVector& x) const;
  /// Value of the linear part on a direction.
  Rational slope(const IntVector& direction) const;
  bool is_zero() const;

  friend AffineFunction operator+(const AffineFunction& a, const AffineFunction& b);
  friend AffineFunction operator-(const AffineFunction& a, const AffineFunction& b);
  friend AffineFunction operator-(const AffineFunction& a);
  friend AffineFunction operator*(const Rational& k, const AffineFunction& f);
  friend bool operator==(const AffineFunction& a, const AffineFunction& b);
};

std::string to_string(const AffineFunction& f);

}  // namespace toricdegen
