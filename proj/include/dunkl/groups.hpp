#pragma once

// Reflection groups given by a positive root system with a multiplicity
// function, and the constants and weight derived from them.

#include <span>
#include <vector>

#include "dunkl/poly.hpp"
#include "dunkl/rational.hpp"

namespace dunkl {

inline constexpr std::size_t kDefaultGroupCap = 1'000'000;

struct Root {
  RationalVector vector;
  Rational multiplicity;
};

enum class RootSystemKind { Z2d, GeneralIntegerKappa };

/// A positive root system with multiplicities. The constructor checks the
/// local invariants (nonzero, non-parallel, nonnegative kappa, kind shape);
/// closure under the group and equal multiplicity on conjugate roots are
/// checked by validate_orbits, which the constructor also calls.
class RootSystem {
 public:
  RootSystem(std::size_t dim, std::vector<Root> roots, RootSystemKind kind);

  /// Z_2^d with kappa_i on e_i.
  static RootSystem z2d(const RationalVector& kappa);
  /// Type A_{d-1} on R^d: roots e_i - e_j (i < j), one multiplicity.
  static RootSystem type_a(std::size_t dim, const Rational& kappa);
  /// Type B_d: kappa0 on e_i, kappa1 on e_i - e_j and e_i + e_j.
  static RootSystem type_b(std::size_t dim, const Rational& kappa0, const Rational& kappa1);
  /// kappa = 0 with no roots.
  static RootSystem trivial(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Root>& roots() const { return roots_; }
  RootSystemKind kind() const { return kind_; }

  /// Index of the axis if v is a multiple of a standard basis vector, else -1.
  static int axis_of(const RationalVector& v);

 private:
  std::size_t dim_;
  std::vector<Root> roots_;
  RootSystemKind kind_;
};

struct DerivedConstants {
  Rational gamma_kappa;
  Rational lambda_kappa;
};

/// x sigma_v = x - 2 <x,v> v / |v|^2.
RationalVector reflect(const RationalVector& x, const RationalVector& v);
RationalVector reflect(const RationalVector& x, const Root& v);

/// Matrix of sigma_v acting on row vectors.
RationalMatrix reflection_matrix(const RationalVector& v);

/// Closure of the reflections under composition, identity first.
std::vector<RationalMatrix> generate_group(const RootSystem& rs, std::size_t cap = kDefaultGroupCap);

/// Throws InvalidRootSystem when some reflection maps a root outside the
/// root set (up to sign and scaling) or when conjugate roots carry different
/// multiplicities.
void validate_orbits(const RootSystem& rs);

DerivedConstants derived_constants(const RootSystem& rs);

/// h_kappa^2 written as prod_i |x_i|^{axis_exponent[i]} times a polynomial.
/// Roots along coordinate axes contribute to the exponent list (any rational
/// kappa); every other root contributes <x,v>^{2 kappa_v} to the polynomial
/// and needs integer kappa.
struct WeightSquared {
  RationalVector axis_exponents;
  MultiPoly polynomial;
};

/// Throws TierError when a non-axis root has non-integer multiplicity.
WeightSquared weight_h_squared(const RootSystem& rs);

/// Floating h_kappa^2(x) = prod |<x,v>|^{2 kappa_v}.
double weight_h_squared_value(const RootSystem& rs, std::span<const double> x);

}  // namespace dunkl
