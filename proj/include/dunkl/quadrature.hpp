#pragma once

// Normalized integration against h_kappa^2 on the sphere, W_{kappa,mu} on the
// ball and U_{kappa,mu} on the simplex. The exact path splits h_kappa^2 into a
// diagonal factor prod |x_i|^{2 k_i} (closed-form moments, any rational k_i)
// and a polynomial factor (integer multiplicities). Everything else goes to the
// Monte Carlo estimator.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>

#include "dunkl/groups.hpp"
#include "dunkl/poly.hpp"

namespace dunkl {

enum class Shape { Sphere, Ball, Simplex };

const char* shape_name(Shape s);

class WeightedDomain {
 public:
  static WeightedDomain sphere(RootSystem rs);
  static WeightedDomain ball(RootSystem rs, Rational mu);
  /// The root system must contain every coordinate axis (kappa may be 0) so
  /// that the ball weight is even in each variable.
  static WeightedDomain simplex(RootSystem rs, Rational mu);

  Shape shape() const { return shape_; }
  const RootSystem& root_system() const { return rs_; }
  const Rational& mu() const { return mu_; }
  std::size_t dim() const { return rs_.dim(); }
  /// lambda_kappa on the sphere, gamma_kappa + mu + (d-1)/2 on ball and simplex.
  Rational lambda() const;

 private:
  WeightedDomain(Shape s, RootSystem rs, Rational mu) : shape_(s), rs_(std::move(rs)), mu_(std::move(mu)) {}
  Shape shape_;
  RootSystem rs_;
  Rational mu_;
};

/// (1/omega) int_S x^alpha prod |x_i|^{2 kappa_i} d sigma in dimension kappa.size().
Rational sphere_monomial_integral(const RationalVector& kappa_diag, const Monomial& alpha);

/// Exact normalized integration on S^{D-1} against prod |x_i|^{2 k_i} * P(x).
/// Moment tables grow on demand under a lock; integrate may be called concurrently.
class SphereQuadrature {
 public:
  SphereQuadrature(RationalVector kappa_diag, MultiPoly weight_poly);
  ~SphereQuadrature();
  SphereQuadrature(SphereQuadrature&&) noexcept;
  SphereQuadrature& operator=(SphereQuadrature&&) noexcept;

  std::size_t dim() const { return kappa_.size(); }
  Rational integrate(const MultiPoly& f) const;

  /// int |x_axis| f w / int w = abs_axis_constant(axis) * integrate_abs_axis(f, axis).
  /// Only the all-even monomials of f contribute.
  Rational integrate_abs_axis(const MultiPoly& f, std::size_t axis) const;
  /// Gamma(k+1) Gamma(s) / (Gamma(k+1/2) Gamma(s+1/2)) with k = kappa_axis, s = gamma + D/2.
  long double abs_axis_constant(std::size_t axis) const;

 private:
  struct Tables;
  Rational raw_moment(const Monomial& a, const Tables& t) const;
  const Tables& tables_for(unsigned max_exponent) const;

  RationalVector kappa_;
  MultiPoly weight_;
  Rational norm_;
  std::unique_ptr<Tables> tables_;
};

/// Exact integrator for a weighted domain. Ball integrals are sphere integrals
/// one dimension up with mu on the new axis; simplex integrals are ball
/// integrals of f(x_1^2, ..., x_d^2).
class DomainIntegrator {
 public:
  /// Throws TierError when the weight is not exactly integrable.
  explicit DomainIntegrator(const WeightedDomain& dom);

  const WeightedDomain& domain() const { return dom_; }
  Rational integrate(const MultiPoly& f) const;
  /// Simplex only: b int (1 - sqrt(x_i)) f U dx, as a float.
  long double integrate_one_minus_sqrt(const MultiPoly& f, std::size_t axis) const;
  /// Ball only: int |x_i| f W; as rational part times constant.
  Rational integrate_abs_rational(const MultiPoly& f, std::size_t axis) const;
  long double abs_constant(std::size_t axis) const;

 private:
  MultiPoly to_sphere(const MultiPoly& f) const;
  WeightedDomain dom_;
  SphereQuadrature quad_;
};

Rational integrate_sphere(const WeightedDomain& dom, const MultiPoly& f);
Rational integrate_ball(const WeightedDomain& dom, const MultiPoly& f);
Rational integrate_simplex(const WeightedDomain& dom, const MultiPoly& f);

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

using PointFunction = std::function<double(std::span<const double>)>;

/// Estimates the normalized integral as E[f w] / E[w] under uniform sampling:
/// normalized Gaussians on the sphere, the sphere lift for the ball and its
/// image under x -> x^2 for the simplex. Samples are drawn in fixed blocks
/// with per-block seeds, so the result does not depend on the thread count.
McEstimate mc_integrate(const WeightedDomain& dom, const PointFunction& f, std::uint64_t n, std::uint64_t seed,
                        unsigned threads = 0);
McEstimate mc_integrate(const WeightedDomain& dom, const MultiPoly& f, std::uint64_t n, std::uint64_t seed,
                        unsigned threads = 0);

}  // namespace dunkl
