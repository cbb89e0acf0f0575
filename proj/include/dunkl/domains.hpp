#pragma once

// Ball and simplex through the sphere: lifts, pullbacks, gradient norms, the
// ball eigen-operator and the intrinsic distances.

#include <span>
#include <vector>

#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// F(x, x_{d+1}) = f(x) on S^d.
SphereFunction lift_to_sphere(const MultiPoly& f);

/// Root system on R^{d+1} for h_kappa^2(x) |x_{d+1}|^{2 mu}: the roots of rs
/// padded with a zero and e_{d+1} with multiplicity mu.
RootSystem lifted_root_system(const RootSystem& rs, const Rational& mu);
/// The sphere S^d carrying the lifted weight of a ball or simplex domain.
WeightedDomain lifted_sphere(const WeightedDomain& dom);

/// f(x_1^2, ..., x_d^2).
MultiPoly pullback_simplex(const MultiPoly& f);

/// (1 - |x|^2) |grad f|^2 + sum_{i<j} (D_ij f)^2, pointwise.
MultiPoly ball_gradient_density(const MultiPoly& f);
/// sum_i (1 - x_i^2) (d_i f)^2, pointwise. This does not dominate
/// ball_gradient_density: f = x1 - x2 at (1/2, 1/2) gives 3/2 < 2.
MultiPoly coordinate_gradient_density(const MultiPoly& f);
/// sum_i (1 + |x|^2 - 2 x_i^2) (d_i f)^2, which does dominate ball_gradient_density
/// on the ball and is itself at most 2 coordinate_gradient_density there.
MultiPoly coordinate_gradient_bound_density(const MultiPoly& f);
/// sum_{i<j} (D_ij f)^2 and |x|^2 |grad f|^2 - (x . grad f)^2, computed separately.
MultiPoly angular_square_sum(const MultiPoly& f);
MultiPoly angular_square_sum_closed(const MultiPoly& f);

/// ||grad f||^2 against W_{kappa,mu+1} plus ||grad_D f||^2 against W_{kappa,mu}.
/// The first term carries the normalization of W_{kappa,mu}, so the total equals
/// ||grad_0 F||^2 on the lifted sphere.
Rational ball_triple_norm_sq(const WeightedDomain& dom, const MultiPoly& f);
Rational ball_triple_norm_sq(const DomainIntegrator& in, const MultiPoly& f);

/// ||grad_0 F||^2 on S^d for F the lift of f, with the classical spherical gradient.
Rational lifted_gradient_norm_sq(const WeightedDomain& dom, const MultiPoly& f);

enum class BallOperatorSign {
  Corrected,  // Delta_h - (x.grad)^2 - 2 lambda (x.grad)
  Printed,    // Delta_h - (x.grad)^2 + 2 lambda (x.grad)
};

/// (x . grad) f.
MultiPoly euler_operator(const MultiPoly& f);

/// Ball operator with lambda = lambda_{kappa,mu}. The corrected sign has the
/// orthogonal polynomials of degree n as eigenfunctions with eigenvalue
/// -n(n + 2 lambda_{kappa,mu}); the printed sign does not.
MultiPoly d_kappa_mu(const WeightedDomain& dom, const MultiPoly& f,
                     BallOperatorSign sign = BallOperatorSign::Corrected);

struct OrthogonalPolynomial {
  unsigned degree;
  MultiPoly poly;
};

/// Exact Gram-Schmidt of the graded monomial basis against the ball (or
/// simplex) integral, up to max_degree. Each output is orthogonal to every
/// polynomial of lower degree.
std::vector<OrthogonalPolynomial> orthogonal_basis(const DomainIntegrator& in, unsigned max_degree);

struct EigenFit {
  bool all_eigen = true;          // every basis element is mapped to a multiple of itself
  bool single_lambda = true;      // one lambda' fits every degree n >= 1
  Rational fitted_lambda;         // from -n(n + 2 lambda') at the first n >= 1
  Rational expected_lambda;       // lambda_{kappa,mu}
  std::size_t checked = 0;
  std::vector<std::pair<unsigned, Rational>> eigenvalues;  // (degree, ratio) per element, first failures omitted
};

EigenFit fit_ball_eigenvalues(const WeightedDomain& dom, unsigned max_degree,
                              BallOperatorSign sign = BallOperatorSign::Corrected);

/// sum_i phi_i^2 (d_i f)^2 + sum_{i<j} phi_ij^2 ((d_i - d_j) f)^2, pointwise on T^d.
MultiPoly simplex_gradient_density(const MultiPoly& f);

/// sum_i ||phi_i d_i f||^2 + sum_{i<j} ||phi_ij (d_i - d_j) f||^2 with
/// phi_i^2 = x_i (1 - |x|_1), phi_ij^2 = x_i x_j.
Rational simplex_triple_norm_sq(const WeightedDomain& dom, const MultiPoly& f);
Rational simplex_triple_norm_sq(const DomainIntegrator& in, const MultiPoly& f);

/// (1/|G|) sum_g f o g.
MultiPoly symmetrize(const MultiPoly& f, const std::vector<RationalMatrix>& group);
SphereFunction symmetrize(const SphereFunction& f, const std::vector<RationalMatrix>& group);
bool is_invariant(const MultiPoly& f, const std::vector<RationalMatrix>& group);

/// Permutation matrices of S_d.
std::vector<RationalMatrix> permutation_group(std::size_t d);

/// Intrinsic distances inherited from the sphere. Points must lie in the
/// closed domain up to 1e-12; otherwise DegenerateInput.
double distance_ball(std::span<const double> x, std::span<const double> y);
double distance_simplex(std::span<const double> x, std::span<const double> y);
double distance(Shape shape, std::span<const double> x, std::span<const double> y);

}  // namespace dunkl
