#pragma once

// Residuals of the operator identities on the sphere. Each function returns
// left side minus right side, so an identity holds exactly when the residual
// is zero. Shared by the verify harness and the tests.

#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

// Classical (kappa = 0) identities.

/// Delta_0 f - sum_{i<j} D_ij^2 f.
SphereFunction residual_beltrami_angular(const MultiPoly& f);
/// grad_0 f . grad_0 g - sum_{i<j} D_ij f D_ij g.
SphereFunction residual_gradient_angular(const MultiPoly& f, const MultiPoly& g);
/// int D_ij f g dsigma + int f D_ij g dsigma against the unweighted surface measure.
Rational residual_angular_parts(std::size_t i, std::size_t j, const MultiPoly& f, const MultiPoly& g);

// Weighted identities.

/// xi . grad_{h,0} f - sum_v kappa_v (f - f o sigma_v), the left side taken from the gradient components.
SphereFunction residual_xi_gradient(const OperatorContext& ctx, const MultiPoly& f);
/// Delta_{h,0} f - (grad_{h,0} . grad_{h,0} f - xi . grad_{h,0} f), with the divergence
/// read as the composition sum_j (grad_{h,0})_j (grad_{h,0})_j.
SphereFunction residual_beltrami_divergence(const OperatorContext& ctx, const MultiPoly& f);
/// cal D_ij f - D_ij f - E_ij f.
MultiPoly residual_angular_decomposition(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f);
/// int cal D_ij f g h^2 + int f cal D_ij g h^2.
Rational residual_angular_dunkl_parts(const OperatorContext& ctx, const DomainIntegrator& in, std::size_t i,
                                      std::size_t j, const MultiPoly& f, const MultiPoly& g);
/// (grad_{h,0})_j f - sum_{i != j} xi_i cal D_ij f - xi_j (xi . grad_{h,0} f).
SphereFunction residual_gradient_component(const OperatorContext& ctx, std::size_t j, const MultiPoly& f);
/// D_i(x_j f) - x_j D_i f - delta_ij f - 2 sum_v kappa_v v_i v_j / |v|^2 f o sigma_v.
MultiPoly residual_dunkl_product(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f);
/// int (grad_{h,0})_j f g h^2 + int f ((grad_{h,0})_j g - (2 lambda + 1) xi_j g) h^2.
Rational residual_gradient_adjoint(const OperatorContext& ctx, const DomainIntegrator& in, std::size_t j,
                                   const MultiPoly& f, const MultiPoly& g);
/// grad_{h,0} f . grad_{h,0} g - (xi . grad_{h,0} f)(xi . grad_{h,0} g) - sum_{i<j} cal D_ij f cal D_ij g.
/// With cal D_ij = xi_i (grad_{h,0})_j - xi_j (grad_{h,0})_i on the sphere this is
/// Lagrange's identity, so the normal term enters with a minus sign.
SphereFunction residual_gradient_product(const OperatorContext& ctx, const MultiPoly& f, const MultiPoly& g);
/// The same with g = f.
SphereFunction residual_gradient_square(const OperatorContext& ctx, const MultiPoly& f);
/// The variant with +(xi . grad f)(xi . grad g). False once kappa != 0: f = g = x1
/// with kappa = (1, 0) leaves 8 at xi = e1.
SphereFunction residual_gradient_product_plus(const OperatorContext& ctx, const MultiPoly& f, const MultiPoly& g);
/// Delta_{h,0} f minus
///   sum_{i<j} cal D_ij^2 f - (xi . grad_{h,0})^2 f + 2 lambda (xi . grad_{h,0}) f
///   - 2 sum_v kappa_v^2 (I - sigma_v) f + sum_v kappa_v^2 (I - sigma_v)^2 f.
SphereFunction residual_beltrami_angular_h(const OperatorContext& ctx, const MultiPoly& f);
/// sum_{i != j} cal D_ij (xi_i g) - (grad_{h,0})_j g + (gamma + d - 1) xi_j g
///   + sum_v kappa_v (xi sigma_v)_j g(xi sigma_v).
SphereFunction residual_divergence_lemma(const OperatorContext& ctx, std::size_t j, const MultiPoly& g);
/// The same with xi_j g inside cal D_ij in place of xi_i g. False already for
/// g = 1, kappa = 0, d = 2.
SphereFunction residual_divergence_lemma_xj(const OperatorContext& ctx, std::size_t j, const MultiPoly& g);

}  // namespace dunkl
