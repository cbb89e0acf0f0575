#include "dunkl/identities.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

SphereFunction S(const MultiPoly& f) { return reduce_mod_sphere(f); }

// cal D_ij for any i != j, with cal D_ji = -cal D_ij.
MultiPoly angular(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f) {
  return angular_dunkl(ctx, i, j, f);
}

SphereFunction dot(const std::vector<SphereFunction>& a, const std::vector<SphereFunction>& b) {
  SphereFunction s(a.front().dim());
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

SphereFunction xi_dot(const std::vector<SphereFunction>& grad) {
  SphereFunction s(grad.front().dim());
  for (std::size_t k = 0; k < grad.size(); ++k) s += times_coordinate(grad[k], k);
  return s;
}

// sum_v kappa_v^p (I - sigma_v)^q f.
SphereFunction reflection_sum(const OperatorContext& ctx, const SphereFunction& f, int p, int q) {
  SphereFunction out(f.dim());
  for (const auto& r : ctx.roots()) {
    SphereFunction t = f;
    for (int k = 0; k < q; ++k) t = t - reflect_sphere(r, t);
    Rational c = 1;
    for (int k = 0; k < p; ++k) c *= r.kappa;
    out += t * c;
  }
  return out;
}

}  // namespace

SphereFunction residual_beltrami_angular(const MultiPoly& f) {
  const std::size_t d = f.dim();
  const OperatorContext flat(RootSystem::trivial(d));
  MultiPoly sum(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sum += angular_classical(i, j, angular_classical(i, j, f));
  return laplace_beltrami_h(flat, S(f)) - S(sum);
}

SphereFunction residual_gradient_angular(const MultiPoly& f, const MultiPoly& g) {
  const std::size_t d = f.dim();
  const OperatorContext flat(RootSystem::trivial(d));
  MultiPoly sum(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sum += angular_classical(i, j, f) * angular_classical(i, j, g);
  return dot(spherical_gradient_h(flat, S(f)), spherical_gradient_h(flat, S(g))) - S(sum);
}

Rational residual_angular_parts(std::size_t i, std::size_t j, const MultiPoly& f, const MultiPoly& g) {
  const DomainIntegrator in(WeightedDomain::sphere(RootSystem::trivial(f.dim())));
  return in.integrate(angular_classical(i, j, f) * g) + in.integrate(f * angular_classical(i, j, g));
}

SphereFunction residual_xi_gradient(const OperatorContext& ctx, const MultiPoly& f) {
  const SphereFunction sf = S(f);
  return xi_dot(spherical_gradient_h(ctx, sf)) - reflection_sum(ctx, sf, 1, 1);
}

SphereFunction residual_beltrami_divergence(const OperatorContext& ctx, const MultiPoly& f) {
  const SphereFunction sf = S(f);
  const auto grad = spherical_gradient_h(ctx, sf);
  SphereFunction div(ctx.dim());
  for (std::size_t j = 0; j < grad.size(); ++j) div += spherical_gradient_h(ctx, grad[j])[j];
  return laplace_beltrami_h(ctx, sf) - (div - xi_dot(grad));
}

MultiPoly residual_angular_decomposition(const OperatorContext& ctx, std::size_t i, std::size_t j,
                                         const MultiPoly& f) {
  return angular_dunkl(ctx, i, j, f) - angular_classical(i, j, f) - angular_difference(ctx, i, j, f);
}

Rational residual_angular_dunkl_parts(const OperatorContext& ctx, const DomainIntegrator& in, std::size_t i,
                                      std::size_t j, const MultiPoly& f, const MultiPoly& g) {
  return in.integrate(angular(ctx, i, j, f) * g) + in.integrate(f * angular(ctx, i, j, g));
}

SphereFunction residual_gradient_component(const OperatorContext& ctx, std::size_t j, const MultiPoly& f) {
  const std::size_t d = ctx.dim();
  if (j >= d) throw IndexOutOfRange("gradient component out of range");
  const SphereFunction sf = S(f);
  MultiPoly rhs(d);
  for (std::size_t i = 0; i < d; ++i)
    if (i != j) rhs += MultiPoly::variable(d, i) * angular(ctx, i, j, f);
  const SphereFunction radial = xi_dot_gradient(ctx, sf);
  return spherical_gradient_h(ctx, sf)[j] - S(rhs) - times_coordinate(radial, j);
}

MultiPoly residual_dunkl_product(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f) {
  const std::size_t d = ctx.dim();
  const auto xj = MultiPoly::variable(d, j);
  MultiPoly rhs = xj * dunkl_operator(ctx, i, f);
  if (i == j) rhs += f;
  for (const auto& r : ctx.roots()) {
    const Rational c = 2 * r.kappa * r.v[i] * r.v[j] / r.norm_sq;
    if (c != 0) rhs += scale(reflect_poly(r, f), c);
  }
  return dunkl_operator(ctx, i, xj * f) - rhs;
}

Rational residual_gradient_adjoint(const OperatorContext& ctx, const DomainIntegrator& in, std::size_t j,
                                   const MultiPoly& f, const MultiPoly& g) {
  const SphereFunction sf = S(f), sg = S(g);
  const Rational c = 2 * ctx.constants().lambda_kappa + 1;
  const SphereFunction rhs = spherical_gradient_h(ctx, sg)[j] - times_coordinate(sg, j) * c;
  return in.integrate(spherical_gradient_h(ctx, sf)[j].rep() * sg.rep()) + in.integrate(sf.rep() * rhs.rep());
}

namespace {

SphereFunction gradient_product(const OperatorContext& ctx, const MultiPoly& f, const MultiPoly& g, int sign) {
  const std::size_t d = ctx.dim();
  const auto gf = spherical_gradient_h(ctx, S(f));
  const auto gg = spherical_gradient_h(ctx, S(g));
  MultiPoly sum(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sum += angular(ctx, i, j, f) * angular(ctx, i, j, g);
  return dot(gf, gg) + xi_dot(gf) * xi_dot(gg) * Rational(sign) - S(sum);
}

SphereFunction divergence_lemma(const OperatorContext& ctx, std::size_t j, const MultiPoly& g, bool inner_xi_i) {
  const std::size_t d = ctx.dim();
  if (j >= d) throw IndexOutOfRange("gradient component out of range");
  const MultiPoly xg = MultiPoly::variable(d, j) * g;
  MultiPoly lhs(d);
  for (std::size_t i = 0; i < d; ++i)
    if (i != j) lhs += angular(ctx, i, j, inner_xi_i ? MultiPoly::variable(d, i) * g : xg);
  const Rational c = ctx.constants().gamma_kappa + Rational(static_cast<long>(d) - 1);
  SphereFunction rhs = spherical_gradient_h(ctx, S(g))[j] - S(xg) * c;
  for (const auto& r : ctx.roots()) rhs -= S(reflect_poly(r, xg)) * r.kappa;
  return S(lhs) - rhs;
}

}  // namespace

SphereFunction residual_gradient_product(const OperatorContext& ctx, const MultiPoly& f, const MultiPoly& g) {
  return gradient_product(ctx, f, g, -1);
}

SphereFunction residual_gradient_product_plus(const OperatorContext& ctx, const MultiPoly& f, const MultiPoly& g) {
  return gradient_product(ctx, f, g, 1);
}

SphereFunction residual_gradient_square(const OperatorContext& ctx, const MultiPoly& f) {
  return residual_gradient_product(ctx, f, f);
}

SphereFunction residual_beltrami_angular_h(const OperatorContext& ctx, const MultiPoly& f) {
  const std::size_t d = ctx.dim();
  const SphereFunction sf = S(f);
  MultiPoly sum(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) sum += angular(ctx, i, j, angular(ctx, i, j, f));
  const SphereFunction radial = xi_dot_gradient(ctx, sf);
  const SphereFunction rhs = S(sum) - xi_dot_gradient(ctx, radial) + radial * (2 * ctx.constants().lambda_kappa) -
                             reflection_sum(ctx, sf, 2, 1) * Rational(2) + reflection_sum(ctx, sf, 2, 2);
  return laplace_beltrami_h(ctx, sf) - rhs;
}

SphereFunction residual_divergence_lemma(const OperatorContext& ctx, std::size_t j, const MultiPoly& g) {
  return divergence_lemma(ctx, j, g, true);
}

SphereFunction residual_divergence_lemma_xj(const OperatorContext& ctx, std::size_t j, const MultiPoly& g) {
  return divergence_lemma(ctx, j, g, false);
}

}  // namespace dunkl
