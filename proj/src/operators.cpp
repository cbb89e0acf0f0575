#include "dunkl/operators.hpp"

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

void check_axis(const OperatorContext& ctx, std::size_t j) {
  if (j >= ctx.dim()) throw IndexOutOfRange("operator axis out of range");
}

void check_pair(const OperatorContext& ctx, std::size_t i, std::size_t j) {
  check_axis(ctx, i);
  check_axis(ctx, j);
  if (i == j) throw IndexOutOfRange("angular operator needs i != j");
}

MultiPoly directional_derivative(const MultiPoly& f, const RationalVector& v) {
  MultiPoly out(f.dim());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += scale(differentiate(f, i), v[i]);
  return out;
}

}  // namespace

OperatorContext::OperatorContext(RootSystem rs) : rs_(std::move(rs)), constants_(derived_constants(rs_)) {
  for (const auto& r : rs_.roots()) {
    if (r.multiplicity == 0) continue;
    roots_.push_back({r.vector, r.multiplicity, dot(r.vector, r.vector), reflection_matrix(r.vector)});
  }
}

void OperatorContext::check_consistency() const {
  const auto c = derived_constants(rs_);
  if (c.gamma_kappa != constants_.gamma_kappa || c.lambda_kappa != constants_.lambda_kappa)
    throw InternalInconsistency("operator context constants are stale");
}

MultiPoly reflect_poly(const OperatorContext::RootData& r, const MultiPoly& f) {
  return compose_linear(f, r.sigma);
}

MultiPoly difference_op_E(const OperatorContext::RootData& r, const MultiPoly& f) {
  try {
    return divide_by_linear_form(f - reflect_poly(r, f), r.v);
  } catch (const NotDivisible& e) {
    throw InternalInconsistency(std::string("E_v numerator not divisible: ") + e.what());
  }
}

MultiPoly dunkl_operator(const OperatorContext& ctx, std::size_t j, const MultiPoly& f) {
  check_axis(ctx, j);
  MultiPoly out = differentiate(f, j);
  for (const auto& r : ctx.roots()) {
    if (r.v[j] == 0) continue;
    out += scale(difference_op_E(r, f), r.kappa * r.v[j]);
  }
  return out;
}

std::vector<MultiPoly> h_gradient(const OperatorContext& ctx, const MultiPoly& f) {
  // E_v f is shared across components.
  std::vector<MultiPoly> out;
  for (std::size_t j = 0; j < ctx.dim(); ++j) out.push_back(differentiate(f, j));
  for (const auto& r : ctx.roots()) {
    const MultiPoly e = difference_op_E(r, f);
    for (std::size_t j = 0; j < ctx.dim(); ++j)
      if (r.v[j] != 0) out[j] += scale(e, r.kappa * r.v[j]);
  }
  return out;
}

MultiPoly h_laplacian(const OperatorContext& ctx, const MultiPoly& f) {
  MultiPoly out(f.dim());
  for (std::size_t i = 0; i < ctx.dim(); ++i) out += dunkl_operator(ctx, i, dunkl_operator(ctx, i, f));
  return out;
}

MultiPoly h_laplacian_explicit(const OperatorContext& ctx, const MultiPoly& f) {
  MultiPoly out(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) out += differentiate(differentiate(f, i), i);
  for (const auto& r : ctx.roots()) {
    const MultiPoly l = MultiPoly::linear_form(r.v);
    MultiPoly num = scale(l * directional_derivative(f, r.v), 2);
    num -= scale(f - reflect_poly(r, f), r.norm_sq);
    try {
      out += scale(divide_by_linear_form(divide_by_linear_form(num, r.v), r.v), r.kappa);
    } catch (const NotDivisible& e) {
      throw InternalInconsistency(std::string("explicit h-Laplacian numerator: ") + e.what());
    }
  }
  return out;
}

MultiPoly angular_classical(std::size_t i, std::size_t j, const MultiPoly& f) {
  if (i >= f.dim() || j >= f.dim()) throw IndexOutOfRange("angular operator axis out of range");
  if (i == j) throw IndexOutOfRange("angular operator needs i != j");
  const std::size_t d = f.dim();
  return MultiPoly::variable(d, i) * differentiate(f, j) - MultiPoly::variable(d, j) * differentiate(f, i);
}

MultiPoly angular_dunkl(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f) {
  check_pair(ctx, i, j);
  const std::size_t d = f.dim();
  return MultiPoly::variable(d, i) * dunkl_operator(ctx, j, f) - MultiPoly::variable(d, j) * dunkl_operator(ctx, i, f);
}

MultiPoly angular_difference(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f) {
  check_pair(ctx, i, j);
  const std::size_t d = f.dim();
  MultiPoly out(d);
  for (const auto& r : ctx.roots()) {
    MultiPoly c = scale(MultiPoly::variable(d, i), r.v[j]) - scale(MultiPoly::variable(d, j), r.v[i]);
    if (c.is_zero()) continue;
    out += scale(c * difference_op_E(r, f), r.kappa);
  }
  return out;
}

SphereFunction reflect_sphere(const OperatorContext::RootData& r, const SphereFunction& f) {
  return reduce_mod_sphere(reflect_poly(r, f.rep()));
}

std::vector<SphereFunction> spherical_gradient_h(const OperatorContext& ctx, const SphereFunction& f) {
  const std::size_t d = ctx.dim();
  std::vector<MultiPoly> acc(d, MultiPoly(d));
  for (const auto& [n, p] : homogeneous_decompose(f.rep())) {
    auto g = h_gradient(ctx, p);
    for (std::size_t j = 0; j < d; ++j) {
      acc[j] += g[j];
      if (n > 0) acc[j] -= scale(MultiPoly::variable(d, j) * p, Rational(n));
    }
  }
  std::vector<SphereFunction> out;
  for (auto& a : acc) out.push_back(reduce_mod_sphere(a));
  return out;
}

SphereFunction xi_dot_gradient(const OperatorContext& ctx, const SphereFunction& f) {
  SphereFunction out(ctx.dim());
  for (const auto& r : ctx.roots()) out += (f - reflect_sphere(r, f)) * r.kappa;
  return out;
}

SphereFunction laplace_beltrami_h(const OperatorContext& ctx, const SphereFunction& f) {
  const Rational two_lambda = 2 * ctx.constants().lambda_kappa;
  MultiPoly acc(ctx.dim());
  for (const auto& [n, p] : homogeneous_decompose(f.rep())) {
    acc += h_laplacian(ctx, p);
    acc -= scale(p, Rational(n) * (Rational(n) + two_lambda));
  }
  return reduce_mod_sphere(acc);
}

SphereFunction angular_dunkl(const OperatorContext& ctx, std::size_t i, std::size_t j, const SphereFunction& f) {
  return reduce_mod_sphere(angular_dunkl(ctx, i, j, f.rep()));
}

SphereFunction times_coordinate(const SphereFunction& f, std::size_t i) {
  return reduce_mod_sphere(MultiPoly::variable(f.dim(), i) * f.rep());
}

}  // namespace dunkl
