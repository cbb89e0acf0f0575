#include "dunkl/harmonics.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/linalg.hpp"

namespace dunkl {

namespace {

// Monomials of total degree n in d variables.
std::vector<Monomial> monomials_of_degree(std::size_t d, unsigned n) {
  std::vector<Monomial> out;
  Monomial m;
  auto rec = [&](auto& self, std::size_t axis, unsigned left) -> void {
    if (axis + 1 == d) {
      m.set(axis, left);
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m.set(axis, e);
      self(self, axis + 1, left - e);
    }
    m.set(axis, 0);
  };
  rec(rec, 0, n);
  return out;
}

Rational eigenvalue(unsigned n, const Rational& lambda) { return Rational(n) * (Rational(n) + 2 * lambda); }

}  // namespace

std::vector<std::pair<unsigned, MultiPoly>> harmonic_decompose(const OperatorContext& ctx, const MultiPoly& p,
                                                               unsigned degree_cap) {
  if (p.dim() != ctx.dim()) throw DimensionMismatch("harmonic_decompose: dimension differs");
  if (p.is_zero()) return {};
  if (!p.is_homogeneous()) throw DegenerateInput("harmonic_decompose needs a homogeneous polynomial");
  const unsigned n = static_cast<unsigned>(p.degree());
  if (n > degree_cap) throw DegenerateInput("harmonic_decompose: degree exceeds the cap");

  const MultiPoly lap = h_laplacian(ctx, p);
  if (lap.is_zero()) return {{0, p}};

  // Solve Delta_h(|x|^2 g) = Delta_h P for g homogeneous of degree n - 2.
  const std::size_t d = ctx.dim();
  const auto basis = monomials_of_degree(d, n - 2);
  const MultiPoly r2 = MultiPoly::norm_squared(d);
  std::map<Monomial, std::size_t> row_of;
  for (std::size_t i = 0; i < basis.size(); ++i) row_of[basis[i]] = i;
  std::vector<RationalVector> a(basis.size(), RationalVector(basis.size(), Rational(0)));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MultiPoly img = h_laplacian(ctx, r2 * MultiPoly::monomial(d, basis[col]));
    for (const auto& [m, c] : img.terms()) a[row_of.at(m)][col] = c;
  }
  RationalVector b(basis.size(), Rational(0));
  for (const auto& [m, c] : lap.terms()) b[row_of.at(m)] = c;
  RationalVector sol;
  try {
    sol = solve_exact(a, b);
  } catch (const InternalInconsistency&) {
    throw InternalInconsistency("harmonic decomposition system is singular at degree " + std::to_string(n));
  }
  MultiPoly g(d);
  for (std::size_t i = 0; i < basis.size(); ++i) g.add_term(basis[i], sol[i]);

  std::vector<std::pair<unsigned, MultiPoly>> out;
  MultiPoly y = p - r2 * g;
  if (!h_laplacian(ctx, y).is_zero()) throw InternalInconsistency("harmonic part is not h-harmonic");
  if (!y.is_zero()) out.emplace_back(0, std::move(y));
  for (auto& [j, q] : harmonic_decompose(ctx, g, degree_cap)) out.emplace_back(j + 1, std::move(q));
  return out;
}

MultiPoly HarmonicExpansion::component(unsigned n, std::size_t dim) const {
  const auto it = components.find(n);
  return it == components.end() ? MultiPoly(dim) : it->second;
}

SphereFunction HarmonicExpansion::sum(std::size_t dim) const {
  MultiPoly acc(dim);
  for (const auto& [n, y] : components) acc += y;
  return reduce_mod_sphere(acc);
}

HarmonicExpansion harmonic_expansion(const OperatorContext& ctx, const SphereFunction& f, unsigned degree_cap) {
  if (f.dim() != ctx.dim()) throw DimensionMismatch("harmonic_expansion: dimension differs");
  HarmonicExpansion e;
  for (const auto& [m, part] : homogeneous_decompose(f.rep())) {
    for (auto& [j, y] : harmonic_decompose(ctx, part, degree_cap)) {
      auto [it, fresh] = e.components.try_emplace(m - 2 * j, y);
      if (!fresh) it->second += y;
    }
  }
  std::erase_if(e.components, [](const auto& kv) { return kv.second.is_zero(); });
  return e;
}

MultiPoly proj(const OperatorContext& ctx, const SphereFunction& f, unsigned n, unsigned degree_cap) {
  if (f.dim() != ctx.dim()) throw DimensionMismatch("proj: dimension differs");
  MultiPoly acc(ctx.dim());
  for (const auto& [m, part] : homogeneous_decompose(f.rep())) {
    if (m < n || (m - n) % 2 != 0) continue;
    for (const auto& [j, y] : harmonic_decompose(ctx, part, degree_cap))
      if (m - 2 * j == n) acc += y;
  }
  return acc;
}

SphereFunction neg_laplacian_power(const OperatorContext& ctx, const SphereFunction& f, const Rational& r) {
  if (!is_integer(r)) throw TierError("non-integer powers of the spherical h-Laplacian are not rational");
  const long k = r.get_num().get_si();
  const Rational lambda = ctx.constants().lambda_kappa;
  MultiPoly acc(ctx.dim());
  for (const auto& [n, y] : harmonic_expansion(ctx, f).components) {
    if (n == 0) continue;
    const Rational ev = eigenvalue(n, lambda);
    Rational s = 1;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) s *= ev;
    if (k < 0) s = 1 / s;
    acc += scale(y, s);
  }
  return reduce_mod_sphere(acc);
}

Rational sobolev_half_norm_sq(const OperatorContext& ctx, const DomainIntegrator& in, const SphereFunction& f) {
  const Rational lambda = ctx.constants().lambda_kappa;
  Rational s = 0;
  for (const auto& [n, y] : harmonic_expansion(ctx, f).components)
    if (n > 0) s += eigenvalue(n, lambda) * in.integrate(y * y);
  return s;
}

Rational sobolev_half_norm_sq(const OperatorContext& ctx, const SphereFunction& f) {
  return sobolev_half_norm_sq(ctx, DomainIntegrator(WeightedDomain::sphere(ctx.root_system())), f);
}

Rational spherical_gradient_norm_sq(const OperatorContext& ctx, const DomainIntegrator& in, const SphereFunction& f) {
  Rational s = 0;
  for (const auto& g : spherical_gradient_h(ctx, f)) s += in.integrate(g.rep() * g.rep());
  return s;
}

}  // namespace dunkl
