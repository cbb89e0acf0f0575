#include "dunkl/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dunkl/errors.hpp"

namespace dunkl {

SphereFunction lift_to_sphere(const MultiPoly& f) { return reduce_mod_sphere(extend_dimension(f, f.dim() + 1)); }

RootSystem lifted_root_system(const RootSystem& rs, const Rational& mu) {
  const std::size_t d = rs.dim();
  std::vector<Root> roots;
  for (const auto& r : rs.roots()) {
    RationalVector v = r.vector;
    v.push_back(0);
    roots.push_back({std::move(v), r.multiplicity});
  }
  RationalVector e(d + 1, Rational(0));
  e[d] = 1;
  roots.push_back({std::move(e), mu});
  return RootSystem(d + 1, std::move(roots), rs.kind());
}

WeightedDomain lifted_sphere(const WeightedDomain& dom) {
  if (dom.shape() == Shape::Sphere) throw DimensionMismatch("lifted_sphere needs a ball or simplex domain");
  return WeightedDomain::sphere(lifted_root_system(dom.root_system(), dom.mu()));
}

MultiPoly pullback_simplex(const MultiPoly& f) { return substitute_squares(f); }

MultiPoly angular_square_sum(const MultiPoly& f) {
  MultiPoly s(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = i + 1; j < f.dim(); ++j) {
      const auto a = angular_classical(i, j, f);
      s += a * a;
    }
  return s;
}

MultiPoly euler_operator(const MultiPoly& f) {
  MultiPoly out(f.dim());
  for (const auto& [m, c] : f.terms())
    if (m.degree() > 0) out.add_term(m, c * m.degree());
  return out;
}

MultiPoly angular_square_sum_closed(const MultiPoly& f) {
  const std::size_t d = f.dim();
  MultiPoly grad2(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto g = differentiate(f, i);
    grad2 += g * g;
  }
  MultiPoly xg(d);
  for (std::size_t i = 0; i < d; ++i) xg += MultiPoly::variable(d, i) * differentiate(f, i);
  return MultiPoly::norm_squared(d) * grad2 - xg * xg;
}

MultiPoly ball_gradient_density(const MultiPoly& f) {
  const std::size_t d = f.dim();
  MultiPoly grad2(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto g = differentiate(f, i);
    grad2 += g * g;
  }
  return (MultiPoly::constant(d, 1) - MultiPoly::norm_squared(d)) * grad2 + angular_square_sum(f);
}

MultiPoly coordinate_gradient_density(const MultiPoly& f) {
  const std::size_t d = f.dim();
  MultiPoly s(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto g = differentiate(f, i);
    const auto xi = MultiPoly::variable(d, i);
    s += (MultiPoly::constant(d, 1) - xi * xi) * g * g;
  }
  return s;
}

MultiPoly coordinate_gradient_bound_density(const MultiPoly& f) {
  const std::size_t d = f.dim();
  const MultiPoly base = MultiPoly::constant(d, 1) + MultiPoly::norm_squared(d);
  MultiPoly s(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto g = differentiate(f, i);
    const auto xi = MultiPoly::variable(d, i);
    s += (base - scale(xi * xi, 2)) * g * g;
  }
  return s;
}

Rational ball_triple_norm_sq(const DomainIntegrator& in, const MultiPoly& f) {
  if (in.domain().shape() != Shape::Ball) throw DimensionMismatch("ball_triple_norm_sq needs a ball domain");
  return in.integrate(ball_gradient_density(f));
}

Rational ball_triple_norm_sq(const WeightedDomain& dom, const MultiPoly& f) {
  return ball_triple_norm_sq(DomainIntegrator(dom), f);
}

Rational lifted_gradient_norm_sq(const WeightedDomain& dom, const MultiPoly& f) {
  if (f.dim() != dom.dim()) throw DimensionMismatch("lifted_gradient_norm_sq: dimension differs");
  const DomainIntegrator in(lifted_sphere(dom));
  const OperatorContext flat(RootSystem::trivial(dom.dim() + 1));
  Rational s = 0;
  for (const auto& g : spherical_gradient_h(flat, lift_to_sphere(f))) s += in.integrate(g.rep() * g.rep());
  return s;
}

MultiPoly d_kappa_mu(const WeightedDomain& dom, const MultiPoly& f, BallOperatorSign sign) {
  if (f.dim() != dom.dim()) throw DimensionMismatch("d_kappa_mu: dimension differs");
  const OperatorContext ctx(dom.root_system());
  const MultiPoly e = euler_operator(f);
  Rational c = 2 * dom.lambda();
  if (sign == BallOperatorSign::Corrected) c = -c;
  return h_laplacian(ctx, f) - euler_operator(e) + scale(e, c);
}

namespace {

std::vector<Monomial> graded_monomials(std::size_t d, unsigned max_degree) {
  std::vector<Monomial> out;
  for (unsigned n = 0; n <= max_degree; ++n) {
    Monomial m;
    auto rec = [&](auto& self, std::size_t axis, unsigned left) -> void {
      if (axis + 1 == d) {
        m.set(axis, left);
        out.push_back(m);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m.set(axis, e);
        self(self, axis + 1, left - e);
      }
      m.set(axis, 0);
    };
    rec(rec, 0, n);
  }
  return out;
}

}  // namespace

std::vector<OrthogonalPolynomial> orthogonal_basis(const DomainIntegrator& in, unsigned max_degree) {
  const std::size_t d = in.domain().dim();
  std::vector<OrthogonalPolynomial> out;
  std::vector<Rational> norms;
  for (const auto& m : graded_monomials(d, max_degree)) {
    MultiPoly p = MultiPoly::monomial(d, m);
    const MultiPoly raw = p;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const Rational c = in.integrate(raw * out[k].poly) / norms[k];
      if (c != 0) p -= scale(out[k].poly, c);
    }
    const Rational nrm = in.integrate(p * p);
    if (nrm == 0) throw InternalInconsistency("Gram-Schmidt produced a null polynomial");
    out.push_back({m.degree(), std::move(p)});
    norms.push_back(nrm);
  }
  return out;
}

EigenFit fit_ball_eigenvalues(const WeightedDomain& dom, unsigned max_degree, BallOperatorSign sign) {
  if (dom.shape() != Shape::Ball) throw DimensionMismatch("eigen fit needs a ball domain");
  const DomainIntegrator in(dom);
  EigenFit fit;
  fit.expected_lambda = dom.lambda();
  bool have_lambda = false;
  for (const auto& op : orthogonal_basis(in, max_degree)) {
    ++fit.checked;
    const MultiPoly q = d_kappa_mu(dom, op.poly, sign);
    // Ratio read off the leading term of P.
    const auto& [lead, lc] = *op.poly.terms().rbegin();
    const Rational ratio = q.coefficient(lead) / lc;
    if (q != scale(op.poly, ratio)) {
      fit.all_eigen = false;
      continue;
    }
    fit.eigenvalues.emplace_back(op.degree, ratio);
    if (op.degree == 0) {
      if (ratio != 0) fit.all_eigen = false;
      continue;
    }
    const Rational n(op.degree);
    Rational lam = (-ratio / n - n) / 2;
    lam.canonicalize();
    if (!have_lambda) {
      fit.fitted_lambda = lam;
      have_lambda = true;
    } else if (lam != fit.fitted_lambda) {
      fit.single_lambda = false;
    }
  }
  if (!fit.all_eigen) fit.single_lambda = false;
  return fit;
}

MultiPoly simplex_gradient_density(const MultiPoly& f) {
  const std::size_t d = f.dim();
  MultiPoly l1 = MultiPoly::constant(d, 1);
  for (std::size_t i = 0; i < d; ++i) l1 -= MultiPoly::variable(d, i);
  std::vector<MultiPoly> grad;
  for (std::size_t i = 0; i < d; ++i) grad.push_back(differentiate(f, i));
  MultiPoly density(d);
  for (std::size_t i = 0; i < d; ++i) density += MultiPoly::variable(d, i) * l1 * grad[i] * grad[i];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const MultiPoly g = grad[i] - grad[j];
      density += MultiPoly::variable(d, i) * MultiPoly::variable(d, j) * g * g;
    }
  return density;
}

Rational simplex_triple_norm_sq(const DomainIntegrator& in, const MultiPoly& f) {
  if (in.domain().shape() != Shape::Simplex) throw DimensionMismatch("simplex_triple_norm_sq needs a simplex domain");
  return in.integrate(simplex_gradient_density(f));
}

Rational simplex_triple_norm_sq(const WeightedDomain& dom, const MultiPoly& f) {
  return simplex_triple_norm_sq(DomainIntegrator(dom), f);
}

MultiPoly symmetrize(const MultiPoly& f, const std::vector<RationalMatrix>& group) {
  if (group.empty()) throw DegenerateInput("symmetrize over an empty group");
  MultiPoly acc(f.dim());
  for (const auto& g : group) acc += compose_linear(f, g);
  return scale(acc, Rational(1, static_cast<long>(group.size())));
}

SphereFunction symmetrize(const SphereFunction& f, const std::vector<RationalMatrix>& group) {
  return reduce_mod_sphere(symmetrize(f.rep(), group));
}

bool is_invariant(const MultiPoly& f, const std::vector<RationalMatrix>& group) {
  return std::all_of(group.begin(), group.end(), [&](const auto& g) { return compose_linear(f, g) == f; });
}

std::vector<RationalMatrix> permutation_group(std::size_t d) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<RationalMatrix> out;
  do {
    RationalMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, perm[i]) = 1;
    out.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

constexpr double kDomainSlack = 1e-12;

double clamp_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

void check_sizes(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw DimensionMismatch("distance: point dimensions differ");
}

double ball_slack(std::span<const double> x) {
  double s = 0;
  for (double c : x) {
    if (!std::isfinite(c)) throw DegenerateInput("distance: non-finite coordinate");
    s += c * c;
  }
  if (s > 1 + kDomainSlack) throw DegenerateInput("distance: point outside the closed ball");
  return std::max(0.0, 1 - s);
}

double simplex_slack(std::span<const double> x) {
  double s = 0;
  for (double c : x) {
    if (!std::isfinite(c) || c < -kDomainSlack) throw DegenerateInput("distance: point outside the simplex");
    s += c;
  }
  if (s > 1 + kDomainSlack) throw DegenerateInput("distance: point outside the simplex");
  return std::max(0.0, 1 - s);
}

}  // namespace

double distance_ball(std::span<const double> x, std::span<const double> y) {
  check_sizes(x, y);
  const double sx = ball_slack(x), sy = ball_slack(y);
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += x[i] * y[i];
  return clamp_acos(c + std::sqrt(sx) * std::sqrt(sy));
}

double distance_simplex(std::span<const double> x, std::span<const double> y) {
  check_sizes(x, y);
  const double sx = simplex_slack(x), sy = simplex_slack(y);
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += std::sqrt(std::max(0.0, x[i]) * std::max(0.0, y[i]));
  return clamp_acos(c + std::sqrt(sx * sy));
}

double distance(Shape shape, std::span<const double> x, std::span<const double> y) {
  switch (shape) {
    case Shape::Ball: return distance_ball(x, y);
    case Shape::Simplex: return distance_simplex(x, y);
    case Shape::Sphere: {
      check_sizes(x, y);
      double c = 0, nx = 0, ny = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        c += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
      }
      if (std::fabs(nx - 1) > 1e-9 || std::fabs(ny - 1) > 1e-9) throw DegenerateInput("distance: point off the sphere");
      return clamp_acos(c);
    }
  }
  return 0;
}

}  // namespace dunkl
