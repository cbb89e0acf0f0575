#include "checks.hpp"

#include <random>

#include "dunkl/errors.hpp"
#include "dunkl/harmonics.hpp"
#include "dunkl/identities.hpp"
#include "dunkl/uncertainty.hpp"

namespace dunkl::verify::detail {

namespace {

bool allowed(const SuiteConfig& c, const char* tier) {
  for (const auto& t : c.tiers_allowed)
    if (t == tier) return true;
  return false;
}

std::optional<DomainIntegrator> make_integrator(const WeightedDomain& dom, const Env& e, std::string& err) {
  const char* tier = e.z2d ? "A" : "B";
  if (!allowed(e.cfg, tier)) {
    err = std::string("tier ") + tier + " integration is not allowed by the config";
    return std::nullopt;
  }
  try {
    return DomainIntegrator(dom);
  } catch (const Error& ex) {
    err = ex.what();
    return std::nullopt;
  }
}

}  // namespace

Env::Env(const SuiteConfig& c) : cfg(c), rs(build_root_system(c)), ctx(rs) {
  for (const auto& r : rs.roots()) kappa_zero = kappa_zero && r.multiplicity == 0;
  z2d = rs.kind() == RootSystemKind::Z2d;
  tier_c = allowed(c, "C");
  try {
    group = generate_group(rs);
  } catch (const Error& ex) {
    group_error = ex.what();
  }
  try {
    sphere = make_integrator(WeightedDomain::sphere(rs), *this, sphere_error);
  } catch (const Error& ex) {
    sphere_error = ex.what();
  }
  ball_domain = WeightedDomain::ball(rs, c.mu);
  ball = make_integrator(*ball_domain, *this, ball_error);
  if (ball) lifted = make_integrator(lifted_sphere(*ball_domain), *this, ball_error);
  if (!lifted) ball.reset();
  try {
    simplex_domain = WeightedDomain::simplex(rs, c.mu);
    simplex = make_integrator(*simplex_domain, *this, simplex_error);
  } catch (const Error& ex) {
    simplex_error = ex.what();
  }
}

namespace {

using E = const Env&;

// ------------------------------------------------------------ helpers

std::size_t dim(E e) { return e.rs.dim(); }

MultiPoly sample(E e, std::uint64_t seed, SampleConstraints c = {}) {
  return sample_polynomial(seed, dim(e), e.cfg.degree_cap, c);
}

MultiPoly second(E e, std::uint64_t seed) { return sample(e, trial_seed(seed, "second", 0)); }

SampleConstraints invariant(E e) {
  SampleConstraints c;
  c.invariant_under = &e.rs;
  return c;
}

std::string w(const MultiPoly& f) { return "f = " + to_string(f); }
std::string w(const MultiPoly& f, const MultiPoly& g) { return "f = " + to_string(f) + "; g = " + to_string(g); }

SphereFunction S(const MultiPoly& f) { return reduce_mod_sphere(f); }

std::optional<std::string> need_sphere(E e) {
  if (e.sphere) return std::nullopt;
  return "sphere integration unavailable: " + e.sphere_error;
}
std::optional<std::string> need_ball(E e) {
  if (e.ball) return std::nullopt;
  return "ball integration unavailable: " + e.ball_error;
}
std::optional<std::string> need_simplex(E e) {
  if (e.simplex) return std::nullopt;
  return "simplex integration unavailable: " + e.simplex_error;
}
std::optional<std::string> need_simplex_domain(E e) {
  if (e.simplex_domain && (e.simplex || e.tier_c)) return std::nullopt;
  return "simplex domain unavailable: " + e.simplex_error;
}
std::optional<std::string> need_group(E e) {
  if (!e.group.empty()) return std::nullopt;
  return "group generation failed: " + e.group_error;
}
std::optional<std::string> need_kappa_zero(E e) {
  if (e.kappa_zero) return std::nullopt;
  return std::string("needs kappa = 0");
}
std::optional<std::string> need_kappa_nonzero(E e) {
  if (!e.kappa_zero) return std::nullopt;
  return std::string("the variant coincides with the proved form when kappa = 0");
}
std::optional<std::string> need_z2d(E e) {
  if (e.z2d) return std::nullopt;
  return std::string("needs a Z_2^d root system");
}
std::optional<std::string> need_tier_c(E e) {
  if (e.tier_c) return std::nullopt;
  return std::string("tier C (Monte Carlo) is not allowed by the config");
}

// Ball integral through polar coordinates: the sphere integral of each
// homogeneous part times int_0^1 r^{m + 2 gamma + d - 1} (1 - r^2)^{mu - 1/2} dr,
// normalized; the radial ratio is (a)_k / (a + mu + 1/2)_k with a = gamma + d/2, m = 2k.
Rational ball_polar_integral(E e, const MultiPoly& p) {
  const Rational a = e.ctx.constants().gamma_kappa + Rational(static_cast<long>(dim(e)), 2);
  const Rational b = a + e.cfg.mu + Rational(1, 2);
  Rational total = 0;
  for (const auto& [m, part] : homogeneous_decompose(p)) {
    const Rational s = e.sphere->integrate(part);
    if (m % 2 == 1) {
      if (s != 0) throw InternalInconsistency("odd sphere moment of an even weight is nonzero");
      continue;
    }
    Rational factor = 1;
    for (unsigned t = 0; t < m / 2; ++t) factor *= (a + t) / (b + t);
    total += s * factor;
  }
  return total;
}

// Simplex moments from the Dirichlet integral, Z_2^d weights only:
// prod (kappa_i + 1/2)_{b_i} / (gamma + mu + (d+1)/2)_{|b|}.
Rational dirichlet_integral(E e, const MultiPoly& p) {
  const std::size_t d = dim(e);
  RationalVector kappa(d, Rational(0));
  for (const auto& r : e.rs.roots()) {
    const int ax = RootSystem::axis_of(r.vector);
    if (ax >= 0) kappa[static_cast<std::size_t>(ax)] = r.multiplicity;
  }
  const Rational top = e.ctx.constants().gamma_kappa + e.cfg.mu + Rational(static_cast<long>(d) + 1, 2);
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (std::size_t i = 0; i < d; ++i)
      for (unsigned t = 0; t < m[i]; ++t) v *= kappa[i] + Rational(1, 2) + t;
    for (unsigned t = 0; t < m.degree(); ++t) v /= top + t;
    total += v;
  }
  return total;
}

// ------------------------------------------------------------ identities

TrialOutcome classical_laplacian(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (!residual_beltrami_angular(f).is_zero()) o.fail("residual is nonzero", w(f));
  return o;
}

TrialOutcome classical_gradient(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  if (!residual_gradient_angular(f, g).is_zero()) o.fail("residual is nonzero", w(f, g));
  return o;
}

TrialOutcome classical_parts(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  for (std::size_t i = 0; i < dim(e); ++i)
    for (std::size_t j = i + 1; j < dim(e); ++j)
      if (residual_angular_parts(i, j, f, g) != 0)
        o.fail("residual is nonzero for (i, j) = (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
               w(f, g));
  return o;
}

TrialOutcome xi_gradient(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (!residual_xi_gradient(e.ctx, f).is_zero()) o.fail("residual is nonzero", w(f));
  return o;
}

TrialOutcome laplacian_divergence(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (!residual_beltrami_divergence(e.ctx, f).is_zero()) o.fail("residual is nonzero", w(f));
  return o;
}

TrialOutcome angular_decomposition(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  for (std::size_t i = 0; i < dim(e); ++i)
    for (std::size_t j = 0; j < dim(e); ++j)
      if (i != j && !residual_angular_decomposition(e.ctx, i, j, f).is_zero())
        o.fail("residual is nonzero for (i, j) = (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
               w(f));
  return o;
}

TrialOutcome gradient_component(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  for (std::size_t j = 0; j < dim(e); ++j)
    if (!residual_gradient_component(e.ctx, j, f).is_zero())
      o.fail("residual is nonzero for component " + std::to_string(j + 1), w(f));
  return o;
}

TrialOutcome product_rule(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  for (std::size_t i = 0; i < dim(e); ++i)
    for (std::size_t j = 0; j < dim(e); ++j)
      if (!residual_dunkl_product(e.ctx, i, j, f).is_zero())
        o.fail("residual is nonzero for (i, j) = (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
               w(f));
  return o;
}

TrialOutcome gradient_product(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  if (!residual_gradient_product(e.ctx, f, g).is_zero()) o.fail("residual is nonzero", w(f, g));
  return o;
}

TrialOutcome gradient_square(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (!residual_gradient_square(e.ctx, f).is_zero()) o.fail("residual is nonzero", w(f));
  return o;
}

TrialOutcome gradient_product_plus(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  const auto r = residual_gradient_product_plus(e.ctx, f, g);
  if (!r.is_zero()) o.fail("residual " + to_string(r.rep()), w(f, g));
  return o;
}

TrialOutcome laplacian_angular(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto r = residual_beltrami_angular_h(e.ctx, f);
  if (!r.is_zero()) o.fail("residual " + to_string(r.rep()), w(f));
  return o;
}

TrialOutcome divergence_lemma(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto g = sample(e, s);
  for (std::size_t j = 0; j < dim(e); ++j)
    if (!residual_divergence_lemma(e.ctx, j, g).is_zero())
      o.fail("residual is nonzero for component " + std::to_string(j + 1), "g = " + to_string(g));
  return o;
}

TrialOutcome divergence_lemma_xj(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto g = sample(e, s);
  for (std::size_t j = 0; j < dim(e); ++j) {
    const auto r = residual_divergence_lemma_xj(e.ctx, j, g);
    if (!r.is_zero())
      o.fail("residual " + to_string(r.rep()) + " in component " + std::to_string(j + 1), "g = " + to_string(g));
  }
  return o;
}

TrialOutcome commute(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  for (std::size_t i = 0; i < dim(e); ++i)
    for (std::size_t j = i + 1; j < dim(e); ++j)
      if (dunkl_operator(e.ctx, i, dunkl_operator(e.ctx, j, f)) != dunkl_operator(e.ctx, j, dunkl_operator(e.ctx, i, f)))
        o.fail("operators do not commute", w(f));
  return o;
}

TrialOutcome explicit_laplacian(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (h_laplacian(e.ctx, f) != h_laplacian_explicit(e.ctx, f)) o.fail("the two forms differ", w(f));
  return o;
}

TrialOutcome gradient_explicit(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const OperatorContext flat(RootSystem::trivial(dim(e)));
  const auto gh = spherical_gradient_h(e.ctx, S(f));
  const auto g0 = spherical_gradient_h(flat, S(f));
  for (std::size_t j = 0; j < dim(e); ++j) {
    MultiPoly extra(dim(e));
    for (const auto& r : e.ctx.roots())
      if (r.v[j] != 0) extra += scale(difference_op_E(r, f), r.kappa * r.v[j]);
    if (gh[j] != g0[j] + S(extra)) o.fail("component " + std::to_string(j + 1) + " differs", w(f));
  }
  return o;
}

// ------------------------------------------------------------ integration by parts

TrialOutcome angular_parts(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  for (std::size_t i = 0; i < dim(e); ++i)
    for (std::size_t j = i + 1; j < dim(e); ++j)
      if (residual_angular_dunkl_parts(e.ctx, *e.sphere, i, j, f, g) != 0)
        o.fail("residual is nonzero for (i, j) = (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
               w(f, g));
  return o;
}

TrialOutcome gradient_adjoint(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  for (std::size_t j = 0; j < dim(e); ++j)
    if (residual_gradient_adjoint(e.ctx, *e.sphere, j, f, g) != 0)
      o.fail("residual is nonzero for component " + std::to_string(j + 1), w(f, g));
  return o;
}

// ------------------------------------------------------------ harmonics

TrialOutcome eigen_relation(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto exp = harmonic_expansion(e.ctx, S(f));
  const Rational two_lambda = 2 * e.ctx.constants().lambda_kappa;
  for (const auto& [n, y] : exp.components) {
    const Rational ev = -Rational(n) * (Rational(n) + two_lambda);
    if (laplace_beltrami_h(e.ctx, S(y)) != S(y) * ev) o.fail("degree " + std::to_string(n) + " is not an eigenfunction", w(f));
    if (!h_laplacian(e.ctx, y).is_zero()) o.fail("degree " + std::to_string(n) + " component is not h-harmonic", w(f));
  }
  if (exp.sum(dim(e)) != S(f)) o.fail("components do not sum to f", w(f));
  return o;
}

TrialOutcome parseval(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto exp = harmonic_expansion(e.ctx, S(f));
  Rational sum = 0;
  for (const auto& [n, y] : exp.components) {
    sum += e.sphere->integrate(y * y);
    for (const auto& [m, z] : exp.components)
      if (m > n && e.sphere->integrate(y * z) != 0)
        o.fail("degrees " + std::to_string(n) + " and " + std::to_string(m) + " are not orthogonal", w(f));
  }
  if (sum != e.sphere->integrate(f * f)) o.fail("norms differ", w(f));
  return o;
}

TrialOutcome half_order(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s, invariant(e));
  const auto sf = S(f);
  if (sobolev_half_norm_sq(e.ctx, *e.sphere, sf) != spherical_gradient_norm_sq(e.ctx, *e.sphere, sf))
    o.fail("norms differ", w(f));
  return o;
}

TrialOutcome laplacian_power(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto sf = S(f);
  const auto lb = laplace_beltrami_h(e.ctx, sf);
  if (neg_laplacian_power(e.ctx, sf, 1) != lb * Rational(-1)) o.fail("power 1 differs from -Delta_{h,0}", w(f));
  if (neg_laplacian_power(e.ctx, sf, 2) != laplace_beltrami_h(e.ctx, lb)) o.fail("power 2 differs", w(f));
  return o;
}

// ------------------------------------------------------------ oracle

TrialOutcome moment_examples(E, std::uint64_t) {
  TrialOutcome o;
  Monomial a;
  a.set(0, 2);
  const Rational s2 = sphere_monomial_integral({0, 0, 0}, a);
  const Rational s1 = sphere_monomial_integral({1, 0}, a);
  o.facts.push_back({"x1^2 on S^2, kappa = 0", to_string(s2)});
  o.facts.push_back({"x1^2 on S^1, kappa = (1, 0)", to_string(s1)});
  if (s2 != Rational(1, 3)) o.fail("x1^2 on S^2 is not 1/3", "x1^2");
  if (s1 != Rational(3, 4)) o.fail("x1^2 on S^1 with kappa = (1, 0) is not 3/4", "x1^2");
  return o;
}

bool agree(const Rational& exact, const McEstimate& mc, double& z) {
  const double diff = std::fabs(exact.get_d() - mc.mean);
  z = mc.std_error > 0 ? diff / mc.std_error : (diff < 1e-12 ? 0 : 1e9);
  return diff <= 4 * mc.std_error + 1e-12;
}

TrialOutcome moment_vs_mc(E e, std::uint64_t s) {
  TrialOutcome o;
  std::mt19937_64 rng(s);
  const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
  RationalVector kappa(d);
  for (auto& k : kappa) {
    k = Rational(std::uniform_int_distribution<long>(0, 8)(rng), 4);
    k.canonicalize();
  }
  Monomial a;
  for (std::size_t i = 0; i < d; ++i) a.set(i, std::uniform_int_distribution<unsigned>(0, 4)(rng));
  const Rational exact = sphere_monomial_integral(kappa, a);
  const auto mc = mc_integrate(WeightedDomain::sphere(RootSystem::z2d(kappa)), MultiPoly::monomial(d, a),
                               e.cfg.mc_samples, s, 1);
  double z = 0;
  std::string desc = "x^" + std::to_string(a[0]);
  for (std::size_t i = 1; i < d; ++i) desc += "," + std::to_string(a[i]);
  desc += " with kappa = (";
  for (std::size_t i = 0; i < d; ++i) desc += (i ? ", " : "") + to_string(kappa[i]);
  desc += ")";
  if (!agree(exact, mc, z))
    o.fail("exact " + to_string(exact) + " vs MC " + std::to_string(mc.mean) + " +- " + std::to_string(mc.std_error),
           desc);
  o.maxs.push_back({"max_abs_z", z});
  return o;
}

TrialOutcome integral_vs_mc(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample_polynomial(s, dim(e), std::min(4u, e.cfg.degree_cap));
  auto one = [&](const DomainIntegrator& in, const WeightedDomain& dom, const char* name) {
    const Rational exact = in.integrate(f);
    const auto mc = mc_integrate(dom, f, e.cfg.mc_samples, s, 1);
    double z = 0;
    if (!agree(exact, mc, z))
      o.fail(std::string(name) + ": exact " + to_string(exact) + " vs MC " + std::to_string(mc.mean) + " +- " +
                 std::to_string(mc.std_error),
             w(f));
    o.maxs.push_back({std::string("max_abs_z_") + name, z});
  };
  one(*e.sphere, WeightedDomain::sphere(e.rs), "sphere");
  if (e.ball) one(*e.ball, *e.ball_domain, "ball");
  if (e.simplex) one(*e.simplex, *e.simplex_domain, "simplex");
  return o;
}

// ------------------------------------------------------------ isometries

TrialOutcome ball_lift(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  const auto F = lift_to_sphere(f), G = lift_to_sphere(g);
  const Rational lhs = ball_polar_integral(e, f * g);
  if (lhs != e.lifted->integrate(F.rep() * G.rep())) o.fail("inner products differ", w(f, g));
  if (lhs != e.ball->integrate(f * g)) o.fail("ball integrator disagrees with the polar route", w(f, g));
  return o;
}

TrialOutcome simplex_pullback(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s), g = second(e, s);
  const Rational lhs = dirichlet_integral(e, f * g);
  if (lhs != e.ball->integrate(pullback_simplex(f) * pullback_simplex(g))) o.fail("inner products differ", w(f, g));
  if (lhs != e.simplex->integrate(f * g)) o.fail("simplex integrator disagrees with the Dirichlet route", w(f, g));
  return o;
}

TrialOutcome ball_triple(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  if (ball_triple_norm_sq(*e.ball, f) != lifted_gradient_norm_sq(*e.ball_domain, f)) o.fail("norms differ", w(f));
  return o;
}

TrialOutcome simplex_triple(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const Rational lhs = 4 * (e.z2d ? dirichlet_integral(e, simplex_gradient_density(f)) : simplex_triple_norm_sq(*e.simplex, f));
  if (lhs != ball_triple_norm_sq(*e.ball, pullback_simplex(f))) o.fail("norms differ", w(f));
  return o;
}

// ------------------------------------------------------------ ball operator

TrialOutcome ball_eigen(E e, std::uint64_t) {
  TrialOutcome o;
  const unsigned deg = std::min(4u, e.cfg.degree_cap);
  const auto fit = fit_ball_eigenvalues(*e.ball_domain, deg, BallOperatorSign::Corrected);
  o.facts.push_back({"max_degree", std::to_string(deg)});
  o.facts.push_back({"polynomials_checked", std::to_string(fit.checked)});
  o.facts.push_back({"fitted_lambda", to_string(fit.fitted_lambda)});
  o.facts.push_back({"lambda_kappa_mu", to_string(fit.expected_lambda)});
  o.facts.push_back({"lambda_kappa", to_string(e.ctx.constants().lambda_kappa)});
  o.facts.push_back({"fit_matches", fit.fitted_lambda == fit.expected_lambda ? "lambda_kappa_mu" : "other"});
  if (!fit.all_eigen) o.fail("an orthogonal polynomial is not an eigenfunction", "orthogonal basis up to degree " + std::to_string(deg));
  else if (!fit.single_lambda) o.fail("no single lambda fits every degree", "orthogonal basis up to degree " + std::to_string(deg));
  else if (fit.fitted_lambda != fit.expected_lambda)
    o.fail("fitted lambda differs from lambda_{kappa,mu}", "orthogonal basis up to degree " + std::to_string(deg));
  return o;
}

TrialOutcome ball_eigen_plus(E e, std::uint64_t) {
  TrialOutcome o;
  const unsigned deg = std::min(4u, e.cfg.degree_cap);
  const auto fit = fit_ball_eigenvalues(*e.ball_domain, deg, BallOperatorSign::Printed);
  if (!fit.all_eigen || !fit.single_lambda)
    o.fail("the +2 lambda (x . grad) operator does not diagonalize the orthogonal basis",
           "orthogonal basis up to degree " + std::to_string(deg));
  return o;
}

RationalVector ball_point(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<long> u(-16, 16);
  for (;;) {
    RationalVector x(d);
    Rational n2 = 0;
    for (auto& c : x) {
      c = Rational(u(rng), 16);
      c.canonicalize();
      n2 += c * c;
    }
    if (n2 <= 1) return x;
  }
}

std::string point_text(const RationalVector& x) {
  std::string t = "(";
  for (std::size_t i = 0; i < x.size(); ++i) t += (i ? ", " : "") + to_string(x[i]);
  return t + ")";
}

TrialOutcome coordinate_pointwise(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto lhs = ball_gradient_density(f), rhs = coordinate_gradient_density(f);
  std::mt19937_64 rng(s);
  for (int k = 0; k < 32; ++k) {
    const auto x = ball_point(rng, dim(e));
    const Rational a = evaluate(lhs, x), b = evaluate(rhs, x);
    if (a > b) {
      o.fail("gradient density " + to_string(a) + " exceeds the coordinate bound " + to_string(b) + " at " +
                 point_text(x),
             w(f) + " at x = " + point_text(x));
      break;
    }
  }
  return o;
}

TrialOutcome corrected_pointwise(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto lhs = ball_gradient_density(f), mid = coordinate_gradient_bound_density(f),
             rhs = coordinate_gradient_density(f);
  std::mt19937_64 rng(s);
  for (int k = 0; k < 32; ++k) {
    const auto x = ball_point(rng, dim(e));
    const Rational a = evaluate(lhs, x), b = evaluate(mid, x), c = evaluate(rhs, x);
    if (a > b || b > 2 * c) {
      o.fail("bound violated at " + point_text(x), w(f) + " at x = " + point_text(x));
      break;
    }
  }
  return o;
}

// ------------------------------------------------------------ uncertainty

void record(TrialOutcome& o, const UncertaintyResult& r, const MultiPoly& f) {
  o.mins.push_back({"min_margin", static_cast<double>(r.margin)});
  o.mins.push_back({"min_product", static_cast<double>(r.product)});
  o.mins.push_back({"min_localization", static_cast<double>(r.localization)});
  o.maxs.push_back({"max_localization", static_cast<double>(r.localization)});
  o.facts.push_back({"constant", std::to_string(static_cast<double>(r.constant))});
  o.facts.push_back({"lambda", to_string(r.lambda)});
  if (r.trivially_true) o.counts.push_back("trivially_true");
  if (r.margin < 0) o.fail("negative margin " + std::to_string(static_cast<double>(r.margin)), w(f));
  for (const auto& c : r.proof_checks)
    if (!c.passed) o.fail("proof step '" + c.name + "' fails" + (c.detail.empty() ? "" : ": " + c.detail), w(f));
  for (const auto& x : r.axis_localization)
    if (!(x > 0 && x < 2)) o.fail("localization outside (0, 2)", w(f));
}

UncertaintyResult sphere_result(E e, const MultiPoly& f) {
  return sphere_uncertainty(e.ctx, *e.sphere, make_admissible(*e.sphere, f));
}

SampleConstraints sphere_invariant(E e) {
  SampleConstraints c = invariant(e);
  c.mean_zero = true;
  c.mean_root_system = &e.rs;
  return c;
}

TrialOutcome sphere_unc(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s, sphere_invariant(e));
  const auto r = sphere_result(e, f);
  if (!r.admissible.invariant) o.fail("sampled function is not invariant", w(f));
  record(o, r, f);
  return o;
}

TrialOutcome sphere_step(E e, std::uint64_t s, const char* step, bool invariant_f) {
  TrialOutcome o;
  SampleConstraints c = invariant_f ? sphere_invariant(e) : SampleConstraints{};
  if (!invariant_f) {
    c.mean_zero = true;
    c.mean_root_system = &e.rs;
  }
  const auto f = sample(e, s, c);
  const auto r = sphere_result(e, f);
  bool found = false;
  for (const auto& p : r.proof_checks)
    if (p.name == step) {
      found = true;
      if (!p.passed) o.fail(p.name + " fails" + (p.detail.empty() ? "" : ": " + p.detail), w(f));
    }
  if (!found) o.fail(std::string("proof step '") + step + "' was not evaluated", w(f));
  return o;
}

TrialOutcome sphere_gap(E e, std::uint64_t s) { return sphere_step(e, s, "spectral-gap", true); }
TrialOutcome sphere_loc(E e, std::uint64_t s) { return sphere_step(e, s, "localization-bound", true); }
TrialOutcome sphere_moment(E e, std::uint64_t s) { return sphere_step(e, s, "first-moment-identity", false); }

TrialOutcome scale_covariance(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s, sphere_invariant(e));
  const auto a = sphere_result(e, f), b = sphere_result(e, scale(f, -1));
  if (*a.product_exact != *b.product_exact || *a.localization_exact != *b.localization_exact ||
      *a.gradient_sq_exact != *b.gradient_sq_exact)
    o.fail("f and -f give different functionals", w(f));
  return o;
}

TrialOutcome ball_axes(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s, invariant(e));
  record(o, ball_uncertainty(*e.ball, make_admissible(*e.ball, f), BallMode::InvariantAxes), f);
  return o;
}

TrialOutcome ball_directions(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto r = ball_uncertainty(*e.ball, make_admissible(*e.ball, f), BallMode::ClassicalDirections,
                                  {e.cfg.direction_samples, s});
  record(o, r, f);
  if (r.sampled_direction_min) o.mins.push_back({"min_sampled_direction_localization", static_cast<double>(*r.sampled_direction_min)});
  return o;
}

TrialOutcome ball_coordinate(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  const auto r = ball_uncertainty(*e.ball, make_admissible(*e.ball, f), BallMode::CoordinateGradient,
                                  {e.cfg.direction_samples, s});
  record(o, r, f);
  if (r.triple_norm_sq && *r.gradient_sq_exact < *r.triple_norm_sq) o.counts.push_back("coordinate_term_below_triple_norm");
  return o;
}

TrialOutcome simplex_jacobi(E e, std::uint64_t s) {
  TrialOutcome o;
  const auto f = sample(e, s);
  record(o, simplex_uncertainty(*e.simplex, make_admissible(*e.simplex, f), SimplexMode::Jacobi), f);
  return o;
}

TrialOutcome simplex_symmetric(E e, std::uint64_t s) {
  TrialOutcome o;
  SampleConstraints c;
  c.symmetric = true;
  const auto f = sample(e, s, c);
  if (e.simplex) {
    record(o, simplex_uncertainty(*e.simplex, make_admissible(*e.simplex, f), SimplexMode::HyperoctahedralSymmetric),
           f);
  } else {
    o.counts.push_back("monte_carlo");
    record(o,
           simplex_uncertainty_mc(*e.simplex_domain, f, SimplexMode::HyperoctahedralSymmetric, e.cfg.mc_samples, s),
           f);
  }
  return o;
}

CheckDef def(std::string id, std::string suite, std::string identity, Runner run, std::vector<Requirement> req = {},
             bool single = false, std::string stream = {}, bool refuted = false) {
  CheckDef d{{std::move(id), std::move(suite), std::move(identity), refuted}, run, std::move(req), single,
             std::move(stream)};
  if (d.stream.empty()) d.stream = d.spec.id;
  return d;
}

CheckDef refuted(std::string id, std::string suite, std::string identity, Runner run,
                 std::vector<Requirement> req = {}, bool single = false) {
  return def(std::move(id), std::move(suite), std::move(identity), run, std::move(req), single, {}, true);
}

}  // namespace

const std::vector<CheckDef>& definitions() {
  static const std::vector<CheckDef> defs = {
      // identities
      def("classical-laplacian-angular-sum", "identities", "Delta_0 = sum_{i<j} D_ij^2", classical_laplacian),
      def("classical-gradient-angular-sum", "identities", "grad_0 f . grad_0 g = sum_{i<j} D_ij f D_ij g",
          classical_gradient),
      def("classical-angular-integration-by-parts", "identities", "int D_ij f g dsigma = -int f D_ij g dsigma",
          classical_parts),
      def("h-gradient-radial-part", "identities", "xi . grad_{h,0} f = sum_v kappa_v (f - f o sigma_v)", xi_gradient),
      def("h-laplacian-divergence-form", "identities", "Delta_{h,0} = grad_{h,0} . grad_{h,0} - xi . grad_{h,0}",
          laplacian_divergence),
      def("angular-dunkl-decomposition", "identities", "cal D_ij = D_ij + E_ij", angular_decomposition),
      def("h-gradient-component-angular-form", "identities",
          "(grad_{h,0})_j f = sum_{i != j} xi_i cal D_ij f + xi_j (xi . grad_{h,0} f)", gradient_component),
      def("dunkl-product-rule", "identities",
          "D_i(x_j f) = x_j D_i f + delta_ij f + 2 sum_v kappa_v v_i v_j / |v|^2 f o sigma_v", product_rule),
      def("h-gradient-angular-product", "identities",
          "grad_{h,0} f . grad_{h,0} g - (xi . grad_{h,0} f)(xi . grad_{h,0} g) = sum_{i<j} cal D_ij f cal D_ij g",
          gradient_product),
      def("h-gradient-angular-square", "identities",
          "|grad_{h,0} f|^2 - |xi . grad_{h,0} f|^2 = sum_{i<j} |cal D_ij f|^2", gradient_square),
      refuted("h-gradient-angular-product-plus-sign", "identities",
              "grad_{h,0} f . grad_{h,0} g + (xi . grad_{h,0} f)(xi . grad_{h,0} g) = sum_{i<j} cal D_ij f cal D_ij g",
              gradient_product_plus, {need_kappa_nonzero}),
      def("h-laplacian-angular-form", "identities",
          "Delta_{h,0} = sum_{i<j} cal D_ij^2 - (xi . grad_{h,0})^2 + 2 lambda xi . grad_{h,0} - 2 sum_v kappa_v^2 "
          "(I - sigma_v) + sum_v kappa_v^2 (I - sigma_v)^2",
          laplacian_angular),
      def("h-gradient-divergence-lemma", "identities",
          "sum_{i != j} cal D_ij (xi_i g) = (grad_{h,0})_j g - (gamma + d - 1) xi_j g - sum_v kappa_v (xi sigma_v)_j "
          "g(xi sigma_v)",
          divergence_lemma),
      refuted("h-gradient-divergence-lemma-xj-index", "identities",
              "sum_{i != j} cal D_ij (xi_j g) = (grad_{h,0})_j g - (gamma + d - 1) xi_j g - sum_v kappa_v (xi "
              "sigma_v)_j g(xi sigma_v)",
              divergence_lemma_xj),
      def("dunkl-operators-commute", "identities", "D_i D_j = D_j D_i", commute),
      def("h-laplacian-explicit-form", "identities",
          "sum_i D_i^2 = Delta + sum_v kappa_v (2 v . grad / <x,v> - |v|^2 (I - sigma_v) / <x,v>^2)",
          explicit_laplacian),
      def("h-gradient-explicit-form", "identities", "grad_{h,0} f = grad_0 f + sum_v kappa_v E_v f v",
          gradient_explicit),
      // integration by parts
      def("angular-dunkl-integration-by-parts", "integration",
          "int cal D_ij f g h^2 dsigma = -int f cal D_ij g h^2 dsigma", angular_parts, {need_sphere}),
      def("h-gradient-adjoint", "integration",
          "int (grad_{h,0})_j f g h^2 = -int f ((grad_{h,0})_j g - (2 lambda + 1) xi_j g) h^2", gradient_adjoint,
          {need_sphere}),
      // harmonics
      def("harmonic-eigen-relation", "harmonics", "Delta_{h,0} proj_n f = -n(n + 2 lambda) proj_n f",
          eigen_relation),
      def("harmonic-parseval", "harmonics", "||f||^2 = sum_n ||proj_n f||^2, components orthogonal", parseval,
          {need_sphere}),
      def("half-order-norm-equals-gradient-norm", "harmonics",
          "||(-Delta_{h,0})^{1/2} f||^2 = ||grad_{h,0} f||^2 for G-invariant f", half_order,
          {need_sphere, need_group}),
      def("laplacian-integer-powers", "harmonics",
          "(-Delta_{h,0})^r f = sum_n (n(n + 2 lambda))^r proj_n f for r = 1, 2", laplacian_power),
      // oracle
      def("moment-formula-examples", "oracle", "x1^2 on S^2 gives 1/3; on S^1 with kappa = (1, 0) gives 3/4",
          moment_examples, {}, true),
      def("moment-formula-vs-monte-carlo", "oracle",
          "prod (kappa_i + 1/2)_{b_i} / (gamma + d/2)_{|b|} agrees with MC within 4 stderr", moment_vs_mc,
          {need_tier_c}),
      def("exact-integral-vs-monte-carlo", "oracle",
          "exact sphere, ball and simplex integrals agree with MC within 4 stderr", integral_vs_mc,
          {need_tier_c, need_sphere}),
      // isometries
      def("ball-lift-isometry", "isometry", "int_B f g W_{kappa,mu} = int_S F G h_{kappa,mu}^2 with F(x, y) = f(x)",
          ball_lift, {need_sphere, need_ball}),
      def("simplex-pullback-isometry", "isometry", "int_T f g U_{kappa,mu} = int_B (f o psi)(g o psi) W_{kappa,mu}",
          simplex_pullback, {need_z2d, need_ball, need_simplex}),
      def("ball-triple-norm-equals-lifted-gradient", "isometry", "|||grad f|||^2 = ||grad_0 F||^2", ball_triple,
          {need_ball}),
      def("simplex-triple-norm-pullback", "isometry", "4 |||d f|||^2 = |||grad (f o psi)|||^2", simplex_triple,
          {need_ball, need_simplex}),
      // ball operator
      def("ball-operator-eigenfunctions", "ball",
          "orthogonal polynomials of degree n satisfy (Delta_h - (x.grad)^2 - 2 lambda (x.grad)) P = -n(n + 2 "
          "lambda) P with lambda = lambda_{kappa,mu}",
          ball_eigen, {need_ball}, true),
      refuted("ball-operator-plus-sign", "ball",
              "orthogonal polynomials are eigenfunctions of Delta_h - (x.grad)^2 + 2 lambda (x.grad)",
              ball_eigen_plus, {need_ball}, true),
      refuted("ball-coordinate-gradient-bound", "ball",
              "(1 - |x|^2)|grad f|^2 + sum_{i<j} (D_ij f)^2 <= sum_i (1 - x_i^2)(d_i f)^2 pointwise",
              coordinate_pointwise),
      def("ball-coordinate-gradient-bound-factor-two", "ball",
          "(1 - |x|^2)|grad f|^2 + sum_{i<j} (D_ij f)^2 <= sum_i (1 + |x|^2 - 2 x_i^2)(d_i f)^2 <= 2 sum_i (1 - "
          "x_i^2)(d_i f)^2",
          corrected_pointwise),
      // uncertainty
      def("sphere-uncertainty", "uncertainty",
          "min_i int (1 - x_i)|f|^2 h^2 * ||grad_0 f||^2 >= C(lambda_kappa) for invariant admissible f", sphere_unc,
          {need_sphere, need_group}),
      def("sphere-proof-spectral-gap", "uncertainty", "||grad_0 f||^2 >= 2 lambda_kappa for invariant admissible f",
          sphere_gap, {need_sphere, need_group}, false, "sphere-uncertainty"),
      def("sphere-proof-localization-bound", "uncertainty", "int (1 - x_i^2)|f|^2 h^2 <= (2 - r) r",
          sphere_loc, {need_sphere, need_group}, false, "sphere-uncertainty"),
      def("sphere-proof-first-moment", "uncertainty",
          "(2 lambda + 1) int x |f|^2 h^2 = 2 int f grad_{h,0} f h^2", sphere_moment, {need_sphere}),
      def("uncertainty-scale-covariance", "uncertainty", "every functional of -f equals that of f", scale_covariance,
          {need_sphere, need_group}),
      def("ball-uncertainty-invariant-axes", "uncertainty",
          "min_i int (1 - x_i)|f|^2 W * |||grad f|||^2 >= C(lambda_{kappa,mu}) for invariant admissible f",
          ball_axes, {need_ball, need_group}),
      def("ball-uncertainty-directions", "uncertainty",
          "min_e int (1 - <x,e>)|f|^2 W_mu * |||grad f|||^2 >= C(lambda_{0,mu})", ball_directions,
          {need_kappa_zero, need_ball}),
      def("ball-uncertainty-coordinate-gradient", "uncertainty",
          "min_e int (1 - <x,e>)|f|^2 W_mu * sum_i int (1 - x_i^2)|d_i f|^2 W_mu >= C(lambda_{0,mu})", ball_coordinate,
          {need_kappa_zero, need_ball}),
      def("simplex-uncertainty-jacobi", "uncertainty",
          "min_i int (1 - sqrt x_i)|f|^2 U * |||d f|||^2 >= C(lambda_{kappa,mu}) / 4", simplex_jacobi,
          {need_z2d, need_simplex}),
      def("simplex-uncertainty-symmetric", "uncertainty",
          "min_i int (1 - sqrt x_i)|f|^2 U * |||d f|||^2 >= C(lambda_{kappa,mu}) / 4 for symmetric f",
          simplex_symmetric, {need_simplex_domain}),
  };
  return defs;
}

}  // namespace dunkl::verify::detail
