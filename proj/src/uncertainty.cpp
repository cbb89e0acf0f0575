#include "dunkl/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

long double ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

std::string str(const Rational& q) { return q.get_str(); }

bool all_kappa_zero(const RootSystem& rs) {
  return std::all_of(rs.roots().begin(), rs.roots().end(), [](const Root& r) { return r.multiplicity == 0; });
}

bool invariant_poly(const RootSystem& rs, const MultiPoly& g) {
  for (const auto& r : rs.roots())
    if (compose_linear(g, reflection_matrix(r.vector)) != g) return false;
  return true;
}

bool invariant_sphere(const RootSystem& rs, const SphereFunction& g) {
  for (const auto& r : rs.roots())
    if (reduce_mod_sphere(compose_linear(g.rep(), reflection_matrix(r.vector))) != g) return false;
  return true;
}

AdmissibilityFlags check_admissible(const DomainIntegrator& in, const MultiPoly& g, const Rational& n) {
  if (n <= 0) throw DegenerateInput("admissible function needs a positive squared norm");
  AdmissibilityFlags f;
  f.mean_residual = in.integrate(g);
  f.norm_residual = in.integrate(g * g) / n - 1;
  f.mean_zero = f.mean_residual == 0;
  f.unit_norm = f.norm_residual == 0;
  if (!f.mean_zero) throw DegenerateInput("function is not mean-zero (residual " + str(f.mean_residual) + ")");
  return f;
}

void finish(UncertaintyResult& res) {
  res.trivially_true = res.lambda == 0;
  if (res.product_exact) res.product = ld(*res.product_exact);
  res.margin = res.product - res.constant;
}

void add(UncertaintyResult& res, std::string name, bool ok, std::string detail = {}) {
  res.proof_checks.push_back({std::move(name), ok, std::move(detail)});
}

// min over axes, with the exact value kept alongside.
void take_axis_min(UncertaintyResult& res) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < res.axis_localization_exact.size(); ++i)
    if (res.axis_localization_exact[i] < res.axis_localization_exact[best]) best = i;
  res.localization_exact = res.axis_localization_exact[best];
  res.localization = ld(*res.localization_exact);
}

}  // namespace

Admissible make_admissible(const DomainIntegrator& in, const MultiPoly& f) {
  const Rational mean = in.integrate(f);
  MultiPoly g = f - MultiPoly::constant(f.dim(), mean);
  const Rational n = in.integrate(g * g);
  if (n == 0) throw DegenerateInput("cannot normalize a function that is constant on the domain");
  return {std::move(g), n, mean};
}

long double constant_C(long double lambda) {
  if (!(lambda >= 0)) throw DegenerateInput("constant_C needs lambda >= 0");
  if (lambda == 0) return 0;
  const long double t = 2 * lambda;
  return t * (1 - std::sqrt(t) / std::sqrt((lambda + 0.5L) * (lambda + 0.5L) + t));
}

long double constant_C(const Rational& lambda) {
  if (lambda < 0) throw DegenerateInput("constant_C needs lambda >= 0");
  if (lambda == 0) return 0;
  // Evaluate the ratio under the root exactly: 2 lambda / ((lambda + 1/2)^2 + 2 lambda).
  const Rational t = 2 * lambda;
  const Rational q = t / ((lambda + Rational(1, 2)) * (lambda + Rational(1, 2)) + t);
  const long double num = static_cast<long double>(q.get_num().get_d());
  const long double den = static_cast<long double>(q.get_den().get_d());
  return ld(t) * (1 - std::sqrt(num / den));
}

bool UncertaintyResult::proof_chain_ok() const {
  return std::all_of(proof_checks.begin(), proof_checks.end(), [](const ProofCheck& c) { return c.passed; });
}

std::vector<std::vector<double>> sample_directions(std::size_t d, std::size_t extra, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < d; ++i)
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(d, 0.0);
      e[i] = s;
      out.push_back(std::move(e));
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  while (out.size() < 2 * d + extra) {
    std::vector<double> e(d);
    double n2 = 0;
    for (auto& c : e) {
      c = gauss(rng);
      n2 += c * c;
    }
    if (n2 == 0) continue;
    for (auto& c : e) c /= std::sqrt(n2);
    out.push_back(std::move(e));
  }
  return out;
}

// ------------------------------------------------------------ sphere

UncertaintyResult sphere_uncertainty(const OperatorContext& ctx, const DomainIntegrator& in, const Admissible& a) {
  if (in.domain().shape() != Shape::Sphere) throw DimensionMismatch("sphere_uncertainty needs a sphere integrator");
  const std::size_t d = ctx.dim();
  const SphereFunction sg = reduce_mod_sphere(a.g);
  const MultiPoly& g = sg.rep();
  const MultiPoly g2 = g * g;
  const Rational& n = a.norm_sq;

  UncertaintyResult res;
  res.mode = "sphere-invariant";
  res.admissible = check_admissible(in, g, n);
  res.admissible.invariant = invariant_sphere(ctx.root_system(), sg);
  res.lambda = ctx.constants().lambda_kappa;
  res.constant = constant_C(res.lambda);

  for (std::size_t i = 0; i < d; ++i) {
    res.axis_localization_exact.push_back(in.integrate(g2 - MultiPoly::variable(d, i) * g2) / n);
    res.axis_localization.push_back(ld(res.axis_localization_exact.back()));
  }
  take_axis_min(res);

  const OperatorContext flat(RootSystem::trivial(d));
  Rational grad0 = 0;
  for (const auto& c : spherical_gradient_h(flat, sg)) grad0 += in.integrate(c.rep() * c.rep());
  grad0 /= n;
  res.gradient_sq_exact = grad0;
  res.gradient_sq = ld(grad0);
  res.product_exact = *res.localization_exact * grad0;

  // Proof chain.
  const auto gh = spherical_gradient_h(ctx, sg);
  Rational gradh = 0;
  for (const auto& c : gh) gradh += in.integrate(c.rep() * c.rep());
  gradh /= n;
  const Rational two_lambda = 2 * res.lambda;
  const Rational half_shift = res.lambda + Rational(1, 2);

  bool in_range = true;
  for (const auto& r : res.axis_localization_exact) in_range = in_range && r > 0 && r < 2;
  add(res, "localization-in-open-interval", in_range);

  bool moment = true;
  for (std::size_t i = 0; i < d; ++i)
    moment = moment && (two_lambda + 1) * in.integrate(MultiPoly::variable(d, i) * g2) == 2 * in.integrate(g * gh[i].rep());
  add(res, "first-moment-identity", moment);

  bool loc_bound = true;
  std::vector<Rational> one_minus_sq;
  for (std::size_t i = 0; i < d; ++i) {
    const auto xi = MultiPoly::variable(d, i);
    one_minus_sq.push_back(in.integrate(g2 - xi * xi * g2) / n);
    const Rational& r = res.axis_localization_exact[i];
    loc_bound = loc_bound && one_minus_sq.back() <= (2 - r) * r;
  }
  add(res, "localization-bound", loc_bound);

  const Rational sob = sobolev_half_norm_sq(ctx, in, sg) / n;
  add(res, "spectral-gap", sob >= two_lambda, "half-order energy " + str(sob) + " vs 2 lambda " + str(two_lambda));

  if (res.admissible.invariant) {
    add(res, "h-gradient-equals-classical", gradh == grad0);
    add(res, "half-order-equals-gradient", sob == gradh);
    bool cs = true;
    for (std::size_t i = 0; i < d; ++i) {
      const Rational r1 = 1 - res.axis_localization_exact[i];
      cs = cs && half_shift * half_shift * r1 * r1 <= one_minus_sq[i] * grad0;
    }
    add(res, "cauchy-schwarz-step", cs);
    const Rational& r = *res.localization_exact;
    const Rational& l = *res.product_exact;
    add(res, "lower-envelope", l >= two_lambda * r && l * (2 - r) >= half_shift * half_shift * (1 - r) * (1 - r));
  }
  finish(res);
  return res;
}

UncertaintyResult sphere_uncertainty(const OperatorContext& ctx, const SphereFunction& f) {
  const DomainIntegrator in(WeightedDomain::sphere(ctx.root_system()));
  return sphere_uncertainty(ctx, in, make_admissible(in, f.rep()));
}

// ------------------------------------------------------------ ball

const char* ball_mode_name(BallMode m) {
  switch (m) {
    case BallMode::InvariantAxes: return "invariant-axes";
    case BallMode::ClassicalDirections: return "classical-directions";
    case BallMode::CoordinateGradient: return "coordinate-gradient";
  }
  return "?";
}

UncertaintyResult ball_uncertainty(const DomainIntegrator& in, const Admissible& a, BallMode mode,
                                   const DirectionOptions& dirs) {
  const WeightedDomain& dom = in.domain();
  if (dom.shape() != Shape::Ball) throw DimensionMismatch("ball_uncertainty needs a ball integrator");
  const RootSystem& rs = dom.root_system();
  if (mode != BallMode::InvariantAxes && !all_kappa_zero(rs))
    throw InvalidRootSystem(std::string(ball_mode_name(mode)) + " mode needs kappa = 0");
  const std::size_t d = dom.dim();
  const MultiPoly& g = a.g;
  const MultiPoly g2 = g * g;
  const Rational& n = a.norm_sq;

  UncertaintyResult res;
  res.mode = std::string("ball-") + ball_mode_name(mode);
  res.admissible = check_admissible(in, g, n);
  res.admissible.invariant = invariant_poly(rs, g);
  if (mode == BallMode::InvariantAxes && !res.admissible.invariant)
    throw DegenerateInput("invariant-axes mode needs a G-invariant function");
  res.lambda = dom.lambda();
  res.constant = constant_C(res.lambda);

  std::vector<Rational> moments;
  for (std::size_t i = 0; i < d; ++i) {
    moments.push_back(in.integrate(MultiPoly::variable(d, i) * g2) / n);
    res.axis_localization_exact.push_back(1 - moments.back());
    res.axis_localization.push_back(ld(res.axis_localization_exact.back()));
  }

  const Rational triple = ball_triple_norm_sq(in, g) / n;
  if (mode == BallMode::CoordinateGradient) {
    res.gradient_sq_exact = in.integrate(coordinate_gradient_density(g)) / n;
    res.triple_norm_sq = triple;
  } else {
    res.gradient_sq_exact = triple;
  }
  res.gradient_sq = ld(*res.gradient_sq_exact);

  if (mode == BallMode::InvariantAxes) {
    take_axis_min(res);
    res.product_exact = *res.localization_exact * *res.gradient_sq_exact;
  } else {
    // min over unit e of 1 - <m, e> is 1 - |m|.
    Rational m2 = 0;
    for (const auto& m : moments) m2 += m * m;
    res.exact = false;
    res.localization = 1 - std::sqrt(ld(m2));
    long double sampled = std::numeric_limits<long double>::infinity();
    const auto set = sample_directions(d, dirs.random_directions, dirs.seed);
    for (const auto& e : set) {
      long double s = 1;
      for (std::size_t i = 0; i < d; ++i) s -= static_cast<long double>(e[i]) * ld(moments[i]);
      sampled = std::min(sampled, s);
    }
    res.sampled_direction_min = sampled;
    res.directions_sampled = set.size();
    res.product = res.localization * res.gradient_sq;
    add(res, "sampled-directions-above-minimum", sampled >= res.localization - 1e-15L);
  }

  // Proof chain through the lift to S^d.
  add(res, "triple-norm-equals-lifted-gradient", triple * n == lifted_gradient_norm_sq(dom, g));
  const OperatorContext lctx(lifted_root_system(rs, dom.mu()));
  const DomainIntegrator lin(lifted_sphere(dom));
  const auto lifted = sphere_uncertainty(lctx, lin, Admissible{extend_dimension(g, d + 1), n, a.removed_mean});
  for (const auto& c : lifted.proof_checks) add(res, "lift:" + c.name, c.passed, c.detail);
  bool same = true;
  for (std::size_t i = 0; i < d; ++i) same = same && lifted.axis_localization_exact[i] == res.axis_localization_exact[i];
  add(res, "lift:localization-matches", same);
  add(res, "lift:gradient-matches", *lifted.gradient_sq_exact == triple);

  if (res.product_exact) {
    finish(res);
  } else {
    res.trivially_true = res.lambda == 0;
    res.margin = res.product - res.constant;
  }
  return res;
}

UncertaintyResult ball_uncertainty(const WeightedDomain& dom, const MultiPoly& f, BallMode mode,
                                   const DirectionOptions& dirs) {
  const DomainIntegrator in(dom);
  return ball_uncertainty(in, make_admissible(in, f), mode, dirs);
}

// ------------------------------------------------------------ simplex

const char* simplex_mode_name(SimplexMode m) {
  switch (m) {
    case SimplexMode::Jacobi: return "jacobi";
    case SimplexMode::HyperoctahedralSymmetric: return "hyperoctahedral-symmetric";
  }
  return "?";
}

namespace {

void check_simplex_mode(const WeightedDomain& dom, const MultiPoly& f, SimplexMode mode) {
  if (dom.shape() != Shape::Simplex) throw DimensionMismatch("simplex_uncertainty needs a simplex domain");
  if (mode == SimplexMode::Jacobi && dom.root_system().kind() != RootSystemKind::Z2d)
    throw InvalidRootSystem("jacobi mode needs a Z_2^d root system");
  if (mode == SimplexMode::HyperoctahedralSymmetric && !is_invariant(f, permutation_group(dom.dim())))
    throw DegenerateInput("hyperoctahedral mode needs a symmetric function");
}

}  // namespace

UncertaintyResult simplex_uncertainty(const DomainIntegrator& in, const Admissible& a, SimplexMode mode) {
  const WeightedDomain& dom = in.domain();
  check_simplex_mode(dom, a.g, mode);
  const std::size_t d = dom.dim();
  const MultiPoly& g = a.g;
  const MultiPoly g2 = g * g;
  const Rational& n = a.norm_sq;

  UncertaintyResult res;
  res.mode = std::string("simplex-") + simplex_mode_name(mode);
  res.exact = false;
  res.admissible = check_admissible(in, g, n);
  res.admissible.invariant = mode == SimplexMode::Jacobi || is_invariant(g, permutation_group(d));
  res.lambda = dom.lambda();
  res.constant = constant_C(res.lambda) / 4;

  const long double nd = ld(n);
  res.localization = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    res.axis_localization.push_back(in.integrate_one_minus_sqrt(g2, i) / nd);
    res.localization = std::min(res.localization, res.axis_localization.back());
  }
  res.gradient_sq_exact = simplex_triple_norm_sq(in, g) / n;
  res.gradient_sq = ld(*res.gradient_sq_exact);
  res.product = res.localization * res.gradient_sq;

  const auto ball = WeightedDomain::ball(dom.root_system(), dom.mu());
  const DomainIntegrator bin(ball);
  const MultiPoly gp = pullback_simplex(g);
  add(res, "pullback-norm", in.integrate(g2) == bin.integrate(gp * gp));
  add(res, "pullback-gradient", 4 * *res.gradient_sq_exact * n == ball_triple_norm_sq(bin, gp));
  bool in_range = true;
  for (auto r : res.axis_localization) in_range = in_range && r > 0 && r < 2;
  add(res, "localization-in-open-interval", in_range);

  res.trivially_true = res.lambda == 0;
  res.margin = res.product - res.constant;
  return res;
}

UncertaintyResult simplex_uncertainty(const WeightedDomain& dom, const MultiPoly& f, SimplexMode mode) {
  const DomainIntegrator in(dom);
  return simplex_uncertainty(in, make_admissible(in, f), mode);
}

UncertaintyResult simplex_uncertainty_mc(const WeightedDomain& dom, const MultiPoly& f, SimplexMode mode,
                                         std::uint64_t samples, std::uint64_t seed) {
  check_simplex_mode(dom, f, mode);
  const std::size_t d = dom.dim();
  const double mean = mc_integrate(dom, f, samples, seed).mean;
  const MultiPoly g = f - MultiPoly::constant(d, Rational(mean));
  const MultiPoly g2 = g * g;
  const long double n = mc_integrate(dom, g2, samples, seed).mean;
  if (!(n > 0)) throw DegenerateInput("Monte Carlo norm vanished");

  UncertaintyResult res;
  res.mode = std::string("simplex-") + simplex_mode_name(mode) + "-mc";
  res.exact = false;
  res.admissible.mean_zero = true;
  res.admissible.unit_norm = true;
  res.admissible.invariant = true;
  res.lambda = dom.lambda();
  res.constant = constant_C(res.lambda) / 4;
  res.localization = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    const auto est = mc_integrate(
        dom, [&](std::span<const double> x) { return (1 - std::sqrt(x[i])) * evaluate(g2, x); }, samples, seed);
    res.axis_localization.push_back(est.mean / n);
    res.localization = std::min(res.localization, res.axis_localization.back());
  }
  res.gradient_sq = mc_integrate(dom, simplex_gradient_density(g), samples, seed).mean / n;
  res.product = res.localization * res.gradient_sq;
  res.trivially_true = res.lambda == 0;
  res.margin = res.product - res.constant;
  return res;
}

}  // namespace dunkl
