#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dunkl/errors.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"
#include "generators.hpp"

using namespace dunkl;

namespace {

MultiPoly P(const char* s, std::size_t d) { return parse_poly(s, d); }

Monomial mono(std::initializer_list<unsigned> e) {
  Monomial m;
  std::size_t i = 0;
  for (unsigned x : e) m.set(i++, x);
  return m;
}

bool within(const McEstimate& e, double exact, double k = 4.0) {
  return std::fabs(e.mean - exact) <= k * e.std_error + 1e-12;
}

}  // namespace

TEST_CASE("moment formula examples") {
  CHECK(sphere_monomial_integral({0, 0, 0}, mono({})) == 1);
  CHECK(sphere_monomial_integral({0, 0, 0}, mono({2, 0, 0})) == Rational(1, 3));
  CHECK(sphere_monomial_integral({1, 0}, mono({2, 0})) == Rational(3, 4));
  CHECK(sphere_monomial_integral({1, Rational(1, 2)}, mono({3, 2})) == 0);
  CHECK_THROWS_AS(sphere_monomial_integral({-1, 0}, mono({2, 0})), InvalidRoot);
}

TEST_CASE("moment formula agrees with Monte Carlo") {
  const std::vector<RationalVector> kappas = {{0, 0, 0}, {1, Rational(1, 2), 0}, {Rational(1, 3), 2, Rational(3, 2)}};
  const std::vector<Monomial> alphas = {mono({2, 0, 0}), mono({2, 2, 0}), mono({4, 0, 2}), mono({0, 6, 0}),
                                        mono({2, 2, 2})};
  std::uint64_t seed = 100;
  for (const auto& k : kappas) {
    const auto dom = WeightedDomain::sphere(RootSystem::z2d(k));
    for (const auto& a : alphas) {
      const auto exact = sphere_monomial_integral(k, a).get_d();
      const auto mc = mc_integrate(dom, MultiPoly::monomial(3, a), 400'000, seed++);
      CHECK(within(mc, exact));
    }
  }
}

TEST_CASE("sphere integration examples") {
  const auto flat = WeightedDomain::sphere(RootSystem::trivial(3));
  CHECK(integrate_sphere(flat, P("1", 3)) == 1);
  CHECK(integrate_sphere(flat, pow(MultiPoly::norm_squared(3), 2)) == 1);
  // Tier B: h^2 = (x1 - x2)^2.
  const auto a1 = WeightedDomain::sphere(RootSystem::type_a(2, 1));
  CHECK(integrate_sphere(a1, P("1", 2)) == 1);
  CHECK(integrate_sphere(a1, P("x1^2 - 2 x1 x2 + x2^2", 2)) == Rational(3, 2));
  const auto mc = mc_integrate(a1, P("x1^2 - 2 x1 x2 + x2^2", 2), 400'000, 7);
  CHECK(within(mc, 1.5));
  CHECK_THROWS_AS(RootSystem::type_a(2, Rational(1, 2)), TierError);
}

TEST_CASE("ball and simplex examples") {
  const auto ball = WeightedDomain::ball(RootSystem::z2d({0}), Rational(1, 2));
  CHECK(integrate_ball(ball, P("1", 1)) == 1);
  CHECK(integrate_ball(ball, P("x1^2", 1)) == Rational(1, 3));
  const auto cheb = WeightedDomain::ball(RootSystem::z2d({0}), 0);
  // mu = 0 is the arcsine weight on [-1, 1]; its second moment is 1/2.
  CHECK(integrate_ball(cheb, P("x1^2", 1)) == Rational(1, 2));
  const auto b2 = WeightedDomain::ball(RootSystem::z2d({1, Rational(1, 2)}), 1);
  CHECK(integrate_ball(b2, P("x1 + x1^3 x2^2", 2)) == 0);

  const auto simp = WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2)}), Rational(1, 2));
  CHECK(integrate_simplex(simp, P("1", 1)) == 1);
  CHECK(integrate_simplex(simp, P("x1", 1)) == Rational(1, 2));
  CHECK(integrate_simplex(simp, P("x1^2", 1)) == Rational(1, 3));
  CHECK_THROWS_AS(WeightedDomain::simplex(RootSystem::type_a(2, 1), 1), InvalidRootSystem);
  CHECK_THROWS_AS(WeightedDomain::ball(RootSystem::trivial(2), -1), InvalidRootSystem);
}

TEST_CASE("uniform weight on [-1,1] with mu = 1") {
  // d = 1, kappa = 0, mu = 1: W = (1 - x^2)^{1/2}, semicircle, E x^2 = 1/4.
  const auto ball = WeightedDomain::ball(RootSystem::z2d({0}), 1);
  CHECK(integrate_ball(ball, P("x1^2", 1)) == Rational(1, 4));
}

TEST_CASE("group invariance of the sphere integral") {
  std::mt19937_64 rng(5);
  const std::vector<RootSystem> systems = {RootSystem::type_a(3, 1), RootSystem::type_b(3, Rational(1, 2), 1),
                                           RootSystem::z2d({Rational(2, 3), 0, 1})};
  for (const auto& rs : systems) {
    const auto dom = WeightedDomain::sphere(rs);
    const DomainIntegrator in(dom);
    const auto group = generate_group(rs);
    for (int it = 0; it < 3; ++it) {
      const auto f = testgen::random_poly(rng, 3, 4, 5);
      const auto base = in.integrate(f);
      for (const auto& g : group) CHECK(in.integrate(compose_linear(f, g)) == base);
    }
  }
}

TEST_CASE("isometries of the ball and simplex lifts") {
  std::mt19937_64 rng(9);
  const auto rs = RootSystem::type_b(2, Rational(1, 2), 1);
  const auto ball = WeightedDomain::ball(rs, Rational(3, 2));
  std::vector<Root> up;
  for (const auto& r : rs.roots()) {
    RationalVector v = r.vector;
    v.push_back(0);
    up.push_back({v, r.multiplicity});
  }
  RationalVector e(3, 0);
  e[2] = 1;
  up.push_back({e, Rational(3, 2)});
  // The lifted group is B2 x Z2, a valid root system on its own.
  const auto lifted = WeightedDomain::sphere(RootSystem(3, up, RootSystemKind::GeneralIntegerKappa));
  for (int it = 0; it < 5; ++it) {
    const auto f = testgen::random_poly(rng, 2, 3, 4);
    const auto f2 = f * f;
    CHECK(integrate_ball(ball, f2) == integrate_sphere(lifted, extend_dimension(f2, 3)));
    CHECK(integrate_ball(ball, f2) > 0);
  }

  const auto simp = WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2), 1}), 1);
  const auto sball = WeightedDomain::ball(RootSystem::z2d({Rational(1, 2), 1}), 1);
  for (int it = 0; it < 5; ++it) {
    const auto f = testgen::random_poly(rng, 2, 3, 4);
    const auto fp = substitute_squares(f);
    CHECK(integrate_simplex(simp, f * f) == integrate_ball(sball, fp * fp));
  }
}

TEST_CASE("Monte Carlo agrees with exact integrals on randomized cases") {
  std::mt19937_64 rng(17);
  std::vector<WeightedDomain> doms = {
      WeightedDomain::sphere(RootSystem::z2d({1, Rational(1, 2), 0})),
      WeightedDomain::sphere(RootSystem::type_a(3, 1)),
      WeightedDomain::ball(RootSystem::z2d({Rational(1, 2), 0}), 1),
      WeightedDomain::ball(RootSystem::type_b(2, 1, 1), 0),
      WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2), Rational(1, 2)}), Rational(1, 2)),
      WeightedDomain::simplex(RootSystem::type_b(2, 0, 1), 1),
  };
  int cases = 0;
  std::uint64_t seed = 1000;
  for (const auto& dom : doms) {
    const DomainIntegrator in(dom);
    for (int it = 0; it < 6; ++it) {
      const auto f = testgen::random_poly(rng, dom.dim(), 4, 4);
      const auto mc = mc_integrate(dom, f, 200'000, seed++);
      CHECK_MESSAGE(within(mc, in.integrate(f).get_d()), shape_name(dom.shape()), " ", to_string(f));
      ++cases;
    }
  }
  CHECK(cases >= 30);
}

TEST_CASE("Monte Carlo plumbing") {
  const auto dom = WeightedDomain::sphere(RootSystem::z2d({1, 2, 0}));
  const auto one = mc_integrate(dom, P("1", 3), 5000, 3);
  CHECK(one.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.std_error == doctest::Approx(0.0));
  CHECK(one.seed == 3);
  CHECK(one.n_samples == 5000);
  const auto flat = WeightedDomain::sphere(RootSystem::trivial(3));
  CHECK(within(mc_integrate(flat, P("x1^2", 3), 1'000'000, 11), 1.0 / 3.0));

  const auto f = P("x1^2 x2 + 3 x3^4", 3);
  const auto a = mc_integrate(dom, f, 50'000, 21, 1);
  const auto b = mc_integrate(dom, f, 50'000, 21, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(mc_integrate(dom, f, 50'000, 22, 2).mean != a.mean);
  CHECK_THROWS_AS(mc_integrate(dom, f, 1, 0), DegenerateInput);
  CHECK_THROWS_AS(mc_integrate(dom, [](std::span<const double>) { return NAN; }, 100, 0), DegenerateInput);
}

TEST_CASE("half moments agree with Monte Carlo") {
  // int |x_i| f w against its closed form, including the simplex localization.
  const std::vector<RationalVector> kappas = {{0, 0}, {Rational(1, 2), 1}, {2, Rational(1, 3), 0}};
  std::uint64_t seed = 500;
  for (const auto& k : kappas) {
    const std::size_t d = k.size();
    const auto dom = WeightedDomain::sphere(RootSystem::z2d(k));
    RationalVector kd = k;
    SphereQuadrature q(kd, MultiPoly::constant(d, 1));
    for (std::size_t ax = 0; ax < d; ++ax) {
      for (const char* s : {"1", "x1^2", "x2^4 + x1^2 x2^2"}) {
        const auto f = P(s, d);
        const double exact = static_cast<double>(q.abs_axis_constant(ax)) * q.integrate_abs_axis(f, ax).get_d();
        const auto mc = mc_integrate(
            dom, [&](std::span<const double> x) { return std::fabs(x[ax]) * evaluate(f, x); }, 400'000, seed++);
        CHECK_MESSAGE(within(mc, exact), "axis ", ax, " f = ", s);
      }
    }
  }
  // d = 2, kappa = 0: E|x_1| = 2/pi.
  SphereQuadrature flat({0, 0}, MultiPoly::constant(2, 1));
  CHECK(static_cast<double>(flat.abs_axis_constant(0)) * flat.integrate_abs_axis(P("1", 2), 0).get_d() ==
        doctest::Approx(2.0 / M_PI).epsilon(1e-14));

  const auto simp = WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2), 1}), 1);
  const DomainIntegrator in(simp);
  const auto g = P("1 + x1 - 2 x2 + x1 x2", 2);
  for (std::size_t ax = 0; ax < 2; ++ax) {
    const double exact = static_cast<double>(in.integrate_one_minus_sqrt(g * g, ax));
    const auto mc = mc_integrate(
        simp, [&](std::span<const double> x) { return (1 - std::sqrt(x[ax])) * std::pow(evaluate(g, x), 2); },
        400'000, 900 + ax);
    CHECK(within(mc, exact));
  }
  // d = 1, kappa = mu = 1/2 is Lebesgue on [0,1]: int (1 - sqrt x) dx = 1/3.
  const auto unit = WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2)}), Rational(1, 2));
  CHECK(static_cast<double>(DomainIntegrator(unit).integrate_one_minus_sqrt(P("1", 1), 0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(DomainIntegrator(unit).integrate_one_minus_sqrt(P("1", 1), 1), IndexOutOfRange);
}

TEST_CASE("integration by parts for angular Dunkl operators") {
  std::mt19937_64 rng(23);
  const std::vector<RootSystem> systems = {RootSystem::z2d({Rational(1, 3), Rational(5, 2), 1}),
                                           RootSystem::type_a(3, 1), RootSystem::type_b(3, 1, 2)};
  for (const auto& rs : systems) {
    OperatorContext ctx(rs);
    const DomainIntegrator in(WeightedDomain::sphere(rs));
    for (int it = 0; it < 3; ++it) {
      const auto f = testgen::random_poly(rng, 3, 3, 4);
      const auto g = testgen::random_poly(rng, 3, 3, 4);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          CHECK(in.integrate(angular_dunkl(ctx, i, j, f) * g) == Rational(-in.integrate(f * angular_dunkl(ctx, i, j, g))));

      const auto sf = reduce_mod_sphere(f);
      const auto sg = reduce_mod_sphere(g);
      const auto gf = spherical_gradient_h(ctx, sf);
      const auto gg = spherical_gradient_h(ctx, sg);
      const Rational c = 2 * ctx.constants().lambda_kappa + 1;
      for (std::size_t j = 0; j < 3; ++j) {
        const auto lhs = in.integrate(gf[j].rep() * sg.rep());
        const Rational rhs = -in.integrate(sf.rep() * (gg[j].rep() - scale(times_coordinate(sg, j).rep(), c)));
        CHECK(lhs == rhs);
      }
    }
  }
}
