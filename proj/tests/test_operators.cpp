#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dunkl/errors.hpp"
#include "dunkl/operators.hpp"
#include "generators.hpp"

using namespace dunkl;

namespace {

MultiPoly P(const char* s, std::size_t d) { return parse_poly(s, d); }
SphereFunction S(const char* s, std::size_t d) { return reduce_mod_sphere(parse_poly(s, d)); }

std::vector<RootSystem> sample_systems() {
  return {RootSystem::z2d({1, Rational(1, 2), 2}), RootSystem::type_a(3, 1), RootSystem::type_b(3, Rational(1, 3), 1),
          RootSystem::trivial(3)};
}

}  // namespace

TEST_CASE("difference operator examples") {
  OperatorContext z(RootSystem::z2d({1, 1}));
  CHECK(difference_op_E(z.roots()[0], P("x1", 2)) == P("2", 2));
  CHECK(difference_op_E(z.roots()[0], MultiPoly::norm_squared(2)).is_zero());
  OperatorContext a(RootSystem::type_a(2, 1));
  CHECK(difference_op_E(a.roots()[0], P("x1^2", 2)) == P("x1 + x2", 2));
}

TEST_CASE("Dunkl operator examples") {
  const Rational k1(3, 5);
  OperatorContext z(RootSystem::z2d({k1, 2}));
  CHECK(dunkl_operator(z, 0, P("x1", 2)) == MultiPoly::constant(2, 1 + 2 * k1));
  CHECK(dunkl_operator(z, 0, P("7", 2)).is_zero());
  CHECK(dunkl_operator(z, 0, P("x2", 2)).is_zero());
  CHECK_THROWS_AS(dunkl_operator(z, 2, P("x2", 2)), IndexOutOfRange);
  CHECK(angular_dunkl(z, 0, 1, P("x2", 2)) == scale(P("x1", 2), 1 + 2 * Rational(2)));
  CHECK(angular_classical(0, 1, P("x1", 2)) == P("-x2", 2));
  CHECK(angular_classical(0, 1, MultiPoly::norm_squared(2)).is_zero());
  CHECK_THROWS_AS(angular_classical(1, 1, P("x1", 2)), IndexOutOfRange);
}

TEST_CASE("h-Laplacian of |x|^2") {
  for (const auto& rs : sample_systems()) {
    OperatorContext ctx(rs);
    const auto n2 = MultiPoly::norm_squared(3);
    CHECK(h_laplacian(ctx, n2) == MultiPoly::constant(3, 4 * (ctx.constants().lambda_kappa + 1)));
    CHECK(h_laplacian(ctx, P("5", 3)).is_zero());
  }
  OperatorContext flat(RootSystem::trivial(3));
  CHECK(h_laplacian(flat, P("x1 x2", 3)).is_zero());
}

TEST_CASE("Dunkl operators commute and match the explicit Laplacian") {
  std::mt19937_64 rng(31);
  for (const auto& rs : sample_systems()) {
    OperatorContext ctx(rs);
    for (int it = 0; it < 6; ++it) {
      const auto f = testgen::random_poly(rng, 3, 6, 5);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          CHECK(dunkl_operator(ctx, i, dunkl_operator(ctx, j, f)) == dunkl_operator(ctx, j, dunkl_operator(ctx, i, f)));
      CHECK(h_laplacian(ctx, f) == h_laplacian_explicit(ctx, f));
    }
  }
}

TEST_CASE("Dunkl operators lower homogeneous degree") {
  std::mt19937_64 rng(37);
  OperatorContext ctx(RootSystem::type_b(3, 1, 2));
  for (int it = 0; it < 10; ++it) {
    const auto parts = homogeneous_decompose(testgen::random_poly(rng, 3, 5, 6));
    for (const auto& [n, p] : parts) {
      for (std::size_t j = 0; j < 3; ++j) {
        const auto q = dunkl_operator(ctx, j, p);
        CHECK((q.is_zero() || (q.is_homogeneous() && q.degree() + 1 == static_cast<int>(n))));
      }
    }
  }
}

TEST_CASE("root scaling leaves operators unchanged") {
  std::mt19937_64 rng(41);
  const Rational k(1);
  OperatorContext a(RootSystem::type_a(3, k));
  std::vector<Root> scaled;
  const auto base = RootSystem::type_a(3, k);
  for (const auto& r : base.roots()) {
    RationalVector v = r.vector;
    for (auto& c : v) c *= Rational(-2, 3);
    scaled.push_back({v, r.multiplicity});
  }
  OperatorContext b(RootSystem(3, scaled, RootSystemKind::GeneralIntegerKappa));
  for (int it = 0; it < 6; ++it) {
    const auto f = testgen::random_poly(rng, 3, 5, 5);
    for (std::size_t j = 0; j < 3; ++j) CHECK(dunkl_operator(a, j, f) == dunkl_operator(b, j, f));
    CHECK(h_laplacian(a, f) == h_laplacian(b, f));
    const auto sf = reduce_mod_sphere(f);
    CHECK(laplace_beltrami_h(a, sf) == laplace_beltrami_h(b, sf));
    CHECK(xi_dot_gradient(a, sf) == xi_dot_gradient(b, sf));
  }
}

TEST_CASE("spherical operator examples") {
  OperatorContext flat(RootSystem::trivial(3));
  const auto g = spherical_gradient_h(flat, S("x3", 3));
  CHECK(g[0] == S("-x1 x3", 3));
  CHECK(g[1] == S("-x2 x3", 3));
  CHECK(g[2] == S("1 - x3^2", 3));
  for (const auto& c : spherical_gradient_h(flat, S("4", 3))) CHECK(c.is_zero());
  CHECK(laplace_beltrami_h(flat, S("x1 x2", 3)) == S("-6 x1 x2", 3));
  CHECK(laplace_beltrami_h(flat, S("2", 3)).is_zero());

  OperatorContext z(RootSystem::z2d({1, 0}));
  CHECK(xi_dot_gradient(z, S("x1", 2)) == S("2 x1", 2));
  CHECK(xi_dot_gradient(flat, S("x1 + x2^3", 3)).is_zero());
  OperatorContext b(RootSystem::type_b(3, 1, 1));
  CHECK(xi_dot_gradient(b, S("x1^4 + x2^4 + x3^4 + x1^2 x2^2 x3^2", 3)).is_zero());
}

TEST_CASE("spherical operators do not depend on the representative") {
  std::mt19937_64 rng(43);
  for (const auto& rs : sample_systems()) {
    OperatorContext ctx(rs);
    const auto ideal = MultiPoly::norm_squared(3) - MultiPoly::constant(3, 1);
    for (int it = 0; it < 4; ++it) {
      const auto f = testgen::random_poly(rng, 3, 4, 4);
      const auto lifted = f + ideal * testgen::random_poly(rng, 3, 2, 3);
      // Wrap the unreduced lift so the operators see a different representative.
      SphereFunction raw(3);
      raw = reduce_mod_sphere(f);
      const auto a = laplace_beltrami_h(ctx, raw);
      // Build the lifted class through operator arithmetic on unreduced parts.
      MultiPoly acc(3);
      for (const auto& [n, p] : homogeneous_decompose(lifted)) {
        acc += h_laplacian(ctx, p);
        acc -= scale(p, Rational(n) * (Rational(n) + 2 * ctx.constants().lambda_kappa));
      }
      CHECK(reduce_mod_sphere(acc) == a);
      const auto ga = spherical_gradient_h(ctx, raw);
      for (std::size_t j = 0; j < 3; ++j) {
        MultiPoly gj(3);
        for (const auto& [n, p] : homogeneous_decompose(lifted)) {
          gj += dunkl_operator(ctx, j, p);
          gj -= scale(MultiPoly::variable(3, j) * p, Rational(n));
        }
        CHECK(reduce_mod_sphere(gj) == ga[j]);
      }
      CHECK(reduce_mod_sphere(angular_dunkl(ctx, 0, 2, lifted)) == angular_dunkl(ctx, 0, 2, raw));
    }
  }
}
