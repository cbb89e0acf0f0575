#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dunkl/errors.hpp"
#include "dunkl/identities.hpp"
#include "generators.hpp"

using namespace dunkl;

namespace {

std::vector<RootSystem> systems() {
  return {RootSystem::trivial(3),
          RootSystem::z2d({Rational(1, 2), Rational(3, 2)}),
          RootSystem::z2d({1, Rational(1, 3), 2}),
          RootSystem::z2d({Rational(2, 5), 0, Rational(7, 4), 1}),
          RootSystem::type_a(3, 1),
          RootSystem::type_b(2, Rational(1, 2), 2)};
}

}  // namespace

TEST_CASE("classical identities") {
  std::mt19937_64 rng(21);
  for (std::size_t d : {2u, 3u, 4u})
    for (int it = 0; it < 8; ++it) {
      const auto f = testgen::random_poly(rng, d, 5, 4);
      const auto g = testgen::random_poly(rng, d, 4, 3);
      CAPTURE(to_string(f));
      CHECK(residual_beltrami_angular(f).is_zero());
      CHECK(residual_gradient_angular(f, g).is_zero());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) CHECK(residual_angular_parts(i, j, f, g) == 0);
    }
}

TEST_CASE("weighted pointwise identities") {
  std::mt19937_64 rng(22);
  for (const auto& rs : systems()) {
    const OperatorContext ctx(rs);
    const std::size_t d = rs.dim();
    for (int it = 0; it < 6; ++it) {
      const auto f = testgen::random_poly(rng, d, 5, 4);
      const auto g = testgen::random_poly(rng, d, 4, 3);
      CAPTURE(to_string(f));
      CHECK(residual_xi_gradient(ctx, f).is_zero());
      CHECK(residual_beltrami_divergence(ctx, f).is_zero());
      CHECK(residual_gradient_product(ctx, f, g).is_zero());
      CHECK(residual_gradient_square(ctx, f).is_zero());
      CHECK(residual_beltrami_angular_h(ctx, f).is_zero());
      for (std::size_t j = 0; j < d; ++j) {
        CHECK(residual_gradient_component(ctx, j, f).is_zero());
        CHECK(residual_divergence_lemma(ctx, j, g).is_zero());
        for (std::size_t i = 0; i < d; ++i) {
          CHECK(residual_dunkl_product(ctx, i, j, f).is_zero());
          if (i != j) CHECK(residual_angular_decomposition(ctx, i, j, f).is_zero());
        }
      }
    }
  }
}

TEST_CASE("weighted integration by parts") {
  std::mt19937_64 rng(23);
  std::vector<RootSystem> rs_list = {RootSystem::z2d({Rational(1, 2), Rational(3, 2)}),
                                     RootSystem::z2d({1, Rational(1, 3), 2}),
                                     RootSystem(2, {{{1, -1}, 1}}, RootSystemKind::GeneralIntegerKappa)};
  for (const auto& rs : rs_list) {
    const OperatorContext ctx(rs);
    const DomainIntegrator in(WeightedDomain::sphere(rs));
    const std::size_t d = rs.dim();
    for (int it = 0; it < 6; ++it) {
      const auto f = testgen::random_poly(rng, d, 4, 3);
      const auto g = testgen::random_poly(rng, d, 4, 3);
      CAPTURE(to_string(f));
      for (std::size_t j = 0; j < d; ++j) {
        CHECK(residual_gradient_adjoint(ctx, in, j, f, g) == 0);
        for (std::size_t i = j + 1; i < d; ++i) CHECK(residual_angular_dunkl_parts(ctx, in, j, i, f, g) == 0);
      }
    }
  }
}

TEST_CASE("sign and index variants are refuted") {
  const OperatorContext ctx(RootSystem::z2d({1, 0}));
  const auto x1 = parse_poly("x1", 2);
  const auto r = residual_gradient_product_plus(ctx, x1, x1);
  CHECK(evaluate(r.rep(), RationalVector{1, 0}) == 8);
  CHECK(residual_gradient_product(ctx, x1, x1).is_zero());
  const OperatorContext flat(RootSystem::trivial(2));
  CHECK_FALSE(residual_divergence_lemma_xj(flat, 0, parse_poly("1", 2)).is_zero());
  CHECK(residual_divergence_lemma(flat, 0, parse_poly("1", 2)).is_zero());
}

TEST_CASE("residuals detect a broken identity") {
  // A wrong lambda in the adjoint leaves a nonzero residual.
  const OperatorContext ctx(RootSystem::z2d({1, 1}));
  const OperatorContext other(RootSystem::z2d({1, 2}));
  const DomainIntegrator in(WeightedDomain::sphere(RootSystem::z2d({1, 1})));
  const auto f = parse_poly("x1", 2);
  CHECK(residual_gradient_adjoint(other, in, 0, f, parse_poly("1", 2)) == -1);
  CHECK(residual_gradient_adjoint(ctx, in, 0, f, parse_poly("1", 2)) == 0);
  CHECK_THROWS_AS(residual_gradient_component(ctx, 2, f), IndexOutOfRange);
  CHECK_THROWS_AS(residual_angular_decomposition(ctx, 1, 1, f), IndexOutOfRange);
}
