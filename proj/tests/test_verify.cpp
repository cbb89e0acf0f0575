#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dunkl/domains.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;
using namespace dunkl::verify;

namespace {

const CheckResult& find(const Report& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.check_id == id) return c;
  throw std::runtime_error("no check " + id);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(R"(
seed = 7
trials = 3
degree_cap = 4
mu = "3/2"
suites = ["identities", "oracle"]
tiers_allowed = ["A"]
[root_system]
kind = "z2d"
dim = 2
kappa = ["1/2", 1]
)");
  CHECK(c.seed == 7);
  CHECK(c.trials == 3);
  CHECK(c.mu == Rational(3, 2));
  CHECK(c.root_system.kappa == std::vector<Rational>{Rational(1, 2), Rational(1)});
  CHECK(build_root_system(c).kind() == RootSystemKind::Z2d);
  const auto j = to_json(c);
  CHECK(j["mu"] == "3/2");
  CHECK(j["root_system"]["kappa"][0] == "1/2");

  const auto roots = parse_config(R"(
[root_system]
kind = "roots"
dim = 3
roots = [[1, -1, 0]]
multiplicities = [1]
)");
  const auto rs = build_root_system(roots);
  CHECK(rs.kind() == RootSystemKind::GeneralIntegerKappa);
  CHECK(rs.roots().size() == 1);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("trials = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("degree_cap = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("degree_cap = 11"), ConfigError);
  CHECK_THROWS_AS(parse_config("mc_samples = 999"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu = \"-1\""), ConfigError);
  CHECK_THROWS_AS(parse_config("tiers_allowed = [\"D\"]"), ConfigError);
  CHECK_THROWS_AS(parse_config("suites = [\"nope\"]"), ConfigError);
  CHECK_THROWS_AS(parse_config("bogus = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials = "), ConfigError);
  CHECK_THROWS_AS(parse_config("[root_system]\nkind = \"e8\""), ConfigError);
  CHECK_THROWS_AS(parse_config("[root_system]\ndim = 9"), ConfigError);
  CHECK_THROWS_AS(parse_config("[root_system]\nkind = \"type_a\"\nkappa = \"random\""), ConfigError);
  CHECK_THROWS_AS(build_root_system(parse_config("[root_system]\ndim = 3\nkappa = [1, 2]")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("random kappa is reproducible from the seed") {
  auto c = parse_config("seed = 11\n[root_system]\nkind = \"z2d\"\ndim = 4\nkappa = \"random\"");
  const auto a = build_root_system(c), b = build_root_system(c);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.roots()[i].multiplicity == b.roots()[i].multiplicity);
    CHECK(a.roots()[i].multiplicity >= 0);
    CHECK(a.roots()[i].multiplicity <= 2);
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    c.seed = s;
    seen.insert(to_string(build_root_system(c).roots()[0].multiplicity));
  }
  CHECK(seen.size() > 3);
}

TEST_CASE("sampler") {
  CHECK(trial_seed(1, "a", 0) == trial_seed(1, "a", 0));
  CHECK(trial_seed(1, "a", 0) != trial_seed(1, "b", 0));
  CHECK(trial_seed(1, "a", 0) != trial_seed(1, "a", 1));
  CHECK(trial_seed(1, "a", 0) != trial_seed(2, "a", 0));

  const auto z2 = RootSystem::z2d({Rational(1), Rational(1, 2), Rational(0)});
  SampleConstraints inv;
  inv.invariant_under = &z2;
  SampleConstraints mz = inv;
  mz.mean_zero = true;
  mz.mean_root_system = &z2;
  SampleConstraints sym;
  sym.symmetric = true;
  const DomainIntegrator sphere(WeightedDomain::sphere(z2));
  const auto perms = permutation_group(3);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto f = sample_polynomial(s, 3, 6);
    CHECK(f == sample_polynomial(s, 3, 6));
    CHECK(f.degree() <= 6);
    CHECK(!f.is_constant());
    for (const auto& [m, c] : f.terms()) {
      CHECK(c.get_den() == 1);
      CHECK(abs(c) <= 9 * 6);
    }
    const auto g = sample_polynomial(s, 3, 6, inv);
    for (const auto& [m, c] : g.terms())
      for (std::size_t i = 0; i < 3; ++i) CHECK(m[i] % 2 == 0);
    CHECK(sphere.integrate(sample_polynomial(s, 3, 6, mz)) == 0);
    CHECK(is_invariant(sample_polynomial(s, 3, 6, sym), perms));
  }
  CHECK_THROWS_AS(sample_polynomial(0, 0, 4), DimensionMismatch);
}

TEST_CASE("registry and coverage") {
  std::set<std::string> ids;
  for (const auto& c : registry()) {
    CHECK(ids.insert(c.id).second);
    CHECK(std::find(suite_names().begin(), suite_names().end(), c.suite) != suite_names().end());
  }
  bool unmapped = false;
  for (const auto& t : coverage()) {
    unmapped = unmapped || t.checks.empty();
    for (const auto& id : t.checks) CHECK_MESSAGE(ids.count(id) == 1, id);
  }
  CHECK(unmapped);
}

TEST_CASE("run: identities pass and refuted variants find counterexamples") {
  SuiteConfig c;
  c.root_system.kind = "z2d";
  c.root_system.dim = 2;
  c.root_system.kappa = {Rational(1), Rational(0)};
  c.trials = 6;
  c.degree_cap = 4;
  c.seed = 3;
  c.suites = {"identities", "integration", "harmonics"};
  const auto r = run_suite(c);
  CHECK(!r.any_failed());
  for (const auto& ch : r.checks) CHECK_MESSAGE(ch.status == Status::Pass, ch.check_id, ": ", ch.reason);
  const auto& plus = find(r, "h-gradient-angular-product-plus-sign");
  CHECK(plus.witness.has_value());
  CHECK(plus.witness_seed.has_value());
  CHECK(plus.reason.rfind("counterexample", 0) == 0);
}

TEST_CASE("run: kappa = 0") {
  SuiteConfig c;
  c.root_system.kind = "trivial";
  c.root_system.dim = 3;
  c.trials = 4;
  c.degree_cap = 4;
  c.suites = {"identities"};
  const auto r = run_suite(c);
  // With kappa = 0 the plus and minus forms differ by 2 (xi.grad f)(xi.grad g) = 0.
  CHECK(find(r, "h-gradient-angular-product-plus-sign").status == Status::Skipped);
  CHECK(find(r, "h-gradient-divergence-lemma").status == Status::Pass);
  CHECK(find(r, "h-gradient-divergence-lemma-xj-index").status == Status::Pass);
  CHECK(!r.any_failed());
}

TEST_CASE("run: requirements skip checks") {
  SuiteConfig c;
  c.root_system.kind = "type_a";
  c.root_system.dim = 3;
  c.root_system.kappa = {Rational(1)};
  c.trials = 2;
  c.degree_cap = 3;
  c.tiers_allowed = {"A"};
  c.suites = {"integration", "isometry"};
  const auto r = run_suite(c);
  for (const auto& ch : r.checks) CHECK(ch.status == Status::Skipped);
  CHECK(find(r, "h-gradient-adjoint").reason.find("tier B") != std::string::npos);
  CHECK(!r.any_failed());
}

TEST_CASE("run: report is independent of thread count") {
  SuiteConfig c;
  c.root_system.kind = "z2d";
  c.root_system.dim = 2;
  c.root_system.random_kappa = true;
  c.seed = 5;
  c.trials = 4;
  c.degree_cap = 4;
  c.mc_samples = 20000;
  c.suites = {"identities", "oracle", "uncertainty"};
  c.threads = 1;
  const auto a = run_suite(c).to_json(false);
  c.threads = 4;
  const auto b = run_suite(c).to_json(false);
  CHECK(a.dump() == b.dump());
  CHECK(!a.contains("timings"));
  CHECK(run_suite(c).to_json(true).contains("timings"));
}
