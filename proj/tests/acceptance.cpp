// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>

#include "dunkl/errors.hpp"
#include "dunkl/uncertainty.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;
using namespace dunkl::verify;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    else detail += "; " + why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SuiteConfig flat(std::size_t d) {
  SuiteConfig c;
  c.root_system.kind = "trivial";
  c.root_system.dim = d;
  return c;
}

SuiteConfig z2d_random(std::size_t d, std::uint64_t seed) {
  SuiteConfig c;
  c.root_system.kind = "z2d";
  c.root_system.dim = d;
  c.root_system.random_kappa = true;
  c.root_system.kappa_max = 2;
  c.root_system.kappa_denominator = 4;
  c.seed = seed;
  return c;
}

SuiteConfig z2d(std::vector<Rational> kappa, Rational mu) {
  SuiteConfig c;
  c.root_system.kind = "z2d";
  c.root_system.dim = kappa.size();
  c.root_system.kappa = std::move(kappa);
  c.mu = mu;
  return c;
}

// d in {2, 3, 4}, kappa = 0 and random Z_2^d kappa.
std::vector<SuiteConfig> base_configs() {
  std::vector<SuiteConfig> out;
  for (std::size_t d = 2; d <= 4; ++d) {
    out.push_back(flat(d));
    out.back().seed = 100 + d;
    out.push_back(z2d_random(d, 200 + d));
  }
  return out;
}

std::string label(const Report& r) {
  std::string s = "d=" + std::to_string(r.root_system["dim"].get<std::size_t>()) + " kappa=(";
  bool first = true;
  for (const auto& m : r.root_system["multiplicities"]) {
    s += (first ? "" : ",") + m.get<std::string>();
    first = false;
  }
  return s + ")";
}

// Every non-skipped check passes with at least min_trials trials; `required`
// checks must have run.
void require_all(Outcome& o, const Report& r, unsigned min_trials, const std::set<std::string>& required = {}) {
  for (const auto& c : r.checks) {
    if (c.status == Status::Skipped) {
      if (required.count(c.check_id)) o.fail(c.check_id + " skipped on " + label(r) + ": " + c.reason);
      continue;
    }
    if (c.status == Status::Fail) o.fail(c.check_id + " failed on " + label(r) + ": " + c.reason);
    const bool single = c.check_id == "ball-operator-eigenfunctions" || c.check_id == "ball-operator-plus-sign" ||
                        c.check_id == "moment-formula-examples";
    if (!single && c.trials < min_trials)
      o.fail(c.check_id + " ran " + std::to_string(c.trials) + " trials on " + label(r));
  }
}

Report run(SuiteConfig c, std::vector<std::string> suites, unsigned trials, unsigned cap = 6) {
  c.suites = std::move(suites);
  c.trials = trials;
  c.degree_cap = cap;
  return run_suite(c);
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t checks = 0;
  for (const auto& c : base_configs()) {
    const auto r = run(c, {"identities"}, 50);
    require_all(o, r, 50,
                {"classical-laplacian-angular-sum", "classical-gradient-angular-sum",
                 "classical-angular-integration-by-parts", "h-gradient-radial-part", "h-laplacian-divergence-form",
                 "angular-dunkl-decomposition", "h-gradient-component-angular-form", "dunkl-product-rule",
                 "h-gradient-angular-product", "h-gradient-angular-square", "h-laplacian-angular-form"});
    checks += r.checks.size();
  }
  const double s = seconds_since(t0);
  if (s > 300) o.fail("took " + std::to_string(s) + " s (limit 300 s)");
  if (o.pass) o.detail = std::to_string(checks) + " check runs over 6 configs, 50 polynomials each, " + std::to_string(s) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto configs = base_configs();
  configs.push_back(z2d({Rational(1, 2), Rational(3, 4), Rational(5, 4)}, Rational(1, 2)));
  SuiteConfig tier_b;
  tier_b.root_system.kind = "roots";
  tier_b.root_system.dim = 2;
  tier_b.root_system.roots = {{Rational(1), Rational(-1)}};
  tier_b.root_system.multiplicities = {Rational(1)};
  tier_b.seed = 9;
  configs.push_back(tier_b);
  for (const auto& c : configs)
    require_all(o, run(c, {"integration"}, 50), 50,
                {"angular-dunkl-integration-by-parts", "h-gradient-adjoint"});
  if (o.pass) o.detail = "8 configs including the tier B root e1 - e2 with kappa = 1, 50 pairs each";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto configs = base_configs();
  configs.push_back(z2d({Rational(1, 2), Rational(1), Rational(3, 2)}, Rational(1, 2)));
  for (const auto& c : configs)
    require_all(o, run(c, {"harmonics"}, 50), 50,
                {"harmonic-eigen-relation", "harmonic-parseval", "half-order-norm-equals-gradient-norm",
                 "laplacian-integer-powers"});
  if (o.pass) o.detail = "7 configs, degree <= 6, 50 polynomials each";
  return o;
}

Outcome criterion4() {
  Outcome o;
  SuiteConfig c = z2d({Rational(1), Rational(1, 2)}, Rational(1, 2));
  c.mc_samples = 1'000'000;
  c.seed = 4;
  const auto r = run(c, {"oracle"}, 30, 4);
  require_all(o, r, 30, {"moment-formula-examples", "moment-formula-vs-monte-carlo", "exact-integral-vs-monte-carlo"});
  if (o.pass) {
    for (const auto& ch : r.checks)
      if (ch.check_id == "moment-formula-vs-monte-carlo")
        o.detail = "30 cases at 1e6 samples, max |z| = " + std::to_string(ch.details["max_abs_z"].get<double>()) +
                   "; 1/3 and 3/4 exact";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  // kappa = 0 as a Z_2^d system so that the simplex has its coordinate axes.
  std::vector<SuiteConfig> configs;
  for (std::size_t d = 2; d <= 4; ++d) {
    configs.push_back(z2d(std::vector<Rational>(d, Rational(0)), Rational(3, 4)));
    configs.back().seed = 300 + d;
    configs.push_back(z2d_random(d, 400 + d));
    configs.back().mu = Rational(3, 4);
  }
  for (const auto& c : configs)
    require_all(o, run(c, {"isometry"}, 50), 50,
                {"ball-lift-isometry", "ball-triple-norm-equals-lifted-gradient", "simplex-triple-norm-pullback",
                 "simplex-pullback-isometry"});
  if (o.pass) o.detail = "6 configs, 50 polynomials each";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = INFINITY;
  std::set<std::string> covered;
  std::vector<SuiteConfig> configs = {z2d({Rational(0), Rational(0)}, Rational(1, 2)),
                                      z2d({Rational(0), Rational(0), Rational(0)}, Rational(0)),
                                      z2d_random(2, 61), z2d_random(3, 62),
                                      z2d({Rational(1, 2), Rational(1)}, Rational(1, 2))};
  configs[0].seed = 63;
  configs[1].seed = 64;
  for (const auto& c : configs) {
    const auto r = run(c, {"uncertainty"}, 100, 4);
    require_all(o, r, 100, {"sphere-uncertainty", "sphere-proof-spectral-gap", "sphere-proof-localization-bound"});
    for (const auto& ch : r.checks) {
      if (ch.status != Status::Pass) continue;
      covered.insert(ch.check_id);
      if (ch.details.contains("min_margin")) worst = std::min(worst, ch.details["min_margin"].get<double>());
    }
  }
  for (const char* id : {"sphere-uncertainty", "ball-uncertainty-invariant-axes", "ball-uncertainty-directions",
                         "ball-uncertainty-coordinate-gradient", "simplex-uncertainty-jacobi",
                         "simplex-uncertainty-symmetric", "sphere-proof-spectral-gap",
                         "sphere-proof-localization-bound"})
    if (!covered.count(id)) o.fail(std::string(id) + " never ran");
  const double s = seconds_since(t0);
  if (s > 900) o.fail("took " + std::to_string(s) + " s (limit 900 s)");
  if (o.pass) o.detail = "5 configs, 100 polynomials per mode, min margin " + std::to_string(worst) + ", " + std::to_string(s) + " s";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const long double c_half = constant_C(Rational(1, 2));
  if (std::fabs(static_cast<double>(c_half) - (1 - 1 / std::sqrt(2.0))) > 1e-12) o.fail("C(1/2) differs from 1 - 1/sqrt 2");
  if (constant_C(Rational(0)) != 0) o.fail("C(0) is not 0");
  const auto dom = WeightedDomain::simplex(RootSystem::z2d({Rational(1, 2), Rational(1)}), Rational(1, 2));
  for (auto mode : {SimplexMode::Jacobi, SimplexMode::HyperoctahedralSymmetric}) {
    const auto r = simplex_uncertainty(dom, parse_poly("x1 + x2 - x1*x2", 2), mode);
    if (r.lambda != Rational(5, 2)) o.fail("simplex lambda is not 5/2");
    if (std::fabs(static_cast<double>(r.constant) - 0.502982119166004) > 1e-12)
      o.fail("simplex constant differs from the golden value");
    if (r.constant != constant_C(r.lambda) / 4) o.fail("simplex constant is not C(lambda)/4");
  }
  if (o.pass) o.detail = "C(1/2) = 1 - 1/sqrt 2, C(0) = 0, simplex constant C(5/2)/4 = 0.502982119166004";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<SuiteConfig> configs = {z2d({Rational(0), Rational(0)}, Rational(1, 2)),
                                            z2d({Rational(1, 2), Rational(1)}, Rational(3, 2)),
                                            z2d({Rational(1)}, Rational(0))};
  std::string facts;
  for (const auto& c : configs) {
    const auto r = run(c, {"ball"}, 1, 4);
    for (const auto& ch : r.checks) {
      if (ch.check_id != "ball-operator-eigenfunctions") continue;
      if (ch.status != Status::Pass) o.fail(label(r) + ": " + ch.reason);
      if (ch.details.value("fit_matches", "") != "lambda_kappa_mu") o.fail(label(r) + ": fit is not lambda_{kappa,mu}");
      facts += (facts.empty() ? "" : "; ") + label(r) + " mu=" + r.root_system["mu"].get<std::string>() +
               ": fitted " + ch.details.value("fitted_lambda", "?") + " = lambda_{kappa,mu}, lambda_kappa " +
               ch.details.value("lambda_kappa", "?");
    }
  }
  if (o.pass) o.detail = facts;
  return o;
}

Outcome criterion9() {
  Outcome o;
  SuiteConfig c = z2d_random(3, 77);
  c.suites = suite_names();
  c.trials = 5;
  c.degree_cap = 4;
  c.mc_samples = 20000;
  c.threads = 1;
  const auto a = run_suite(c).to_json(false).dump();
  const auto b = run_suite(c).to_json(false).dump();
  c.threads = 3;
  const auto t = run_suite(c).to_json(false).dump();
  if (a != b) o.fail("two runs differ");
  if (a != t) o.fail("thread count changes the report");
  if (o.pass) o.detail = "all suites, identical reports across runs and thread counts (" + std::to_string(a.size()) + " bytes)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact identity suite", criterion1},
      {"integration by parts", criterion2},
      {"harmonics suite", criterion3},
      {"moment formula vs Monte Carlo", criterion4},
      {"isometry suite", criterion5},
      {"uncertainty suite", criterion6},
      {"constant spot checks", criterion7},
      {"ball operator eigen-relation", criterion8},
      {"determinism", criterion9},
  };
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << name << " | " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
