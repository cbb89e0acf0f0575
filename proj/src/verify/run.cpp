#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "checks.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::verify {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> specs = [] {
    std::vector<CheckSpec> out;
    for (const auto& d : detail::definitions()) out.push_back(d.spec);
    return out;
  }();
  return specs;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "integration", "harmonics", "oracle",
                                                 "isometry",   "ball",        "uncertainty"};
  return names;
}

const std::vector<CoverageTopic>& coverage() {
  static const std::vector<CoverageTopic> topics = {
      {"Delta_0 = sum_{i<j} D_ij^2", {"classical-laplacian-angular-sum"}, ""},
      {"grad_0 f . grad_0 g = sum_{i<j} D_ij f D_ij g", {"classical-gradient-angular-sum"}, ""},
      {"int D_ij f g dsigma = -int f D_ij g dsigma", {"classical-angular-integration-by-parts"}, ""},
      {"D_i D_j = D_j D_i", {"dunkl-operators-commute"}, ""},
      {"explicit form of the h-Laplacian", {"h-laplacian-explicit-form"}, ""},
      {"D_i(x_j f) product rule", {"dunkl-product-rule"}, ""},
      {"grad_{h,0} = grad_0 + sum_v kappa_v E_v v", {"h-gradient-explicit-form"}, ""},
      {"xi . grad_{h,0} = sum_v kappa_v (I - sigma_v)", {"h-gradient-radial-part"}, ""},
      {"Delta_{h,0} = grad_{h,0} . grad_{h,0} - xi . grad_{h,0}", {"h-laplacian-divergence-form"}, ""},
      {"cal D_ij = D_ij + E_ij", {"angular-dunkl-decomposition"}, ""},
      {"int cal D_ij f g h^2 = -int f cal D_ij g h^2", {"angular-dunkl-integration-by-parts"}, ""},
      {"(grad_{h,0})_j in terms of cal D_ij", {"h-gradient-component-angular-form"}, ""},
      {"adjoint of (grad_{h,0})_j", {"h-gradient-adjoint"}, ""},
      {"grad_{h,0} f . grad_{h,0} g against sum cal D_ij f cal D_ij g",
       {"h-gradient-angular-product", "h-gradient-angular-product-plus-sign"},
       "the minus-sign form holds; the plus-sign form is checked for a counterexample"},
      {"|grad_{h,0} f|^2 - |xi . grad_{h,0} f|^2 = sum |cal D_ij f|^2", {"h-gradient-angular-square"}, ""},
      {"Delta_{h,0} in terms of cal D_ij", {"h-laplacian-angular-form"}, ""},
      {"divergence lemma sum_i cal D_ij (xi_i g)",
       {"h-gradient-divergence-lemma", "h-gradient-divergence-lemma-xj-index"},
       "the xi_i form holds; the xi_j form is checked for a counterexample"},
      {"spherical h-harmonic eigenvalues -n(n + 2 lambda)", {"harmonic-eigen-relation"}, ""},
      {"L^2 expansion in h-harmonics", {"harmonic-parseval"}, ""},
      {"fractional powers (-Delta_{h,0})^r", {"laplacian-integer-powers", "half-order-norm-equals-gradient-norm"},
       ""},
      {"||(-Delta_{h,0})^{1/2} f|| = ||grad_{h,0} f|| for invariant f", {"half-order-norm-equals-gradient-norm"}, ""},
      {"sphere moments prod (kappa_i + 1/2)_{b_i} / (gamma + d/2)_{|b|}",
       {"moment-formula-examples", "moment-formula-vs-monte-carlo", "exact-integral-vs-monte-carlo"}, ""},
      {"ball to sphere lift", {"ball-lift-isometry", "ball-triple-norm-equals-lifted-gradient"}, ""},
      {"simplex to ball pullback", {"simplex-pullback-isometry", "simplex-triple-norm-pullback"}, ""},
      {"polar form of the ball integral", {"ball-lift-isometry"}, "used as the independent route of the lift check"},
      {"ball orthogonal polynomials as eigenfunctions", {"ball-operator-eigenfunctions", "ball-operator-plus-sign"},
       "the -2 lambda (x.grad) sign fits lambda_{kappa,mu}; the + sign is checked for a counterexample"},
      {"pointwise coordinate bound for the ball gradient",
       {"ball-coordinate-gradient-bound", "ball-coordinate-gradient-bound-factor-two"},
       "the bound without a factor is checked for a counterexample; the factor-two bound holds"},
      {"uncertainty principle on the sphere",
       {"sphere-uncertainty", "sphere-proof-spectral-gap", "sphere-proof-localization-bound",
        "sphere-proof-first-moment", "uncertainty-scale-covariance"},
       ""},
      {"uncertainty principle on the ball",
       {"ball-uncertainty-invariant-axes", "ball-uncertainty-directions", "ball-uncertainty-coordinate-gradient"},
       ""},
      {"uncertainty principle on the simplex", {"simplex-uncertainty-jacobi", "simplex-uncertainty-symmetric"}, ""},
      {"the constant C(lambda)", {"sphere-uncertainty"}, "closed form evaluated by constant_C; pinned by unit tests"},
      {"sharpness of the constants", {}, "out of scope: no extremal functions are searched for"},
      {"uncertainty for non-polynomial functions", {}, "out of scope: all checks are on polynomials"},
  };
  return topics;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Slot {
  detail::TrialOutcome outcome;
  bool error = false;  // an exception other than a tier error
  std::uint64_t seed = 0;
};

nlohmann::ordered_json root_system_json(const detail::Env& env) {
  nlohmann::ordered_json j;
  j["kind"] = env.z2d ? "z2d" : "general";
  j["dim"] = env.rs.dim();
  auto& roots = j["roots"] = nlohmann::ordered_json::array();
  auto& mult = j["multiplicities"] = nlohmann::ordered_json::array();
  for (const auto& r : env.rs.roots()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& q : r.vector) row.push_back(to_string(q));
    roots.push_back(row);
    mult.push_back(to_string(r.multiplicity));
  }
  j["gamma"] = to_string(env.ctx.constants().gamma_kappa);
  j["lambda"] = to_string(env.ctx.constants().lambda_kappa);
  j["mu"] = to_string(env.cfg.mu);
  if (!env.group.empty()) j["group_order"] = env.group.size();
  return j;
}

CheckResult aggregate(const detail::CheckDef& def, const std::vector<Slot>& slots) {
  CheckResult r;
  r.check_id = def.spec.id;
  r.suite = def.spec.suite;
  r.identity = def.spec.identity;
  r.expect_refuted = def.spec.expect_refuted;

  std::map<std::string, double> mins, maxs;
  std::map<std::string, unsigned> counts;
  std::vector<std::pair<std::string, std::string>> facts;
  const Slot* first_bad = nullptr;
  const Slot* first_error = nullptr;
  std::string skip_reason;
  unsigned ran = 0, ok = 0;
  for (const auto& s : slots) {
    const auto& o = s.outcome;
    if (o.skipped) {
      if (skip_reason.empty()) skip_reason = o.reason;
      continue;
    }
    ++ran;
    if (o.ok) ++ok;
    if (!o.ok && !first_bad) first_bad = &s;
    if (s.error && !first_error) first_error = &s;
    for (const auto& [k, v] : o.mins) mins[k] = mins.count(k) ? std::min(mins[k], v) : v;
    for (const auto& [k, v] : o.maxs) maxs[k] = maxs.count(k) ? std::max(maxs[k], v) : v;
    for (const auto& k : o.counts) ++counts[k];
    if (facts.empty()) facts = o.facts;
  }
  r.trials = ran;
  if (ran == 0) {
    r.status = Status::Skipped;
    r.reason = skip_reason;
    return r;
  }
  if (ran < slots.size()) r.details["skipped_trials"] = slots.size() - ran;
  for (const auto& [k, v] : mins) r.details[k] = v;
  for (const auto& [k, v] : maxs) r.details[k] = v;
  for (const auto& [k, v] : counts) r.details[k] = v;
  for (const auto& [k, v] : facts) r.details[k] = v;

  auto witness = [&](const Slot& s) {
    r.witness = s.outcome.witness;
    r.witness_seed = s.seed;
  };
  if (first_error) {
    r.status = Status::Fail;
    r.passed_trials = def.spec.expect_refuted ? 0 : ok;
    r.reason = first_error->outcome.reason;
    witness(*first_error);
  } else if (!def.spec.expect_refuted) {
    r.passed_trials = ok;
    r.status = first_bad ? Status::Fail : Status::Pass;
    if (first_bad) {
      r.reason = first_bad->outcome.reason;
      witness(*first_bad);
    }
  } else {
    r.passed_trials = ran - ok;
    r.status = first_bad ? Status::Pass : Status::Fail;
    if (first_bad) {
      r.reason = "counterexample: " + first_bad->outcome.reason;
      witness(*first_bad);
    } else {
      r.reason = "no counterexample found in " + std::to_string(ran) + " trial(s)";
    }
  }
  return r;
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  const detail::Env env(cfg);

  std::vector<const detail::CheckDef*> selected;
  for (const auto& d : detail::definitions())
    if (std::find(cfg.suites.begin(), cfg.suites.end(), d.spec.suite) != cfg.suites.end()) selected.push_back(&d);

  std::vector<std::string> unmet(selected.size());
  std::vector<std::vector<Slot>> slots(selected.size());
  struct Item {
    std::size_t check;
    unsigned trial;
  };
  std::vector<Item> items;
  for (std::size_t c = 0; c < selected.size(); ++c) {
    for (auto req : selected[c]->requires_)
      if (auto why = req(env)) {
        unmet[c] = *why;
        break;
      }
    if (!unmet[c].empty()) continue;
    const unsigned n = selected[c]->single ? 1 : cfg.trials;
    slots[c].resize(n);
    for (unsigned t = 0; t < n; ++t) items.push_back({c, t});
  }

  std::vector<double> millis(selected.size(), 0.0);
  std::mutex millis_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      const auto [c, t] = items[k];
      const auto& def = *selected[c];
      Slot& s = slots[c][t];
      s.seed = trial_seed(cfg.seed, def.stream, t);
      const auto start = Clock::now();
      try {
        s.outcome = def.run(env, s.seed);
      } catch (const TierError& e) {
        s.outcome = {};
        s.outcome.skipped = true;
        s.outcome.reason = e.what();
      } catch (const std::exception& e) {
        s.outcome = {};
        s.error = true;
        s.outcome.fail(std::string("exception: ") + e.what(), "trial seed " + std::to_string(s.seed));
      }
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      std::lock_guard lock(millis_mutex);
      millis[c] += ms;
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(items.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  Report rep;
  rep.config = cfg;
  rep.root_system = root_system_json(env);
  for (std::size_t c = 0; c < selected.size(); ++c) {
    CheckResult r;
    if (!unmet[c].empty()) {
      r.check_id = selected[c]->spec.id;
      r.suite = selected[c]->spec.suite;
      r.identity = selected[c]->spec.identity;
      r.expect_refuted = selected[c]->spec.expect_refuted;
      r.status = Status::Skipped;
      r.reason = unmet[c];
    } else {
      r = aggregate(*selected[c], slots[c]);
    }
    r.millis = millis[c];
    rep.checks.push_back(std::move(r));
  }
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
  rep.total_millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rep;
}

bool Report::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

nlohmann::ordered_json Report::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "dunkl-verify";
  j["tool_version"] = kToolVersion;
  j["config"] = verify::to_json(config);
  j["root_system"] = root_system;
  unsigned pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) (c.status == Status::Pass ? pass : c.status == Status::Fail ? fail : skip)++;
  j["summary"] = {{"total", checks.size()}, {"passed", pass}, {"failed", fail}, {"skipped", skip}};
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["check_id"] = c.check_id;
    e["suite"] = c.suite;
    e["identity"] = c.identity;
    e["expectation"] = c.expect_refuted ? "refuted" : "holds";
    e["status"] = status_name(c.status);
    e["trials"] = c.trials;
    e["passed_trials"] = c.passed_trials;
    e["reason"] = c.reason;
    if (c.witness) e["counterexample"] = {{"polynomial", *c.witness}, {"seed", *c.witness_seed}};
    else e["counterexample"] = nullptr;
    e["details"] = c.details;
    arr.push_back(std::move(e));
  }
  if (with_timings) {
    nlohmann::ordered_json t;
    t["total_ms"] = total_millis;
    auto& per = t["checks"] = nlohmann::ordered_json::object();
    for (const auto& c : checks) per[c.check_id] = c.millis;
    j["timings"] = t;
  }
  return j;
}

}  // namespace dunkl::verify
