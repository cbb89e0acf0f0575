#pragma once

// Internal: check definitions and the per-configuration environment they run in.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/domains.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::verify::detail {

struct Env {
  explicit Env(const SuiteConfig& cfg);

  const SuiteConfig& cfg;
  RootSystem rs;
  OperatorContext ctx;
  std::vector<RationalMatrix> group;
  std::string group_error;
  bool kappa_zero = true;
  bool z2d = false;
  bool tier_c = false;

  std::optional<DomainIntegrator> sphere, ball, simplex, lifted;
  std::string sphere_error, ball_error, simplex_error;
  std::optional<WeightedDomain> ball_domain, simplex_domain;
};

struct TrialOutcome {
  bool ok = true;
  bool skipped = false;
  std::string reason;
  std::string witness;
  std::vector<std::pair<std::string, double>> mins;
  std::vector<std::pair<std::string, double>> maxs;
  std::vector<std::string> counts;
  std::vector<std::pair<std::string, std::string>> facts;

  void fail(std::string why, std::string w) {
    if (ok) {
      reason = std::move(why);
      witness = std::move(w);
    }
    ok = false;
  }
};

using Runner = TrialOutcome (*)(const Env&, std::uint64_t seed);
using Requirement = std::optional<std::string> (*)(const Env&);

struct CheckDef {
  CheckSpec spec;
  Runner run;
  std::vector<Requirement> requires_;
  bool single = false;        // deterministic: one trial
  std::string stream;         // seed stream; defaults to the check id
};

const std::vector<CheckDef>& definitions();

}  // namespace dunkl::verify::detail
