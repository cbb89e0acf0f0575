#pragma once

// Verification harness: suite configuration, reproducible polynomial
// sampling, the check registry and the JSON report.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dunkl/groups.hpp"
#include "dunkl/poly.hpp"

namespace dunkl::verify {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Root system description as written in the config. kind is one of
/// "trivial", "z2d", "type_a", "type_b" or "roots".
struct RootSpec {
  std::string kind = "z2d";
  std::size_t dim = 3;
  std::vector<Rational> kappa;            // z2d: one per axis; type_a: one; type_b: two
  bool random_kappa = false;              // z2d: draw kappa_i in [0, kappa_max] from the seed
  Rational kappa_max = 2;
  long kappa_denominator = 4;
  std::vector<RationalVector> roots;      // kind = "roots"
  std::vector<Rational> multiplicities;
};

struct SuiteConfig {
  RootSpec root_system;
  Rational mu = Rational(1, 2);
  unsigned degree_cap = 6;
  unsigned trials = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> tiers_allowed = {"A", "B", "C"};
  std::uint64_t mc_samples = 1'000'000;
  std::size_t direction_samples = 64;
  std::vector<std::string> suites = {"identities"};
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Throws ConfigError on malformed input or violated invariants
/// (trials >= 1, degree_cap >= 2, mc_samples >= 1000, known suites and tiers).
SuiteConfig parse_config(const std::string& toml_text);
SuiteConfig load_config(const std::string& path);
void validate(const SuiteConfig& cfg);
nlohmann::ordered_json to_json(const SuiteConfig& cfg);

/// The root system a config describes. Random kappa is drawn from cfg.seed.
RootSystem build_root_system(const SuiteConfig& cfg);

struct SampleConstraints {
  const RootSystem* invariant_under = nullptr;  // symmetrize over the generated group
  bool symmetric = false;                       // symmetrize over coordinate permutations
  bool mean_zero = false;                       // subtract the mean on mean_domain
  const RootSystem* mean_root_system = nullptr;  // sphere weight for mean_zero; unweighted when null
};

/// Sparse polynomial with integer coefficients in [-9, 9], total degree at
/// most degree_cap, post-processed as requested. Resamples when the result is
/// zero or constant; throws DegenerateInput after 100 tries.
MultiPoly sample_polynomial(std::uint64_t seed, std::size_t d, unsigned degree_cap, const SampleConstraints& c = {});

/// Stream seed for (base seed, stream name, trial index); a fixed mixing
/// function, so it does not depend on the standard library.
std::uint64_t trial_seed(std::uint64_t base, const std::string& stream, std::uint64_t trial);

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct CheckResult {
  std::string check_id;
  std::string suite;
  std::string identity;
  bool expect_refuted = false;
  Status status = Status::Skipped;
  unsigned trials = 0;
  unsigned passed_trials = 0;
  std::string reason;                          // skipped or failure reason
  std::optional<std::string> witness;          // polynomial text, exact
  std::optional<std::uint64_t> witness_seed;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double millis = 0;
};

struct CheckSpec {
  std::string id;
  std::string suite;
  std::string identity;      // the formula being checked, as text
  bool expect_refuted = false;  // pass means a counterexample was found
};

/// Every registered check in registry order.
const std::vector<CheckSpec>& registry();
const std::vector<std::string>& suite_names();

struct CoverageTopic {
  std::string topic;
  std::vector<std::string> checks;  // empty: unmapped
  std::string note;
};
const std::vector<CoverageTopic>& coverage();

struct Report {
  SuiteConfig config;
  nlohmann::ordered_json root_system;  // the resolved roots and multiplicities
  std::vector<CheckResult> checks;  // ordered by check_id
  double total_millis = 0;
  bool any_failed() const;
  /// Stable key order. Timings sit under a separate "timings" key.
  nlohmann::ordered_json to_json(bool with_timings = true) const;
};

/// Runs the checks of the configured suites on a work pool. The report does
/// not depend on the thread count.
Report run_suite(const SuiteConfig& cfg);

}  // namespace dunkl::verify
