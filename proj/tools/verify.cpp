// verify: run the identity and inequality checks described by a TOML config
// and print a JSON report. Exit status 0 when nothing fails, 1 when a check
// fails, 2 on usage or config errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dunkl/errors.hpp"
#include "dunkl/verify.hpp"

namespace v = dunkl::verify;

namespace {

void summarize(const v::Report& rep) {
  for (const auto& c : rep.checks) {
    std::cerr << "  " << v::status_name(c.status) << "  " << c.check_id;
    if (c.status != v::Status::Pass && !c.reason.empty()) std::cerr << "  (" << c.reason << ")";
    std::cerr << "\n";
  }
}

int emit(const v::Report& rep, const std::string& out, bool timings) {
  const std::string text = rep.to_json(timings).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write '" << out << "'\n";
      return 2;
    }
    f << text;
  }
  summarize(rep);
  return rep.any_failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl calculus verification harness"};
  app.require_subcommand(1);

  std::string config_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> trials, threads;
  std::vector<std::string> suites;
  bool no_timings = false;
  auto* run = app.add_subcommand("run", "run the configured suites");
  run->add_option("--config", config_path, "TOML config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--suite", suites, "restrict to these suites (repeatable)");
  run->add_option("--trials", trials, "override the trial count");
  run->add_option("--threads", threads, "worker threads (0: all cores)");
  run->add_option("--out", out, "write the JSON report here instead of stdout");
  run->add_flag("--no-timings", no_timings, "omit the timings block");

  auto* cov = app.add_subcommand("coverage", "list formula topics and the checks that cover them");
  auto* list = app.add_subcommand("list", "list registered checks");

  std::uint64_t samples = 1'000'000, oracle_seed = 0;
  unsigned oracle_trials = 30;
  auto* oracle = app.add_subcommand("oracle", "moment formula against Monte Carlo");
  oracle->add_option("--samples", samples, "Monte Carlo samples per case")->check(CLI::Range(1000ULL, 1ULL << 40));
  oracle->add_option("--seed", oracle_seed, "seed");
  oracle->add_option("--trials", oracle_trials, "number of random cases")->check(CLI::Range(1u, 100000u));
  oracle->add_option("--out", out, "write the JSON report here instead of stdout");
  oracle->add_flag("--no-timings", no_timings, "omit the timings block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      v::SuiteConfig cfg = v::load_config(config_path);
      if (seed) cfg.seed = *seed;
      if (trials) cfg.trials = *trials;
      if (threads) cfg.threads = *threads;
      if (!suites.empty()) cfg.suites = suites;
      v::validate(cfg);
      return emit(v::run_suite(cfg), out, !no_timings);
    }
    if (*oracle) {
      v::SuiteConfig cfg;
      cfg.suites = {"oracle"};
      cfg.mc_samples = samples;
      cfg.seed = oracle_seed;
      cfg.trials = oracle_trials;
      v::validate(cfg);
      return emit(v::run_suite(cfg), out, !no_timings);
    }
    if (*cov) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& t : v::coverage()) {
        nlohmann::ordered_json e;
        e["topic"] = t.topic;
        e["checks"] = t.checks;
        e["mapped"] = !t.checks.empty();
        if (!t.note.empty()) e["note"] = t.note;
        j.push_back(e);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*list) {
      for (const auto& c : v::registry())
        std::cout << c.suite << "\t" << c.id << (c.expect_refuted ? "\t(expect refuted)" : "") << "\n";
      return 0;
    }
  } catch (const dunkl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dunkl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
