#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <toml.hpp>

#include "dunkl/errors.hpp"
#include "dunkl/harmonics.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::verify {

namespace {

Rational rational_of(const toml::node& n, const std::string& where) {
  if (auto s = n.value<std::string>()) {
    try {
      return parse_rational(*s);
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (auto i = n.value<std::int64_t>()) return Rational(static_cast<long>(*i));
  throw ConfigError(where + ": expected an integer or a rational string such as \"3/2\"");
}

std::vector<Rational> rationals_of(const toml::node& n, const std::string& where) {
  const auto* arr = n.as_array();
  if (!arr) throw ConfigError(where + ": expected an array");
  std::vector<Rational> out;
  for (const auto& e : *arr) out.push_back(rational_of(e, where));
  return out;
}

std::vector<std::string> strings_of(const toml::node& n, const std::string& where) {
  const auto* arr = n.as_array();
  if (!arr) throw ConfigError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : *arr) {
    auto s = e.value<std::string>();
    if (!s) throw ConfigError(where + ": expected an array of strings");
    out.push_back(*s);
  }
  return out;
}

template <class T>
T integer_of(const toml::node& n, const std::string& where, std::int64_t lo) {
  auto v = n.value<std::int64_t>();
  if (!v) throw ConfigError(where + ": expected an integer");
  if (*v < lo) throw ConfigError(where + ": must be at least " + std::to_string(lo));
  return static_cast<T>(*v);
}

void check_known_keys(const toml::table& t, std::initializer_list<std::string_view> keys, const std::string& where) {
  for (const auto& [k, v] : t)
    if (std::find(keys.begin(), keys.end(), k.str()) == keys.end())
      throw ConfigError(where + ": unknown key '" + std::string(k.str()) + "'");
}

RootSpec parse_roots(const toml::table& t) {
  check_known_keys(t, {"kind", "dim", "kappa", "kappa_max", "kappa_denominator", "roots", "multiplicities"},
                   "root_system");
  RootSpec r;
  if (auto k = t["kind"].value<std::string>()) r.kind = *k;
  if (t.contains("dim")) r.dim = integer_of<std::size_t>(*t.get("dim"), "root_system.dim", 1);
  if (const auto* k = t.get("kappa")) {
    if (auto s = k->value<std::string>(); s && *s == "random") {
      r.random_kappa = true;
    } else if (k->is_array()) {
      r.kappa = rationals_of(*k, "root_system.kappa");
    } else {
      r.kappa = {rational_of(*k, "root_system.kappa")};
    }
  }
  if (const auto* k = t.get("kappa_max")) r.kappa_max = rational_of(*k, "root_system.kappa_max");
  if (const auto* k = t.get("kappa_denominator"))
    r.kappa_denominator = integer_of<long>(*k, "root_system.kappa_denominator", 1);
  if (const auto* k = t.get("roots")) {
    const auto* arr = k->as_array();
    if (!arr) throw ConfigError("root_system.roots: expected an array of arrays");
    for (const auto& e : *arr) r.roots.push_back(rationals_of(e, "root_system.roots"));
  }
  if (const auto* k = t.get("multiplicities")) r.multiplicities = rationals_of(*k, "root_system.multiplicities");
  return r;
}

}  // namespace

SuiteConfig parse_config(const std::string& text) {
  toml::table t;
  try {
    t = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config parse error at line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(os.str());
  }
  check_known_keys(t,
                   {"root_system", "mu", "degree_cap", "trials", "seed", "tiers_allowed", "mc_samples",
                    "direction_samples", "suites", "threads"},
                   "config");
  SuiteConfig c;
  if (const auto* rs = t["root_system"].as_table()) c.root_system = parse_roots(*rs);
  if (const auto* n = t.get("mu")) c.mu = rational_of(*n, "mu");
  if (const auto* n = t.get("degree_cap")) c.degree_cap = integer_of<unsigned>(*n, "degree_cap", 0);
  if (const auto* n = t.get("trials")) c.trials = integer_of<unsigned>(*n, "trials", 0);
  if (const auto* n = t.get("seed")) c.seed = integer_of<std::uint64_t>(*n, "seed", 0);
  if (const auto* n = t.get("tiers_allowed")) c.tiers_allowed = strings_of(*n, "tiers_allowed");
  if (const auto* n = t.get("mc_samples")) c.mc_samples = integer_of<std::uint64_t>(*n, "mc_samples", 0);
  if (const auto* n = t.get("direction_samples"))
    c.direction_samples = integer_of<std::size_t>(*n, "direction_samples", 0);
  if (const auto* n = t.get("suites")) c.suites = strings_of(*n, "suites");
  if (const auto* n = t.get("threads")) c.threads = integer_of<unsigned>(*n, "threads", 0);
  validate(c);
  return c;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

void validate(const SuiteConfig& c) {
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.degree_cap < 2) throw ConfigError("degree_cap must be >= 2");
  if (c.degree_cap > kDefaultDegreeCap) throw ConfigError("degree_cap must be <= 10");
  if (c.mc_samples < 1000) throw ConfigError("mc_samples must be >= 1000");
  if (c.mu < 0) throw ConfigError("mu must be >= 0");
  for (const auto& t : c.tiers_allowed)
    if (t != "A" && t != "B" && t != "C") throw ConfigError("unknown tier '" + t + "' (expected A, B or C)");
  if (c.suites.empty()) throw ConfigError("suites must not be empty");
  const auto& known = suite_names();
  for (const auto& s : c.suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw ConfigError("unknown suite '" + s + "'");
  const auto& r = c.root_system;
  if (r.dim < 1 || r.dim > kMaxDim) throw ConfigError("root_system.dim must be in [1, 8]");
  if (r.kind != "trivial" && r.kind != "z2d" && r.kind != "type_a" && r.kind != "type_b" && r.kind != "roots")
    throw ConfigError("root_system.kind must be trivial, z2d, type_a, type_b or roots");
  if (r.random_kappa && r.kind != "z2d") throw ConfigError("kappa = \"random\" needs kind = \"z2d\"");
  if (r.kappa_max < 0) throw ConfigError("root_system.kappa_max must be >= 0");
}

nlohmann::ordered_json to_json(const SuiteConfig& c) {
  nlohmann::ordered_json rs;
  rs["kind"] = c.root_system.kind;
  rs["dim"] = c.root_system.dim;
  if (c.root_system.random_kappa) {
    rs["kappa"] = "random";
    rs["kappa_max"] = to_string(c.root_system.kappa_max);
    rs["kappa_denominator"] = c.root_system.kappa_denominator;
  } else {
    auto& k = rs["kappa"] = nlohmann::ordered_json::array();
    for (const auto& q : c.root_system.kappa) k.push_back(to_string(q));
  }
  if (c.root_system.kind == "roots") {
    auto& roots = rs["roots"] = nlohmann::ordered_json::array();
    for (const auto& v : c.root_system.roots) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& q : v) row.push_back(to_string(q));
      roots.push_back(row);
    }
    auto& m = rs["multiplicities"] = nlohmann::ordered_json::array();
    for (const auto& q : c.root_system.multiplicities) m.push_back(to_string(q));
  }
  nlohmann::ordered_json j;
  j["root_system"] = rs;
  j["mu"] = to_string(c.mu);
  j["degree_cap"] = c.degree_cap;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tiers_allowed"] = c.tiers_allowed;
  j["mc_samples"] = c.mc_samples;
  j["direction_samples"] = c.direction_samples;
  j["suites"] = c.suites;
  return j;
}

RootSystem build_root_system(const SuiteConfig& c) {
  const auto& r = c.root_system;
  const std::size_t d = r.dim;
  auto need = [&](std::size_t n) {
    if (r.kappa.size() != n)
      throw ConfigError("root_system.kappa needs " + std::to_string(n) + " value(s) for kind " + r.kind);
  };
  if (r.kind == "trivial") return RootSystem::trivial(d);
  if (r.kind == "z2d") {
    if (!r.random_kappa) {
      need(d);
      return RootSystem::z2d(r.kappa);
    }
    std::mt19937_64 rng(trial_seed(c.seed, "random-kappa", 0));
    const Rational top = r.kappa_max * r.kappa_denominator;
    const long hi = static_cast<long>(mpz_class(top.get_num() / top.get_den()).get_si());
    RationalVector kappa(d);
    for (auto& k : kappa) {
      k = Rational(std::uniform_int_distribution<long>(0, hi)(rng), r.kappa_denominator);
      k.canonicalize();
    }
    return RootSystem::z2d(kappa);
  }
  if (r.kind == "type_a") {
    need(1);
    return RootSystem::type_a(d, r.kappa[0]);
  }
  if (r.kind == "type_b") {
    need(2);
    return RootSystem::type_b(d, r.kappa[0], r.kappa[1]);
  }
  if (r.roots.size() != r.multiplicities.size())
    throw ConfigError("root_system.roots and root_system.multiplicities differ in length");
  std::vector<Root> roots;
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    if (r.roots[i].size() != d) throw ConfigError("root " + std::to_string(i) + " has the wrong dimension");
    roots.push_back({r.roots[i], r.multiplicities[i]});
  }
  return RootSystem(d, std::move(roots), RootSystemKind::GeneralIntegerKappa);
}

}  // namespace dunkl::verify
