#include <random>

#include "dunkl/domains.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::verify {

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MultiPoly raw_sample(std::mt19937_64& rng, std::size_t d, unsigned cap) {
  MultiPoly f(d);
  const int terms = std::uniform_int_distribution<int>(1, 6)(rng);
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<unsigned> deg(0, cap);
  std::uniform_int_distribution<std::size_t> axis(0, d - 1);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (unsigned k = deg(rng); k > 0; --k) {
      const std::size_t a = axis(rng);
      m.set(a, m[a] + 1);
    }
    f.add_term(m, coef(rng));
  }
  return f;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, const std::string& stream, std::uint64_t trial) {
  // FNV-1a over the stream name, then mixed with the base and the trial index.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix(mix(base ^ h) + trial);
}

MultiPoly sample_polynomial(std::uint64_t seed, std::size_t d, unsigned degree_cap, const SampleConstraints& c) {
  if (d == 0 || d > kMaxDim) throw DimensionMismatch("sample_polynomial: bad dimension");
  std::mt19937_64 rng(seed);
  std::vector<RationalMatrix> group;
  if (c.invariant_under) group = generate_group(*c.invariant_under);
  std::optional<DomainIntegrator> mean_in;
  if (c.mean_zero)
    mean_in.emplace(WeightedDomain::sphere(c.mean_root_system ? *c.mean_root_system : RootSystem::trivial(d)));
  for (int attempt = 0; attempt < 100; ++attempt) {
    MultiPoly f = raw_sample(rng, d, degree_cap);
    if (!group.empty()) f = symmetrize(f, group);
    if (c.symmetric) f = symmetrize(f, permutation_group(d));
    if (mean_in) {
      f -= MultiPoly::constant(d, mean_in->integrate(f));
      if (reduce_mod_sphere(f).rep().is_constant()) continue;
    }
    if (!f.is_constant()) return f;
  }
  throw DegenerateInput("sample_polynomial: no admissible sample after 100 tries");
}

}  // namespace dunkl::verify
