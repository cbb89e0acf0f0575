#pragma once

// Hand-rolled random generators shared by the property tests.

#include <random>

#include "dunkl/poly.hpp"

namespace testgen {

inline dunkl::Rational small_rational(std::mt19937_64& rng, int num_range = 5, int max_den = 4) {
  dunkl::Rational q(std::uniform_int_distribution<int>(-num_range, num_range)(rng),
                    std::uniform_int_distribution<int>(1, max_den)(rng));
  q.canonicalize();
  return q;
}

inline dunkl::MultiPoly random_poly(std::mt19937_64& rng, std::size_t dim, unsigned max_deg, int terms) {
  dunkl::MultiPoly f(dim);
  for (int t = 0; t < terms; ++t) {
    dunkl::Monomial m;
    const unsigned budget = std::uniform_int_distribution<unsigned>(0, max_deg)(rng);
    for (unsigned k = 0; k < budget; ++k) {
      const std::size_t ax = std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng);
      m.set(ax, m[ax] + 1);
    }
    f.add_term(m, small_rational(rng));
  }
  return f;
}

inline dunkl::RationalVector random_vector(std::mt19937_64& rng, std::size_t dim) {
  dunkl::RationalVector v(dim);
  for (auto& c : v) c = small_rational(rng);
  return v;
}

}  // namespace testgen
