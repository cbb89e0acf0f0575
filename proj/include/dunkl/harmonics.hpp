#pragma once

// h-harmonic decomposition on the sphere and functions of the spherical
// h-Laplacian defined through it.

#include <map>
#include <utility>
#include <vector>

#include "dunkl/operators.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

inline constexpr unsigned kDefaultDegreeCap = 10;

/// P = sum_j |x|^{2j} parts[j], each part h-harmonic and homogeneous of
/// degree n - 2j. Entries with a zero part are omitted.
std::vector<std::pair<unsigned, MultiPoly>> harmonic_decompose(const OperatorContext& ctx, const MultiPoly& p,
                                                               unsigned degree_cap = kDefaultDegreeCap);

/// Degree -> h-harmonic component of a sphere function. Zero components are omitted.
struct HarmonicExpansion {
  std::map<unsigned, MultiPoly> components;

  MultiPoly component(unsigned n, std::size_t dim) const;
  SphereFunction sum(std::size_t dim) const;
};

HarmonicExpansion harmonic_expansion(const OperatorContext& ctx, const SphereFunction& f,
                                     unsigned degree_cap = kDefaultDegreeCap);

/// proj_n f as a homogeneous h-harmonic polynomial of degree n.
MultiPoly proj(const OperatorContext& ctx, const SphereFunction& f, unsigned n,
               unsigned degree_cap = kDefaultDegreeCap);

/// sum_{n >= 1} (n(n + 2 lambda))^r proj_n f. Exact for integer r only; other
/// r throw TierError (use sobolev_half_norm_sq for r = 1/2 norms).
SphereFunction neg_laplacian_power(const OperatorContext& ctx, const SphereFunction& f, const Rational& r);

/// sum_n n(n + 2 lambda) ||proj_n f||^2.
Rational sobolev_half_norm_sq(const OperatorContext& ctx, const SphereFunction& f);
Rational sobolev_half_norm_sq(const OperatorContext& ctx, const DomainIntegrator& in, const SphereFunction& f);

/// ||grad_{h,0} f||^2 = sum_j ||(grad_{h,0})_j f||^2 against h_kappa^2.
Rational spherical_gradient_norm_sq(const OperatorContext& ctx, const DomainIntegrator& in, const SphereFunction& f);

}  // namespace dunkl
