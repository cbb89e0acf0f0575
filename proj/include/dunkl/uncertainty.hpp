#pragma once

// Uncertainty functionals on sphere, ball and simplex. Admissible functions
// keep the squared norm N symbolic, so every quadratic functional of the
// normalized function is an exact rational divided by N.

#include <optional>
#include <string>
#include <vector>

#include "dunkl/domains.hpp"
#include "dunkl/harmonics.hpp"

namespace dunkl {

/// g / sqrt(norm_sq) is the normalized function: zero mean, unit norm.
struct Admissible {
  MultiPoly g;
  Rational norm_sq;
  Rational removed_mean;
};

/// Subtracts the mean and records ||f - mean||^2. Throws DegenerateInput when
/// f is constant on the domain.
Admissible make_admissible(const DomainIntegrator& in, const MultiPoly& f);

/// 2 lambda (1 - sqrt(2 lambda) / sqrt((lambda + 1/2)^2 + 2 lambda)).
long double constant_C(const Rational& lambda);
long double constant_C(long double lambda);

struct ProofCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct AdmissibilityFlags {
  bool mean_zero = false;
  bool unit_norm = false;
  bool invariant = false;
  Rational mean_residual;  // int g w
  Rational norm_residual;  // int g^2 w / N - 1
};

struct UncertaintyResult {
  std::string mode;
  bool exact = true;  // false when any term is a float (simplex localization, MC tier)
  std::vector<long double> axis_localization;
  std::vector<Rational> axis_localization_exact;
  long double localization = 0;
  std::optional<Rational> localization_exact;
  long double gradient_sq = 0;
  std::optional<Rational> gradient_sq_exact;
  long double product = 0;
  std::optional<Rational> product_exact;
  Rational lambda;
  long double constant = 0;
  long double margin = 0;
  bool trivially_true = false;  // constant is 0 because lambda = 0
  AdmissibilityFlags admissible;
  std::vector<ProofCheck> proof_checks;
  // Direction modes: localization above is the exact minimum 1 - |m| over all
  // unit directions; the sampled minimum over the finite set is reported too.
  std::optional<long double> sampled_direction_min;
  std::size_t directions_sampled = 0;
  // Coordinate-gradient mode: the ball triple norm on the same f, for comparison.
  std::optional<Rational> triple_norm_sq;

  bool proof_chain_ok() const;
};

/// Minimum over coordinate axes of int (1 - x_i)|f|^2 h^2 times ||grad_0 f||^2,
/// against C(lambda_kappa). G-invariance is checked; a violation sets the flag
/// and the evaluation proceeds.
UncertaintyResult sphere_uncertainty(const OperatorContext& ctx, const DomainIntegrator& in, const Admissible& a);
UncertaintyResult sphere_uncertainty(const OperatorContext& ctx, const SphereFunction& f);

enum class BallMode { InvariantAxes, ClassicalDirections, CoordinateGradient };
const char* ball_mode_name(BallMode m);

struct DirectionOptions {
  std::size_t random_directions = 64;
  std::uint64_t seed = 0;
};

/// InvariantAxes needs G-invariant f (DegenerateInput otherwise). The other two
/// modes need kappa = 0 (InvalidRootSystem otherwise).
UncertaintyResult ball_uncertainty(const DomainIntegrator& in, const Admissible& a, BallMode mode,
                                   const DirectionOptions& dirs = {});
UncertaintyResult ball_uncertainty(const WeightedDomain& dom, const MultiPoly& f, BallMode mode,
                                   const DirectionOptions& dirs = {});

enum class SimplexMode { Jacobi, HyperoctahedralSymmetric };
const char* simplex_mode_name(SimplexMode m);

/// Jacobi mode needs a Z_2^d root system; the hyperoctahedral mode needs f
/// symmetric under coordinate permutations (DegenerateInput otherwise).
/// Constant C(lambda_{kappa,mu}) / 4.
UncertaintyResult simplex_uncertainty(const DomainIntegrator& in, const Admissible& a, SimplexMode mode);
UncertaintyResult simplex_uncertainty(const WeightedDomain& dom, const MultiPoly& f, SimplexMode mode);

/// Monte Carlo version for weights outside the exact tiers. All terms are
/// ratios of sample means over one shared sample set.
UncertaintyResult simplex_uncertainty_mc(const WeightedDomain& dom, const MultiPoly& f, SimplexMode mode,
                                         std::uint64_t samples, std::uint64_t seed);

/// The 2d signed unit vectors followed by `extra` Gaussian directions.
std::vector<std::vector<double>> sample_directions(std::size_t d, std::size_t extra, std::uint64_t seed);

}  // namespace dunkl
