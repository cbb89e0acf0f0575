#pragma once

// Dunkl operators and their spherical parts. Axes are 0-based.

#include <vector>

#include "dunkl/groups.hpp"
#include "dunkl/poly.hpp"

namespace dunkl {

class OperatorContext {
 public:
  struct RootData {
    RationalVector v;
    Rational kappa;
    Rational norm_sq;
    RationalMatrix sigma;
  };

  explicit OperatorContext(RootSystem rs);

  const RootSystem& root_system() const { return rs_; }
  const DerivedConstants& constants() const { return constants_; }
  std::size_t dim() const { return rs_.dim(); }
  /// Roots with kappa_v = 0 are dropped; they never contribute.
  const std::vector<RootData>& roots() const { return roots_; }

  /// Recomputes the derived constants; throws InternalInconsistency on mismatch.
  void check_consistency() const;

 private:
  RootSystem rs_;
  DerivedConstants constants_;
  std::vector<RootData> roots_;
};

/// f(x sigma_v).
MultiPoly reflect_poly(const OperatorContext::RootData& r, const MultiPoly& f);

/// E_v f = (f - f o sigma_v) / <x, v>.
MultiPoly difference_op_E(const OperatorContext::RootData& r, const MultiPoly& f);

MultiPoly dunkl_operator(const OperatorContext& ctx, std::size_t j, const MultiPoly& f);
std::vector<MultiPoly> h_gradient(const OperatorContext& ctx, const MultiPoly& f);

/// sum_i D_i^2 f.
MultiPoly h_laplacian(const OperatorContext& ctx, const MultiPoly& f);
/// Delta f + sum_v kappa_v (2 v.grad f / <x,v> - |v|^2 (f - f o sigma_v) / <x,v>^2),
/// computed independently of h_laplacian.
MultiPoly h_laplacian_explicit(const OperatorContext& ctx, const MultiPoly& f);

/// x_i d_j - x_j d_i.
MultiPoly angular_classical(std::size_t i, std::size_t j, const MultiPoly& f);
/// x_i D_j - x_j D_i.
MultiPoly angular_dunkl(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f);
/// sum_v kappa_v (x_i v_j - x_j v_i) E_v f.
MultiPoly angular_difference(const OperatorContext& ctx, std::size_t i, std::size_t j, const MultiPoly& f);

/// Restriction of f o sigma_v to the sphere.
SphereFunction reflect_sphere(const OperatorContext::RootData& r, const SphereFunction& f);

/// Components of the spherical h-gradient: for P homogeneous of degree n,
/// (grad_h P) - n xi P, restricted.
std::vector<SphereFunction> spherical_gradient_h(const OperatorContext& ctx, const SphereFunction& f);
/// xi . spherical gradient, given by sum_v kappa_v (f - f o sigma_v).
SphereFunction xi_dot_gradient(const OperatorContext& ctx, const SphereFunction& f);
/// Spherical part of Delta_h: for P of degree n, Delta_h P - n(n + 2 lambda) P, restricted.
SphereFunction laplace_beltrami_h(const OperatorContext& ctx, const SphereFunction& f);

/// Operators on the sphere class: the inputs are taken through their reduced representative.
SphereFunction angular_dunkl(const OperatorContext& ctx, std::size_t i, std::size_t j, const SphereFunction& f);

/// Multiplies a sphere function by the coordinate x_i.
SphereFunction times_coordinate(const SphereFunction& f, std::size_t i);

}  // namespace dunkl
