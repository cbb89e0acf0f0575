#pragma once

// Exact sparse multivariate polynomials over Q.
//
// Axes are 0-based in the API (x_0 .. x_{d-1}); the text form uses 1-based
// names x1 .. xd. Dimensions are limited to kMaxDim and single exponents to 255.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dunkl/rational.hpp"

namespace dunkl {

inline constexpr std::size_t kMaxDim = 8;

/// Exponent multi-index.
class Monomial {
 public:
  Monomial() = default;

  static Monomial unit(std::size_t axis);

  unsigned operator[](std::size_t axis) const { return e_[axis]; }
  void set(std::size_t axis, unsigned exponent);
  unsigned degree() const;

  /// Product of monomials (exponent addition, overflow-checked).
  Monomial operator*(const Monomial& rhs) const;

  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;

 private:
  std::array<std::uint8_t, kMaxDim> e_{};
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit MultiPoly(std::size_t dim);

  static MultiPoly constant(std::size_t dim, const Rational& c);
  static MultiPoly variable(std::size_t dim, std::size_t axis);
  static MultiPoly monomial(std::size_t dim, const Monomial& m, const Rational& c = 1);
  /// <x, v>
  static MultiPoly linear_form(const RationalVector& v);
  /// x_0^2 + ... + x_{d-1}^2
  static MultiPoly norm_squared(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial{}); }

  /// Adds c * x^m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& s);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  MultiPoly operator-() const;

  bool operator==(const MultiPoly& rhs) const;

 private:
  std::size_t dim_;
  TermMap terms_;
};

MultiPoly scale(const MultiPoly& f, const Rational& s);
MultiPoly pow(const MultiPoly& f, unsigned n);

/// Partial derivative along a 0-based axis.
MultiPoly differentiate(const MultiPoly& f, std::size_t axis);

/// f(x M) for x a row vector.
MultiPoly compose_linear(const MultiPoly& f, const RationalMatrix& m);

/// Exact quotient f / <x, v>; throws NotDivisible on a nonzero remainder.
MultiPoly divide_by_linear_form(const MultiPoly& f, const RationalVector& v);

/// Homogeneous parts ordered by ascending degree; zero parts are omitted.
std::vector<std::pair<unsigned, MultiPoly>> homogeneous_decompose(const MultiPoly& f);

/// Embeds f into a higher dimension (new variables appended, unused).
MultiPoly extend_dimension(const MultiPoly& f, std::size_t new_dim);

/// Replaces every x_i by x_i^2.
MultiPoly substitute_squares(const MultiPoly& f);

Rational evaluate(const MultiPoly& f, const RationalVector& x);
double evaluate(const MultiPoly& f, std::span<const double> x);

/// Canonical text: "c * x1^a1 x2^a2 + ..." in descending graded-lex order.
std::string to_string(const MultiPoly& f);
MultiPoly parse_poly(std::string_view text, std::size_t dim);

/// Restriction of a polynomial to the unit sphere, held as its canonical
/// remainder modulo (|x|^2 - 1): the x_{d-1} degree of every term is at most one.
class SphereFunction {
 public:
  explicit SphereFunction(std::size_t dim);

  const MultiPoly& rep() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }
  bool is_zero() const { return rep_.is_zero(); }

  SphereFunction& operator+=(const SphereFunction& rhs);
  SphereFunction& operator-=(const SphereFunction& rhs);
  SphereFunction& operator*=(const Rational& s);
  friend SphereFunction operator+(SphereFunction a, const SphereFunction& b) { return a += b; }
  friend SphereFunction operator-(SphereFunction a, const SphereFunction& b) { return a -= b; }
  friend SphereFunction operator*(SphereFunction a, const Rational& s) { return a *= s; }
  friend SphereFunction operator*(const SphereFunction& a, const SphereFunction& b);

  bool operator==(const SphereFunction& rhs) const { return rep_ == rhs.rep_; }

 private:
  friend SphereFunction reduce_mod_sphere(const MultiPoly& f);
  MultiPoly rep_;
};

SphereFunction reduce_mod_sphere(const MultiPoly& f);

}  // namespace dunkl
