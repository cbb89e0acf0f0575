#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dunkl {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "p/q" or "-p/q" into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is one).
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational dot(const RationalVector& a, const RationalVector& b);

/// Square rational matrix acting on row vectors: x -> x M.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  bool operator==(const RationalMatrix& rhs) const;
  /// Lexicographic order on entries; used to key sets of group elements.
  bool operator<(const RationalMatrix& rhs) const;

  RationalMatrix transpose() const;
  bool is_orthogonal() const;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

/// Row vector times matrix.
RationalVector row_times(const RationalVector& x, const RationalMatrix& m);

}  // namespace dunkl
