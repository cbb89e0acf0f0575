#include "dunkl/rational.hpp"

#include <cctype>

#include "dunkl/errors.hpp"

namespace dunkl {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? digits_after : digits_before) = true;
    } else if (s[i] == '/' && !slash) {
      slash = true;
    } else {
      throw ParseError("malformed rational literal '" + s + "'");
    }
  }
  if (!digits_before || (slash && !digits_after)) {
    throw ParseError("malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: vector sizes differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (n_ != rhs.n_) throw DimensionMismatch("matrix product: sizes differ");
  RationalMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return n_ == rhs.n_ && a_ == rhs.a_;
}

bool RationalMatrix::operator<(const RationalMatrix& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    const int c = cmp(a_[i], rhs.a_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_orthogonal() const {
  return (*this) * transpose() == identity(n_);
}

RationalVector row_times(const RationalVector& x, const RationalMatrix& m) {
  if (x.size() != m.size()) throw DimensionMismatch("row_times: vector/matrix sizes differ");
  RationalVector y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) y[j] += x[i] * m(i, j);
  return y;
}

}  // namespace dunkl
