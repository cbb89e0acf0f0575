#include "dunkl/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dunkl/errors.hpp"

namespace dunkl {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::unit(std::size_t axis) {
  Monomial m;
  m.set(axis, 1);
  return m;
}

void Monomial::set(std::size_t axis, unsigned exponent) {
  if (axis >= kMaxDim) throw IndexOutOfRange("monomial axis out of range");
  if (exponent > 255) throw Error("monomial exponent exceeds 255");
  e_[axis] = static_cast<std::uint8_t>(exponent);
}

unsigned Monomial::degree() const {
  unsigned s = 0;
  for (auto e : e_) s += e;
  return s;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxDim; ++i) {
    const unsigned e = unsigned{e_[i]} + unsigned{rhs.e_[i]};
    if (e > 255) throw Error("monomial exponent exceeds 255");
    out.e_[i] = static_cast<std::uint8_t>(e);
  }
  return out;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw DimensionMismatch("polynomial dimension must be in 1..8");
}

MultiPoly MultiPoly::constant(std::size_t dim, const Rational& c) {
  MultiPoly p(dim);
  p.add_term(Monomial{}, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw IndexOutOfRange("variable axis out of range");
  return monomial(dim, Monomial::unit(axis));
}

MultiPoly MultiPoly::monomial(std::size_t dim, const Monomial& m, const Rational& c) {
  for (std::size_t i = dim; i < kMaxDim; ++i) {
    if (m[i] != 0) throw DimensionMismatch("monomial uses an axis beyond the dimension");
  }
  MultiPoly p(dim);
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::linear_form(const RationalVector& v) {
  MultiPoly p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(Monomial::unit(i), v[i]);
  return p;
}

MultiPoly MultiPoly::norm_squared(std::size_t dim) {
  MultiPoly p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Monomial m;
    m.set(i, 2);
    p.add_term(m, 1);
  }
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (dim_ != rhs.dim_) throw DimensionMismatch("polynomial addition: dimensions differ");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  if (dim_ != rhs.dim_) throw DimensionMismatch("polynomial subtraction: dimensions differ");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("polynomial product: dimensions differ");
  MultiPoly out(a.dim_);
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(ma * mb, prod);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
  return dim_ == rhs.dim_ && terms_ == rhs.terms_;
}

MultiPoly scale(const MultiPoly& f, const Rational& s) { return f * s; }

MultiPoly pow(const MultiPoly& f, unsigned n) {
  MultiPoly result = MultiPoly::constant(f.dim(), 1);
  MultiPoly base = f;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

// ------------------------------------------------------------- operations

MultiPoly differentiate(const MultiPoly& f, std::size_t axis) {
  if (axis >= f.dim()) throw IndexOutOfRange("differentiate: axis out of range");
  MultiPoly out(f.dim());
  for (const auto& [m, c] : f.terms()) {
    const unsigned e = m[axis];
    if (e == 0) continue;
    Monomial n = m;
    n.set(axis, e - 1);
    out.add_term(n, c * e);
  }
  return out;
}

namespace {

// Column k of a monomial matrix has a single nonzero entry at row src[k].
bool monomial_matrix_columns(const RationalMatrix& m, std::vector<std::size_t>& src) {
  const std::size_t n = m.size();
  src.assign(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(j, k) == 0) continue;
      if (src[k] != n || used[j]) return false;
      src[k] = j;
    }
    if (src[k] == n) return false;
    used[src[k]] = true;
  }
  return true;
}

}  // namespace

MultiPoly compose_linear(const MultiPoly& f, const RationalMatrix& m) {
  const std::size_t d = f.dim();
  if (m.size() != d) throw DimensionMismatch("compose_linear: matrix size differs from dimension");
  MultiPoly out(d);

  std::vector<std::size_t> src;
  if (monomial_matrix_columns(m, src)) {
    for (const auto& [mono, c] : f.terms()) {
      Monomial image;
      Rational coef = c;
      for (std::size_t k = 0; k < d; ++k) {
        const unsigned e = mono[k];
        if (e == 0) continue;
        image.set(src[k], image[src[k]] + e);
        Rational factor;
        mpz_pow_ui(factor.get_num_mpz_t(), m(src[k], k).get_num_mpz_t(), e);
        mpz_pow_ui(factor.get_den_mpz_t(), m(src[k], k).get_den_mpz_t(), e);
        factor.canonicalize();
        coef *= factor;
      }
      out.add_term(image, coef);
    }
    return out;
  }

  // (xM)_k = sum_j x_j M_{jk}
  std::vector<MultiPoly> forms;
  forms.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector col(d);
    for (std::size_t j = 0; j < d; ++j) col[j] = m(j, k);
    forms.push_back(MultiPoly::linear_form(col));
  }
  std::vector<std::vector<MultiPoly>> powers(d);
  auto power = [&](std::size_t k, unsigned e) -> const MultiPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(MultiPoly::constant(d, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * forms[k]);
    return cache[e];
  };
  for (const auto& [mono, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(d, c);
    for (std::size_t k = 0; k < d; ++k) {
      if (mono[k] != 0) term *= power(k, mono[k]);
    }
    out += term;
  }
  return out;
}

MultiPoly divide_by_linear_form(const MultiPoly& f, const RationalVector& v) {
  const std::size_t d = f.dim();
  if (v.size() != d) throw DimensionMismatch("divide_by_linear_form: vector size differs");
  std::size_t pivot = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot == d) throw InvalidRoot("divide_by_linear_form: zero vector");

  // Write f = sum_k C_k(x') x_p^k and divide by v_p x_p + r(x').
  unsigned top = 0;
  for (const auto& [m, c] : f.terms()) top = std::max(top, m[pivot]);
  std::vector<MultiPoly> coeffs(top + 1, MultiPoly(d));
  for (const auto& [m, c] : f.terms()) {
    Monomial stripped = m;
    stripped.set(pivot, 0);
    coeffs[m[pivot]].add_term(stripped, c);
  }
  RationalVector rest = v;
  rest[pivot] = 0;
  const MultiPoly r = MultiPoly::linear_form(rest);
  const Rational inv_vp = 1 / v[pivot];

  MultiPoly quotient(d);
  for (unsigned k = top; k >= 1; --k) {
    if (coeffs[k].is_zero()) continue;
    MultiPoly q = coeffs[k] * inv_vp;
    if (!r.is_zero()) coeffs[k - 1] -= q * r;
    for (const auto& [m, c] : q.terms()) {
      Monomial shifted = m;
      shifted.set(pivot, k - 1);
      quotient.add_term(shifted, c);
    }
  }
  if (!coeffs[0].is_zero()) throw NotDivisible("polynomial is not divisible by the linear form");
  return quotient;
}

std::vector<std::pair<unsigned, MultiPoly>> homogeneous_decompose(const MultiPoly& f) {
  std::map<unsigned, MultiPoly> parts;
  for (const auto& [m, c] : f.terms()) {
    auto it = parts.try_emplace(m.degree(), f.dim()).first;
    it->second.add_term(m, c);
  }
  return {std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end())};
}

MultiPoly extend_dimension(const MultiPoly& f, std::size_t new_dim) {
  if (new_dim < f.dim()) throw DimensionMismatch("extend_dimension: target dimension is smaller");
  MultiPoly out(new_dim);
  for (const auto& [m, c] : f.terms()) out.add_term(m, c);
  return out;
}

MultiPoly substitute_squares(const MultiPoly& f) {
  MultiPoly out(f.dim());
  for (const auto& [m, c] : f.terms()) {
    Monomial sq;
    for (std::size_t i = 0; i < f.dim(); ++i) sq.set(i, 2 * m[i]);
    out.add_term(sq, c);
  }
  return out;
}

Rational evaluate(const MultiPoly& f, const RationalVector& x) {
  if (x.size() != f.dim()) throw DimensionMismatch("evaluate: point dimension differs");
  Rational sum = 0;
  Rational term;
  for (const auto& [m, c] : f.terms()) {
    term = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned e = 0; e < m[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

double evaluate(const MultiPoly& f, std::span<const double> x) {
  if (x.size() != f.dim()) throw DimensionMismatch("evaluate: point dimension differs");
  double sum = 0.0;
  for (const auto& [m, c] : f.terms()) {
    double term = c.get_d();
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned e = 0; e < m[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

// ------------------------------------------------------------------- text

namespace {

// Descending graded-lex order with x1 most significant.
bool graded_lex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  for (std::size_t i = 0; i < kMaxDim; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t dim) : dim_(dim) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  MultiPoly parse() {
    if (s_.empty()) throw ParseError("empty polynomial text");
    MultiPoly out(dim_);
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign = 1;
      if (!first) {
        if (s_[pos_] == '+') {
          ++pos_;
        } else if (s_[pos_] == '-') {
          sign = -1;
          ++pos_;
        } else {
          fail("expected '+' or '-'");
        }
      }
      first = false;
      auto [m, c] = term();
      out.add_term(m, sign * c);
    }
    return out;
  }

 private:
  std::pair<Monomial, Rational> term() {
    Rational coef = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') coef = -1;
      ++pos_;
    }
    bool have_coef = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("expected denominator");
        digits();
      }
      coef *= parse_rational(s_.substr(start, pos_ - start));
      have_coef = true;
    }
    Monomial m;
    bool have_factor = false;
    while (pos_ < s_.size()) {
      if (s_[pos_] == '*') {
        if (!have_coef && !have_factor) fail("unexpected '*'");
        ++pos_;
        if (pos_ >= s_.size() || s_[pos_] != 'x') fail("expected variable after '*'");
      }
      if (s_[pos_] != 'x') break;
      ++pos_;
      const std::size_t start = pos_;
      digits();
      if (start == pos_) fail("expected variable index");
      const unsigned long idx = std::stoul(s_.substr(start, pos_ - start));
      if (idx < 1 || idx > dim_) fail("variable index out of range");
      unsigned long e = 1;
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        const std::size_t es = pos_;
        digits();
        if (es == pos_) fail("expected exponent");
        e = std::stoul(s_.substr(es, pos_ - es));
      }
      m.set(idx - 1, m[idx - 1] + static_cast<unsigned>(e));
      have_factor = true;
    }
    if (!have_coef && !have_factor) fail("expected a term");
    return {m, coef};
  }

  void digits() {
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what +
                     " in '" + s_ + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::size_t dim_;
};

}  // namespace

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<const MultiPoly::TermMap::value_type*> terms;
  for (const auto& t : f.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [](auto* a, auto* b) { return graded_lex_greater(a->first, b->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(t->second);
    if (t->first == Monomial{}) continue;
    os << " *";
    for (std::size_t i = 0; i < f.dim(); ++i) {
      const unsigned e = t->first[i];
      if (e == 0) continue;
      os << " x" << (i + 1);
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

MultiPoly parse_poly(std::string_view text, std::size_t dim) {
  return PolyParser(text, dim).parse();
}

// ---------------------------------------------------------- SphereFunction

SphereFunction::SphereFunction(std::size_t dim) : rep_(dim) {
  if (dim < 2) throw DimensionMismatch("sphere functions need dimension >= 2");
}

SphereFunction& SphereFunction::operator+=(const SphereFunction& rhs) {
  rep_ += rhs.rep_;
  return *this;
}

SphereFunction& SphereFunction::operator-=(const SphereFunction& rhs) {
  rep_ -= rhs.rep_;
  return *this;
}

SphereFunction& SphereFunction::operator*=(const Rational& s) {
  rep_ *= s;
  return *this;
}

SphereFunction operator*(const SphereFunction& a, const SphereFunction& b) {
  return reduce_mod_sphere(a.rep() * b.rep());
}

SphereFunction reduce_mod_sphere(const MultiPoly& f) {
  const std::size_t d = f.dim();
  if (d < 2) throw DimensionMismatch("reduce_mod_sphere: dimension must be at least 2");
  const std::size_t last = d - 1;

  // x_last^(2m + r) = x_last^r (1 - s)^m with s = x_0^2 + ... + x_{last-1}^2.
  std::vector<MultiPoly> one_minus_s_pow;
  MultiPoly one_minus_s = MultiPoly::constant(d, 1);
  for (std::size_t i = 0; i < last; ++i) {
    Monomial m;
    m.set(i, 2);
    one_minus_s.add_term(m, -1);
  }
  auto power = [&](unsigned m) -> const MultiPoly& {
    if (one_minus_s_pow.empty()) one_minus_s_pow.push_back(MultiPoly::constant(d, 1));
    while (one_minus_s_pow.size() <= m) one_minus_s_pow.push_back(one_minus_s_pow.back() * one_minus_s);
    return one_minus_s_pow[m];
  };

  SphereFunction out(d);
  Rational prod;
  for (const auto& [mono, c] : f.terms()) {
    const unsigned e = mono[last];
    if (e < 2) {
      out.rep_.add_term(mono, c);
      continue;
    }
    Monomial base = mono;
    base.set(last, e % 2);
    for (const auto& [pm, pc] : power(e / 2).terms()) {
      prod = c * pc;
      out.rep_.add_term(base * pm, prod);
    }
  }
  return out;
}

}  // namespace dunkl
