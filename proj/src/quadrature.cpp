#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <thread>

#include "dunkl/errors.hpp"

namespace dunkl {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Sphere: return "sphere";
    case Shape::Ball: return "ball";
    case Shape::Simplex: return "simplex";
  }
  return "?";
}

WeightedDomain WeightedDomain::sphere(RootSystem rs) {
  if (rs.dim() < 2) throw DimensionMismatch("sphere domain needs d >= 2");
  return WeightedDomain(Shape::Sphere, std::move(rs), Rational(0));
}

WeightedDomain WeightedDomain::ball(RootSystem rs, Rational mu) {
  if (mu < 0) throw InvalidRootSystem("mu must be nonnegative");
  if (rs.dim() + 1 > kMaxDim) throw DimensionMismatch("ball dimension too large for the lift");
  return WeightedDomain(Shape::Ball, std::move(rs), std::move(mu));
}

WeightedDomain WeightedDomain::simplex(RootSystem rs, Rational mu) {
  if (mu < 0) throw InvalidRootSystem("mu must be nonnegative");
  if (rs.dim() + 1 > kMaxDim) throw DimensionMismatch("simplex dimension too large for the lift");
  std::vector<bool> axis(rs.dim(), false);
  for (const auto& r : rs.roots()) {
    const int a = RootSystem::axis_of(r.vector);
    if (a >= 0) axis[a] = true;
  }
  if (std::find(axis.begin(), axis.end(), false) != axis.end())
    throw InvalidRootSystem("simplex weights need every coordinate axis in the root system");
  return WeightedDomain(Shape::Simplex, std::move(rs), std::move(mu));
}

Rational WeightedDomain::lambda() const {
  const auto c = derived_constants(rs_);
  if (shape_ == Shape::Sphere) return c.lambda_kappa;
  Rational l = c.gamma_kappa + mu_ + Rational(static_cast<long>(dim()) - 1, 2);
  l.canonicalize();
  return l;
}

namespace {

Rational pochhammer(const Rational& a, unsigned n) {
  Rational p = 1;
  for (unsigned j = 0; j < n; ++j) p *= a + j;
  return p;
}

Rational gamma_plus_half_dim(const RationalVector& kappa) {
  Rational s = Rational(static_cast<long>(kappa.size()), 2);
  for (const auto& k : kappa) s += k;
  s.canonicalize();
  return s;
}

}  // namespace

Rational sphere_monomial_integral(const RationalVector& kappa_diag, const Monomial& alpha) {
  Rational num = 1;
  unsigned total = 0;
  for (std::size_t i = 0; i < kappa_diag.size(); ++i) {
    if (kappa_diag[i] < 0) throw InvalidRoot("negative multiplicity in moment formula");
    if (alpha[i] % 2 != 0) return 0;
    num *= pochhammer(kappa_diag[i] + Rational(1, 2), alpha[i] / 2);
    total += alpha[i] / 2;
  }
  for (std::size_t i = kappa_diag.size(); i < kMaxDim; ++i)
    if (alpha[i] != 0) throw DimensionMismatch("monomial uses axes beyond the dimension");
  return num / pochhammer(gamma_plus_half_dim(kappa_diag), total);
}

// ------------------------------------------------------------ SphereQuadrature

struct SphereQuadrature::Tables {
  mutable std::shared_mutex mutex;
  // even[i][b] = (k_i + 1/2)_b, half[i][b] = (k_i + 1)_b, den[b] = (s)_b, den_half[b] = (s + 1/2)_b.
  std::vector<std::vector<Rational>> even, half;
  std::vector<Rational> den, den_half;
  Rational s;
};

SphereQuadrature::SphereQuadrature(RationalVector kappa_diag, MultiPoly weight_poly)
    : kappa_(std::move(kappa_diag)), weight_(std::move(weight_poly)), tables_(std::make_unique<Tables>()) {
  if (weight_.dim() != kappa_.size()) throw DimensionMismatch("quadrature weight dimension differs");
  for (const auto& k : kappa_)
    if (k < 0) throw InvalidRoot("negative multiplicity in quadrature");
  tables_->s = gamma_plus_half_dim(kappa_);
  tables_->even.resize(kappa_.size());
  tables_->half.resize(kappa_.size());
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    tables_->even[i] = {Rational(1)};
    tables_->half[i] = {Rational(1)};
  }
  tables_->den = {Rational(1)};
  tables_->den_half = {Rational(1)};

  norm_ = 0;
  const auto& t = tables_for(static_cast<unsigned>(std::max(weight_.degree(), 0)));
  std::shared_lock lock(t.mutex);
  for (const auto& [m, c] : weight_.terms()) norm_ += c * raw_moment(m, t);
  if (norm_ <= 0) throw DegenerateInput("weight polynomial has nonpositive total mass");
}

SphereQuadrature::~SphereQuadrature() = default;
SphereQuadrature::SphereQuadrature(SphereQuadrature&&) noexcept = default;
SphereQuadrature& SphereQuadrature::operator=(SphereQuadrature&&) noexcept = default;

const SphereQuadrature::Tables& SphereQuadrature::tables_for(unsigned max_exponent) const {
  Tables& t = *tables_;
  const std::size_t need = max_exponent / 2 + 2;
  {
    std::shared_lock lock(t.mutex);
    if (t.den.size() >= need) return t;
  }
  std::unique_lock lock(t.mutex);
  const Rational half(1, 2);
  while (t.den.size() < need) {
    const unsigned b = static_cast<unsigned>(t.den.size());
    for (std::size_t i = 0; i < kappa_.size(); ++i) {
      t.even[i].push_back(t.even[i].back() * (kappa_[i] + half + (b - 1)));
      t.half[i].push_back(t.half[i].back() * (kappa_[i] + 1 + (b - 1)));
    }
    t.den.push_back(t.den.back() * (t.s + (b - 1)));
    t.den_half.push_back(t.den_half.back() * (t.s + half + (b - 1)));
  }
  return t;
}

Rational SphereQuadrature::raw_moment(const Monomial& a, const Tables& t) const {
  Rational num = 1;
  unsigned total = 0;
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    if (a[i] % 2 != 0) return 0;
    num *= t.even[i][a[i] / 2];
    total += a[i] / 2;
  }
  return num / t.den[total];
}

Rational SphereQuadrature::integrate(const MultiPoly& f) const {
  if (f.dim() != dim()) throw DimensionMismatch("integrate: dimension differs");
  if (f.is_zero()) return 0;
  const MultiPoly g = f * weight_;
  const auto& t = tables_for(static_cast<unsigned>(g.degree()));
  std::shared_lock lock(t.mutex);
  Rational s = 0;
  for (const auto& [m, c] : g.terms()) {
    const Rational mom = raw_moment(m, t);
    if (mom != 0) s += c * mom;
  }
  return s / norm_;
}

Rational SphereQuadrature::integrate_abs_axis(const MultiPoly& f, std::size_t axis) const {
  if (f.dim() != dim()) throw DimensionMismatch("integrate_abs_axis: dimension differs");
  if (axis >= dim()) throw IndexOutOfRange("integrate_abs_axis: axis out of range");
  if (f.is_zero()) return 0;
  const MultiPoly g = f * weight_;
  const auto& t = tables_for(static_cast<unsigned>(g.degree()) + 2);
  std::shared_lock lock(t.mutex);
  Rational s = 0;
  for (const auto& [m, c] : g.terms()) {
    Rational num = 1;
    unsigned total = 0;
    bool odd = false;
    for (std::size_t i = 0; i < dim() && !odd; ++i) {
      if (m[i] % 2 != 0) {
        odd = true;
        break;
      }
      num *= (i == axis ? t.half[i] : t.even[i])[m[i] / 2];
      total += m[i] / 2;
    }
    if (!odd) s += c * num / t.den_half[total];
  }
  return s / norm_;
}

long double SphereQuadrature::abs_axis_constant(std::size_t axis) const {
  if (axis >= dim()) throw IndexOutOfRange("abs_axis_constant: axis out of range");
  const long double k = kappa_[axis].get_d();
  const long double s = tables_->s.get_d();
  return std::exp(std::lgamma(k + 1.0L) + std::lgamma(s) - std::lgamma(k + 0.5L) - std::lgamma(s + 0.5L));
}

// ------------------------------------------------------------ DomainIntegrator

namespace {

SphereQuadrature make_quadrature(const WeightedDomain& dom) {
  const auto w = weight_h_squared(dom.root_system());
  RationalVector kappa;
  for (const auto& a : w.axis_exponents) kappa.push_back(a / 2);
  if (dom.shape() == Shape::Sphere) return SphereQuadrature(kappa, w.polynomial);
  kappa.push_back(dom.mu());
  return SphereQuadrature(kappa, extend_dimension(w.polynomial, dom.dim() + 1));
}

}  // namespace

DomainIntegrator::DomainIntegrator(const WeightedDomain& dom) : dom_(dom), quad_(make_quadrature(dom)) {}

MultiPoly DomainIntegrator::to_sphere(const MultiPoly& f) const {
  if (f.dim() != dom_.dim()) throw DimensionMismatch("integrand dimension differs from the domain");
  switch (dom_.shape()) {
    case Shape::Sphere: return f;
    case Shape::Ball: return extend_dimension(f, dom_.dim() + 1);
    case Shape::Simplex: return extend_dimension(substitute_squares(f), dom_.dim() + 1);
  }
  return f;
}

Rational DomainIntegrator::integrate(const MultiPoly& f) const { return quad_.integrate(to_sphere(f)); }

Rational DomainIntegrator::integrate_abs_rational(const MultiPoly& f, std::size_t axis) const {
  if (dom_.shape() == Shape::Sphere) return quad_.integrate_abs_axis(f, axis);
  return quad_.integrate_abs_axis(extend_dimension(f, dom_.dim() + 1), axis);
}

long double DomainIntegrator::abs_constant(std::size_t axis) const { return quad_.abs_axis_constant(axis); }

long double DomainIntegrator::integrate_one_minus_sqrt(const MultiPoly& f, std::size_t axis) const {
  if (dom_.shape() != Shape::Simplex) throw DimensionMismatch("(1 - sqrt x_i) localization is simplex-only");
  if (axis >= dom_.dim()) throw IndexOutOfRange("localization axis out of range");
  const MultiPoly lifted = to_sphere(f);
  const Rational plain = quad_.integrate(lifted);
  const Rational half = quad_.integrate_abs_axis(lifted, axis);
  return static_cast<long double>(plain.get_d()) - quad_.abs_axis_constant(axis) * static_cast<long double>(half.get_d());
}

Rational integrate_sphere(const WeightedDomain& dom, const MultiPoly& f) {
  if (dom.shape() != Shape::Sphere) throw DimensionMismatch("integrate_sphere needs a sphere domain");
  return DomainIntegrator(dom).integrate(f);
}

Rational integrate_ball(const WeightedDomain& dom, const MultiPoly& f) {
  if (dom.shape() != Shape::Ball) throw DimensionMismatch("integrate_ball needs a ball domain");
  return DomainIntegrator(dom).integrate(f);
}

Rational integrate_simplex(const WeightedDomain& dom, const MultiPoly& f) {
  if (dom.shape() != Shape::Simplex) throw DimensionMismatch("integrate_simplex needs a simplex domain");
  return DomainIntegrator(dom).integrate(f);
}

// ------------------------------------------------------------ Monte Carlo

namespace {

constexpr std::uint64_t kBlock = 8192;

struct BlockSums {
  double x = 0, y = 0, xx = 0, xy = 0, yy = 0;
};

BlockSums run_block(const WeightedDomain& dom, const PointFunction& f, std::uint64_t seed, std::uint64_t block,
                    std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  const std::size_t d = dom.dim();
  const std::size_t big = dom.shape() == Shape::Sphere ? d : d + 1;
  const double two_mu = 2.0 * dom.mu().get_d();
  std::vector<double> y(big), point(d);
  BlockSums s;
  for (std::uint64_t k = 0; k < count; ++k) {
    double n2 = 0;
    for (auto& c : y) {
      c = gauss(rng);
      n2 += c * c;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : y) c *= inv;
    for (std::size_t i = 0; i < d; ++i) point[i] = dom.shape() == Shape::Simplex ? y[i] * y[i] : y[i];
    double w = weight_h_squared_value(dom.root_system(), std::span<const double>(y.data(), d));
    if (dom.shape() != Shape::Sphere && two_mu != 0) w *= std::pow(std::fabs(y[d]), two_mu);
    const double fy = f(point) * w;
    if (!std::isfinite(w) || !std::isfinite(fy)) throw DegenerateInput("non-finite Monte Carlo sample");
    s.x += w;
    s.y += fy;
    s.xx += w * w;
    s.xy += w * fy;
    s.yy += fy * fy;
  }
  return s;
}

}  // namespace

McEstimate mc_integrate(const WeightedDomain& dom, const PointFunction& f, std::uint64_t n, std::uint64_t seed,
                        unsigned threads) {
  if (n < 2) throw DegenerateInput("Monte Carlo needs at least two samples");
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<BlockSums> sums(blocks);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::uint64_t b = t; b < blocks; b += threads) {
          const std::uint64_t count = std::min(kBlock, n - b * kBlock);
          sums[b] = run_block(dom, f, seed, b, count);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  BlockSums tot;
  for (const auto& s : sums) {
    tot.x += s.x;
    tot.y += s.y;
    tot.xx += s.xx;
    tot.xy += s.xy;
    tot.yy += s.yy;
  }
  if (tot.x <= 0) throw DegenerateInput("Monte Carlo weight sum vanished");
  McEstimate est;
  est.n_samples = n;
  est.seed = seed;
  est.mean = tot.y / tot.x;
  // Delta method for a ratio of means.
  const double nd = static_cast<double>(n);
  const double r = est.mean;
  const double resid = std::max(0.0, tot.yy - 2 * r * tot.xy + r * r * tot.xx);
  const double xbar = tot.x / nd;
  est.std_error = std::sqrt(resid / (nd * (nd - 1))) / xbar;
  return est;
}

McEstimate mc_integrate(const WeightedDomain& dom, const MultiPoly& f, std::uint64_t n, std::uint64_t seed,
                        unsigned threads) {
  if (f.dim() != dom.dim()) throw DimensionMismatch("integrand dimension differs from the domain");
  return mc_integrate(
      dom, [&f](std::span<const double> x) { return evaluate(f, x); }, n, seed, threads);
}

}  // namespace dunkl
