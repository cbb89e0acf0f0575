#include "dunkl/groups.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "dunkl/errors.hpp"

namespace dunkl {

namespace {

bool is_zero_vector(const RationalVector& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

// Representative of the line through v: scaled so the first nonzero entry is 1.
RationalVector direction_key(const RationalVector& v) {
  RationalVector k = v;
  Rational lead;
  for (const auto& c : v) {
    if (c != 0) {
      lead = c;
      break;
    }
  }
  for (auto& c : k) c /= lead;
  return k;
}

}  // namespace

RootSystem::RootSystem(std::size_t dim, std::vector<Root> roots, RootSystemKind kind)
    : dim_(dim), roots_(std::move(roots)), kind_(kind) {
  if (dim == 0 || dim > kMaxDim) throw DimensionMismatch("root system dimension out of range");
  std::set<RationalVector> lines;
  for (const auto& r : roots_) {
    if (r.vector.size() != dim) throw DimensionMismatch("root has wrong dimension");
    if (is_zero_vector(r.vector)) throw InvalidRoot("zero root vector");
    if (r.multiplicity < 0) throw InvalidRoot("negative multiplicity");
    if (!lines.insert(direction_key(r.vector)).second)
      throw InvalidRootSystem("two positive roots are parallel");
  }
  if (kind_ == RootSystemKind::Z2d) {
    if (roots_.size() != dim) throw InvalidRootSystem("Z2d needs exactly one root per axis");
    for (const auto& r : roots_)
      if (axis_of(r.vector) < 0) throw InvalidRootSystem("Z2d roots must be coordinate axes");
  } else {
    for (const auto& r : roots_) {
      if (axis_of(r.vector) < 0 && !is_integer(r.multiplicity))
        throw TierError("non-axis roots need integer multiplicity");
    }
  }
  validate_orbits(*this);
}

RootSystem RootSystem::z2d(const RationalVector& kappa) {
  std::vector<Root> roots;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    RationalVector e(kappa.size());
    e[i] = 1;
    roots.push_back({e, kappa[i]});
  }
  return RootSystem(kappa.size(), std::move(roots), RootSystemKind::Z2d);
}

RootSystem RootSystem::type_a(std::size_t dim, const Rational& kappa) {
  std::vector<Root> roots;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      RationalVector v(dim);
      v[i] = 1;
      v[j] = -1;
      roots.push_back({v, kappa});
    }
  }
  return RootSystem(dim, std::move(roots), RootSystemKind::GeneralIntegerKappa);
}

RootSystem RootSystem::type_b(std::size_t dim, const Rational& kappa0, const Rational& kappa1) {
  std::vector<Root> roots;
  for (std::size_t i = 0; i < dim; ++i) {
    RationalVector e(dim);
    e[i] = 1;
    roots.push_back({e, kappa0});
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      RationalVector m(dim), p(dim);
      m[i] = 1;
      m[j] = -1;
      p[i] = 1;
      p[j] = 1;
      roots.push_back({m, kappa1});
      roots.push_back({p, kappa1});
    }
  }
  return RootSystem(dim, std::move(roots), RootSystemKind::GeneralIntegerKappa);
}

RootSystem RootSystem::trivial(std::size_t dim) {
  return RootSystem(dim, {}, RootSystemKind::GeneralIntegerKappa);
}

int RootSystem::axis_of(const RationalVector& v) {
  int axis = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (axis >= 0) return -1;
    axis = static_cast<int>(i);
  }
  return axis;
}

RationalVector reflect(const RationalVector& x, const RationalVector& v) {
  if (x.size() != v.size()) throw DimensionMismatch("reflect: sizes differ");
  const Rational nv = dot(v, v);
  if (nv == 0) throw InvalidRoot("reflect: zero root vector");
  const Rational s = 2 * dot(x, v) / nv;
  RationalVector y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= s * v[i];
  return y;
}

RationalVector reflect(const RationalVector& x, const Root& v) { return reflect(x, v.vector); }

RationalMatrix reflection_matrix(const RationalVector& v) {
  const Rational nv = dot(v, v);
  if (nv == 0) throw InvalidRoot("reflection_matrix: zero root vector");
  const std::size_t d = v.size();
  RationalMatrix m = RationalMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) -= 2 * v[i] * v[j] / nv;
  return m;
}

std::vector<RationalMatrix> generate_group(const RootSystem& rs, std::size_t cap) {
  std::vector<RationalMatrix> gens;
  for (const auto& r : rs.roots()) gens.push_back(reflection_matrix(r.vector));

  std::vector<RationalMatrix> out{RationalMatrix::identity(rs.dim())};
  std::set<RationalMatrix> seen{out.front()};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      RationalMatrix next = out[k] * g;
      if (seen.contains(next)) continue;
      if (out.size() >= cap) throw GroupTooLarge("group closure exceeds " + std::to_string(cap) + " elements");
      seen.insert(next);
      out.push_back(std::move(next));
      queue.push_back(out.size() - 1);
    }
  }
  return out;
}

void validate_orbits(const RootSystem& rs) {
  std::map<RationalVector, std::size_t> index;
  for (std::size_t i = 0; i < rs.roots().size(); ++i) index[direction_key(rs.roots()[i].vector)] = i;

  // The reflections generate the group, so checking their action on every
  // root covers both closure and conjugacy.
  for (const auto& u : rs.roots()) {
    for (const auto& v : rs.roots()) {
      const auto image = reflect(v.vector, u.vector);
      const auto it = index.find(direction_key(image));
      if (it == index.end()) throw InvalidRootSystem("root set is not closed under its reflections");
      if (rs.roots()[it->second].multiplicity != v.multiplicity)
        throw InvalidRootSystem("conjugate roots carry different multiplicities");
    }
  }
}

DerivedConstants derived_constants(const RootSystem& rs) {
  DerivedConstants c;
  c.gamma_kappa = 0;
  for (const auto& r : rs.roots()) c.gamma_kappa += r.multiplicity;
  c.lambda_kappa = c.gamma_kappa + Rational(static_cast<long>(rs.dim()) - 2, 2);
  c.lambda_kappa.canonicalize();
  return c;
}

WeightSquared weight_h_squared(const RootSystem& rs) {
  WeightSquared w{RationalVector(rs.dim()), MultiPoly::constant(rs.dim(), 1)};
  for (const auto& r : rs.roots()) {
    const int axis = RootSystem::axis_of(r.vector);
    if (axis >= 0) {
      // |<x, c e_i>|^{2k} = |c|^{2k} |x_i|^{2k}; the constant cancels under normalization.
      w.axis_exponents[axis] += 2 * r.multiplicity;
      continue;
    }
    if (!is_integer(r.multiplicity)) throw TierError("h_kappa^2 is not a polynomial for non-integer kappa");
    const unsigned k = static_cast<unsigned>(r.multiplicity.get_num().get_ui());
    if (k > 0) w.polynomial *= pow(MultiPoly::linear_form(r.vector), 2 * k);
  }
  return w;
}

double weight_h_squared_value(const RootSystem& rs, std::span<const double> x) {
  if (x.size() != rs.dim()) throw DimensionMismatch("weight: point has wrong dimension");
  double w = 1.0;
  for (const auto& r : rs.roots()) {
    if (r.multiplicity == 0) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += r.vector[i].get_d() * x[i];
    w *= std::pow(std::fabs(s), 2.0 * r.multiplicity.get_d());
  }
  return w;
}

}  // namespace dunkl
