#include "rootproj/projection.hpp"

#include <algorithm>

namespace rootproj {

std::size_t NormCensus::total() const {
  std::size_t n = 0;
  for (const auto& [norm, count] : entries) n += count;
  return n;
}

std::size_t NormCensus::count(const Rational& norm) const {
  const auto it = entries.find(norm);
  return it == entries.end() ? 0 : it->second;
}

NormCensus census_of(const std::vector<Vector>& vectors) {
  NormCensus c;
  for (const auto& v : vectors) ++c.entries[norm2(v)];
  return c;
}

Projector::Projector(const RealizedRootSystem& sys, const ThetaSubset& theta) {
  for (int i : theta.indices()) theta_roots_.push_back(sys.simple_root(i));
  if (!theta_roots_.empty()) inverse_ = invert(cartan_subtype(sys, theta));
}

Vector Projector::operator()(const Vector& t) const {
  if (theta_roots_.empty()) return t;
  if (t.dim() != theta_roots_.front().dim()) throw DimensionMismatch("project: vector has wrong dimension");
  Vector v(theta_roots_.size());
  for (std::size_t i = 0; i < theta_roots_.size(); ++i) v[i] = pairing(t, theta_roots_[i]);
  const Vector coeff = mat_vec(v, inverse_);
  Vector out = t;
  for (std::size_t i = 0; i < theta_roots_.size(); ++i) {
    if (!coeff[i].is_zero()) out -= coeff[i] * theta_roots_[i];
  }
  return out;
}

Vector project(const Vector& t, const RealizedRootSystem& sys, const ThetaSubset& theta) {
  if (t.dim() != sys.ambient_dim) throw DimensionMismatch("project: vector has wrong dimension");
  return Projector(sys, theta)(t);
}

ProjectionResult project_all(const RealizedRootSystem& sys, const ThetaSubset& theta, bool allow_improper) {
  if (!allow_improper && !theta.proper())
    throw std::invalid_argument("project_all: theta must be neither empty nor all of the simple roots");
  if (theta.ambient_rank() != sys.rank()) throw std::invalid_argument("project_all: theta built for another rank");

  const Projector proj(sys, theta);
  ProjectionResult pr{sys.label, theta, {}, {}, {}, sys.rank() - static_cast<int>(theta.size()), {}, false};
  for (const auto& r : sys.roots) {
    Vector p = proj(r);
    if (!p.is_zero()) pr.sigma_theta.push_back(std::move(p));
  }
  std::sort(pr.sigma_theta.begin(), pr.sigma_theta.end());
  pr.sigma_theta.erase(std::unique(pr.sigma_theta.begin(), pr.sigma_theta.end()), pr.sigma_theta.end());

  for (int i = 1; i <= sys.rank(); ++i) {
    if (theta.contains(i)) continue;
    pr.delta_theta.push_back(proj(sys.simple_root(i)));
    pr.delta_indices.push_back(i);
  }
  for (std::size_t i = 0; i < pr.delta_theta.size(); ++i)
    for (std::size_t j = i + 1; j < pr.delta_theta.size(); ++j)
      if (pr.delta_theta[i] == pr.delta_theta[j]) pr.delta_collision = true;

  pr.census = census_of(pr.sigma_theta);
  return pr;
}

std::vector<Rational> expansion_over_delta_theta(const Vector& v, const ProjectionResult& pr) {
  const std::size_t d = pr.delta_theta.size();
  if (d == 0) throw ConsistencyError("expansion_over_delta_theta: empty delta_theta");
  // Solve G c = (<v, delta_j>)_j with G the Gram matrix of delta_theta.
  RationalMatrix gram(d, d);
  Vector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    rhs[i] = dot(v, pr.delta_theta[i]);
    for (std::size_t j = 0; j < d; ++j) gram(i, j) = dot(pr.delta_theta[i], pr.delta_theta[j]);
  }
  RationalMatrix inv;
  try {
    inv = invert(gram);
  } catch (const NotInvertible&) {
    throw ConsistencyError("expansion_over_delta_theta: delta_theta is linearly dependent");
  }
  const Vector c = mat_vec(rhs, inv);  // Gram is symmetric

  Vector back(v.dim());
  for (std::size_t i = 0; i < d; ++i) back += c[i] * pr.delta_theta[i];
  if (back != v) throw ConsistencyError("expansion_over_delta_theta: " + v.str() + " is outside span(delta_theta)");

  bool pos = false;
  bool neg = false;
  for (const auto& x : c.coords()) {
    if (!x.is_integer()) throw ConsistencyError("expansion_over_delta_theta: non-integral coefficient " + x.str());
    pos |= x.sign() > 0;
    neg |= x.sign() < 0;
  }
  if (pos && neg) throw ConsistencyError("expansion_over_delta_theta: mixed-sign expansion of " + v.str());
  return c.coords();
}

}  // namespace rootproj
