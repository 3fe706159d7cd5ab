#pragma once

// Orthogonal projection onto the complement of span(Theta), and the
// projected root set with its squared-norm census.

#include "rootproj/linalg.hpp"
#include "rootproj/root_catalog.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace rootproj {

/// Thrown when an internal identity that must hold for genuine root data fails.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Squared norm -> number of distinct projected vectors with that norm.
struct NormCensus {
  std::map<Rational, std::size_t> entries;

  std::size_t total() const;
  std::size_t count(const Rational& norm) const;
  friend bool operator==(const NormCensus&, const NormCensus&) = default;
};

NormCensus census_of(const std::vector<Vector>& vectors);

/// Precomputes the inverse Cartan sub-matrix for one Theta so that many
/// vectors can be projected cheaply.
class Projector {
 public:
  Projector(const RealizedRootSystem& sys, const ThetaSubset& theta);

  /// t minus the combination of Theta's roots that makes it orthogonal to them:
  /// coefficients = v . C_Theta^{-1} with v_i = 2<t, a_i>/<a_i, a_i>.
  Vector operator()(const Vector& t) const;

 private:
  std::vector<Vector> theta_roots_;
  RationalMatrix inverse_;
};

Vector project(const Vector& t, const RealizedRootSystem& sys, const ThetaSubset& theta);

struct ProjectionResult {
  TypeLabel sigma;
  ThetaSubset theta;
  std::vector<Vector> sigma_theta;  // distinct nonzero projections, sorted
  std::vector<Vector> delta_theta;  // projections of simple roots outside Theta, index order
  std::vector<int> delta_indices;   // the simple-root index each delta_theta entry came from
  int d = 0;
  NormCensus census;
  bool delta_collision = false;     // two delta_theta entries coincide
};

/// Throws std::invalid_argument for an improper Theta unless allow_improper.
ProjectionResult project_all(const RealizedRootSystem& sys, const ThetaSubset& theta, bool allow_improper = false);

/// Coefficients of v over delta_theta. Throws ConsistencyError if v is not an
/// integral one-sign combination of them.
std::vector<Rational> expansion_over_delta_theta(const Vector& v, const ProjectionResult& pr);

}  // namespace rootproj
