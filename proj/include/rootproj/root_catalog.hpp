#pragma once

// Concrete ambient realizations of the irreducible root systems with
// Bourbaki-numbered simple roots.

#include "rootproj/linalg.hpp"
#include "rootproj/type_label.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rootproj {

struct RealizedRootSystem {
  TypeLabel label;
  std::size_t ambient_dim;
  std::vector<Vector> roots;         // sorted lexicographically
  std::vector<Vector> simple_roots;  // index 0 holds alpha_1
  RationalMatrix cartan;             // (i, j) = 2<a_i, a_j>/<a_j, a_j>

  int rank() const { return label.rank(); }
  /// 1-based access matching Bourbaki numbering.
  const Vector& simple_root(int index) const;
};

/// Builds A_n (ambient n+1), B_n, C_n, D_n, BC_n (ambient n), E6/E7/E8
/// (inside the 8-dimensional E8 space), F4 (ambient 4) and G2 (ambient 3).
RealizedRootSystem build(const TypeLabel& label);

/// Cartan matrix computed from the simple roots of a realization.
RationalMatrix cartan_from_simple_roots(const std::vector<Vector>& simple_roots);

/// Simple roots of E8 in the alternative basis with alpha_1 a half-sum vector
/// and alpha_i = e_i - e_{i-1} with e_8 = -e_0; coordinates e_1..e_7 map to
/// the first seven ambient axes and e_0 to the eighth.
std::vector<Vector> labesse_e8_simple_roots();

/// Closure of `generators` under their own reflections. Throws
/// std::length_error if more than `limit` vectors are produced.
std::vector<Vector> weyl_orbit(const std::vector<Vector>& generators, std::size_t limit);

/// Coefficients of v over the simple roots (solved over Q). Throws
/// std::domain_error if v is not in their span.
std::vector<Rational> simple_root_coordinates(const RealizedRootSystem& sys, const Vector& v);

/// A subset of the simple roots, by strictly increasing 1-based indices.
class ThetaSubset {
 public:
  /// Sorts and validates. Throws std::invalid_argument on duplicates, indices
  /// outside [1, rank], or (unless allow_improper) an empty or full subset.
  ThetaSubset(std::vector<int> indices, int rank, bool allow_improper = false);

  /// "2,5,7" -> {2,5,7}; empty text gives the empty subset.
  static ThetaSubset parse(std::string_view csv, int rank, bool allow_improper = false);

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(int index) const;
  bool proper() const { return !indices_.empty() && static_cast<int>(indices_.size()) < rank_; }
  int ambient_rank() const { return rank_; }
  std::string csv() const;

  friend bool operator==(const ThetaSubset&, const ThetaSubset&) = default;

 private:
  std::vector<int> indices_;
  int rank_;
};

/// |Theta| x |Theta| principal sub-matrix of sys.cartan in Theta's order.
RationalMatrix cartan_subtype(const RealizedRootSystem& sys, const ThetaSubset& theta);

/// All proper subsets ordered by size, then lexicographically.
std::vector<ThetaSubset> proper_subsets(int rank);

}  // namespace rootproj
