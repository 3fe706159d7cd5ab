#pragma once

// Cartan-Killing type labels, irreducible and composite.

#include "rootproj/linalg.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rootproj {

enum class Family { A, B, C, D, E, F, G, BC };

std::string_view family_name(Family f);
bool is_exceptional(Family f);

/// Irreducible type. E only with rank 6..8, F only 4, G only 2, D rank >= 2,
/// everything else rank >= 1. The non-reduced BC_n is a legal label.
class TypeLabel {
 public:
  /// Throws std::invalid_argument on an invalid (family, rank) pair.
  TypeLabel(Family family, int rank);

  /// "E8", "bc3", "A5" (case-insensitive). Throws std::invalid_argument.
  static TypeLabel parse(std::string_view text);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  bool exceptional() const { return is_exceptional(family_); }
  bool reduced() const { return family_ != Family::BC; }

  std::string str() const;

  friend bool operator==(const TypeLabel&, const TypeLabel&) = default;
  friend auto operator<=>(const TypeLabel&, const TypeLabel&) = default;

 private:
  Family family_;
  int rank_;
};

std::ostream& operator<<(std::ostream& os, const TypeLabel& t);

/// Number of roots of the (possibly non-reduced) irreducible system.
std::size_t root_count(const TypeLabel& t);

/// Small-rank coincidences: B1 = C1 = A1, C2 = B2, D3 = A3, D2 = A1xA1 (returned
/// unchanged since it is reducible). Used to compare types up to isomorphism.
TypeLabel isomorphism_class(const TypeLabel& t);

/// Squared-length profile of the roots, relative to the shortest class:
/// pairs (factor, count), e.g. G2 -> {(1,6), (3,6)}.
std::vector<std::pair<Rational, std::size_t>> length_profile(const TypeLabel& t);

/// Standard Cartan matrix with entry (i, j) = 2<a_i, a_j>/<a_j, a_j>, Bourbaki
/// numbering. BC_n uses the B_n matrix (its simple system is that of B_n).
RationalMatrix standard_cartan(const TypeLabel& t);

/// Product of irreducible components kept in canonical order (exceptional
/// families first, then A, B, C, D, BC; larger rank first within a family).
class CompositeType {
 public:
  CompositeType() = default;
  explicit CompositeType(std::vector<TypeLabel> components);
  CompositeType(TypeLabel single) : CompositeType(std::vector<TypeLabel>{single}) {}  // NOLINT

  /// "G2xA1", "f4", "A1XA1xG2". Components separated by 'x' (case-insensitive).
  static CompositeType parse(std::string_view text);

  const std::vector<TypeLabel>& components() const { return components_; }
  bool irreducible() const { return components_.size() == 1; }
  bool has_exceptional() const;
  bool reduced() const;
  int rank() const;
  std::size_t root_count() const;
  std::string str() const;

  friend bool operator==(const CompositeType&, const CompositeType&) = default;
  friend auto operator<=>(const CompositeType&, const CompositeType&) = default;

 private:
  std::vector<TypeLabel> components_;
};

std::ostream& operator<<(std::ostream& os, const CompositeType& t);

/// Canonical component order used by CompositeType.
bool canonical_component_less(const TypeLabel& a, const TypeLabel& b);

/// All irreducible labels of rank d usable as detection targets:
/// A_d, B_d (d>=2), C_d (d>=2), D_d (d>=4), E_d, F4, G2, BC_d.
std::vector<TypeLabel> irreducible_targets(int d);

/// Candidate targets for rank d: irreducible labels first; with `reducible`,
/// every multiset of irreducible labels of total rank d with >= 2 components
/// follows in lexicographic order of the canonical string. With
/// `require_exceptional`, only types with an exceptional component remain.
std::vector<CompositeType> detection_targets(int d, bool reducible, bool require_exceptional);

}  // namespace rootproj
