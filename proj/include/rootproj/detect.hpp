#pragma once

// Detection of (possibly reducible, possibly non-reduced) root systems of
// maximal rank inside a projected root set.
//
// The search embeds the target's Dynkin diagram node by node: a candidate
// for a node must reproduce the target's Cartan integers with its parent
// exactly and be orthogonal to every other chosen node. Only lex-positive
// vectors enter the unrestricted pool, so every subsystem is reached through
// its unique simple system for the lexicographic order (up to diagram
// automorphisms). After each node the reflection closure of the partial
// basis must stay inside the universe, which is what keeps exhaustive
// searches tractable at rank 7.

#include "rootproj/linalg.hpp"
#include "rootproj/projection.hpp"
#include "rootproj/type_label.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rootproj {

using VectorSet = std::unordered_set<Vector, VectorHash>;

/// Entries n_ij = 2<b_i, b_j>/<b_j, b_j>.
struct PairingMatrix {
  RationalMatrix entries;

  /// Off-diagonal entries in {0,-1,-2,-3}, zero pattern symmetric and
  /// n_ij * n_ji in {0,1,2,3}.
  bool simple_system_integral() const;
};

/// Throws std::invalid_argument if any basis vector is zero.
PairingMatrix pairing_matrix(const std::vector<Vector>& basis);

struct MatchedComponent {
  TypeLabel type;
  std::vector<std::size_t> members;  // indices into the basis, ascending
};

/// Identifies a Cartan-type matrix (convention as pairing_matrix) up to
/// simultaneous permutation, one label per connected component. Absent if
/// any component is not a finite crystallographic type.
std::optional<std::vector<MatchedComponent>> match_cartan(const RationalMatrix& cartan);
std::optional<std::vector<MatchedComponent>> match_type(const std::vector<Vector>& basis);

struct ClosureOutcome {
  bool ok = false;
  std::vector<Vector> roots;       // sorted; the partial orbit on failure
  std::optional<Vector> escaped;   // first generated vector outside the universe
  bool overflow = false;           // orbit grew past the limit
};

/// Fixed point of the reflections s_b (b in basis) started from the basis.
ClosureOutcome reflection_closure(const std::vector<Vector>& basis, const VectorSet& universe,
                                  std::size_t limit = std::numeric_limits<std::size_t>::max());

struct ClosureCertificate {
  std::vector<Vector> basis;            // components concatenated in target order
  std::vector<Vector> generated_roots;  // sorted
  CompositeType target;
};

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

/// Independent re-validation: pairing matrix -> type match, closure size,
/// containment in the universe, closure under every basis reflection.
CertificateCheck validate_certificate(const ClosureCertificate& cert, const std::vector<Vector>& universe);

struct DetectionReport {
  CompositeType target;
  bool found = false;
  bool restricted = false;              // see SubsystemSearch::find
  bool basis_from_delta_theta = false;  // found basis lies in delta_theta
  std::optional<ClosureCertificate> certificate;
};

/// Necessary condition from the norm census: for every component there is a
/// squared norm N such that each root-length class (factor f, count c) of the
/// component has at least c projected vectors of norm f*N.
bool census_plausible(const NormCensus& census, const CompositeType& target);

/// Reusable search over one projection result. Caches the Gram data and the
/// reflection table of the universe between targets.
class SubsystemSearch {
 public:
  explicit SubsystemSearch(const ProjectionResult& pr);
  ~SubsystemSearch();
  SubsystemSearch(SubsystemSearch&&) noexcept;
  SubsystemSearch& operator=(SubsystemSearch&&) noexcept;

  /// Exhaustive within the pool: found == false proves absence. Unrestricted,
  /// every component is searched in sigma_theta. Restricted, an irreducible
  /// target and every exceptional component of a reducible target take their
  /// simple roots from delta_theta, while classical factors of a reducible
  /// target still come from sigma_theta (orthogonal to the rest).
  /// basis_from_delta_theta tells whether the whole basis lies in delta_theta.
  /// Targets whose rank differs from d are reported as not found.
  DetectionReport find(const CompositeType& target, bool restricted);

  /// Search nodes visited so far (diagnostics).
  std::uint64_t nodes_visited() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DetectionReport find_subsystem(const ProjectionResult& pr, const CompositeType& target, bool restricted);

/// One report per target of detection_targets(pr.d, reducible, require_exceptional).
std::vector<DetectionReport> classify_max_rank(const ProjectionResult& pr, bool reducible, bool require_exceptional,
                                               bool restricted = false);

}  // namespace rootproj
