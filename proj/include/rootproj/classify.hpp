#pragma once

// Enumeration over all proper Theta, the classical lemma predicates used as
// an oracle, and comparison against the published exceptional tables.

#include "rootproj/detect.hpp"
#include "rootproj/projection.hpp"
#include "rootproj/root_catalog.hpp"
#include "rootproj/type_label.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rootproj {

struct ClassificationRecord {
  TypeLabel sigma;
  ThetaSubset theta;
  int d = 0;
  std::vector<DetectionReport> reports;
  NormCensus census;
};

struct ClassicalPrediction {
  std::optional<TypeLabel> predicted;
  std::string condition_trace;
};

/// Decodes Theta into blocks of the standard basis and evaluates the lemma
/// conditions for A_n, B_n, C_n, D_n. Throws std::invalid_argument for an
/// exceptional sigma.
ClassicalPrediction classical_predicate(const TypeLabel& sigma, const ThetaSubset& theta);

struct EnumerateOptions {
  // Irreducible targets of rank d: all of them, or only exceptional ones.
  bool irreducible_exceptional_only = false;
  // Reducible products with at least one exceptional component (restricted search).
  bool exceptional_products = true;
  unsigned jobs = 1;
};

/// Targets searched for one record, in report order: every irreducible target
/// unrestricted then restricted, then the products (restricted only).
std::vector<std::pair<CompositeType, bool>> record_plan(int d, const EnumerateOptions& options);

ClassificationRecord classify_theta(const RealizedRootSystem& sys, const ThetaSubset& theta,
                                    const EnumerateOptions& options);

/// Records for every proper Theta, ordered by |Theta| then indices, handed to
/// `sink` in that order whatever the number of worker threads.
void enumerate_stream(const TypeLabel& sigma, const EnumerateOptions& options,
                      const std::function<void(const ClassificationRecord&)>& sink);
std::vector<ClassificationRecord> enumerate(const TypeLabel& sigma, const EnumerateOptions& options = {});

// ---------------------------------------------------------------------------

struct GoldenRow {
  TypeLabel sigma;
  std::vector<int> theta;
  CompositeType target;
  bool restricted = false;
  bool expected_found = false;
};

/// Lines `sigma;theta_csv;target;restricted;expected`; blank lines and lines
/// starting with '#' are ignored. Throws std::invalid_argument naming the line.
std::vector<GoldenRow> parse_golden(std::string_view text);
const std::vector<GoldenRow>& embedded_golden();

struct Finding {
  std::vector<int> theta;
  CompositeType target;
  bool restricted = false;

  std::string str() const;
  friend auto operator<=>(const Finding&, const Finding&) = default;
  friend bool operator==(const Finding&, const Finding&) = default;
};

struct VerificationReport {
  TypeLabel sigma;
  std::vector<Finding> missing;              // in the table, not found
  std::vector<Finding> unexpected;           // found, not in the table
  std::vector<Finding> violated_negatives;   // the table says not found, but found
  std::size_t table_rows = 0;
  std::size_t findings = 0;

  bool match() const { return missing.empty() && unexpected.empty() && violated_negatives.empty(); }
};

/// True if a finding belongs to the family the tables speak about: exceptional
/// irreducible targets (both modes) and reduced products with an exceptional
/// component (restricted).
bool in_verified_family(const CompositeType& target, bool restricted);

/// Throws std::invalid_argument unless sigma is E6, E7, E8 or F4.
VerificationReport verify_paper(const TypeLabel& sigma, const std::vector<GoldenRow>& golden, unsigned jobs = 1);
VerificationReport verify_records(const TypeLabel& sigma, const std::vector<ClassificationRecord>& records,
                                  const std::vector<GoldenRow>& golden);

// ---------------------------------------------------------------------------

struct OracleDisagreement {
  std::vector<int> theta;
  std::string message;
};

struct OracleReport {
  TypeLabel sigma;
  std::size_t thetas = 0;
  std::size_t predictions = 0;
  std::vector<OracleDisagreement> disagreements;

  bool ok() const { return disagreements.empty(); }
};

/// For every proper Theta: a prediction is found by the unrestricted
/// detector; no exceptional irreducible target is ever found; for A_n the
/// lemma's necessity direction holds as well.
OracleReport oracle_equivalence(const TypeLabel& sigma);

}  // namespace rootproj
