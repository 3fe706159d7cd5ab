#pragma once

// Plain value types mirroring what the CLI writes, with JSON and CSV
// renderings. Rationals are always strings ("p" or "p/q").

#include "rootproj/classify.hpp"
#include "rootproj/detect.hpp"
#include "rootproj/projection.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rootproj::cli {

inline constexpr std::string_view kSchema = "rootproj/1";

struct ReportRecord {
  std::string target;
  bool found = false;
  bool restricted = false;
  bool basis_from_delta_theta = false;
  std::vector<std::vector<std::string>> basis;
  std::size_t closure_size = 0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

struct CensusEntry {
  std::string norm;
  std::size_t count = 0;

  friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

struct OutputRecord {
  std::string schema{kSchema};
  std::string sigma;
  std::vector<int> theta;
  int d = 0;
  std::vector<ReportRecord> reports;
  std::vector<CensusEntry> census;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

ReportRecord to_record(const DetectionReport& report);
std::vector<CensusEntry> to_census(const NormCensus& census);
OutputRecord to_output(const ClassificationRecord& record);
OutputRecord to_output(const ProjectionResult& pr, const std::vector<DetectionReport>& reports);

/// Single-line JSON object.
std::string to_json(const OutputRecord& record);
/// Throws std::invalid_argument on malformed input or an unknown schema tag.
OutputRecord parse_json(std::string_view text);

/// Fixed columns: sigma,theta,d,target,restricted,found,closure_size,basis.
std::string csv_header();
/// One line per report (no trailing newline on the last one); empty if there are no reports.
std::string to_csv(const OutputRecord& record);

std::string render_basis(const std::vector<std::vector<std::string>>& basis);

}  // namespace rootproj::cli
