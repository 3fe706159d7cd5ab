#include "serialize.hpp"

#include <json.hpp>

#include <stdexcept>

namespace rootproj::cli {

using nlohmann::json;

namespace {

std::vector<std::string> coords_of(const Vector& v) {
  std::vector<std::string> out;
  out.reserve(v.dim());
  for (const auto& x : v.coords()) out.push_back(x.str());
  return out;
}

std::string join_theta(const std::vector<int>& theta, char sep) {
  std::string out;
  for (int i : theta) {
    if (!out.empty()) out += sep;
    out += std::to_string(i);
  }
  return out;
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

ReportRecord to_record(const DetectionReport& report) {
  ReportRecord r{report.target.str(), report.found, report.restricted, report.basis_from_delta_theta, {}, 0};
  if (report.certificate) {
    for (const auto& b : report.certificate->basis) r.basis.push_back(coords_of(b));
    r.closure_size = report.certificate->generated_roots.size();
  }
  return r;
}

std::vector<CensusEntry> to_census(const NormCensus& census) {
  std::vector<CensusEntry> out;
  for (const auto& [norm, count] : census.entries) out.push_back({norm.str(), count});
  return out;
}

OutputRecord to_output(const ClassificationRecord& record) {
  OutputRecord out;
  out.sigma = record.sigma.str();
  out.theta = record.theta.indices();
  out.d = record.d;
  for (const auto& r : record.reports) out.reports.push_back(to_record(r));
  out.census = to_census(record.census);
  return out;
}

OutputRecord to_output(const ProjectionResult& pr, const std::vector<DetectionReport>& reports) {
  OutputRecord out;
  out.sigma = pr.sigma.str();
  out.theta = pr.theta.indices();
  out.d = pr.d;
  for (const auto& r : reports) out.reports.push_back(to_record(r));
  out.census = to_census(pr.census);
  return out;
}

std::string to_json(const OutputRecord& record) {
  json j;
  j["schema"] = record.schema;
  j["sigma"] = record.sigma;
  j["theta"] = record.theta;
  j["d"] = record.d;
  j["reports"] = json::array();
  for (const auto& r : record.reports) {
    j["reports"].push_back({{"target", r.target},
                            {"found", r.found},
                            {"restricted", r.restricted},
                            {"basis_from_delta_theta", r.basis_from_delta_theta},
                            {"basis", r.basis},
                            {"closure_size", r.closure_size}});
  }
  j["census"] = json::array();
  for (const auto& c : record.census) j["census"].push_back({{"norm", c.norm}, {"count", c.count}});
  return j.dump();
}

OutputRecord parse_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  try {
    OutputRecord out;
    out.schema = field<std::string>(j, "schema");
    if (out.schema != kSchema) throw std::invalid_argument("unknown schema '" + out.schema + "'");
    out.sigma = field<std::string>(j, "sigma");
    out.theta = field<std::vector<int>>(j, "theta");
    out.d = field<int>(j, "d");
    for (const auto& r : field<json>(j, "reports")) {
      ReportRecord rec;
      rec.target = field<std::string>(r, "target");
      rec.found = field<bool>(r, "found");
      rec.restricted = field<bool>(r, "restricted");
      rec.basis_from_delta_theta = r.value("basis_from_delta_theta", false);
      rec.basis = field<std::vector<std::vector<std::string>>>(r, "basis");
      rec.closure_size = field<std::size_t>(r, "closure_size");
      out.reports.push_back(std::move(rec));
    }
    if (j.contains("census"))
      for (const auto& c : j.at("census")) out.census.push_back({field<std::string>(c, "norm"), field<std::size_t>(c, "count")});
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad record: ") + e.what());
  }
}

std::string csv_header() { return "sigma,theta,d,target,restricted,found,closure_size,basis"; }

std::string render_basis(const std::vector<std::vector<std::string>>& basis) {
  std::string out;
  for (const auto& v : basis) {
    if (!out.empty()) out += '|';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ' ';
      out += v[i];
    }
  }
  return out;
}

std::string to_csv(const OutputRecord& record) {
  std::string out;
  for (const auto& r : record.reports) {
    if (!out.empty()) out += '\n';
    out += record.sigma + ",\"" + join_theta(record.theta, ',') + "\"," + std::to_string(record.d) + ',' + r.target + ',' +
           (r.restricted ? "true" : "false") + ',' + (r.found ? "found" : "not-found") + ',' +
           std::to_string(r.closure_size) + ',' + render_basis(r.basis);
  }
  return out;
}

}  // namespace rootproj::cli
