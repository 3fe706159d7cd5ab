#include "cli.hpp"

#include "serialize.hpp"

#include "rootproj/classify.hpp"
#include "rootproj/detect.hpp"
#include "rootproj/projection.hpp"
#include "rootproj/root_catalog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace rootproj::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string sigma;
  std::string theta;
  std::string target;
  std::string format = "text";
  std::string out;
  std::string golden;
  bool restricted = false;
  bool allow_improper = false;
  bool reducible = false;
  bool exceptional_only = false;
  unsigned jobs = 1;
};

TypeLabel parse_sigma(const std::string& text) {
  try {
    return TypeLabel::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--sigma: ") + e.what());
  }
}

ThetaSubset parse_theta(const std::string& text, int rank, bool allow_improper) {
  try {
    if (text.empty()) return ThetaSubset({}, rank, allow_improper);
    return ThetaSubset::parse(text, rank, allow_improper);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--theta: ") + e.what());
  }
}

std::vector<std::string> coord_strings(const Vector& v) {
  std::vector<std::string> c;
  for (const auto& x : v.coords()) c.push_back(x.str());
  return c;
}

std::string theta_text(const std::vector<int>& theta) {
  std::string out = "{";
  for (std::size_t i = 0; i < theta.size(); ++i) out += (i ? "," : "") + std::to_string(theta[i]);
  return out + "}";
}

void write_census_text(std::ostream& os, const std::vector<CensusEntry>& census) {
  for (const auto& c : census) os << "norm-class count " << c.count << " norm " << c.norm << '\n';
}

void write_report_text(std::ostream& os, const ReportRecord& r) {
  os << r.target << (r.restricted ? " restricted" : " unrestricted") << ": " << (r.found ? "found" : "not-found");
  if (r.found) {
    os << " closure_size " << r.closure_size << (r.basis_from_delta_theta ? " basis-in-delta" : "") << '\n';
    for (const auto& v : r.basis) {
      os << "  (";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
      os << ")\n";
    }
  } else {
    os << '\n';
  }
}

void write_record(std::ostream& os, const OutputRecord& rec, const std::string& format, bool with_census = true) {
  if (format == "json") {
    os << to_json(rec) << '\n';
  } else if (format == "csv") {
    const std::string body = to_csv(rec);
    if (!body.empty()) os << body << '\n';
  } else {
    os << "sigma " << rec.sigma << " theta " << theta_text(rec.theta) << " d " << rec.d << '\n';
    if (with_census) write_census_text(os, rec.census);
    for (const auto& r : rec.reports) write_report_text(os, r);
  }
}

int cmd_build(const Options& o, std::ostream& os) {
  const RealizedRootSystem sys = build(parse_sigma(o.sigma));
  if (o.format == "json") {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["sigma"] = sys.label.str();
    j["ambient_dim"] = sys.ambient_dim;
    j["root_count"] = sys.roots.size();
    for (const auto& s : sys.simple_roots) j["simple_roots"].push_back(coord_strings(s));
    for (std::size_t i = 0; i < sys.cartan.rows(); ++i) {
      std::vector<std::string> row;
      for (std::size_t k = 0; k < sys.cartan.cols(); ++k) row.push_back(sys.cartan(i, k).str());
      j["cartan"].push_back(row);
    }
    os << j.dump() << '\n';
    return kOk;
  }
  os << "sigma " << sys.label.str() << " rank " << sys.rank() << " ambient_dim " << sys.ambient_dim << " roots "
     << sys.roots.size() << '\n';
  for (int i = 1; i <= sys.rank(); ++i) os << "alpha_" << i << " = " << sys.simple_root(i).str() << '\n';
  os << "cartan " << sys.cartan.str() << '\n';
  return kOk;
}

int cmd_project(const Options& o, std::ostream& os) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  const RealizedRootSystem sys = build(sigma);
  const ThetaSubset theta = parse_theta(o.theta, sigma.rank(), o.allow_improper);
  const ProjectionResult pr = project_all(sys, theta, o.allow_improper);
  const OutputRecord rec = to_output(pr, {});
  if (o.format == "json") {
    nlohmann::json j = nlohmann::json::parse(to_json(rec));
    for (const auto& v : pr.sigma_theta) j["sigma_theta"].push_back(coord_strings(v));
    for (std::size_t i = 0; i < pr.delta_theta.size(); ++i)
      j["delta_theta"].push_back({{"index", pr.delta_indices[i]}, {"vector", coord_strings(pr.delta_theta[i])}});
    os << j.dump() << '\n';
    return kOk;
  }
  if (o.format == "csv") {
    os << "kind,index,norm,vector\n";
    for (const auto& v : pr.sigma_theta)
      os << "sigma_theta,," << norm2(v).str() << ',' << render_basis({coord_strings(v)}) << '\n';
    for (std::size_t i = 0; i < pr.delta_theta.size(); ++i)
      os << "delta_theta," << pr.delta_indices[i] << ',' << norm2(pr.delta_theta[i]).str() << ','
         << render_basis({coord_strings(pr.delta_theta[i])}) << '\n';
    return kOk;
  }
  os << "sigma " << rec.sigma << " theta " << theta_text(rec.theta) << " d " << rec.d << '\n';
  os << "sigma_theta " << pr.sigma_theta.size() << " vectors\n";
  for (const auto& v : pr.sigma_theta) os << "  " << v.str() << "  norm " << norm2(v).str() << '\n';
  os << "delta_theta\n";
  for (std::size_t i = 0; i < pr.delta_theta.size(); ++i)
    os << "  alpha_" << pr.delta_indices[i] << " -> " << pr.delta_theta[i].str() << "  norm "
       << norm2(pr.delta_theta[i]).str() << '\n';
  if (pr.delta_collision) os << "delta_theta has coinciding projections\n";
  write_census_text(os, rec.census);
  return kOk;
}

ProjectionResult project_checked(const Options& o) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  const ThetaSubset theta = parse_theta(o.theta, sigma.rank(), o.allow_improper);
  return project_all(build(sigma), theta, o.allow_improper);
}

int cmd_detect(const Options& o, std::ostream& os) {
  const ProjectionResult pr = project_checked(o);
  CompositeType target;
  try {
    target = CompositeType::parse(o.target);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--target: ") + e.what());
  }
  if (target.rank() != pr.d)
    throw UsageError("--target: rank " + std::to_string(target.rank()) + " differs from d = " + std::to_string(pr.d));
  const DetectionReport report = find_subsystem(pr, target, o.restricted);
  write_record(os, to_output(pr, {report}), o.format, false);
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& os) {
  const ProjectionResult pr = project_checked(o);
  const auto reports = classify_max_rank(pr, o.reducible, o.exceptional_only, o.restricted);
  write_record(os, to_output(pr, reports), o.format);
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& os) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  EnumerateOptions opts;
  opts.jobs = o.jobs;
  opts.irreducible_exceptional_only = o.exceptional_only;
  opts.exceptional_products = sigma.exceptional();
  if (o.format == "csv") os << csv_header() << '\n';
  enumerate_stream(sigma, opts, [&](const ClassificationRecord& rec) {
    write_record(os, to_output(rec), o.format);
    os.flush();
  });
  return kOk;
}

std::vector<GoldenRow> load_golden(const Options& o) {
  if (o.golden.empty()) return embedded_golden();
  std::ifstream in(o.golden);
  if (!in) throw UsageError("--golden: cannot read " + o.golden);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_golden(ss.str());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--golden: ") + e.what());
  }
}

int cmd_verify(const Options& o, std::ostream& os) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  if (sigma.family() != Family::E && sigma.family() != Family::F)
    throw UsageError("verify-paper: tables exist for E6, E7, E8 and F4 only");
  const VerificationReport rep = verify_paper(sigma, load_golden(o), o.jobs);
  if (o.format == "json") {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["sigma"] = sigma.str();
    j["match"] = rep.match();
    j["table_rows"] = rep.table_rows;
    j["findings"] = rep.findings;
    auto list = [](const std::vector<Finding>& fs) {
      nlohmann::json a = nlohmann::json::array();
      for (const auto& f : fs) a.push_back({{"theta", f.theta}, {"target", f.target.str()}, {"restricted", f.restricted}});
      return a;
    };
    j["missing"] = list(rep.missing);
    j["unexpected"] = list(rep.unexpected);
    j["violated_negatives"] = list(rep.violated_negatives);
    os << j.dump() << '\n';
  } else {
    os << "verify-paper " << sigma.str() << ": " << (rep.match() ? "match" : "MISMATCH") << " (" << rep.table_rows
       << " table rows, " << rep.findings << " findings)\n";
    for (const auto& f : rep.missing) os << "  - missing    " << f.str() << '\n';
    for (const auto& f : rep.unexpected) os << "  + unexpected " << f.str() << '\n';
    for (const auto& f : rep.violated_negatives) os << "  ! table says not found: " << f.str() << '\n';
  }
  return rep.match() ? kOk : kMismatch;
}

int cmd_predict(const Options& o, std::ostream& os) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  if (sigma.exceptional()) throw UsageError("predict: sigma must be classical");
  const ThetaSubset theta = parse_theta(o.theta, sigma.rank(), false);
  const ClassicalPrediction p = classical_predicate(sigma, theta);
  os << "sigma " << sigma.str() << " theta " << theta_text(theta.indices()) << " prediction "
     << (p.predicted ? p.predicted->str() : std::string("none")) << '\n'
     << "trace " << p.condition_trace << '\n';
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& os) {
  const TypeLabel sigma = parse_sigma(o.sigma);
  if (sigma.exceptional()) throw UsageError("oracle: sigma must be classical");
  const OracleReport rep = oracle_equivalence(sigma);
  os << "oracle " << sigma.str() << ": " << (rep.ok() ? "agree" : "DISAGREE") << " (" << rep.thetas << " theta, "
     << rep.predictions << " predictions)\n";
  for (const auto& d : rep.disagreements) os << "  " << theta_text(d.theta) << " " << d.message << '\n';
  return rep.ok() ? kOk : kMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projections of root systems and the subsystems they contain", "rootproj"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"text", "json", "csv"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember(formats));
    sub->add_option("--out", o.out, "Write output to this file");
  };
  auto sigma_opt = [&](CLI::App* sub) { sub->add_option("--sigma", o.sigma, "Root system, e.g. E8")->required(); };
  auto theta_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--theta", o.theta, "Comma-separated simple-root indices");
    if (required) opt->required();
    sub->add_flag("--allow-improper-theta", o.allow_improper, "Accept empty or full Theta (testing only)");
  };

  auto* build_cmd = app.add_subcommand("build", "Show a realized root system");
  sigma_opt(build_cmd);
  common(build_cmd);

  auto* project_cmd = app.add_subcommand("project", "Project the roots orthogonally to Theta");
  sigma_opt(project_cmd);
  theta_opt(project_cmd, false);
  common(project_cmd);

  auto* detect_cmd = app.add_subcommand("detect", "Search one target system of rank d");
  sigma_opt(detect_cmd);
  theta_opt(detect_cmd, true);
  detect_cmd->add_option("--target", o.target, "Target type, e.g. F4xA1")->required();
  detect_cmd->add_flag("--restricted", o.restricted, "Take the basis from projected simple roots");
  common(detect_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Search every target of rank d");
  sigma_opt(classify_cmd);
  theta_opt(classify_cmd, true);
  classify_cmd->add_flag("--restricted", o.restricted, "Take the basis from projected simple roots");
  classify_cmd->add_flag("--reducible", o.reducible, "Include products");
  classify_cmd->add_flag("--exceptional-only", o.exceptional_only, "Only targets with an exceptional component");
  common(classify_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Classify every proper Theta, one record per line");
  sigma_opt(enumerate_cmd);
  enumerate_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  enumerate_cmd->add_flag("--exceptional-only", o.exceptional_only, "Skip classical irreducible targets");
  common(enumerate_cmd);

  auto* verify_cmd = app.add_subcommand("verify-paper", "Compare with the exceptional tables");
  sigma_opt(verify_cmd);
  verify_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  verify_cmd->add_option("--golden", o.golden, "Table file replacing the embedded one");
  common(verify_cmd);

  auto* predict_cmd = app.add_subcommand("predict", "Classical lemma prediction for one Theta");
  sigma_opt(predict_cmd);
  theta_opt(predict_cmd, true);
  common(predict_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Lemma predictions against the detector for every Theta");
  sigma_opt(oracle_cmd);
  common(oracle_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForAllHelp" ? app.help("", CLI::AppFormatMode::All)
                                                : (app.get_subcommands().empty() ? app.help()
                                                                                  : app.get_subcommands().front()->help()));
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << o.out << " for writing\n";
      return kUsage;
    }
    os = &file;
  }

  try {
    if (build_cmd->parsed()) return cmd_build(o, *os);
    if (project_cmd->parsed()) return cmd_project(o, *os);
    if (detect_cmd->parsed()) return cmd_detect(o, *os);
    if (classify_cmd->parsed()) return cmd_classify(o, *os);
    if (enumerate_cmd->parsed()) return cmd_enumerate(o, *os);
    if (verify_cmd->parsed()) return cmd_verify(o, *os);
    if (predict_cmd->parsed()) return cmd_predict(o, *os);
    if (oracle_cmd->parsed()) return cmd_oracle(o, *os);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rootproj::cli
