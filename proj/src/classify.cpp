#include "rootproj/classify.hpp"

#include "golden_tables_data.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rootproj {

namespace {

// Sizes of the runs of e_1..e_len, where e_i and e_{i+1} share a run iff joined(i).
template <typename Joined>
std::vector<int> block_sizes(int len, Joined joined) {
  std::vector<int> sizes{1};
  for (int i = 1; i < len; ++i) {
    if (joined(i))
      ++sizes.back();
    else
      sizes.push_back(1);
  }
  return sizes;
}

bool all_equal(const std::vector<int>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (int x : v) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

// Length of the run of consecutive indices top, top-1, ... contained in theta.
int chain_down(const ThetaSubset& theta, int top) {
  int k = 0;
  while (top - k >= 1 && theta.contains(top - k)) ++k;
  return k;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

void require_verifiable(const TypeLabel& sigma) {
  const Family f = sigma.family();
  if (f != Family::E && f != Family::F)
    throw std::invalid_argument("verify-paper: tables exist for E6, E7, E8 and F4 only, not " + sigma.str());
}

}  // namespace

ClassicalPrediction classical_predicate(const TypeLabel& sigma, const ThetaSubset& theta) {
  const int n = sigma.rank();
  const int d = n - static_cast<int>(theta.size());
  ClassicalPrediction out;
  if (d == 1) {
    out.predicted = TypeLabel(Family::A, 1);
    out.condition_trace = "rank one: every projected vector spans an A1";
    return out;
  }
  auto in = [&](int i) { return theta.contains(i); };

  switch (sigma.family()) {
    case Family::A: {
      const auto blocks = block_sizes(n + 1, in);
      out.condition_trace = "A: blocks " + join(blocks);
      if (all_equal(blocks)) {
        out.predicted = TypeLabel(Family::A, d);
        out.condition_trace += "; n+1 = (m+1)(d+1) with m = " + std::to_string(blocks.front() - 1);
      }
      return out;
    }
    case Family::B:
    case Family::C: {
      const bool is_b = sigma.family() == Family::B;
      const int k = chain_down(theta, n);
      const auto blocks = block_sizes(n - k, in);
      out.condition_trace = std::string(is_b ? "B" : "C") + ": k = " + std::to_string(k) + ", blocks " + join(blocks);
      if (all_equal(blocks)) {
        const int m = blocks.front() - 1;
        out.condition_trace += "; n-k = (m+1)d with m = " + std::to_string(m);
        if (is_b)
          out.predicted = TypeLabel(m == 0 ? Family::B : Family::BC, d);
        else
          out.predicted = TypeLabel(k == 0 ? Family::C : Family::BC, d);
      } else if (!is_b && d == 2) {
        const int small = std::min(blocks[0], blocks[1]);
        const int large = std::max(blocks[0], blocks[1]);
        if (large == 3 * small) {
          out.predicted = TypeLabel(Family::A, 2);
          out.condition_trace += "; p+1 = 3(m+1)";
        }
      }
      return out;
    }
    case Family::D: {
      const bool last_two = in(n - 1) && in(n);
      if (last_two) {
        const int k = 2 + chain_down(theta, n - 2);
        const auto blocks = block_sizes(n - k, in);
        out.condition_trace = "D case 1: k = " + std::to_string(k) + ", blocks " + join(blocks);
        if (all_equal(blocks)) {
          const int m = blocks.front() - 1;
          out.condition_trace += "; n-k = (m+1)d with m = " + std::to_string(m);
          out.predicted = TypeLabel(m == 0 ? Family::B : Family::BC, d);
        }
      } else if (in(n - 1) || in(n)) {
        const auto blocks = block_sizes(n, [&](int i) { return i == n - 1 || in(i); });
        out.condition_trace = "D case 2: blocks " + join(blocks);
        if (all_equal(blocks)) {
          out.predicted = TypeLabel(Family::C, d);
          out.condition_trace += "; n = (m+1)d with m = " + std::to_string(blocks.front() - 1);
        }
      } else {
        out.condition_trace = "D case 3: no maximal-rank system for proper Theta";
      }
      return out;
    }
    default:
      throw std::invalid_argument("classical_predicate: " + sigma.str() + " is not classical");
  }
}

std::vector<std::pair<CompositeType, bool>> record_plan(int d, const EnumerateOptions& options) {
  std::vector<std::pair<CompositeType, bool>> plan;
  for (const auto& t : irreducible_targets(d)) {
    if (options.irreducible_exceptional_only && !t.exceptional()) continue;
    plan.emplace_back(CompositeType(t), false);
    plan.emplace_back(CompositeType(t), true);
  }
  if (options.exceptional_products) {
    for (const auto& t : detection_targets(d, true, true))
      if (!t.irreducible()) plan.emplace_back(t, true);
  }
  return plan;
}

ClassificationRecord classify_theta(const RealizedRootSystem& sys, const ThetaSubset& theta,
                                    const EnumerateOptions& options) {
  const ProjectionResult pr = project_all(sys, theta);
  SubsystemSearch search(pr);
  ClassificationRecord rec{sys.label, theta, pr.d, {}, pr.census};
  for (const auto& [target, restricted] : record_plan(pr.d, options))
    rec.reports.push_back(search.find(target, restricted));
  return rec;
}

void enumerate_stream(const TypeLabel& sigma, const EnumerateOptions& options,
                      const std::function<void(const ClassificationRecord&)>& sink) {
  const RealizedRootSystem sys = build(sigma);
  const std::vector<ThetaSubset> thetas = proper_subsets(sigma.rank());
  const unsigned workers = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(thetas.size(), 1)));
  if (workers == 1) {
    for (const auto& th : thetas) sink(classify_theta(sys, th, options));
    return;
  }

  std::vector<std::optional<ClassificationRecord>> slots(thetas.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= thetas.size() || stop) return;
      try {
        ClassificationRecord rec = classify_theta(sys, thetas[i], options);
        std::lock_guard lock(mu);
        slots[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  try {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (failure) break;
      ClassificationRecord rec = std::move(*slots[i]);
      slots[i].reset();
      lock.unlock();
      sink(rec);
    }
  } catch (...) {
    stop = true;
    throw;
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<ClassificationRecord> enumerate(const TypeLabel& sigma, const EnumerateOptions& options) {
  std::vector<ClassificationRecord> out;
  enumerate_stream(sigma, options, [&](const ClassificationRecord& r) { out.push_back(r); });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<GoldenRow> parse_golden(std::string_view text) {
  std::vector<GoldenRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      throw std::invalid_argument("golden table line " + std::to_string(line_no) + ": " + why);
    };
    const auto fields = split(line, ';');
    if (fields.size() != 5) fail("expected 5 fields, got " + std::to_string(fields.size()));
    try {
      const TypeLabel sigma = TypeLabel::parse(fields[0]);
      const ThetaSubset theta = ThetaSubset::parse(fields[1], sigma.rank());
      GoldenRow row{sigma, theta.indices(), CompositeType::parse(fields[2]), false, false};
      if (fields[3] == "true")
        row.restricted = true;
      else if (fields[3] != "false")
        fail("restricted must be true or false");
      if (fields[4] == "found")
        row.expected_found = true;
      else if (fields[4] != "not-found")
        fail("expected must be found or not-found");
      if (row.target.rank() != sigma.rank() - static_cast<int>(theta.size())) fail("target rank differs from d");
      rows.push_back(std::move(row));
    } catch (const std::invalid_argument& e) {
      if (std::string_view(e.what()).starts_with("golden table line")) throw;
      fail(e.what());
    }
  }
  return rows;
}

const std::vector<GoldenRow>& embedded_golden() {
  static const std::vector<GoldenRow> rows = parse_golden(kGoldenTables);
  return rows;
}

std::string Finding::str() const {
  return "{" + join(theta) + "} " + target.str() + (restricted ? " restricted" : " unrestricted");
}

bool in_verified_family(const CompositeType& target, bool restricted) {
  if (target.irreducible()) return target.components().front().exceptional();
  return restricted && target.has_exceptional() && target.reduced();
}

VerificationReport verify_records(const TypeLabel& sigma, const std::vector<ClassificationRecord>& records,
                                  const std::vector<GoldenRow>& golden) {
  require_verifiable(sigma);
  VerificationReport rep{sigma, {}, {}, {}, 0, 0};

  std::set<Finding> found;
  std::map<Finding, bool> searched;
  for (const auto& rec : records) {
    for (const auto& r : rec.reports) {
      const Finding f{rec.theta.indices(), r.target, r.restricted};
      searched[f] = r.found;
      if (r.found && in_verified_family(r.target, r.restricted)) found.insert(f);
    }
  }

  std::set<Finding> expected;
  std::optional<RealizedRootSystem> sys;
  for (const auto& row : golden) {
    if (row.sigma != sigma) continue;
    ++rep.table_rows;
    const Finding f{row.theta, row.target, row.restricted};
    if (row.expected_found) {
      expected.insert(f);
      continue;
    }
    auto it = searched.find(f);
    bool hit;
    if (it != searched.end()) {
      hit = it->second;
    } else {
      if (!sys) sys = build(sigma);
      hit = find_subsystem(project_all(*sys, ThetaSubset(row.theta, sigma.rank())), row.target, row.restricted).found;
    }
    if (hit) rep.violated_negatives.push_back(f);
  }

  std::set_difference(expected.begin(), expected.end(), found.begin(), found.end(), std::back_inserter(rep.missing));
  std::set_difference(found.begin(), found.end(), expected.begin(), expected.end(), std::back_inserter(rep.unexpected));
  rep.findings = found.size();
  return rep;
}

VerificationReport verify_paper(const TypeLabel& sigma, const std::vector<GoldenRow>& golden, unsigned jobs) {
  require_verifiable(sigma);
  EnumerateOptions options;
  options.irreducible_exceptional_only = true;
  options.exceptional_products = true;
  options.jobs = jobs;
  return verify_records(sigma, enumerate(sigma, options), golden);
}

// ---------------------------------------------------------------------------

OracleReport oracle_equivalence(const TypeLabel& sigma) {
  const Family fam = sigma.family();
  if (fam != Family::A && fam != Family::B && fam != Family::C && fam != Family::D)
    throw std::invalid_argument("oracle_equivalence: " + sigma.str() + " is not classical");
  const RealizedRootSystem sys = build(sigma);
  OracleReport rep{sigma, 0, 0, {}};

  for (const auto& theta : proper_subsets(sigma.rank())) {
    ++rep.thetas;
    const ProjectionResult pr = project_all(sys, theta);
    SubsystemSearch search(pr);
    const ClassicalPrediction pred = classical_predicate(sigma, theta);
    auto disagree = [&](const std::string& msg) {
      rep.disagreements.push_back({theta.indices(), msg + " [" + pred.condition_trace + "]"});
    };

    std::vector<TypeLabel> found;
    for (const auto& t : irreducible_targets(pr.d))
      if (search.find(CompositeType(t), false).found) found.push_back(t);

    for (const auto& t : found)
      if (t.exceptional()) disagree("exceptional " + t.str() + " found in classical projection");

    if (pred.predicted) {
      ++rep.predictions;
      const TypeLabel p = *pred.predicted;
      if (std::find(found.begin(), found.end(), p) == found.end())
        disagree("predicted " + p.str() + " not found");
      // The rank-one clause only guarantees +-v; BC1 may sit on top of it.
      for (const auto& t : found)
        if (pr.d >= 2 && root_count(t) > root_count(p)) disagree("found " + t.str() + ", larger than predicted " + p.str());
    }
    if (fam == Family::A && pr.d >= 2) {
      for (const auto& t : found) {
        if (!pred.predicted)
          disagree("found " + t.str() + " although the lemma rules out rank " + std::to_string(pr.d));
        else if (t.family() != Family::A)
          disagree("found non-A type " + t.str());
      }
    }
  }
  return rep;
}

}  // namespace rootproj
