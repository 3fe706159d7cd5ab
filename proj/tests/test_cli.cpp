#include <doctest.h>

#include "cli.hpp"
#include "serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using rootproj::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"detect", "--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"project", "--sigma", "E9", "--theta", "1"}).code == 2);
  CHECK(run({"project", "--sigma", "E8", "--theta", "9"}).code == 2);
  CHECK(run({"project", "--sigma", "A3"}).code == 2);
  CHECK(run({"project", "--sigma", "A3", "--allow-improper-theta"}).code == 0);
  CHECK(run({"detect", "--sigma", "F4", "--theta", "1,2", "--target", "F4"}).code == 2);
  CHECK(run({"detect", "--sigma", "F4", "--theta", "1,2", "--target", "Z2"}).code == 2);
  CHECK(run({"project", "--sigma", "A3", "--theta", "2", "--format", "xml"}).code == 2);
  CHECK(run({"verify-paper", "--sigma", "A5"}).code == 2);
  CHECK(run({"verify-paper", "--sigma", "F4"}).code == 0);
  CHECK(run({"verify-paper", "--sigma", "F4", "--golden", "/nonexistent/table"}).code == 2);
  CHECK(run({"predict", "--sigma", "E6", "--theta", "1"}).code == 2);
}

TEST_CASE("mismatch against a planted table exits 1") {
  const auto path = std::filesystem::temp_directory_path() / "rootproj_test_golden.txt";
  {
    std::ofstream f(path);
    f << "F4;1,2;G2;false;found\nF4;2,3;G2;false;found\n";
  }
  const auto r = run({"verify-paper", "--sigma", "F4", "--golden", path.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("missing") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("project text shows the norm classes") {
  const auto r = run({"project", "--sigma", "E8", "--theta", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("norm-class count 126 norm 2") != std::string::npos);
  CHECK(r.out.find("norm-class count 56 norm 3/2") != std::string::npos);
}

TEST_CASE("detect examples") {
  const auto f4 = run({"detect", "--sigma", "E8", "--theta", "2,5,7", "--target", "F4xA1", "--restricted", "--format", "json"});
  REQUIRE(f4.code == 0);
  const auto rec = rootproj::cli::parse_json(lines(f4.out).front());
  REQUIRE(rec.reports.size() == 1);
  CHECK(rec.reports[0].found);
  CHECK(rec.reports[0].closure_size == 50);
  CHECK(rec.reports[0].basis.size() == 5);

  const auto e7 = run({"detect", "--sigma", "E8", "--theta", "8", "--target", "E7"});
  CHECK(e7.out.find("E7 unrestricted: found") != std::string::npos);
  const auto e7r = run({"detect", "--sigma", "E8", "--theta", "8", "--target", "E7", "--restricted"});
  CHECK(e7r.code == 0);
  CHECK(e7r.out.find("E7 restricted: not-found") != std::string::npos);
}

TEST_CASE("json round trip") {
  const auto r = run({"classify", "--sigma", "F4", "--theta", "1,2", "--format", "json"});
  REQUIRE(r.code == 0);
  const std::string line = lines(r.out).front();
  const auto rec = rootproj::cli::parse_json(line);
  CHECK(rec.sigma == "F4");
  CHECK(rec.theta == std::vector<int>{1, 2});
  CHECK(rec.d == 2);
  CHECK(rootproj::cli::to_json(rec) == line);
  CHECK(rootproj::cli::parse_json(rootproj::cli::to_json(rec)) == rec);

  CHECK_THROWS_AS(rootproj::cli::parse_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(rootproj::cli::parse_json(R"({"schema":"other/1"})"), std::invalid_argument);
  CHECK_THROWS_AS(rootproj::cli::parse_json(R"({"schema":"rootproj/1","sigma":"F4"})"), std::invalid_argument);
}

TEST_CASE("csv output") {
  const auto r = run({"enumerate", "--sigma", "G2", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() > 1);
  CHECK(ls[0] == rootproj::cli::csv_header());
  CHECK(ls[1].starts_with("G2,\"1\",1,A1,false,found,2,"));
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "rootproj_test_out.jsonl";
  std::filesystem::remove(path);
  const auto r = run({"enumerate", "--sigma", "G2", "--format", "json", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto ls = lines(ss.str());
  CHECK(ls.size() == 2);
  for (const auto& l : ls) CHECK_NOTHROW(rootproj::cli::parse_json(l));
  std::filesystem::remove(path);
}

TEST_CASE("enumerate output is reproducible across job counts") {
  const auto a = run({"enumerate", "--sigma", "F4", "--format", "json"});
  const auto b = run({"enumerate", "--sigma", "F4", "--format", "json", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 14);
}

TEST_CASE("predict and oracle commands") {
  const auto p = run({"predict", "--sigma", "C4", "--theta", "2,3"});
  CHECK(p.code == 0);
  CHECK(p.out.find("prediction A2") != std::string::npos);
  const auto o = run({"oracle", "--sigma", "B3"});
  CHECK(o.code == 0);
  CHECK(o.out.find("agree") != std::string::npos);
}
