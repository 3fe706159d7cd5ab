#include <doctest.h>

#include "rootproj/classify.hpp"

#include <algorithm>
#include <set>

using namespace rootproj;

namespace {

std::optional<std::string> predict(const char* sigma, std::vector<int> theta) {
  const auto t = TypeLabel::parse(sigma);
  const auto p = classical_predicate(t, ThetaSubset(std::move(theta), t.rank()));
  if (!p.predicted) return std::nullopt;
  return p.predicted->str();
}

std::set<Finding> findings_of(const std::vector<ClassificationRecord>& records) {
  std::set<Finding> out;
  for (const auto& rec : records)
    for (const auto& r : rec.reports)
      if (r.found && in_verified_family(r.target, r.restricted)) out.insert({rec.theta.indices(), r.target, r.restricted});
  return out;
}

}  // namespace

TEST_CASE("classical predicate examples") {
  CHECK(predict("A5", {1, 3, 5}) == "A2");
  CHECK(predict("B4", {1, 3}) == "BC2");
  CHECK(predict("C4", {2, 3}) == "A2");
  CHECK(predict("A3", {2}) == std::nullopt);
  CHECK(predict("D4", {3, 4}) == "B2");
  CHECK(predict("B3", {2}) == std::nullopt);
  CHECK(predict("C4", {1, 3}) == "C2");
  CHECK(predict("A4", {1, 2, 3}) == "A1");
  CHECK(predict("B4", {4}) == "B3");
  CHECK(predict("B4", {1}) == std::nullopt);
  CHECK(predict("C4", {4}) == "BC3");
  CHECK_THROWS_AS(classical_predicate(TypeLabel::parse("E6"), ThetaSubset({1}, 6)), std::invalid_argument);
  CHECK_FALSE(classical_predicate(TypeLabel::parse("C4"), ThetaSubset({2, 3}, 4)).condition_trace.empty());
}

TEST_CASE("enumerate record counts and order") {
  CHECK(enumerate(TypeLabel::parse("G2")).size() == 2);
  const auto f4 = enumerate(TypeLabel::parse("F4"));
  CHECK(f4.size() == 14);
  const auto subs = proper_subsets(4);
  for (std::size_t i = 0; i < f4.size(); ++i) CHECK(f4[i].theta == subs[i]);
  EnumerateOptions only_exc;
  only_exc.irreducible_exceptional_only = true;
  CHECK(enumerate(TypeLabel::parse("E6"), only_exc).size() == 62);
}

TEST_CASE("record plan layout") {
  const auto plan = record_plan(2, {});
  REQUIRE(plan.size() == 10);
  CHECK(plan[0] == std::pair{CompositeType::parse("A2"), false});
  CHECK(plan[1] == std::pair{CompositeType::parse("A2"), true});
  EnumerateOptions o;
  o.irreducible_exceptional_only = true;
  const auto p3 = record_plan(3, o);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0] == std::pair{CompositeType::parse("G2xA1"), true});
  CHECK(p3[1] == std::pair{CompositeType::parse("G2xBC1"), true});
}

TEST_CASE("F4 and E6 G2 rows") {
  const auto f4 = enumerate(TypeLabel::parse("F4"));
  const std::set<Finding> expect_f4 = {{{1, 2}, CompositeType::parse("G2"), false},
                                       {{1, 2}, CompositeType::parse("G2"), true},
                                       {{3, 4}, CompositeType::parse("G2"), false},
                                       {{3, 4}, CompositeType::parse("G2"), true}};
  CHECK(findings_of(f4) == expect_f4);

  EnumerateOptions o;
  o.irreducible_exceptional_only = true;
  const auto e6 = findings_of(enumerate(TypeLabel::parse("E6"), o));
  CHECK(e6.contains({{1, 3, 5, 6}, CompositeType::parse("G2"), false}));
  CHECK(e6.contains({{1, 3, 5, 6}, CompositeType::parse("G2"), true}));
}

TEST_CASE("parallel enumeration matches serial") {
  EnumerateOptions serial;
  serial.irreducible_exceptional_only = true;
  EnumerateOptions parallel = serial;
  parallel.jobs = 3;
  const auto a = enumerate(TypeLabel::parse("E6"), serial);
  const auto b = enumerate(TypeLabel::parse("E6"), parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].theta == b[i].theta);
    REQUIRE(a[i].reports.size() == b[i].reports.size());
    for (std::size_t k = 0; k < a[i].reports.size(); ++k) {
      CHECK(a[i].reports[k].found == b[i].reports[k].found);
      if (a[i].reports[k].found) CHECK(a[i].reports[k].certificate->basis == b[i].reports[k].certificate->basis);
    }
  }
}

TEST_CASE("golden table parsing") {
  const auto rows = parse_golden("# comment\n\nE8;2,3,4,5;F4;true;found\nE7;2,4,6,7;G2xA1;true;not-found\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].sigma == TypeLabel::parse("E8"));
  CHECK(rows[0].theta == std::vector<int>{2, 3, 4, 5});
  CHECK(rows[0].restricted);
  CHECK(rows[0].expected_found);
  CHECK_FALSE(rows[1].expected_found);

  CHECK_THROWS_WITH_AS(parse_golden("E8;2;E7;true"), doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("E8;2;E7;maybe;found"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("E8;2;E7;true;yes"), std::invalid_argument);
  CHECK_THROWS_AS(parse_golden("E8;2;E6;true;found"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_golden("\nE8;9;E7;true;found"), doctest::Contains("line 2"), std::invalid_argument);
  CHECK_FALSE(embedded_golden().empty());
}

TEST_CASE("verified family") {
  CHECK(in_verified_family(CompositeType::parse("E7"), false));
  CHECK(in_verified_family(CompositeType::parse("G2"), true));
  CHECK_FALSE(in_verified_family(CompositeType::parse("A2"), false));
  CHECK(in_verified_family(CompositeType::parse("G2xA1"), true));
  CHECK_FALSE(in_verified_family(CompositeType::parse("G2xA1"), false));
  CHECK_FALSE(in_verified_family(CompositeType::parse("G2xBC1"), true));
}

TEST_CASE("verification of F4, E6 and E7 against the tables") {
  for (const char* s : {"F4", "E6", "E7"}) {
    CAPTURE(s);
    const auto rep = verify_paper(TypeLabel::parse(s), embedded_golden());
    CHECK(rep.match());
    CHECK(rep.table_rows > 0);
  }
  CHECK_THROWS_AS(verify_paper(TypeLabel::parse("A5"), embedded_golden()), std::invalid_argument);
}

TEST_CASE("verification detects a planted table error") {
  auto rows = embedded_golden();
  rows.push_back(parse_golden("F4;2,3;G2;false;found").front());
  rows.push_back(parse_golden("F4;1,2;G2;true;not-found").front());
  const auto rep = verify_paper(TypeLabel::parse("F4"), rows);
  CHECK_FALSE(rep.match());
  REQUIRE(rep.missing.size() == 1);
  CHECK(rep.missing[0].theta == std::vector<int>{2, 3});
  REQUIRE(rep.violated_negatives.size() == 1);
  CHECK(rep.violated_negatives[0].theta == std::vector<int>{1, 2});
}

TEST_CASE("oracle equivalence on small classical systems") {
  for (const char* s : {"A3", "B3", "C3", "D4"}) {
    CAPTURE(s);
    const auto rep = oracle_equivalence(TypeLabel::parse(s));
    CHECK(rep.ok());
    CHECK(rep.thetas == proper_subsets(TypeLabel::parse(s).rank()).size());
  }
}

TEST_CASE("E8 differs from the tables by exactly the known extra findings") {
  const auto rep = verify_paper(TypeLabel::parse("E8"), embedded_golden());
  CHECK(rep.missing.empty());
  CHECK(rep.violated_negatives.empty());
  std::vector<std::string> extra;
  for (const auto& f : rep.unexpected) extra.push_back(f.str());
  // Every A2-type theta is Weyl-conjugate to {1,3}, so each carries an E6;
  // the G2 at {2,3,4,5,7,8} has closed orbits under brute force as well.
  const std::vector<std::string> expected = {
      "{1,2,3,5,7} G2xA1 restricted", "{1,3,5,6} G2xA2 restricted", "{2,3,4,5,7,8} G2 unrestricted",
      "{2,3,4,5,7,8} G2 restricted",  "{3,4} E6 unrestricted",      "{4,5} E6 unrestricted",
      "{5,6} E6 unrestricted",        "{6,7} E6 unrestricted",      "{8} E6xA1 restricted"};
  CHECK(extra == expected);
}
