#include "rootproj/type_label.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace rootproj {

namespace {

int family_order(Family f) {
  switch (f) {
    case Family::E: return 0;
    case Family::F: return 1;
    case Family::G: return 2;
    case Family::A: return 3;
    case Family::B: return 4;
    case Family::C: return 5;
    case Family::D: return 6;
    case Family::BC: return 7;
  }
  return 8;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Dynkin data: squared lengths of the simple roots and the edges (0-based).
struct DynkinData {
  std::vector<Rational> norms;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

DynkinData dynkin_data(const TypeLabel& t) {
  const auto n = static_cast<std::size_t>(t.rank());
  DynkinData data;
  data.norms.assign(n, Rational(2));
  auto chain = [&](std::size_t upto) {
    for (std::size_t i = 0; i + 1 < upto; ++i) data.edges.emplace_back(i, i + 1);
  };
  switch (t.family()) {
    case Family::A:
      chain(n);
      break;
    case Family::B:
    case Family::BC:
      chain(n);
      data.norms[n - 1] = 1;
      break;
    case Family::C:
      chain(n);
      data.norms[n - 1] = 4;
      break;
    case Family::D:
      if (n >= 3) {
        chain(n - 1);
        data.edges.emplace_back(n - 3, n - 1);
      }
      break;
    case Family::E:
      // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
      data.edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}};
      if (n >= 7) data.edges.emplace_back(5, 6);
      if (n >= 8) data.edges.emplace_back(6, 7);
      break;
    case Family::F:
      chain(4);
      data.norms[2] = 1;
      data.norms[3] = 1;
      break;
    case Family::G:
      chain(2);
      data.norms[1] = 6;
      break;
  }
  return data;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::BC: return "BC";
  }
  return "?";
}

bool is_exceptional(Family f) { return f == Family::E || f == Family::F || f == Family::G; }

TypeLabel::TypeLabel(Family family, int rank) : family_(family), rank_(rank) {
  bool ok = rank >= 1;
  switch (family) {
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
    case Family::D: ok = rank >= 2; break;
    default: break;
  }
  if (!ok) {
    throw std::invalid_argument("invalid type label " + std::string(family_name(family)) + std::to_string(rank));
  }
}

TypeLabel TypeLabel::parse(std::string_view text) {
  const std::string s = upper(text);
  std::size_t pos = 0;
  Family family;
  if (s.rfind("BC", 0) == 0) {
    family = Family::BC;
    pos = 2;
  } else if (!s.empty()) {
    switch (s[0]) {
      case 'A': family = Family::A; break;
      case 'B': family = Family::B; break;
      case 'C': family = Family::C; break;
      case 'D': family = Family::D; break;
      case 'E': family = Family::E; break;
      case 'F': family = Family::F; break;
      case 'G': family = Family::G; break;
      default: throw std::invalid_argument("unknown root system family in '" + std::string(text) + "'");
    }
    pos = 1;
  } else {
    throw std::invalid_argument("empty type label");
  }
  const std::string digits = s.substr(pos);
  if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad rank in type label '" + std::string(text) + "'");
  }
  return TypeLabel(family, std::stoi(digits));
}

std::string TypeLabel::str() const { return std::string(family_name(family_)) + std::to_string(rank_); }

std::ostream& operator<<(std::ostream& os, const TypeLabel& t) { return os << t.str(); }

std::size_t root_count(const TypeLabel& t) {
  const auto n = static_cast<std::size_t>(t.rank());
  switch (t.family()) {
    case Family::A: return n * (n + 1);
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::BC: return 2 * n * n + 2 * n;
    case Family::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
    case Family::F: return 48;
    case Family::G: return 12;
  }
  return 0;
}

TypeLabel isomorphism_class(const TypeLabel& t) {
  if ((t.family() == Family::B || t.family() == Family::C) && t.rank() == 1) return TypeLabel(Family::A, 1);
  if (t.family() == Family::C && t.rank() == 2) return TypeLabel(Family::B, 2);
  if (t.family() == Family::D && t.rank() == 3) return TypeLabel(Family::A, 3);
  return t;
}

std::vector<std::pair<Rational, std::size_t>> length_profile(const TypeLabel& label) {
  const TypeLabel t = isomorphism_class(label);
  const auto n = static_cast<std::size_t>(t.rank());
  std::vector<std::pair<Rational, std::size_t>> out;
  switch (t.family()) {
    case Family::B: out = {{1, 2 * n}, {2, 2 * n * (n - 1)}}; break;
    case Family::C: out = {{1, 2 * n * (n - 1)}, {2, 2 * n}}; break;
    case Family::BC: out = {{1, 2 * n}, {2, 2 * n * (n - 1)}, {4, 2 * n}}; break;
    case Family::F: out = {{1, 24}, {2, 24}}; break;
    case Family::G: out = {{1, 6}, {3, 6}}; break;
    default: out = {{1, root_count(t)}}; break;
  }
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  return out;
}

RationalMatrix standard_cartan(const TypeLabel& t) {
  const DynkinData data = dynkin_data(t);
  const std::size_t n = data.norms.size();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  for (const auto& [i, j] : data.edges) {
    // Adjacent simple roots satisfy <a_i, a_j> = -max(|a_i|^2, |a_j|^2) / 2.
    const Rational inner = -std::max(data.norms[i], data.norms[j]) / Rational(2);
    m(i, j) = Rational(2) * inner / data.norms[j];
    m(j, i) = Rational(2) * inner / data.norms[i];
  }
  return m;
}

bool canonical_component_less(const TypeLabel& a, const TypeLabel& b) {
  const int fa = family_order(a.family());
  const int fb = family_order(b.family());
  if (fa != fb) return fa < fb;
  return a.rank() > b.rank();
}

CompositeType::CompositeType(std::vector<TypeLabel> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("CompositeType: no components");
  std::stable_sort(components_.begin(), components_.end(), canonical_component_less);
}

CompositeType CompositeType::parse(std::string_view text) {
  std::vector<TypeLabel> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == 'x' || text[i] == 'X' || text[i] == '*') {
      if (i == start) throw std::invalid_argument("empty component in type '" + std::string(text) + "'");
      parts.push_back(TypeLabel::parse(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return CompositeType(std::move(parts));
}

bool CompositeType::has_exceptional() const {
  return std::any_of(components_.begin(), components_.end(), [](const TypeLabel& t) { return t.exceptional(); });
}

bool CompositeType::reduced() const {
  return std::all_of(components_.begin(), components_.end(), [](const TypeLabel& t) { return t.reduced(); });
}

int CompositeType::rank() const {
  int r = 0;
  for (const auto& c : components_) r += c.rank();
  return r;
}

std::size_t CompositeType::root_count() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += rootproj::root_count(c);
  return n;
}

std::string CompositeType::str() const {
  std::string out;
  for (const auto& c : components_) {
    if (!out.empty()) out += 'x';
    out += c.str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const CompositeType& t) { return os << t.str(); }

std::vector<TypeLabel> irreducible_targets(int d) {
  std::vector<TypeLabel> out;
  if (d < 1) return out;
  out.emplace_back(Family::A, d);
  if (d >= 2) out.emplace_back(Family::B, d);
  if (d >= 2) out.emplace_back(Family::C, d);
  if (d >= 4) out.emplace_back(Family::D, d);
  if (d >= 6 && d <= 8) out.emplace_back(Family::E, d);
  if (d == 4) out.emplace_back(Family::F, 4);
  if (d == 2) out.emplace_back(Family::G, 2);
  out.emplace_back(Family::BC, d);
  return out;
}

std::vector<CompositeType> detection_targets(int d, bool reducible, bool require_exceptional) {
  std::vector<CompositeType> out;
  if (d < 1) return out;
  for (const auto& t : irreducible_targets(d)) {
    if (!require_exceptional || t.exceptional()) out.emplace_back(t);
  }
  if (!reducible) return out;

  // Multisets of irreducible labels: enumerate non-increasing rank sequences,
  // then every label choice per part, and canonicalize to drop permutations.
  std::set<std::string> seen;
  std::vector<CompositeType> products;
  std::vector<TypeLabel> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      if (current.size() < 2) return;
      CompositeType c(current);
      if (require_exceptional && !c.has_exceptional()) return;
      if (seen.insert(c.str()).second) products.push_back(std::move(c));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      for (const auto& label : irreducible_targets(part)) {
        current.push_back(label);
        rec(remaining - part, part);
        current.pop_back();
      }
    }
  };
  rec(d, d);
  std::sort(products.begin(), products.end(),
            [](const CompositeType& a, const CompositeType& b) { return a.str() < b.str(); });
  out.insert(out.end(), products.begin(), products.end());
  return out;
}

}  // namespace rootproj
