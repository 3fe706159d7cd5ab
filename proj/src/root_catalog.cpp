#include "rootproj/root_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rootproj {

namespace {

using Roots = std::vector<Vector>;

Vector e(std::size_t dim, std::size_t i) { return Vector::unit(dim, i); }

// All +-e_i +- e_j with i < j among the first `count` axes.
void add_pm_pairs(Roots& out, std::size_t dim, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) out.push_back(Rational(si) * e(dim, i) + Rational(sj) * e(dim, j));
}

Roots e8_roots() {
  Roots out;
  add_pm_pairs(out, 8, 8);
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    Vector v(8);
    for (std::size_t i = 0; i < 8; ++i) v[i] = Rational((mask >> i) & 1u ? -1 : 1, 2);
    out.push_back(std::move(v));
  }
  return out;
}

Roots bourbaki_e8_simple() {
  const std::size_t n = 8;
  Vector a1(n);
  for (std::size_t i = 0; i < n; ++i) a1[i] = Rational(i == 0 || i == 7 ? 1 : -1, 2);
  Roots s{a1, e(n, 0) + e(n, 1)};
  for (std::size_t i = 1; i <= 6; ++i) s.push_back(e(n, i) - e(n, i - 1));
  return s;
}

Roots orthogonal_to(const Roots& roots, const std::vector<Vector>& normals) {
  Roots out;
  for (const auto& r : roots) {
    if (std::all_of(normals.begin(), normals.end(), [&](const Vector& w) { return dot(r, w).is_zero(); }))
      out.push_back(r);
  }
  return out;
}

}  // namespace

const Vector& RealizedRootSystem::simple_root(int index) const {
  if (index < 1 || index > rank()) throw std::out_of_range("simple_root: index out of range");
  return simple_roots[static_cast<std::size_t>(index - 1)];
}

RationalMatrix cartan_from_simple_roots(const std::vector<Vector>& simple_roots) {
  const std::size_t n = simple_roots.size();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = pairing(simple_roots[i], simple_roots[j]);
  return m;
}

RealizedRootSystem build(const TypeLabel& label) {
  const auto n = static_cast<std::size_t>(label.rank());
  Roots roots;
  Roots simple;
  std::size_t dim = n;
  switch (label.family()) {
    case Family::A: {
      dim = n + 1;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (i != j) roots.push_back(e(dim, i) - e(dim, j));
      for (std::size_t i = 0; i < n; ++i) simple.push_back(e(dim, i) - e(dim, i + 1));
      break;
    }
    case Family::B:
    case Family::C:
    case Family::BC: {
      add_pm_pairs(roots, dim, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (label.family() != Family::C) {
          roots.push_back(e(dim, i));
          roots.push_back(-e(dim, i));
        }
        if (label.family() != Family::B) {
          roots.push_back(Rational(2) * e(dim, i));
          roots.push_back(Rational(-2) * e(dim, i));
        }
      }
      for (std::size_t i = 0; i + 1 < n; ++i) simple.push_back(e(dim, i) - e(dim, i + 1));
      simple.push_back(label.family() == Family::C ? Rational(2) * e(dim, n - 1) : e(dim, n - 1));
      break;
    }
    case Family::D: {
      add_pm_pairs(roots, dim, n);
      for (std::size_t i = 0; i + 1 < n; ++i) simple.push_back(e(dim, i) - e(dim, i + 1));
      simple.push_back(e(dim, n - 2) + e(dim, n - 1));
      break;
    }
    case Family::E: {
      dim = 8;
      const Roots all = e8_roots();
      const Roots s8 = bourbaki_e8_simple();
      simple.assign(s8.begin(), s8.begin() + static_cast<long>(n));
      // E7 is orthogonal to e7+e8; E6 additionally to e6+e8.
      std::vector<Vector> normals;
      if (n <= 7) normals.push_back(e(8, 6) + e(8, 7));
      if (n <= 6) normals.push_back(e(8, 5) + e(8, 7));
      roots = orthogonal_to(all, normals);
      break;
    }
    case Family::F: {
      dim = 4;
      add_pm_pairs(roots, dim, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        roots.push_back(e(dim, i));
        roots.push_back(-e(dim, i));
      }
      for (unsigned mask = 0; mask < 16; ++mask) {
        Vector v(4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = Rational((mask >> i) & 1u ? -1 : 1, 2);
        roots.push_back(std::move(v));
      }
      simple = {e(4, 1) - e(4, 2), e(4, 2) - e(4, 3), e(4, 3),
                Rational(1, 2) * (e(4, 0) - e(4, 1) - e(4, 2) - e(4, 3))};
      break;
    }
    case Family::G: {
      dim = 3;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          roots.push_back(e(3, i) - e(3, j));
          const std::size_t k = 3 - i - j;
          const Vector long_root = Rational(2) * e(3, i) - e(3, j) - e(3, k);
          roots.push_back(long_root);
          roots.push_back(-long_root);
        }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      simple = {e(3, 1) - e(3, 2), e(3, 0) - Rational(2) * e(3, 1) + e(3, 2)};
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  RationalMatrix cartan = cartan_from_simple_roots(simple);
  return RealizedRootSystem{label, dim, std::move(roots), std::move(simple), std::move(cartan)};
}

std::vector<Vector> labesse_e8_simple_roots() {
  const std::size_t n = 8;
  // Axis k-1 holds e_k for k = 1..7; axis 7 holds e_0.
  auto axis = [&](int k) { return e(n, k == 0 ? 7 : static_cast<std::size_t>(k - 1)); };
  Vector a1(n);
  for (int k = 0; k < 8; ++k) {
    const Rational half(k <= 3 ? 1 : -1, 2);
    a1 += half * axis(k);
  }
  std::vector<Vector> s{a1};
  for (int i = 2; i <= 7; ++i) s.push_back(axis(i) - axis(i - 1));
  // Read literally (e_8 = e_0) the last root pairs positively with alpha_1;
  // e_8 = -e_0 is the reading under which this is a simple system.
  s.push_back(-axis(0) - axis(7));
  return s;
}

std::vector<Vector> weyl_orbit(const std::vector<Vector>& generators, std::size_t limit) {
  std::unordered_set<Vector, VectorHash> seen(generators.begin(), generators.end());
  std::deque<Vector> queue(generators.begin(), generators.end());
  while (!queue.empty()) {
    const Vector v = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Vector w = reflect(v, g);
      if (seen.insert(w).second) {
        if (seen.size() > limit) throw std::length_error("weyl_orbit: orbit exceeds limit");
        queue.push_back(std::move(w));
      }
    }
  }
  std::vector<Vector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> simple_root_coordinates(const RealizedRootSystem& sys, const Vector& v) {
  // c . C = (2<v, a_j>/<a_j, a_j>)_j, with C the Cartan matrix in the same convention.
  Vector rhs(static_cast<std::size_t>(sys.rank()));
  for (std::size_t j = 0; j < rhs.dim(); ++j) rhs[j] = pairing(v, sys.simple_roots[j]);
  const Vector c = mat_vec(rhs, invert(sys.cartan));
  Vector back(sys.ambient_dim);
  for (std::size_t i = 0; i < c.dim(); ++i) back += c[i] * sys.simple_roots[i];
  if (back != v) throw std::domain_error("simple_root_coordinates: vector not in the span of the simple roots");
  return c.coords();
}

ThetaSubset::ThetaSubset(std::vector<int> indices, int rank, bool allow_improper)
    : indices_(std::move(indices)), rank_(rank) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("theta: duplicate index");
  for (int i : indices_)
    if (i < 1 || i > rank_)
      throw std::invalid_argument("theta: index " + std::to_string(i) + " outside [1, " + std::to_string(rank_) + "]");
  if (!allow_improper && !proper())
    throw std::invalid_argument("theta must be a proper subset of the simple roots (neither empty nor all)");
}

ThetaSubset ThetaSubset::parse(std::string_view csv, int rank, bool allow_improper) {
  std::vector<int> out;
  std::string token;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || token.size() > 3)
      throw std::invalid_argument("theta: bad index '" + token + "'");
    out.push_back(std::stoi(token));
  }
  return ThetaSubset(std::move(out), rank, allow_improper);
}

bool ThetaSubset::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::string ThetaSubset::csv() const {
  std::string out;
  for (int i : indices_) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

RationalMatrix cartan_subtype(const RealizedRootSystem& sys, const ThetaSubset& theta) {
  std::vector<std::size_t> idx;
  for (int i : theta.indices()) {
    if (i < 1 || i > sys.rank()) throw std::out_of_range("cartan_subtype: index out of range");
    idx.push_back(static_cast<std::size_t>(i - 1));
  }
  return sys.cartan.submatrix(idx);
}

std::vector<ThetaSubset> proper_subsets(int rank) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << rank); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < rank; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<ThetaSubset> out;
  out.reserve(subsets.size());
  for (auto& s : subsets) out.emplace_back(std::move(s), rank);
  return out;
}

}  // namespace rootproj
