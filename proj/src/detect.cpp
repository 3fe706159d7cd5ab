#include "rootproj/detect.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace rootproj {

namespace {

constexpr int kNotCartan = 100;

int small_cartan_int(const Rational& r) {
  if (!r.is_integer()) return kNotCartan;
  if (r < Rational(-3) || r > Rational(3)) return kNotCartan;
  return static_cast<int>(r.to_long());
}

bool off_diagonal_ok(int a, int b) {
  if (a > 0 || b > 0 || a < -3 || b < -3) return false;
  if ((a == 0) != (b == 0)) return false;
  return a * b <= 3;
}

std::optional<TypeLabel> recognize_component(const std::vector<std::size_t>& members, const RationalMatrix& a) {
  const std::size_t r = members.size();
  if (r == 1) return TypeLabel(Family::A, 1);

  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::size_t edges = 0;
  std::size_t doubles = 0;
  std::size_t triples = 0;
  std::pair<std::size_t, std::size_t> double_edge{0, 0};
  for (std::size_t x = 0; x < r; ++x)
    for (std::size_t y = x + 1; y < r; ++y) {
      const std::size_t u = members[x];
      const std::size_t v = members[y];
      if (a(u, v).is_zero()) continue;
      ++edges;
      adj[u].push_back(v);
      adj[v].push_back(u);
      const long mult = (a(u, v) * a(v, u)).to_long();
      if (mult == 2) {
        ++doubles;
        double_edge = {u, v};
      } else if (mult == 3) {
        ++triples;
      }
    }
  if (edges != r - 1) return std::nullopt;  // a connected graph with a cycle

  std::size_t max_degree = 0;
  for (const auto& [node, nb] : adj) max_degree = std::max(max_degree, nb.size());
  const int rank = static_cast<int>(r);

  if (triples > 0) {
    if (r == 2) return TypeLabel(Family::G, 2);
    return std::nullopt;
  }
  if (doubles > 1) return std::nullopt;
  if (doubles == 1) {
    if (max_degree > 2) return std::nullopt;
    if (r == 2) return TypeLabel(Family::B, 2);
    const auto [u, v] = double_edge;
    // a(u, v) / a(v, u) = |u|^2 / |v|^2.
    const std::size_t long_node = a(u, v) == Rational(-2) ? u : v;
    const std::size_t short_node = long_node == u ? v : u;
    if (adj[short_node].size() == 1) return TypeLabel(Family::B, rank);
    if (adj[long_node].size() == 1) return TypeLabel(Family::C, rank);
    if (r == 4) return TypeLabel(Family::F, 4);
    return std::nullopt;
  }
  if (max_degree <= 2) return TypeLabel(Family::A, rank);
  if (max_degree > 3) return std::nullopt;

  std::vector<std::size_t> branches;
  for (const auto& [node, nb] : adj)
    if (nb.size() == 3) branches.push_back(node);
  if (branches.size() != 1) return std::nullopt;
  const std::size_t centre = branches.front();
  std::vector<int> arms;
  for (std::size_t start : adj[centre]) {
    int len = 1;
    std::size_t prev = centre;
    std::size_t cur = start;
    while (adj[cur].size() == 2) {
      const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return TypeLabel(Family::D, arms[2] + 3);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return TypeLabel(Family::E, arms[2] + 4);
  return std::nullopt;
}

TypeLabel basis_class(const TypeLabel& t) {
  // A BC_d component is certified through a B_d simple system.
  if (t.family() == Family::BC) return isomorphism_class(TypeLabel(Family::B, t.rank()));
  return isomorphism_class(t);
}

}  // namespace

// ---------------------------------------------------------------------------

bool PairingMatrix::simple_system_integral() const {
  const std::size_t n = entries.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries(i, i) != Rational(2)) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const int a = small_cartan_int(entries(i, j));
      const int b = small_cartan_int(entries(j, i));
      if (a == kNotCartan || b == kNotCartan || !off_diagonal_ok(a, b)) return false;
    }
  }
  return true;
}

PairingMatrix pairing_matrix(const std::vector<Vector>& basis) {
  for (const auto& b : basis)
    if (b.is_zero()) throw std::invalid_argument("pairing_matrix: zero vector in basis");
  return PairingMatrix{cartan_from_simple_roots(basis)};
}

std::optional<std::vector<MatchedComponent>> match_cartan(const RationalMatrix& cartan) {
  if (!cartan.square() || !PairingMatrix{cartan}.simple_system_integral()) return std::nullopt;
  const std::size_t n = cartan.rows();
  std::vector<int> comp(n, -1);
  std::vector<MatchedComponent> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (v != u && comp[v] < 0 && !cartan(u, v).is_zero()) {
          comp[v] = comp[s];
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    auto label = recognize_component(members, cartan);
    if (!label) return std::nullopt;
    out.push_back(MatchedComponent{*label, std::move(members)});
  }
  return out;
}

std::optional<std::vector<MatchedComponent>> match_type(const std::vector<Vector>& basis) {
  return match_cartan(pairing_matrix(basis).entries);
}

ClosureOutcome reflection_closure(const std::vector<Vector>& basis, const VectorSet& universe, std::size_t limit) {
  ClosureOutcome out;
  VectorSet seen;
  std::vector<Vector> order;
  std::deque<Vector> queue;
  for (const auto& b : basis) {
    if (!universe.contains(b)) {
      out.escaped = b;
      out.roots = order;
      return out;
    }
    if (seen.insert(b).second) {
      order.push_back(b);
      queue.push_back(b);
    }
  }
  while (!queue.empty()) {
    const Vector v = queue.front();
    queue.pop_front();
    for (const auto& b : basis) {
      Vector w = reflect(v, b);
      if (seen.contains(w)) continue;
      if (!universe.contains(w)) {
        out.escaped = std::move(w);
        std::sort(order.begin(), order.end());
        out.roots = std::move(order);
        return out;
      }
      seen.insert(w);
      order.push_back(w);
      if (order.size() > limit) {
        out.overflow = true;
        std::sort(order.begin(), order.end());
        out.roots = std::move(order);
        return out;
      }
      queue.push_back(std::move(w));
    }
  }
  std::sort(order.begin(), order.end());
  out.roots = std::move(order);
  out.ok = true;
  return out;
}

CertificateCheck validate_certificate(const ClosureCertificate& cert, const std::vector<Vector>& universe_list) {
  const VectorSet universe(universe_list.begin(), universe_list.end());
  if (static_cast<int>(cert.basis.size()) != cert.target.rank())
    return {false, "basis size differs from target rank"};

  std::vector<Vector> expected;
  std::size_t offset = 0;
  for (const auto& comp : cert.target.components()) {
    const auto r = static_cast<std::size_t>(comp.rank());
    const std::vector<Vector> slice(cert.basis.begin() + static_cast<long>(offset),
                                    cert.basis.begin() + static_cast<long>(offset + r));
    for (const auto& b : slice)
      if (b.is_zero()) return {false, "zero vector in basis"};
    const auto match = match_type(slice);
    if (!match || match->size() != 1) return {false, "component " + comp.str() + " does not match a single finite type"};
    if (isomorphism_class(match->front().type) != basis_class(comp))
      return {false, "component " + comp.str() + " matched as " + match->front().type.str()};
    for (std::size_t j = 0; j < cert.basis.size(); ++j) {
      if (j >= offset && j < offset + r) continue;
      for (const auto& b : slice)
        if (!dot(b, cert.basis[j]).is_zero()) return {false, "components are not mutually orthogonal"};
    }

    const std::size_t base_count = root_count(comp.family() == Family::BC ? TypeLabel(Family::B, comp.rank()) : comp);
    const ClosureOutcome closure = reflection_closure(slice, universe, base_count);
    if (!closure.ok) {
      return {false, "closure of " + comp.str() + " failed" +
                         (closure.escaped ? ": " + closure.escaped->str() + " escapes" : std::string(": overflow"))};
    }
    if (closure.roots.size() != base_count) return {false, "closure of " + comp.str() + " has wrong size"};
    expected.insert(expected.end(), closure.roots.begin(), closure.roots.end());
    if (comp.family() == Family::BC) {
      Rational shortest = norm2(closure.roots.front());
      for (const auto& v : closure.roots) shortest = std::min(shortest, norm2(v));
      for (const auto& v : closure.roots) {
        if (norm2(v) != shortest) continue;
        Vector twice = Rational(2) * v;
        if (!universe.contains(twice)) return {false, "BC component lacks " + twice.str()};
        expected.push_back(std::move(twice));
      }
    }
    offset += r;
  }
  std::sort(expected.begin(), expected.end());
  if (std::adjacent_find(expected.begin(), expected.end()) != expected.end())
    return {false, "components overlap"};
  if (expected.size() != cert.target.root_count()) return {false, "generated root count differs from target"};
  if (expected != cert.generated_roots) return {false, "generated roots differ from recomputed closure"};

  const VectorSet generated(expected.begin(), expected.end());
  for (const auto& v : expected) {
    if (!universe.contains(v)) return {false, v.str() + " not in universe"};
    for (const auto& b : cert.basis)
      if (!generated.contains(reflect(v, b))) return {false, "generated roots not closed under reflections"};
  }
  return {true, ""};
}

bool census_plausible(const NormCensus& census, const CompositeType& target) {
  for (const auto& comp : target.components()) {
    const auto profile = length_profile(comp);
    bool ok = false;
    for (const auto& [norm, count] : census.entries) {
      ok = std::all_of(profile.begin(), profile.end(),
                       [&](const auto& p) { return census.count(norm * p.first) >= p.second; });
      if (ok) break;
    }
    if (!ok) return false;
  }
  return census.total() >= target.root_count();
}

// ---------------------------------------------------------------------------

struct SubsystemSearch::Impl {
  struct Plan {
    TypeLabel label;
    std::vector<std::vector<int>> cartan;  // small integers
    std::vector<std::size_t> order;        // BFS order of nodes
    std::vector<int> parent;               // by node, -1 for the root
    std::size_t closure_limit;
    bool bc;
  };

  std::vector<Vector> vecs;
  std::unordered_map<Vector, int, VectorHash> index;
  std::vector<Rational> norms;
  std::vector<Rational> gram;
  std::vector<char> orthogonal;
  std::vector<int> cint;
  std::vector<int> refl;
  std::vector<int> lex_pool;
  std::vector<int> delta_pool;
  std::vector<Vector> delta;
  NormCensus census;
  int d = 0;
  std::uint64_t nodes = 0;

  // Per-search state.
  std::vector<Plan> plans;
  std::vector<std::vector<int>> chosen;
  std::vector<std::vector<int>> closures;
  std::vector<char> used;
  std::vector<int> mark;
  int stamp = 0;
  bool restricted = false;

  explicit Impl(const ProjectionResult& pr)
      : vecs(pr.sigma_theta), delta(pr.delta_theta), census(pr.census), d(pr.d) {
    const std::size_t n = vecs.size();
    for (std::size_t i = 0; i < n; ++i) index.emplace(vecs[i], static_cast<int>(i));
    norms.reserve(n);
    for (const auto& v : vecs) norms.push_back(norm2(v));
    gram.resize(n * n);
    orthogonal.resize(n * n);
    cint.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Rational g = dot(vecs[i], vecs[j]);
        gram[i * n + j] = g;
        gram[j * n + i] = g;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& g = gram[i * n + j];
        orthogonal[i * n + j] = g.is_zero();
        cint[i * n + j] = small_cartan_int(Rational(2) * g / norms[j]);
      }
    refl.assign(n * n, -2);
    for (std::size_t i = 0; i < n; ++i)
      if (vecs[i].lex_positive()) lex_pool.push_back(static_cast<int>(i));
    for (const auto& v : pr.delta_theta) {
      const int idx = lookup(v);
      if (idx < 0) throw ConsistencyError("delta_theta entry " + v.str() + " missing from sigma_theta");
      delta_pool.push_back(idx);
    }
    std::sort(delta_pool.begin(), delta_pool.end());
    delta_pool.erase(std::unique(delta_pool.begin(), delta_pool.end()), delta_pool.end());
    mark.assign(n, 0);
  }

  std::size_t size() const { return vecs.size(); }

  int lookup(const Vector& v) const {
    const auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }

  int reflect_index(int v, int b) {
    const std::size_t n = size();
    int& slot = refl[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(b)];
    if (slot != -2) return slot;
    const Rational& g = gram[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(b)];
    if (g.is_zero()) {
      slot = v;
    } else {
      const Rational coeff = Rational(2) * g / norms[static_cast<std::size_t>(b)];
      slot = lookup(vecs[static_cast<std::size_t>(v)] - coeff * vecs[static_cast<std::size_t>(b)]);
    }
    return slot;
  }

  static Plan make_plan(const TypeLabel& label) {
    const TypeLabel shape = label.family() == Family::BC ? TypeLabel(Family::B, label.rank()) : label;
    const RationalMatrix a = standard_cartan(shape);
    const std::size_t r = a.rows();
    Plan p{label, std::vector<std::vector<int>>(r, std::vector<int>(r)), {}, std::vector<int>(r, -1),
           root_count(shape), label.family() == Family::BC};
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) p.cartan[i][j] = static_cast<int>(a(i, j).to_long());
    std::vector<char> seen(r, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      p.order.push_back(u);
      for (std::size_t v = 0; v < r; ++v) {
        if (!seen[v] && p.cartan[u][v] != 0) {
          seen[v] = 1;
          p.parent[v] = static_cast<int>(u);
          queue.push_back(v);
        }
      }
    }
    return p;
  }

  // Reflection closure of the first `count` nodes (in BFS order) of component c.
  bool partial_closure(std::size_t c, std::size_t count) {
    const Plan& plan = plans[c];
    std::vector<int> basis;
    basis.reserve(count);
    for (std::size_t k = 0; k < count; ++k) basis.push_back(chosen[c][plan.order[k]]);
    ++stamp;
    std::vector<int>& orbit = closures[c];
    orbit.clear();
    for (int b : basis) {
      if (mark[static_cast<std::size_t>(b)] != stamp) {
        mark[static_cast<std::size_t>(b)] = stamp;
        orbit.push_back(b);
      }
    }
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const int v = orbit[head];
      for (int b : basis) {
        const int w = reflect_index(v, b);
        if (w < 0) return false;
        if (mark[static_cast<std::size_t>(w)] == stamp) continue;
        mark[static_cast<std::size_t>(w)] = stamp;
        orbit.push_back(w);
        if (orbit.size() > plan.closure_limit) return false;
      }
    }
    return true;
  }

  bool bc_doubles_present(std::size_t c) const {
    const auto& orbit = closures[c];
    Rational shortest = norms[static_cast<std::size_t>(orbit.front())];
    for (int v : orbit) shortest = std::min(shortest, norms[static_cast<std::size_t>(v)]);
    for (int v : orbit) {
      if (norms[static_cast<std::size_t>(v)] != shortest) continue;
      if (lookup(Rational(2) * vecs[static_cast<std::size_t>(v)]) < 0) return false;
    }
    return true;
  }

  bool search_component(std::size_t c) {
    if (c == plans.size()) return true;
    std::vector<int> pool;
    const std::size_t n = size();
    // Classical factors of a reducible target are searched in all of sigma_theta.
    const bool from_delta = restricted && (plans.size() == 1 || plans[c].label.exceptional());
    for (int i : from_delta ? delta_pool : lex_pool) {
      if (used[static_cast<std::size_t>(i)]) continue;
      bool ok = true;
      for (std::size_t prev = 0; prev < c && ok; ++prev)
        for (int x : chosen[prev])
          if (!orthogonal[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(x)]) {
            ok = false;
            break;
          }
      if (ok) pool.push_back(i);
    }
    if (pool.size() < plans[c].order.size()) return false;
    return assign(c, 0, pool);
  }

  bool assign(std::size_t c, std::size_t k, const std::vector<int>& pool) {
    const Plan& plan = plans[c];
    if (k == plan.order.size()) {
      if (plan.bc && !bc_doubles_present(c)) return false;
      return search_component(c + 1);
    }
    const std::size_t n = size();
    const std::size_t node = plan.order[k];
    const int parent = plan.parent[node];
    for (int idx : pool) {
      const auto ui = static_cast<std::size_t>(idx);
      if (used[ui]) continue;
      ++nodes;
      if (parent >= 0) {
        const auto up = static_cast<std::size_t>(chosen[c][static_cast<std::size_t>(parent)]);
        if (cint[ui * n + up] != plan.cartan[node][static_cast<std::size_t>(parent)] ||
            cint[up * n + ui] != plan.cartan[static_cast<std::size_t>(parent)][node])
          continue;
      }
      bool ok = true;
      for (std::size_t q = 0; q < k && ok; ++q) {
        const std::size_t other = plan.order[q];
        if (static_cast<int>(other) == parent) continue;
        ok = orthogonal[ui * n + static_cast<std::size_t>(chosen[c][other])];
      }
      if (!ok) continue;
      chosen[c][node] = idx;
      used[ui] = 1;
      if (partial_closure(c, k + 1) && assign(c, k + 1, pool)) return true;
      used[ui] = 0;
      chosen[c][node] = -1;
    }
    return false;
  }

  DetectionReport find(const CompositeType& target, bool restricted) {
    DetectionReport report{target, false, restricted, false, std::nullopt};
    if (target.rank() != d || !census_plausible(census, target)) return report;

    plans.clear();
    chosen.clear();
    closures.clear();
    for (const auto& comp : target.components()) {
      plans.push_back(make_plan(comp));
      chosen.emplace_back(static_cast<std::size_t>(comp.rank()), -1);
      closures.emplace_back();
    }
    used.assign(size(), 0);
    this->restricted = restricted;
    if (!search_component(0)) return report;

    ClosureCertificate cert{{}, {}, target};
    for (std::size_t c = 0; c < plans.size(); ++c) {
      for (int idx : chosen[c]) cert.basis.push_back(vecs[static_cast<std::size_t>(idx)]);
      for (int idx : closures[c]) cert.generated_roots.push_back(vecs[static_cast<std::size_t>(idx)]);
      if (plans[c].bc) {
        const auto& orbit = closures[c];
        Rational shortest = norms[static_cast<std::size_t>(orbit.front())];
        for (int v : orbit) shortest = std::min(shortest, norms[static_cast<std::size_t>(v)]);
        for (int v : orbit)
          if (norms[static_cast<std::size_t>(v)] == shortest)
            cert.generated_roots.push_back(Rational(2) * vecs[static_cast<std::size_t>(v)]);
      }
    }
    std::sort(cert.generated_roots.begin(), cert.generated_roots.end());
    const CertificateCheck check = validate_certificate(cert, vecs);
    if (!check.valid) throw ConsistencyError("detector produced an invalid certificate for " + target.str() + ": " + check.reason);

    report.found = true;
    report.basis_from_delta_theta = std::all_of(cert.basis.begin(), cert.basis.end(), [&](const Vector& b) {
      return std::find(delta.begin(), delta.end(), b) != delta.end();
    });
    report.certificate = std::move(cert);
    return report;
  }
};

SubsystemSearch::SubsystemSearch(const ProjectionResult& pr) : impl_(std::make_unique<Impl>(pr)) {}
SubsystemSearch::~SubsystemSearch() = default;
SubsystemSearch::SubsystemSearch(SubsystemSearch&&) noexcept = default;
SubsystemSearch& SubsystemSearch::operator=(SubsystemSearch&&) noexcept = default;

DetectionReport SubsystemSearch::find(const CompositeType& target, bool restricted) {
  return impl_->find(target, restricted);
}

std::uint64_t SubsystemSearch::nodes_visited() const { return impl_->nodes; }

DetectionReport find_subsystem(const ProjectionResult& pr, const CompositeType& target, bool restricted) {
  return SubsystemSearch(pr).find(target, restricted);
}

std::vector<DetectionReport> classify_max_rank(const ProjectionResult& pr, bool reducible, bool require_exceptional,
                                               bool restricted) {
  SubsystemSearch search(pr);
  std::vector<DetectionReport> out;
  for (const auto& target : detection_targets(pr.d, reducible, require_exceptional))
    out.push_back(search.find(target, restricted));
  return out;
}

}  // namespace rootproj
