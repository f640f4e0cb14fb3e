#include "zdgenus/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "zdgenus/finite_ring.hpp"

namespace zdgenus {

Graph::Graph(std::size_t n) : labels_(n), adj_(n * n, 0), nbrs_(n) {
  for (std::size_t v = 0; v < n; ++v) labels_[v] = std::to_string(v);
}

Graph::Graph(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size() * labels_.size(), 0), nbrs_(labels_.size()) {}

int Graph::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return -1;
  return static_cast<int>(it - labels_.begin());
}

void Graph::add_edge(int u, int v) {
  const auto n = static_cast<int>(order());
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw GraphError(GraphError::Kind::InvalidEdge, "edge endpoint out of range");
  }
  if (u == v) throw GraphError(GraphError::Kind::InvalidEdge, "loops are not allowed");
  if (adjacent(u, v)) return;
  const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
  adj_[su * order() + sv] = adj_[sv * order() + su] = 1;
  nbrs_[su].insert(std::lower_bound(nbrs_[su].begin(), nbrs_[su].end(), v), v);
  nbrs_[sv].insert(std::lower_bound(nbrs_[sv].begin(), nbrs_[sv].end(), u), u);
  ++edge_count_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < static_cast<int>(order()); ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<std::string> labels;
  std::vector<int> pos(order(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    labels.push_back(label(vertices[i]));
    pos[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  }
  Graph h(std::move(labels));
  for (auto [u, v] : edges()) {
    int a = pos[static_cast<std::size_t>(u)], b = pos[static_cast<std::size_t>(v)];
    if (a >= 0 && b >= 0) h.add_edge(a, b);
  }
  return h;
}

Graph Graph::permuted(const std::vector<int>& perm) const {
  std::vector<std::string> labels(order());
  for (std::size_t v = 0; v < order(); ++v) labels[static_cast<std::size_t>(perm[v])] = labels_[v];
  Graph h(std::move(labels));
  for (auto [u, v] : edges()) h.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return h;
}

bool Graph::operator==(const Graph& other) const {
  return labels_ == other.labels_ && adj_ == other.adj_;
}

Graph zero_divisor_graph(const FiniteRing& ring) {
  const auto& zd = ring.zero_divisors();
  std::vector<std::string> labels;
  labels.reserve(zd.size());
  for (auto a : zd) labels.push_back(ring.label(a));
  Graph g(std::move(labels));
  for (std::size_t i = 0; i < zd.size(); ++i) {
    for (std::size_t j = i + 1; j < zd.size(); ++j) {
      if (ring.mul(zd[i], zd[j]) == ring.zero()) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

Graph reduce(const Graph& g) {
  std::vector<int> keep;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    if (g.degree(v) != 1) keep.push_back(v);
  }
  return g.induced(keep);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(g.order(), 0);
  for (int s = 0; s < static_cast<int>(g.order()); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> comp{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int w : g.neighbors(comp[head])) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

// ---------------------------------------------------------------- canonical form

namespace {

using Partition = std::vector<std::vector<int>>;

void refine(const Graph& g, Partition& cells) {
  const std::size_t n = g.order();
  while (true) {
    std::vector<int> cell_of(n);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) cell_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
    Partition next;
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (int v : cell) {
        std::vector<int> counts(cells.size(), 0);
        for (int w : g.neighbors(v)) ++counts[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(w)])];
        sig.emplace_back(std::move(counts), v);
      }
      std::stable_sort(sig.begin(), sig.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      std::vector<int> cur{sig[0].second};
      for (std::size_t i = 1; i < sig.size(); ++i) {
        if (sig[i].first != sig[i - 1].first) {
          next.push_back(std::move(cur));
          cur.clear();
        }
        cur.push_back(sig[i].second);
      }
      next.push_back(std::move(cur));
    }
    bool done = next.size() == cells.size();
    cells = std::move(next);
    if (done) return;
  }
}

bool twins(const Graph& g, int u, int v) {
  for (int w = 0; w < static_cast<int>(g.order()); ++w) {
    if (w == u || w == v) continue;
    if (g.adjacent(u, w) != g.adjacent(v, w)) return false;
  }
  return true;
}

struct CanonSearch {
  const Graph& g;
  std::vector<char> best_bits;
  std::vector<int> best_perm;

  void leaf(const Partition& cells) {
    const std::size_t n = g.order();
    std::vector<int> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = cells[i][0];
    std::vector<char> bits;
    bits.reserve(n * (n - 1) / 2);
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) bits.push_back(g.adjacent(inv[i], inv[j]) ? 1 : 0);
    }
    if (best_perm.empty() || bits > best_bits) {
      best_bits = std::move(bits);
      best_perm.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) best_perm[static_cast<std::size_t>(inv[i])] = static_cast<int>(i);
    }
  }

  void search(Partition cells) {
    refine(g, cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() > 1) {
        target = c;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<int> tried;
    for (int v : cells[target]) {
      bool redundant = false;
      for (int u : tried) {
        if (twins(g, u, v)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
      tried.push_back(v);
      Partition next;
      next.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          next.push_back(cells[c]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int w : cells[c]) {
          if (w != v) rest.push_back(w);
        }
        next.push_back(std::move(rest));
      }
      search(std::move(next));
    }
  }
};

}  // namespace

std::vector<int> canonical_labeling(const Graph& g) {
  if (g.order() == 0) return {};
  CanonSearch cs{g, {}, {}};
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  cs.search(Partition{all});
  return cs.best_perm;
}

bool is_isomorphic(const Graph& g1, const Graph& g2, std::vector<int>* mapping) {
  if (g1.order() > 64 || g2.order() > 64) {
    throw GraphError(GraphError::Kind::SizeLimit, "isomorphism test limited to 64 vertices");
  }
  if (g1.order() != g2.order() || g1.size() != g2.size()) return false;
  std::vector<int> d1, d2;
  for (int v = 0; v < static_cast<int>(g1.order()); ++v) {
    d1.push_back(g1.degree(v));
    d2.push_back(g2.degree(v));
  }
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  if (d1 != d2) return false;
  auto p1 = canonical_labeling(g1), p2 = canonical_labeling(g2);
  if (encode_graph6(g1.permuted(p1)) != encode_graph6(g2.permuted(p2))) return false;
  if (mapping) {
    std::vector<int> inv2(g2.order());
    for (std::size_t v = 0; v < g2.order(); ++v) inv2[static_cast<std::size_t>(p2[v])] = static_cast<int>(v);
    mapping->assign(g1.order(), 0);
    for (std::size_t v = 0; v < g1.order(); ++v) (*mapping)[v] = inv2[static_cast<std::size_t>(p1[v])];
  }
  return true;
}

// ---------------------------------------------------------------- subgraphs

SubgraphWitness max_clique(const Graph& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });

  std::vector<int> best, current;
  // Greedy colouring bound on the candidate set.
  auto colour_bound = [&](const std::vector<int>& cand) {
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      bool placed = false;
      for (auto& cls : classes) {
        bool ok = std::none_of(cls.begin(), cls.end(), [&](int u) { return g.adjacent(u, v); });
        if (ok) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    return classes.size();
  };
  std::function<void(std::vector<int>)> expand = [&](std::vector<int> cand) {
    if (cand.empty()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    if (current.size() + colour_bound(cand) <= best.size()) return;
    while (!cand.empty()) {
      if (current.size() + cand.size() <= best.size()) return;
      int v = cand.front();
      cand.erase(cand.begin());
      std::vector<int> next;
      for (int w : cand) {
        if (g.adjacent(v, w)) next.push_back(w);
      }
      current.push_back(v);
      expand(next);
      current.pop_back();
    }
  };
  expand(order);
  std::sort(best.begin(), best.end());
  return SubgraphWitness{SubgraphWitness::Kind::Clique, best, {}};
}

std::optional<SubgraphWitness> find_clique(const Graph& g, int n) {
  if (n <= 0) return SubgraphWitness{SubgraphWitness::Kind::Clique, {}, {}};
  auto w = max_clique(g);
  if (static_cast<int>(w.side_a.size()) < n) return std::nullopt;
  w.side_a.resize(static_cast<std::size_t>(n));
  return w;
}

namespace {

// Calls visit(A, common) for every m-subset A (lexicographic) whose members
// all have degree >= min_degree; stops when visit returns true.
template <typename Visit>
void for_each_subset(const Graph& g, int m, int min_degree, Visit visit) {
  std::vector<int> cand;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    if (g.degree(v) >= min_degree) cand.push_back(v);
  }
  std::vector<int> chosen;
  std::function<bool(std::size_t, const std::vector<int>&)> rec =
      [&](std::size_t from, const std::vector<int>& common) -> bool {
    if (static_cast<int>(chosen.size()) == m) return visit(chosen, common);
    for (std::size_t i = from; i < cand.size(); ++i) {
      int v = cand[i];
      std::vector<int> next;
      if (chosen.empty()) {
        next = g.neighbors(v);
      } else {
        for (int w : common) {
          if (g.adjacent(v, w)) next.push_back(w);
        }
      }
      if (static_cast<int>(next.size()) < min_degree) continue;
      chosen.push_back(v);
      bool stop = rec(i + 1, next);
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  };
  rec(0, {});
}

void check_m(int m) {
  if (m > 4) throw GraphError(GraphError::Kind::MSideTooLarge, "biclique small side limited to 4");
  if (m < 1) throw GraphError(GraphError::Kind::MSideTooLarge, "biclique side must be positive");
}

}  // namespace

std::optional<SubgraphWitness> find_biclique(const Graph& g, int m, int n) {
  check_m(m);
  std::optional<SubgraphWitness> found;
  for_each_subset(g, m, std::max(n, 1), [&](const std::vector<int>& a, const std::vector<int>& common) {
    if (static_cast<int>(common.size()) < n) return false;
    found = SubgraphWitness{SubgraphWitness::Kind::Biclique, a,
                            std::vector<int>(common.begin(), common.begin() + n)};
    return true;
  });
  return found;
}

std::optional<SubgraphWitness> max_biclique(const Graph& g, int m) {
  check_m(m);
  std::optional<SubgraphWitness> best;
  int best_n = 0;
  for_each_subset(g, m, 1, [&](const std::vector<int>& a, const std::vector<int>& common) {
    if (static_cast<int>(common.size()) > best_n) {
      best_n = static_cast<int>(common.size());
      best = SubgraphWitness{SubgraphWitness::Kind::Biclique, a, common};
    }
    return false;
  });
  return best;
}

bool verify_witness(const Graph& g, const SubgraphWitness& w) {
  auto in_range = [&](int v) { return v >= 0 && v < static_cast<int>(g.order()); };
  if (!std::all_of(w.side_a.begin(), w.side_a.end(), in_range)) return false;
  if (!std::all_of(w.side_b.begin(), w.side_b.end(), in_range)) return false;
  if (w.kind == SubgraphWitness::Kind::Clique) {
    for (std::size_t i = 0; i < w.side_a.size(); ++i) {
      for (std::size_t j = i + 1; j < w.side_a.size(); ++j) {
        if (!g.adjacent(w.side_a[i], w.side_a[j])) return false;
      }
    }
    return true;
  }
  for (int a : w.side_a) {
    for (int b : w.side_b) {
      if (a == b || !g.adjacent(a, b)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- named graphs

namespace {

Graph complete(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph complete_bipartite(int m, int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= m; ++i) labels.push_back("a" + std::to_string(i));
  for (int j = 1; j <= n; ++j) labels.push_back("b" + std::to_string(j));
  Graph g(std::move(labels));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
  }
  return g;
}

Graph path(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph from_edges(std::vector<std::string> labels,
                 const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g(std::move(labels));
  for (const auto& [a, b] : edges) g.add_edge(g.index_of(a), g.index_of(b));
  return g;
}

}  // namespace

Graph named_graph(const std::string& name) {
  std::smatch m;
  static const std::regex kn(R"(K\(?(\d+)\)?)");
  static const std::regex kmn(R"(K\(?(\d+),(\d+)\)?)");
  static const std::regex pn(R"(P\(?(\d+)\)?)");
  auto num = [](const std::ssub_match& s) {
    int v = std::stoi(s.str());
    if (v < 1 || v > 1000) throw GraphError(GraphError::Kind::UnknownName, "size out of range");
    return v;
  };
  if (name == "K1114") {
    std::vector<std::string> labels{"c1", "c2", "c3", "d1", "d2", "d3", "d4"};
    Graph g(labels);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 7; ++j) g.add_edge(i, j);
    }
    return g;
  }
  if (std::regex_match(name, m, kmn)) return complete_bipartite(num(m[1]), num(m[2]));
  if (std::regex_match(name, m, kn)) return complete(num(m[1]));
  if (std::regex_match(name, m, pn)) return path(num(m[1]));
  if (name == "G1") {
    std::vector<std::string> labels{"v1", "v2", "u1", "u2", "u3", "u4", "u5", "u6"};
    std::vector<std::pair<std::string, std::string>> edges{{"v1", "v2"}};
    for (int i = 1; i <= 6; ++i) {
      edges.emplace_back("v1", "u" + std::to_string(i));
      edges.emplace_back("v2", "u" + std::to_string(i));
    }
    return from_edges(labels, edges);
  }
  if (name == "G2") {
    std::vector<std::string> labels{"u", "v1", "v2", "v3", "v4", "v5", "v6"};
    std::vector<std::pair<std::string, std::string>> edges{{"v3", "v4"}};
    for (int i = 1; i <= 6; ++i) edges.emplace_back("u", "v" + std::to_string(i));
    return from_edges(labels, edges);
  }
  if (name == "G3") return zero_divisor_graph(realize("Z2[x,y]/(x^3,x*y,y^2-x^2)"));
  if (name == "G4") return zero_divisor_graph(realize("Z4[x]/(x^2)"));
  if (name == "G5") return zero_divisor_graph(realize("Z32"));
  if (name == "G6") {
    std::vector<std::string> labels{"u1", "u2", "u3", "v1", "v2", "v3", "v4", "v5", "w1", "w2", "w3"};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 5; ++j) edges.emplace_back("u" + std::to_string(i), "v" + std::to_string(j));
    }
    // v4 = (0,1,0) and v5 = (0,2,0) annihilate v1 = (1,0,0) but not v2, v3.
    for (int r = 4; r <= 5; ++r) {
      edges.emplace_back("v" + std::to_string(r), "v1");
      for (int j = 1; j <= 3; ++j) edges.emplace_back("v" + std::to_string(r), "w" + std::to_string(j));
    }
    return from_edges(labels, edges);
  }
  throw GraphError(GraphError::Kind::UnknownName, "unknown graph name: " + name);
}

// ---------------------------------------------------------------- serialization

std::string encode_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 62) throw GraphError(GraphError::Kind::TooLarge, "graph6 short form needs |V| <= 62");
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0);
      if (++nbits == 6) {
        out += static_cast<char>(63 + acc);
        acc = nbits = 0;
      }
    }
  }
  if (nbits > 0) out += static_cast<char>(63 + (acc << (6 - nbits)));
  return out;
}

std::string export_graph6(const Graph& g) {
  if (g.order() > 62) throw GraphError(GraphError::Kind::TooLarge, "graph6 short form needs |V| <= 62");
  return encode_graph6(g.permuted(canonical_labeling(g)));
}

Graph parse_graph6(const std::string& input) {
  std::string text = input;
  const std::string header = ">>graph6<<";
  if (text.rfind(header, 0) == 0) text = text.substr(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  if (text.empty()) throw GraphError(GraphError::Kind::InvalidGraph6, "empty graph6 string");
  for (char c : text) {
    if (c < 63 || c > 126) throw GraphError(GraphError::Kind::InvalidGraph6, "invalid graph6 character");
  }
  const std::size_t n = static_cast<std::size_t>(text[0] - 63);
  if (n > 62) throw GraphError(GraphError::Kind::InvalidGraph6, "only the short graph6 form is supported");
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  if (text.size() != 1 + (bits + 5) / 6) {
    throw GraphError(GraphError::Kind::InvalidGraph6, "graph6 length does not match vertex count");
  }
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      int chunk = text[1 + k / 6] - 63;
      if ((chunk >> (5 - k % 6)) & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

std::string export_dot(const Graph& g) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "graph Γ {\n";
  for (int v = 0; v < static_cast<int>(g.order()); ++v) out << "  " << quote(g.label(v)) << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << quote(g.label(u)) << " -- " << quote(g.label(v)) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace zdgenus
