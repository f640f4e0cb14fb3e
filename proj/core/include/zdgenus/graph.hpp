#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zdgenus {

class FiniteRing;

class GraphError : public std::runtime_error {
 public:
  enum class Kind { SizeLimit, MSideTooLarge, UnknownName, TooLarge, InvalidGraph6, InvalidEdge };

  GraphError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Simple undirected graph on vertices 0..n-1 with string labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  explicit Graph(std::vector<std::string> labels);

  std::size_t order() const { return labels_.size(); }
  std::size_t size() const { return edge_count_; }
  const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

  /// Adds {u, v}; a repeated edge is ignored, a loop throws.
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * order() + static_cast<std::size_t>(v)] != 0;
  }
  /// Sorted neighbor list.
  const std::vector<int>& neighbors(int v) const { return nbrs_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(nbrs_[static_cast<std::size_t>(v)].size()); }

  /// Edges (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;
  Graph induced(const std::vector<int>& vertices) const;
  /// Relabels vertex v as perm[v].
  Graph permuted(const std::vector<int>& perm) const;

  bool operator==(const Graph& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<char> adj_;
  std::vector<std::vector<int>> nbrs_;
  std::size_t edge_count_ = 0;
};

struct SubgraphWitness {
  enum class Kind { Clique, Biclique };
  Kind kind = Kind::Clique;
  std::vector<int> side_a;  // the clique, or the m-side of a biclique
  std::vector<int> side_b;  // the n-side of a biclique
};

/// Vertices are the nonzero zero-divisors, labelled by element strings.
Graph zero_divisor_graph(const FiniteRing& ring);

/// Single pass: removes every vertex whose degree in the input is exactly 1.
Graph reduce(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// Throws GraphError(SizeLimit) beyond 64 vertices. On success `mapping`
/// (if given) receives a bijection with g2.adjacent(map[u], map[v]) == g1.adjacent(u, v).
bool is_isomorphic(const Graph& g1, const Graph& g2, std::vector<int>* mapping = nullptr);

/// Canonical relabeling: perm[v] is the canonical position of vertex v.
std::vector<int> canonical_labeling(const Graph& g);

std::optional<SubgraphWitness> find_clique(const Graph& g, int n);
/// A maximum clique.
SubgraphWitness max_clique(const Graph& g);
/// Disjoint A (|A| = m), B (|B| = n) with every A-B pair adjacent; m <= 4.
std::optional<SubgraphWitness> find_biclique(const Graph& g, int m, int n);
/// The largest n for which K_{m,n} is a subgraph, with a witness (m <= 4).
std::optional<SubgraphWitness> max_biclique(const Graph& g, int m);
bool verify_witness(const Graph& g, const SubgraphWitness& w);

/// K(n) or Kn, K(m,n) or Km,n, P(n) or Pn, K1114, G1..G6.
Graph named_graph(const std::string& name);

/// graph6 of the canonical relabeling (|V| <= 62).
std::string export_graph6(const Graph& g);
/// graph6 of g under its current vertex order.
std::string encode_graph6(const Graph& g);
Graph parse_graph6(const std::string& text);
std::string export_dot(const Graph& g);

}  // namespace zdgenus
