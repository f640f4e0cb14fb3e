#include "zdgenus/genus.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>

#include "json.hpp"

namespace zdgenus {

namespace {

using Edge = std::pair<int, int>;
using Faces = std::vector<std::vector<int>>;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

int genus_formula_complete(int n) {
  if (n < 3) return 0;
  return ((n - 3) * (n - 4) + 11) / 12;
}

int genus_formula_bipartite(int m, int n) {
  if (m < 2 || n < 2) return 0;
  return ((m - 2) * (n - 2) + 3) / 4;
}

// ---------------------------------------------------------------- faces

namespace {

void validate_rotation(const Graph& g, const RotationSystem& rot) {
  if (rot.rotation.size() != g.order()) {
    throw GenusError(GenusError::Kind::InvalidRotation, "rotation has wrong vertex count");
  }
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    auto r = rot.rotation[sz(v)];
    std::sort(r.begin(), r.end());
    if (r != g.neighbors(v)) {
      throw GenusError(GenusError::Kind::InvalidRotation,
                       "rotation at vertex " + std::to_string(v) + " is not a permutation of its neighbours");
    }
  }
}

// Traces all faces without a connectivity check.
Faces trace(const Graph& g, const RotationSystem& rot) {
  const std::size_t n = g.order();
  std::vector<std::size_t> base(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) base[v + 1] = base[v] + rot.rotation[v].size();
  // position of w in rotation of v
  std::vector<std::map<int, int>> pos(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rot.rotation[v].size(); ++i) pos[v][rot.rotation[v][i]] = static_cast<int>(i);
  }
  std::vector<char> used(base[n], 0);
  Faces faces;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < rot.rotation[v].size(); ++i) {
      if (used[base[v] + i]) continue;
      std::vector<int> face;
      std::size_t u = v, k = i;
      while (!used[base[u] + k]) {
        used[base[u] + k] = 1;
        face.push_back(static_cast<int>(u));
        int w = rot.rotation[u][k];
        const auto& rw = rot.rotation[sz(w)];
        std::size_t back = static_cast<std::size_t>(pos[sz(w)].at(static_cast<int>(u)));
        k = (back + 1) % rw.size();
        u = sz(w);
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

}  // namespace

FaceTrace faces_of(const Graph& g, const RotationSystem& rot) {
  validate_rotation(g, rot);
  if (!is_connected(g)) throw GenusError(GenusError::Kind::Disconnected, "graph is not connected");
  FaceTrace ft;
  ft.faces = trace(g, rot);
  if (g.order() == 1) ft.faces.push_back({0});
  return ft;
}

int genus_of_embedding(const Graph& g, const RotationSystem& rot) {
  if (g.order() == 0) return 0;
  auto ft = faces_of(g, rot);
  long chi = static_cast<long>(g.order()) - static_cast<long>(g.size()) + static_cast<long>(ft.count());
  return static_cast<int>((2 - chi) / 2);
}

int total_genus_of_embedding(const Graph& g, const RotationSystem& rot) {
  validate_rotation(g, rot);
  int total = 0;
  for (const auto& comp : connected_components(g)) {
    auto h = g.induced(comp);
    std::vector<int> local(g.order(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) local[sz(comp[i])] = static_cast<int>(i);
    RotationSystem r;
    for (int v : comp) {
      std::vector<int> row;
      for (int w : rot.rotation[sz(v)]) row.push_back(local[sz(w)]);
      r.rotation.push_back(std::move(row));
    }
    total += genus_of_embedding(h, r);
  }
  return total;
}

// ---------------------------------------------------------------- blocks

std::vector<std::vector<Edge>> biconnected_blocks(const Graph& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> disc(sz(n), -1), low(sz(n), 0);
  std::vector<Edge> stack;
  std::vector<std::vector<Edge>> blocks;
  int time = 0;
  std::function<void(int, int)> dfs = [&](int u, int parent) {
    disc[sz(u)] = low[sz(u)] = time++;
    for (int w : g.neighbors(u)) {
      if (disc[sz(w)] == -1) {
        stack.emplace_back(u, w);
        dfs(w, u);
        low[sz(u)] = std::min(low[sz(u)], low[sz(w)]);
        if (low[sz(w)] >= disc[sz(u)]) {
          std::vector<Edge> block;
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            block.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
            if (e == Edge{u, w}) break;
          }
          std::sort(block.begin(), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (w != parent && disc[sz(w)] < disc[sz(u)]) {
        stack.emplace_back(u, w);
        low[sz(u)] = std::min(low[sz(u)], disc[sz(w)]);
      }
    }
  };
  for (int v = 0; v < n; ++v) {
    if (disc[sz(v)] == -1) dfs(v, -1);
  }
  return blocks;
}

int girth(const Graph& g) {
  const int n = static_cast<int>(g.order());
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(sz(n), -1), par(sz(n), -1);
    std::vector<int> queue{s};
    dist[sz(s)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int w : g.neighbors(u)) {
        if (dist[sz(w)] == -1) {
          dist[sz(w)] = dist[sz(u)] + 1;
          par[sz(w)] = u;
          queue.push_back(w);
        } else if (w != par[sz(u)]) {
          int len = dist[sz(u)] + dist[sz(w)] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

namespace {

struct Block {
  std::vector<int> vertices;  // global ids, sorted
  Graph graph;                // local ids
};

Block make_block(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<int> vs;
  for (auto [u, v] : edges) {
    vs.push_back(u);
    vs.push_back(v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return Block{vs, g.induced(vs)};
}

// Appends each block's local rotation to the global rotation lists.
void splice(RotationSystem& global, const Block& block, const RotationSystem& local) {
  for (std::size_t i = 0; i < block.vertices.size(); ++i) {
    auto& row = global.rotation[sz(block.vertices[i])];
    for (int w : local.rotation[i]) row.push_back(block.vertices[sz(w)]);
  }
}

RotationSystem rotation_from_faces(const Graph& g, const Faces& faces) {
  const std::size_t n = g.order();
  std::vector<std::map<int, int>> succ(n);
  for (const auto& f : faces) {
    const std::size_t k = f.size();
    for (std::size_t t = 0; t < k; ++t) {
      int u = f[(t + k - 1) % k], v = f[t], w = f[(t + 1) % k];
      succ[sz(v)][u] = w;
    }
  }
  RotationSystem rot;
  rot.rotation.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(static_cast<int>(v));
    if (nb.empty()) continue;
    int cur = nb.front();
    do {
      rot.rotation[v].push_back(cur);
      cur = succ[v].at(cur);
    } while (cur != nb.front() && rot.rotation[v].size() <= nb.size());
  }
  return rot;
}

// Path-addition planarity on a 2-connected graph with at least 3 vertices.
std::optional<Faces> embed_biconnected(const Graph& g) {
  const int n = static_cast<int>(g.order());
  // Any cycle via DFS back edge.
  std::vector<int> parent(sz(n), -2), depth(sz(n), 0);
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (int w : g.neighbors(u)) {
      if (parent[sz(w)] == -2) {
        parent[sz(w)] = u;
        depth[sz(w)] = depth[sz(u)] + 1;
        if (dfs(w)) return true;
      } else if (w != parent[sz(u)] && depth[sz(w)] < depth[sz(u)]) {
        for (int x = u; x != w; x = parent[sz(x)]) cycle.push_back(x);
        cycle.push_back(w);
        return true;
      }
    }
    return false;
  };
  parent[0] = -1;
  dfs(0);
  if (cycle.empty()) return std::nullopt;

  std::vector<char> in_h(sz(n), 0);
  std::vector<char> edge_in_h(sz(n * n), 0);
  auto mark_edge = [&](int a, int b) { edge_in_h[sz(a * n + b)] = edge_in_h[sz(b * n + a)] = 1; };
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    in_h[sz(cycle[i])] = 1;
    mark_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  std::size_t embedded = cycle.size();
  Faces faces{cycle, std::vector<int>(cycle.rbegin(), cycle.rend())};

  while (embedded < g.size()) {
    struct Fragment {
      std::vector<int> attachments;
      std::vector<int> interior;  // empty for a chord
    };
    std::vector<Fragment> frags;
    std::vector<int> comp(sz(n), -1);
    for (int s = 0; s < n; ++s) {
      if (in_h[sz(s)] || comp[sz(s)] != -1) continue;
      Fragment fr;
      std::vector<char> att(sz(n), 0);
      comp[sz(s)] = static_cast<int>(frags.size());
      fr.interior.push_back(s);
      for (std::size_t head = 0; head < fr.interior.size(); ++head) {
        int u = fr.interior[head];
        for (int w : g.neighbors(u)) {
          if (in_h[sz(w)]) {
            att[sz(w)] = 1;
          } else if (comp[sz(w)] == -1) {
            comp[sz(w)] = comp[sz(s)];
            fr.interior.push_back(w);
          }
        }
      }
      for (int v = 0; v < n; ++v) {
        if (att[sz(v)]) fr.attachments.push_back(v);
      }
      frags.push_back(std::move(fr));
    }
    for (auto [u, w] : g.edges()) {
      if (in_h[sz(u)] && in_h[sz(w)] && !edge_in_h[sz(u * n + w)]) frags.push_back(Fragment{{u, w}, {}});
    }

    std::vector<std::vector<char>> on_face(faces.size(), std::vector<char>(sz(n), 0));
    for (std::size_t f = 0; f < faces.size(); ++f) {
      for (int v : faces[f]) on_face[f][sz(v)] = 1;
    }
    std::size_t pick = frags.size(), pick_face = 0;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      std::vector<std::size_t> adm;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        bool ok = std::all_of(frags[i].attachments.begin(), frags[i].attachments.end(),
                              [&](int a) { return on_face[f][sz(a)] != 0; });
        if (ok) adm.push_back(f);
      }
      if (adm.empty()) return std::nullopt;
      if (adm.size() == 1 || pick == frags.size()) {
        bool forced = adm.size() == 1;
        if (pick == frags.size() || forced) {
          pick = i;
          pick_face = adm.front();
        }
        if (forced) break;
      }
    }

    const Fragment& fr = frags[pick];
    std::vector<int> path;
    if (fr.interior.empty()) {
      path = fr.attachments;
    } else {
      int a = fr.attachments.front();
      int x = -1;
      for (int v : fr.interior) {
        if (g.adjacent(v, a)) {
          x = v;
          break;
        }
      }
      std::map<int, int> prev{{x, -1}};
      std::vector<int> queue{x};
      int end = -1, target = -1;
      for (std::size_t head = 0; head < queue.size() && end == -1; ++head) {
        int u = queue[head];
        for (int w : g.neighbors(u)) {
          if (in_h[sz(w)] && w != a) {
            end = u;
            target = w;
            break;
          }
        }
        if (end != -1) break;
        for (int w : g.neighbors(u)) {
          if (!in_h[sz(w)] && !prev.count(w)) {
            prev[w] = u;
            queue.push_back(w);
          }
        }
      }
      std::vector<int> mid;
      for (int v = end; v != -1; v = prev.at(v)) mid.push_back(v);
      std::reverse(mid.begin(), mid.end());
      path.push_back(a);
      path.insert(path.end(), mid.begin(), mid.end());
      path.push_back(target);
    }

    const auto face = faces[pick_face];
    const std::size_t k = face.size();
    std::size_t i = static_cast<std::size_t>(std::find(face.begin(), face.end(), path.front()) - face.begin());
    std::size_t j = static_cast<std::size_t>(std::find(face.begin(), face.end(), path.back()) - face.begin());
    std::vector<int> f1, f2;
    for (std::size_t t = i;; t = (t + 1) % k) {
      f1.push_back(face[t]);
      if (t == j) break;
    }
    for (std::size_t t = path.size() - 2; t >= 1; --t) f1.push_back(path[t]);
    for (std::size_t t = j;; t = (t + 1) % k) {
      f2.push_back(face[t]);
      if (t == i) break;
    }
    for (std::size_t t = 1; t + 1 < path.size(); ++t) f2.push_back(path[t]);
    faces[pick_face] = std::move(f1);
    faces.push_back(std::move(f2));
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      in_h[sz(path[t])] = 1;
      mark_edge(path[t], path[t + 1]);
      ++embedded;
    }
    in_h[sz(path.back())] = 1;
  }
  return faces;
}

}  // namespace

bool is_planar(const Graph& g, RotationSystem* embedding) {
  RotationSystem global;
  global.rotation.resize(g.order());
  for (const auto& edges : biconnected_blocks(g)) {
    Block b = make_block(g, edges);
    RotationSystem local;
    if (b.graph.order() <= 2) {
      local.rotation = {{1}, {0}};
    } else {
      auto faces = embed_biconnected(b.graph);
      if (!faces) return false;
      local = rotation_from_faces(b.graph, *faces);
    }
    splice(global, b, local);
  }
  if (embedding) *embedding = std::move(global);
  return true;
}

// ---------------------------------------------------------------- search

namespace {

class Searcher {
 public:
  Searcher(const Graph& g, int target, std::uint64_t budget) : g_(g), budget_(budget) {
    const int n = static_cast<int>(g.order());
    base_.assign(sz(n) + 1, 0);
    for (int v = 0; v < n; ++v) base_[sz(v) + 1] = base_[sz(v)] + g.degree(v);
    darts_ = base_[sz(n)];
    head_.resize(sz(darts_));
    tail_.resize(sz(darts_));
    rev_.resize(sz(darts_));
    for (int v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        int d = base_[sz(v)] + static_cast<int>(i);
        tail_[sz(d)] = v;
        head_[sz(d)] = nb[i];
      }
    }
    for (int d = 0; d < darts_; ++d) {
      int w = head_[sz(d)], v = tail_[sz(d)];
      const auto& nb = g.neighbors(w);
      rev_[sz(d)] = base_[sz(w)] + static_cast<int>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
    }
    succ_.assign(sz(darts_), -1);
    pred_.assign(sz(darts_), -1);
    other_.resize(sz(darts_));
    len_.assign(sz(darts_), 1);
    std::iota(other_.begin(), other_.end(), 0);
    used_.assign(sz(darts_), 0);

    min_deg_ = n ? g.degree(0) : 0;
    for (int v = 0; v < n; ++v) min_deg_ = std::min(min_deg_, g.degree(v));
    add_symmetry_constraints();
    int gir = girth(g);
    min_face_ = (min_deg_ >= 2 && gir > 0) ? gir : 2;
    required_ = static_cast<int>(g.size()) - n + 2 - 2 * target;

    // Oriented triangles a->b->c->a with a the smallest vertex.
    dart_tris_.resize(sz(darts_));
    tri_live_.assign(sz(darts_), 0);
    for (int a = 0; a < n; ++a) {
      for (int b : g.neighbors(a)) {
        for (int c : g.neighbors(b)) {
          if (b <= a || c <= a || c == b || !g.adjacent(c, a)) continue;
          int t = static_cast<int>(tris_.size());
          tris_.push_back({dart(a, b), dart(b, c), dart(c, a)});
          for (int e : tris_.back()) {
            dart_tris_[sz(e)].push_back(t);
            ++tri_live_[sz(e)];
          }
        }
      }
    }
    tri_used_.assign(tris_.size(), 0);
    for (int d = 0; d < darts_; ++d) tri_darts_ += tri_live_[sz(d)] > 0;
  }

  SearchResult run() {
    SearchResult res;
    if (darts_ == 0) {
      res.status = SearchResult::Status::Found;
      res.rotation = RotationSystem{std::vector<std::vector<int>>(g_.order())};
      return res;
    }
    bool ok = new_face();
    res.nodes = nodes_;
    if (ok) {
      res.status = SearchResult::Status::Found;
      res.rotation = found_;
    } else {
      res.status = exhausted_ ? SearchResult::Status::Exhausted : SearchResult::Status::Refuted;
    }
    return res;
  }

 private:
  // succ_/pred_ are indexed by dart id: for the dart d = (v -> w), succ_[d]
  // is the dart (v -> w') with w' following w in the rotation at v.
  bool new_face() {
    const int remaining = darts_ - used_count_;
    if (remaining == 0) {
      if (faces_ < required_) return false;
      record();
      return true;
    }
    if (faces_ + future_faces(remaining) < required_) return false;
    int start = pick_start();
    use(start);
    bool ok = extend(start, start, 1);
    unuse(start);
    return ok;
  }

  bool extend(int cur, int start, int face_len) {
    const int remaining = darts_ - used_count_;
    const int need = std::max(0, min_face_ - face_len);
    if (need > remaining) {
      // The face can still close early only if it already has min_face_ darts.
      return false;
    }
    if (faces_ + 1 + future_faces(remaining - need) < required_) return false;

    // Walking dart cur = (u -> v); the next dart leaves v after u.
    const int back = rev_[sz(cur)];  // dart (v -> u)
    const int fixed = succ_[sz(back)];
    if (fixed != -1) return step(fixed, start, face_len);

    const int v = head_[sz(cur)];
    // Closing the face comes first, then darts that lead back next to its origin.
    const int origin = tail_[sz(start)];
    std::vector<std::pair<int, int>> ranked;
    for (int d = base_[sz(v)]; d < base_[sz(v) + 1]; ++d) {
      if (pred_[sz(d)] != -1) continue;
      if (d == start) {
        ranked.emplace_back(0, d);
      } else if (!used_[sz(d)]) {
        const int w = head_[sz(d)];
        ranked.emplace_back(w == origin ? 1 : g_.adjacent(w, origin) ? 2 : 3, d);
      }
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> choices;
    for (auto [rank, d] : ranked) choices.push_back(d);
    for (int d : choices) {
      if (nodes_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++nodes_;
      std::size_t mark = trail_.size();
      if (!link(v, back, d)) {
        undo(mark);
        continue;
      }
      bool ok = step(d, start, face_len);
      undo(mark);
      if (ok) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  bool step(int next, int start, int face_len) {
    if (next == start) {
      ++faces_;
      bool ok = new_face();
      --faces_;
      return ok;
    }
    if (used_[sz(next)]) return false;
    use(next);
    bool ok = extend(next, start, face_len + 1);
    unuse(next);
    return ok;
  }

  // Sets succ(a) = b at vertex v, keeping the partial rotation acyclic until
  // it covers all neighbours.
  bool link(int v, int a, int b) {
    const int h = other_[sz(a)];  // head of a's chain (a is its tail)
    const int deg = g_.degree(v);
    if (h == b) {
      if (len_[sz(a)] != deg) return false;
      set(succ_[sz(a)], b);
      set(pred_[sz(b)], a);
      return respects_order(v, a);
    }
    const int t = other_[sz(b)];  // tail of b's chain
    const int total = len_[sz(a)] + len_[sz(b)];
    set(succ_[sz(a)], b);
    set(pred_[sz(b)], a);
    set(other_[sz(h)], t);
    set(other_[sz(t)], h);
    set(len_[sz(h)], total);
    set(len_[sz(t)], total);
    return respects_order(v, a);
  }

  // Vertices with equal neighbourhoods can be permuted freely, and every
  // rotation system can be mirrored. Both are broken by fixing, at a vertex
  // outside all twin classes, the cyclic order of some of its darts read
  // from a reference dart.
  void add_symmetry_constraints() {
    const int n = static_cast<int>(g_.order());
    std::map<std::vector<int>, std::vector<int>> by_nbrs;
    for (int v = 0; v < n; ++v) {
      if (g_.degree(v) > 0) by_nbrs[g_.neighbors(v)].push_back(v);
    }
    std::vector<char> twin(sz(n), 0);
    std::vector<std::vector<int>> classes;
    for (auto& [nb, members] : by_nbrs) {
      if (members.size() < 2) continue;
      for (int v : members) twin[sz(v)] = 1;
      classes.push_back(members);
    }
    rank_.assign(sz(darts_), -1);
    order_ref_.assign(sz(n), -1);
    auto reference = [&](int a) {
      for (int w : g_.neighbors(a)) {
        if (!twin[sz(w)]) return w;
      }
      return -1;
    };
    // Mirror: at a vertex of largest degree, three plain neighbours x < y < z
    // read from x must show y before z.
    int v0 = -1;
    for (int v = 0; v < n; ++v) {
      if (twin[sz(v)]) continue;
      int plain = 0;
      for (int w : g_.neighbors(v)) plain += !twin[sz(w)];
      if (plain >= 3 && (v0 < 0 || g_.degree(v) > g_.degree(v0))) v0 = v;
    }
    int next_rank = 0;
    if (v0 >= 0) {
      std::vector<int> plain;
      for (int w : g_.neighbors(v0)) {
        if (!twin[sz(w)]) plain.push_back(w);
      }
      order_ref_[sz(v0)] = dart(v0, plain[0]);
      rank_[sz(dart(v0, plain[1]))] = next_rank++;
      rank_[sz(dart(v0, plain[2]))] = next_rank++;
    }
    for (const auto& members : classes) {
      int host = -1;
      for (int a : g_.neighbors(members.front())) {
        if (!twin[sz(a)] && reference(a) >= 0) {
          host = a;
          break;
        }
      }
      if (host < 0) continue;
      if (order_ref_[sz(host)] < 0) order_ref_[sz(host)] = dart(host, reference(host));
      // Ranks are compared only within a class, so a fresh block keeps them apart.
      next_rank += 1000;
      for (int w : members) rank_[sz(dart(host, w))] = next_rank++;
    }
  }

  // Necessary condition on the chain through dart a at v: ranked darts of one
  // block appear in increasing order when read from the reference dart.
  bool respects_order(int v, int a) const {
    const int ref = order_ref_[sz(v)];
    if (ref < 0) return true;
    const int deg = g_.degree(v);
    int first = a;
    for (int k = 0; k < deg && pred_[sz(first)] != -1; ++k) first = pred_[sz(first)];
    if (pred_[sz(first)] != -1) first = ref;  // closed rotation
    std::vector<int> seq;
    std::size_t at_ref = 0;
    bool has_ref = false;
    int e = first;
    for (int k = 0; k < deg && e != -1; ++k, e = succ_[sz(e)]) {
      if (e == ref) {
        has_ref = true;
        at_ref = seq.size();
      }
      if (rank_[sz(e)] >= 0) seq.push_back(rank_[sz(e)]);
    }
    if (has_ref) std::rotate(seq.begin(), seq.begin() + static_cast<long>(at_ref), seq.end());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        if (seq[i] / 1000 == seq[j] / 1000 && seq[i] > seq[j]) return false;
      }
    }
    return true;
  }

  int pick_start() const {
    int best = -1, best_score = -1;
    for (int d = 0; d < darts_; ++d) {
      if (used_[sz(d)]) continue;
      const int back = rev_[sz(d)];
      const int v = head_[sz(d)];
      int assigned = 0;
      for (int e = base_[sz(v)]; e < base_[sz(v) + 1]; ++e) assigned += succ_[sz(e)] != -1;
      int score = (succ_[sz(back)] != -1 ? 1000 : 0) + assigned * 10 +
                  (pred_[sz(d)] != -1 ? 100 : 0);
      if (score > best_score) {
        best_score = score;
        best = d;
      }
    }
    return best;
  }

  // Upper bound on the number of faces that r unused darts can still form.
  // With girth 3 only darts on a triangle with no used dart can lie on a
  // 3-face; every other face has at least 4 darts.
  int future_faces(int r) const {
    if (min_face_ != 3) return r / min_face_;
    const int t = std::min(tri_darts_, r) / 3;
    return (r + t) / 4;
  }

  void use(int d) {
    used_[sz(d)] = 1;
    ++used_count_;
    if (tri_live_[sz(d)] > 0) --tri_darts_;
    for (int t : dart_tris_[sz(d)]) {
      if (tri_used_[sz(t)]++ != 0) continue;
      for (int e : tris_[sz(t)]) {
        if (e != d && --tri_live_[sz(e)] == 0 && !used_[sz(e)]) --tri_darts_;
      }
    }
  }

  void unuse(int d) {
    for (int t : dart_tris_[sz(d)]) {
      if (--tri_used_[sz(t)] != 0) continue;
      for (int e : tris_[sz(t)]) {
        if (e != d && tri_live_[sz(e)]++ == 0 && !used_[sz(e)]) ++tri_darts_;
      }
    }
    if (tri_live_[sz(d)] > 0) ++tri_darts_;
    used_[sz(d)] = 0;
    --used_count_;
  }

  int dart(int v, int w) const {
    const auto& nb = g_.neighbors(v);
    return base_[sz(v)] + static_cast<int>(std::lower_bound(nb.begin(), nb.end(), w) - nb.begin());
  }

  void set(int& slot, int value) {
    trail_.emplace_back(&slot, slot);
    slot = value;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      *trail_.back().first = trail_.back().second;
      trail_.pop_back();
    }
  }

  void record() {
    RotationSystem rot;
    rot.rotation.resize(g_.order());
    for (int v = 0; v < static_cast<int>(g_.order()); ++v) {
      int d = base_[sz(v)];
      for (int k = 0; k < g_.degree(v); ++k, d = succ_[sz(d)]) rot.rotation[sz(v)].push_back(head_[sz(d)]);
    }
    found_ = std::move(rot);
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<int> base_, head_, tail_, rev_;
  int darts_ = 0;
  std::vector<int> succ_, pred_, other_, len_;
  std::vector<char> used_;
  int used_count_ = 0;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::vector<int>> dart_tris_;
  std::vector<int> tri_live_, tri_used_;
  int tri_darts_ = 0;
  int faces_ = 0;
  int required_ = 0;
  int min_face_ = 3;
  int min_deg_ = 0;
  std::vector<int> rank_, order_ref_;
  std::vector<std::pair<int*, int>> trail_;
  RotationSystem found_;
};

}  // namespace

SearchResult search_embedding(const Graph& g, int target_g, std::uint64_t budget) {
  if (!is_connected(g)) throw GenusError(GenusError::Kind::Disconnected, "graph is not connected");
  return Searcher(g, target_g, budget).run();
}

// ---------------------------------------------------------------- bounds

namespace {

int euler_bound(const Graph& g) {
  // Valid for connected graphs of minimum degree >= 2: every face has at
  // least girth darts.
  if (g.size() == 0) return 0;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    if (g.degree(v) < 2) return 0;
  }
  if (!is_connected(g)) return 0;
  int gir = girth(g);
  if (gir == 0) return 0;
  long e = static_cast<long>(g.size()), v = static_cast<long>(g.order());
  long fmax = 2 * e / gir;
  long twice = e - v + 2 - fmax;
  return twice <= 0 ? 0 : static_cast<int>((twice + 1) / 2);
}

// Iteratively strips vertices of degree <= 1.
Graph strip_pendants(const Graph& g) {
  std::vector<int> deg(g.order());
  std::vector<char> alive(g.order(), 1);
  std::vector<int> queue;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    deg[sz(v)] = g.degree(v);
    if (deg[sz(v)] <= 1) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    if (!alive[sz(v)]) continue;
    alive[sz(v)] = 0;
    for (int w : g.neighbors(v)) {
      if (alive[sz(w)] && --deg[sz(w)] <= 1) queue.push_back(w);
    }
  }
  std::vector<int> keep;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    if (alive[sz(v)]) keep.push_back(v);
  }
  return g.induced(keep);
}

std::string biclique_name(int m, int n) {
  return "K_{" + std::to_string(m) + "," + std::to_string(n) + "}";
}

}  // namespace

LowerBound genus_lower_bound(const Graph& g) {
  LowerBound lb;
  lb.method = "none";
  if (!is_planar(g)) {
    lb.nonplanar = true;
    lb.bound = 1;
    lb.method = "nonplanar";
  }
  auto clique = max_clique(g);
  int kc = genus_formula_complete(static_cast<int>(clique.side_a.size()));
  if (kc > lb.bound) {
    lb.bound = kc;
    lb.method = "clique K_" + std::to_string(clique.side_a.size());
    lb.witness = clique;
  }
  for (int m = 2; m <= 4; ++m) {
    auto w = max_biclique(g, m);
    if (!w) continue;
    int n = static_cast<int>(w->side_b.size());
    if (n < m) continue;
    int kb = genus_formula_bipartite(m, n);
    if (kb > lb.bound) {
      lb.bound = kb;
      lb.method = "biclique " + biclique_name(m, n);
      lb.witness = w;
    }
  }
  int total_euler = 0;
  const Graph core = strip_pendants(g);
  for (const auto& comp : connected_components(core)) total_euler += euler_bound(core.induced(comp));
  if (total_euler > lb.bound) {
    lb.bound = total_euler;
    lb.method = "euler-girth";
    lb.witness.reset();
  }
  return lb;
}

// ---------------------------------------------------------------- orchestration

GenusResult genus(const Graph& g, const GenusOptions& options) {
  GenusResult result;
  RotationSystem global;
  global.rotation.resize(g.order());
  bool have_all = true;
  int upper_sum = 0;
  std::uint64_t remaining = options.budget;

  auto add_method = [&](const std::string& m) {
    if (std::find(result.methods.begin(), result.methods.end(), m) == result.methods.end()) {
      result.methods.push_back(m);
    }
  };

  for (const auto& edges : biconnected_blocks(g)) {
    Block b = make_block(g, edges);
    if (b.graph.order() <= 2) {
      splice(global, b, RotationSystem{{{1}, {0}}});
      continue;
    }
    RotationSystem planar;
    if (is_planar(b.graph, &planar)) {
      splice(global, b, planar);
      add_method("planarity");
      continue;
    }
    result.nonplanar = true;
    LowerBound lb = genus_lower_bound(b.graph);
    int lower = lb.bound;
    if (lb.witness && (!result.lower_witness || lb.bound > 1)) {
      SubgraphWitness w = *lb.witness;
      for (auto& v : w.side_a) v = b.vertices[sz(v)];
      for (auto& v : w.side_b) v = b.vertices[sz(v)];
      result.lower_witness = w;
    }
    add_method(lb.method);

    std::optional<int> upper;
    bool searching = !result.budget_exhausted &&
                     !(options.stop_at_lower && result.lower + lower >= *options.stop_at_lower);
    for (int target = lower; searching; ++target) {
      auto sr = search_embedding(b.graph, target, remaining);
      remaining -= std::min(remaining, sr.nodes);
      result.nodes += sr.nodes;
      if (sr.status == SearchResult::Status::Found) {
        upper = genus_of_embedding(b.graph, *sr.rotation);
        splice(global, b, *sr.rotation);
        add_method("search");
        break;
      }
      if (sr.status == SearchResult::Status::Exhausted) {
        result.budget_exhausted = true;
        break;
      }
      lower = target + 1;
      add_method("refutation");
      if (options.stop_at_lower && result.lower + lower >= *options.stop_at_lower) break;
    }
    result.lower += lower;
    if (upper) {
      upper_sum += *upper;
    } else {
      have_all = false;
    }
  }
  if (have_all) {
    // Bridges and pendant trees are already spliced; isolated vertices keep empty rotations.
    result.upper = upper_sum;
    result.certificate = std::move(global);
  }
  return result;
}

// ---------------------------------------------------------------- brute force

int brute_force_genus(const Graph& g) {
  constexpr std::uint64_t kLimit = 10'000'000;
  std::uint64_t work = 1;
  for (int v = 0; v < static_cast<int>(g.order()) && work <= kLimit; ++v) {
    for (int k = 2; k < g.degree(v) && work <= kLimit; ++k) work *= static_cast<std::uint64_t>(k);
  }
  if (work > kLimit) throw GenusError(GenusError::Kind::TooLarge, "too many rotation systems");
  const int n = static_cast<int>(g.order());
  RotationSystem rot;
  rot.rotation.resize(sz(n));
  for (int v = 0; v < n; ++v) rot.rotation[sz(v)] = g.neighbors(v);
  int best = -1;
  // Odometer over the permutations of each rotation with its first entry fixed.
  while (true) {
    int gen = total_genus_of_embedding(g, rot);
    if (best < 0 || gen < best) best = gen;
    int v = 0;
    for (; v < n; ++v) {
      auto& r = rot.rotation[sz(v)];
      if (r.size() > 2 && std::next_permutation(r.begin() + 1, r.end())) break;
    }
    if (v == n) break;
  }
  return best;
}

// ---------------------------------------------------------------- certificates

GenusCertificate make_certificate(const Graph& g, const RotationSystem& rot) {
  return GenusCertificate{encode_graph6(g), rot.rotation, total_genus_of_embedding(g, rot)};
}

std::string certificate_to_json(const GenusCertificate& cert) {
  nlohmann::ordered_json j;
  j["graph6"] = cert.graph6;
  j["rotations"] = cert.rotations;
  j["claimed_genus"] = cert.claimed_genus;
  return j.dump();
}

GenusCertificate certificate_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    GenusCertificate cert;
    cert.graph6 = j.at("graph6").get<std::string>();
    cert.rotations = j.at("rotations").get<std::vector<std::vector<int>>>();
    cert.claimed_genus = j.at("claimed_genus").get<int>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw GenusError(GenusError::Kind::InvalidCertificate, std::string("malformed certificate: ") + e.what());
  }
}

CertificateCheck verify_certificate(const GenusCertificate& cert) {
  CertificateCheck check;
  Graph g;
  try {
    g = parse_graph6(cert.graph6);
  } catch (const GraphError& e) {
    check.reason = e.what();
    return check;
  }
  try {
    check.computed_genus = total_genus_of_embedding(g, RotationSystem{cert.rotations});
  } catch (const GenusError& e) {
    check.reason = e.what();
    return check;
  }
  if (check.computed_genus != cert.claimed_genus) {
    check.reason = "rotation system has genus " + std::to_string(check.computed_genus) + ", claimed " +
                   std::to_string(cert.claimed_genus);
    return check;
  }
  check.accepted = true;
  check.reason = "ok";
  return check;
}

}  // namespace zdgenus
