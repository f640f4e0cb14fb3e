#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "zdgenus/finite_ring.hpp"
#include "zdgenus/genus.hpp"
#include "zdgenus/graph.hpp"

using namespace zdgenus;

namespace {

Graph random_graph(int n, double p, std::mt19937& rng) {
  Graph g(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

Graph random_connected(int n, int extra, std::mt19937& rng) {
  Graph g(static_cast<std::size_t>(n));
  for (int v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < extra; ++k) {
    int a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

double rotation_count(const Graph& g) {
  double w = 1;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    for (int k = 2; k < g.degree(v); ++k) w *= k;
  }
  return w;
}

// Independent face count: permutation product on darts keyed by (tail, head).
int oracle_face_count(const Graph& g, const RotationSystem& rot) {
  std::map<std::pair<int, int>, std::pair<int, int>> next;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    const auto& r = rot.rotation[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < r.size(); ++i) {
      // the dart arriving at v from r[i] continues along r[i+1]
      next[{r[i], v}] = {v, r[(i + 1) % r.size()]};
    }
  }
  std::map<std::pair<int, int>, bool> seen;
  int faces = 0;
  for (const auto& [d, _] : next) {
    if (seen[d]) continue;
    ++faces;
    for (auto e = d; !seen[e]; e = next[e]) seen[e] = true;
  }
  return faces;
}

RotationSystem random_rotation(const Graph& g, std::mt19937& rng) {
  RotationSystem r;
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    auto nb = g.neighbors(v);
    std::shuffle(nb.begin(), nb.end(), rng);
    r.rotation.push_back(nb);
  }
  return r;
}

Graph reduced_graph(const std::string& spec) { return reduce(zero_divisor_graph(realize(spec))); }

}  // namespace

TEST(GenusFormula, CompleteGraphs) {
  const int expected[] = {0, 0, 0, 0, 0, 1, 1, 1, 2, 3, 4, 5, 6, 8};
  for (int n = 0; n < 14; ++n) EXPECT_EQ(genus_formula_complete(n), expected[n]) << n;
}

TEST(GenusFormula, CompleteBipartite) {
  EXPECT_EQ(genus_formula_bipartite(3, 3), 1);
  EXPECT_EQ(genus_formula_bipartite(2, 50), 0);
  EXPECT_EQ(genus_formula_bipartite(3, 7), 2);
  EXPECT_EQ(genus_formula_bipartite(4, 4), 1);
  EXPECT_EQ(genus_formula_bipartite(7, 7), 7);
  EXPECT_EQ(genus_formula_bipartite(1, 9), 0);
  for (int m = 0; m < 12; ++m) {
    for (int n = 0; n < 12; ++n) EXPECT_EQ(genus_formula_bipartite(m, n), genus_formula_bipartite(n, m));
  }
}

TEST(Faces, FaceWalksCoverEveryDartOnce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_connected(3 + trial % 8, trial % 10, rng);
    auto rot = random_rotation(g, rng);
    auto ft = faces_of(g, rot);
    std::size_t total = 0;
    for (const auto& f : ft.faces) total += f.size();
    EXPECT_EQ(total, 2 * g.size());
    EXPECT_EQ(static_cast<int>(ft.count()), oracle_face_count(g, rot));
    long chi = static_cast<long>(g.order()) - static_cast<long>(g.size()) + static_cast<long>(ft.count());
    EXPECT_EQ((2 - chi) % 2, 0);
    EXPECT_GE(genus_of_embedding(g, rot), 0);
  }
}

TEST(Faces, RejectsMalformedRotation) {
  Graph g = named_graph("K4");
  RotationSystem rot{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 1}}};
  EXPECT_THROW(faces_of(g, rot), GenusError);
  Graph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  try {
    faces_of(two, RotationSystem{{{1}, {0}, {3}, {2}}});
    FAIL();
  } catch (const GenusError& e) {
    EXPECT_EQ(e.kind(), GenusError::Kind::Disconnected);
  }
}

TEST(Blocks, BowtieAndTree) {
  Graph g(5);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}) g.add_edge(a, b);
  EXPECT_EQ(biconnected_blocks(g).size(), 2u);
  EXPECT_EQ(biconnected_blocks(named_graph("P6")).size(), 5u);
  EXPECT_EQ(girth(g), 3);
  EXPECT_EQ(girth(named_graph("P6")), 0);
  EXPECT_EQ(girth(named_graph("K3,3")), 4);
}

TEST(Planarity, AgreesWithBruteForce) {
  std::mt19937 rng(5);
  int planar = 0, nonplanar = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_connected(6 + trial % 2, 5 + trial % 5, rng);
    if (rotation_count(g) > 2e4) continue;
    RotationSystem emb;
    bool p = is_planar(g, &emb);
    EXPECT_EQ(p, brute_force_genus(g) == 0);
    if (p) {
      EXPECT_EQ(total_genus_of_embedding(g, emb), 0);
      ++planar;
    } else {
      ++nonplanar;
    }
  }
  EXPECT_GT(planar, 10);
  EXPECT_GT(nonplanar, 1);
}

TEST(Planarity, PetersenAndCubicGraphs) {
  Graph petersen(10);
  for (int i = 0; i < 5; ++i) {
    petersen.add_edge(i, (i + 1) % 5);
    petersen.add_edge(i, i + 5);
    petersen.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  EXPECT_FALSE(is_planar(petersen));
  EXPECT_EQ(brute_force_genus(petersen), 1);
  auto r = genus(petersen);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.lower, 1);
  Graph cube(8);
  for (int v = 0; v < 8; ++v) {
    for (int b = 1; b < 8; b <<= 1) {
      if ((v ^ b) > v) cube.add_edge(v, v ^ b);
    }
  }
  RotationSystem emb;
  EXPECT_TRUE(is_planar(cube, &emb));
  EXPECT_EQ(genus_of_embedding(cube, emb), 0);
  EXPECT_EQ(faces_of(cube, emb).count(), 6u);
}

TEST(Planarity, Kuratowski) {
  EXPECT_FALSE(is_planar(named_graph("K5")));
  EXPECT_FALSE(is_planar(named_graph("K3,3")));
  EXPECT_TRUE(is_planar(named_graph("K4")));
  EXPECT_TRUE(is_planar(named_graph("K2,9")));
  EXPECT_FALSE(is_planar(named_graph("K1114")));
}

TEST(BruteForce, KnownGenera) {
  EXPECT_EQ(brute_force_genus(named_graph("K5")), 1);
  EXPECT_EQ(brute_force_genus(named_graph("K3,3")), 1);
  EXPECT_EQ(brute_force_genus(named_graph("K3,4")), 1);
  EXPECT_EQ(brute_force_genus(named_graph("K2,6")), 0);
  EXPECT_EQ(brute_force_genus(named_graph("K4")), 0);
  EXPECT_THROW(brute_force_genus(named_graph("K8")), GenusError);
}

TEST(Search, MatchesBruteForceOnSmallGraphs) {
  std::mt19937 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 80; ++trial) {
    Graph g = random_connected(5 + trial % 4, 4 + trial % 6, rng);
    if (g.size() > 12 || rotation_count(g) > 5e4) continue;
    int truth = brute_force_genus(g);
    auto below = search_embedding(g, truth - 1, 10'000'000);
    if (truth > 0) EXPECT_EQ(below.status, SearchResult::Status::Refuted);
    auto at = search_embedding(g, truth, 10'000'000);
    ASSERT_EQ(at.status, SearchResult::Status::Found);
    EXPECT_EQ(genus_of_embedding(g, *at.rotation), truth);
    auto full = genus(g);
    EXPECT_TRUE(full.exact());
    EXPECT_EQ(full.lower, truth);
    ++checked;
  }
  EXPECT_GE(checked, 40);
}

TEST(Search, CompleteSevenIsToroidal) {
  Graph g = named_graph("K7");
  auto r = search_embedding(g, 1, 1'000'000);
  ASSERT_EQ(r.status, SearchResult::Status::Found);
  EXPECT_EQ(genus_of_embedding(g, *r.rotation), 1);
}

TEST(Search, RefutesPlanarityOfK33) {
  auto r = search_embedding(named_graph("K3,3"), 0, 1'000'000);
  EXPECT_EQ(r.status, SearchResult::Status::Refuted);
}

TEST(Search, RefutesToroidalK37) {
  Graph g = named_graph("K3,7");
  auto r = search_embedding(g, 1, 10'000'000);
  EXPECT_EQ(r.status, SearchResult::Status::Refuted);
  auto full = genus(g, GenusOptions{10'000'000, {}});
  EXPECT_TRUE(full.exact());
  EXPECT_EQ(full.lower, 2);
}

TEST(Search, BudgetExhaustion) {
  auto r = search_embedding(named_graph("K8"), 2, 10);
  EXPECT_EQ(r.status, SearchResult::Status::Exhausted);
  EXPECT_EQ(r.nodes, 10u);
  auto full = genus(named_graph("K8"), GenusOptions{5, {}});
  EXPECT_TRUE(full.budget_exhausted);
  EXPECT_FALSE(full.upper.has_value());
  EXPECT_EQ(full.lower, 2);
}

TEST(Search, G6IsToroidal) {
  Graph g = named_graph("G6");
  auto r = search_embedding(g, 1, 1'000'000);
  ASSERT_EQ(r.status, SearchResult::Status::Found);
  EXPECT_EQ(genus_of_embedding(g, *r.rotation), 1);
  auto full = genus(g);
  EXPECT_TRUE(full.exact());
  EXPECT_EQ(full.lower, 1);
}

TEST(LowerBound, Witnesses) {
  auto k8 = genus_lower_bound(named_graph("K8"));
  EXPECT_EQ(k8.bound, 2);
  ASSERT_TRUE(k8.witness);
  EXPECT_TRUE(verify_witness(named_graph("K8"), *k8.witness));
  auto k46 = genus_lower_bound(named_graph("K4,6"));
  EXPECT_EQ(k46.bound, 2);
  EXPECT_TRUE(k46.nonplanar);
  EXPECT_FALSE(genus_lower_bound(named_graph("K4")).nonplanar);
}

TEST(LowerBound, NeverExceedsBruteForce) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_connected(6 + trial % 3, 6 + trial % 8, rng);
    if (rotation_count(g) > 5e4) continue;
    EXPECT_LE(genus_lower_bound(g).bound, brute_force_genus(g));
  }
}

TEST(Genus, MonotoneUnderEdgeDeletion) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected(8, 14, rng);
    auto full = genus(g);
    ASSERT_TRUE(full.exact());
    auto edges = g.edges();
    Graph h(g.order());
    for (std::size_t i = 1; i < edges.size(); ++i) h.add_edge(edges[i].first, edges[i].second);
    auto sub = genus(h);
    ASSERT_TRUE(sub.exact());
    EXPECT_LE(*sub.upper, *full.upper);
  }
}

TEST(Genus, AdditiveOverBlocksAndComponents) {
  // Two K5 sharing a vertex, plus a disjoint K3,3.
  Graph g(14);
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      g.add_edge(a, b);
      g.add_edge(a == 0 ? 0 : a + 4, b + 4);
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 2; ++b) g.add_edge(9 + a, 12 + b);
  }
  g.add_edge(9, 10);
  auto r = genus(g);
  ASSERT_TRUE(r.exact());
  EXPECT_EQ(*r.upper, 2);
  ASSERT_TRUE(r.certificate);
  EXPECT_EQ(total_genus_of_embedding(g, *r.certificate), 2);
}

TEST(Genus, ZeroDivisorGraphs) {
  struct Case {
    std::string spec;
    int genus;
  };
  for (const auto& c : std::vector<Case>{{"Z2*Z2*Z7", 1}, {"Z3*Z8", 1}, {"Z2*Z3*Z4", 2}}) {
    Graph g = reduced_graph(c.spec);
    auto r = genus(g, GenusOptions{20'000'000, {}});
    EXPECT_TRUE(r.exact()) << c.spec;
    EXPECT_EQ(r.lower, c.genus) << c.spec;
  }
  for (const std::string spec : {"Z2*Z16", "Z2*Z2*Z2*Z3"}) {
    auto r = genus(reduced_graph(spec), GenusOptions{20'000'000, 2});
    EXPECT_GE(r.lower, 2) << spec;
    EXPECT_FALSE(r.budget_exhausted) << spec;
  }
}

TEST(Certificate, RoundTripAndSoundness) {
  Graph g = named_graph("K7");
  auto r = genus(g);
  ASSERT_TRUE(r.certificate);
  auto cert = make_certificate(g, *r.certificate);
  EXPECT_EQ(cert.claimed_genus, 1);
  auto back = certificate_from_json(certificate_to_json(cert));
  EXPECT_EQ(back.graph6, cert.graph6);
  EXPECT_EQ(back.rotations, cert.rotations);
  auto ok = verify_certificate(back);
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.computed_genus, 1);

  auto wrong = cert;
  wrong.claimed_genus = 0;
  EXPECT_FALSE(verify_certificate(wrong).accepted);
  auto broken = cert;
  std::swap(broken.rotations[0][0], broken.rotations[1][0]);
  EXPECT_FALSE(verify_certificate(broken).accepted);
  EXPECT_THROW(certificate_from_json("{\"graph6\": 3}"), GenusError);
}

TEST(Certificate, RandomRotationsVerifyAtTheirOwnGenus) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_connected(9, 12, rng);
    auto rot = random_rotation(g, rng);
    auto cert = make_certificate(g, rot);
    auto check = verify_certificate(cert);
    EXPECT_TRUE(check.accepted);
    int faces = oracle_face_count(g, rot);
    EXPECT_EQ(check.computed_genus,
              (2 - (static_cast<int>(g.order()) - static_cast<int>(g.size()) + faces)) / 2);
  }
}

TEST(Genus, AgreesWithClosedFormulas) {
  for (int n = 3; n <= 7; ++n) {
    auto r = genus(named_graph("K" + std::to_string(n)));
    ASSERT_TRUE(r.exact()) << n;
    EXPECT_EQ(r.lower, genus_formula_complete(n)) << n;
  }
  const std::pair<int, int> pairs[] = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 4}};
  for (auto [m, n] : pairs) {
    Graph g = named_graph("K" + std::to_string(m) + "," + std::to_string(n));
    auto r = genus(g);
    ASSERT_TRUE(r.exact()) << m << "," << n;
    EXPECT_EQ(r.lower, genus_formula_bipartite(m, n)) << m << "," << n;
    if (rotation_count(g) <= 1e5) EXPECT_EQ(brute_force_genus(g), r.lower) << m << "," << n;
  }
}

TEST(Genus, K36TorusFacesAreQuadrilaterals) {
  Graph g = named_graph("K3,6");
  auto r = genus(g);
  ASSERT_TRUE(r.certificate);
  auto ft = faces_of(g, *r.certificate);
  EXPECT_EQ(ft.count(), 9u);
  for (const auto& f : ft.faces) {
    EXPECT_EQ(f.size(), 4u);
    EXPECT_EQ(std::set<int>(f.begin(), f.end()).size(), 4u);
  }
}

TEST(Search, TwinHeavyGraphsMatchBruteForce) {
  std::mt19937 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 120; ++trial) {
    Graph base = random_connected(3 + trial % 4, 1 + trial % 4, rng);
    // Add copies of random vertices with the same neighbourhood.
    const int copies = 1 + trial % 3;
    Graph g(base.order() + static_cast<std::size_t>(copies));
    for (auto [u, v] : base.edges()) g.add_edge(u, v);
    for (int c = 0; c < copies; ++c) {
      int src = std::uniform_int_distribution<int>(0, static_cast<int>(base.order()) - 1)(rng);
      for (int w : base.neighbors(src)) g.add_edge(static_cast<int>(base.order()) + c, w);
    }
    if (!is_connected(g) || rotation_count(g) > 5e4) continue;
    int truth = brute_force_genus(g);
    auto at = search_embedding(g, truth, 10'000'000);
    ASSERT_EQ(at.status, SearchResult::Status::Found);
    EXPECT_EQ(genus_of_embedding(g, *at.rotation), truth);
    if (truth > 0) EXPECT_EQ(search_embedding(g, truth - 1, 10'000'000).status, SearchResult::Status::Refuted);
    ++checked;
  }
  EXPECT_GE(checked, 60);
}
