#include <gtest/gtest.h>

#include <random>
#include <set>

#include "zdgenus/howell.hpp"

using namespace zdgenus;

namespace {

// Brute-force span of the rows over Z_m by closure under addition.
std::set<ModVector> brute_span(const std::vector<ModVector>& rows, std::int64_t m,
                               std::size_t cols) {
  std::set<ModVector> span{ModVector(cols, 0)};
  std::vector<ModVector> frontier{ModVector(cols, 0)};
  while (!frontier.empty()) {
    ModVector v = frontier.back();
    frontier.pop_back();
    for (const auto& r : rows) {
      ModVector w(cols);
      for (std::size_t k = 0; k < cols; ++k) w[k] = (v[k] + r[k]) % m;
      if (span.insert(w).second) frontier.push_back(w);
    }
  }
  return span;
}

std::vector<ModVector> all_vectors(std::int64_t m, std::size_t cols) {
  std::vector<ModVector> out{ModVector{}};
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<ModVector> next;
    for (const auto& v : out) {
      for (std::int64_t x = 0; x < m; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Howell, ReduceIsCanonicalAgainstBruteForce) {
  std::mt19937 rng(7);
  for (std::int64_t m : {2, 4, 6, 8, 9, 12}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t cols = 3;
      std::uniform_int_distribution<int> nrows(1, 4);
      std::uniform_int_distribution<std::int64_t> entry(0, m - 1);
      std::vector<ModVector> rows(static_cast<std::size_t>(nrows(rng)), ModVector(cols));
      for (auto& r : rows) {
        for (auto& x : r) x = entry(rng);
      }
      HowellForm hf(rows, m, cols);
      auto span = brute_span(rows, m, cols);
      ASSERT_EQ(static_cast<std::size_t>(hf.span_order()), span.size()) << "m=" << m;

      // v and w share a representative iff v - w is in the span.
      std::map<ModVector, ModVector> rep;
      for (const auto& v : all_vectors(m, cols)) rep[v] = hf.reduce(v);
      for (const auto& v : all_vectors(m, cols)) {
        EXPECT_EQ(hf.contains(v), span.count(v) == 1);
        for (const auto& s : span) {
          ModVector w(cols);
          for (std::size_t k = 0; k < cols; ++k) w[k] = (v[k] + s[k]) % m;
          ASSERT_EQ(rep[v], rep[w]);
        }
      }
      std::set<ModVector> reps;
      for (const auto& [v, r] : rep) reps.insert(r);
      EXPECT_EQ(reps.size() * span.size(), all_vectors(m, cols).size());
    }
  }
}

TEST(Howell, NormalizingUnit) {
  for (std::int64_t m : {4, 8, 12, 27, 30}) {
    for (std::int64_t a = 0; a < m; ++a) {
      std::int64_t u = normalizing_unit(a, m);
      EXPECT_EQ(std::gcd(u, m), 1);
      if (a != 0) EXPECT_EQ(u * a % m, std::gcd(a, m));
    }
  }
}
