#include "zdgenus/howell.hpp"

#include <numeric>
#include <stdexcept>

namespace zdgenus {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::int64_t normalizing_unit(std::int64_t a, std::int64_t m) {
  a = mod(a, m);
  std::int64_t g = std::gcd(a, m);
  if (a == 0 || g == a) return 1;
  // a = g * a', and a' is a unit mod m/g. Lift its inverse to a unit mod m
  // by adding multiples of m/g until coprime to m.
  std::int64_t mg = m / g;
  std::int64_t s = 0, t = 0;
  extended_gcd(mod(a / g, mg), mg, s, t);
  std::int64_t u = mod(s, mg);
  for (std::int64_t k = 0; k < g; ++k) {
    std::int64_t cand = u + k * mg;
    if (std::gcd(cand, m) == 1 && mod(cand * a, m) == g) return cand;
  }
  throw std::logic_error("normalizing_unit: no unit found");
}

HowellForm::HowellForm(std::vector<ModVector> generators, std::int64_t modulus,
                       std::size_t columns)
    : modulus_(modulus), columns_(columns), pivot_value_(columns, 0) {
  const std::int64_t m = modulus;
  std::vector<ModVector> work;
  work.reserve(generators.size());
  for (auto& g : generators) {
    g.resize(columns, 0);
    bool nonzero = false;
    for (auto& x : g) {
      x = mod(x, m);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) work.push_back(std::move(g));
  }

  auto axpy = [m](ModVector& dst, std::int64_t c, const ModVector& src, std::size_t from) {
    if (c == 0) return;
    for (std::size_t k = from; k < dst.size(); ++k) dst[k] = mod(dst[k] + c * src[k], m);
  };

  std::vector<ModVector> pivots;  // rows already fixed, in pivot order
  std::vector<std::size_t> pivot_cols;

  for (std::size_t col = 0; col < columns && !work.empty(); ++col) {
    // Fold every pending row with a nonzero entry here into the first one.
    std::size_t lead = work.size();
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][col] != 0) {
        lead = i;
        break;
      }
    }
    if (lead == work.size()) continue;
    for (std::size_t i = lead + 1; i < work.size(); ++i) {
      std::int64_t b = work[i][col];
      if (b == 0) continue;
      std::int64_t a = work[lead][col];
      std::int64_t s = 0, t = 0;
      std::int64_t g = extended_gcd(a, b, s, t);
      std::int64_t u = -b / g, v = a / g;
      ModVector top(columns), bottom(columns);
      for (std::size_t k = col; k < columns; ++k) {
        top[k] = mod(s * work[lead][k] + t * work[i][k], m);
        bottom[k] = mod(u * work[lead][k] + v * work[i][k], m);
      }
      work[lead] = std::move(top);
      work[i] = std::move(bottom);
    }
    ModVector row = std::move(work[lead]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(lead));

    std::int64_t unit = normalizing_unit(row[col], m);
    for (std::size_t k = col; k < columns; ++k) row[k] = mod(row[k] * unit, m);
    std::int64_t d = row[col];

    for (auto& above : pivots) {
      std::int64_t q = above[col] / d;
      axpy(above, -q, row, col);
    }
    // Annihilator multiple: zero at this column, must stay in the span.
    if (d != 1) {
      ModVector ann(columns, 0);
      bool nonzero = false;
      for (std::size_t k = col + 1; k < columns; ++k) {
        ann[k] = mod((m / d) * row[k], m);
        nonzero = nonzero || ann[k] != 0;
      }
      if (nonzero) work.push_back(std::move(ann));
    }
    pivots.push_back(std::move(row));
    pivot_cols.push_back(col);

    // Drop pending rows that became zero.
    std::erase_if(work, [](const ModVector& r) {
      for (auto x : r) {
        if (x != 0) return false;
      }
      return true;
    });
  }

  rows_.reserve(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::size_t c = pivot_cols[i];
    pivot_value_[c] = pivots[i][c];
    rows_.push_back(Row{c, pivots[i][c], std::move(pivots[i])});
  }
}

ModVector HowellForm::reduce(ModVector v) const {
  v.resize(columns_, 0);
  for (auto& x : v) x = mod(x, modulus_);
  for (const auto& row : rows_) {
    std::int64_t q = v[row.pivot] / row.pivot_value;
    if (q == 0) continue;
    for (std::size_t k = row.pivot; k < columns_; ++k) {
      v[k] = mod(v[k] - q * row.entries[k], modulus_);
    }
  }
  return v;
}

bool HowellForm::contains(const ModVector& v) const {
  for (auto x : reduce(v)) {
    if (x != 0) return false;
  }
  return true;
}

std::int64_t HowellForm::pivot_at(std::size_t column) const { return pivot_value_.at(column); }

std::int64_t HowellForm::span_order() const {
  std::int64_t order = 1;
  for (const auto& row : rows_) order *= modulus_ / row.pivot_value;
  return order;
}

}  // namespace zdgenus
