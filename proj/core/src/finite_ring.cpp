#include "zdgenus/finite_ring.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace zdgenus {

namespace {

constexpr std::size_t kMaxOrder = std::size_t{1} << 14;
constexpr std::size_t kTableLimit = 512;
constexpr int kFirstBound = 6;
constexpr int kLastBound = 10;

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

// All exponent vectors of total degree <= bound, graded descending.
std::vector<Exponents> monomials_up_to(std::size_t nvars, int bound) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  });
  return out;
}

std::string monomial_name(const Exponents& e, const std::vector<char>& vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial shift_vars(const Polynomial& p, std::size_t offset) {
  Polynomial out(p.num_vars() + offset);
  for (const auto& [mono, c] : p.terms()) {
    Exponents e(offset, 0);
    e.insert(e.end(), mono.begin(), mono.end());
    out.add_term(e, c);
  }
  return out;
}

std::vector<FiniteRing::Index> additive_closure(const FiniteRing& ring,
                                                const std::vector<FiniteRing::Index>& gens) {
  std::vector<char> seen(ring.order(), 0);
  std::vector<FiniteRing::Index> out{ring.zero()};
  seen[ring.zero()] = 1;
  std::set<FiniteRing::Index> uniq(gens.begin(), gens.end());
  uniq.erase(ring.zero());
  std::vector<FiniteRing::Index> g(uniq.begin(), uniq.end());
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (auto x : g) {
      auto y = ring.add(out[head], x);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- RingFactor

std::shared_ptr<const RingFactor> RingFactor::from_atom(const RingAtom& atom) {
  std::shared_ptr<RingFactor> f(new RingFactor());
  f->name_ = format_atom(atom);

  auto set_cyclic = [&](std::int64_t n) {
    f->modulus_ = n;
    f->basis_ = {"1"};
    f->moduli_ = {n};
    f->mul_table_ = {{ModVector{1 % n}}};
    f->one_coords_ = {1 % n};
  };

  auto gf_poly = [](const GaloisField& gf) {
    if (!gf.defining_poly) {
      throw RingError(RingError::Kind::Unsupported,
                      "GF(" + std::to_string(gf.q) + ") has no built-in defining polynomial");
    }
    return *gf.defining_poly;
  };

  if (const auto* z = std::get_if<ZMod>(&atom)) {
    set_cyclic(z->n);
  } else if (const auto* gf = std::get_if<GaloisField>(&atom)) {
    auto pp = prime_power(gf->q);
    if (pp->second == 1) {
      set_cyclic(gf->q);
    } else {
      f->build_quotient(pp->first, {'a'}, {gf_poly(*gf)});
    }
  } else {
    const auto& quo = std::get<Quotient>(atom);
    std::int64_t m = base_characteristic(quo.base);
    const auto* qgf = std::get_if<GaloisField>(&quo.base);
    if (qgf && prime_power(qgf->q)->second > 1) {
      std::vector<char> vars{'a'};
      vars.insert(vars.end(), quo.vars.begin(), quo.vars.end());
      // The field polynomial lives in variable 0; relations shift right by one.
      Polynomial fp(vars.size());
      const Polynomial field_poly = gf_poly(*qgf);
      for (const auto& [mono, c] : field_poly.terms()) {
        Exponents e(vars.size(), 0);
        e[0] = mono[0];
        fp.add_term(e, c);
      }
      std::vector<Polynomial> rels{fp};
      for (const auto& r : quo.relations) rels.push_back(shift_vars(r, 1));
      f->build_quotient(m, vars, rels);
    } else {
      f->build_quotient(m, quo.vars, quo.relations);
    }
  }

  f->order_ = 1;
  for (auto mdl : f->moduli_) {
    f->order_ *= static_cast<std::size_t>(mdl);
    if (f->order_ > kMaxOrder) {
      throw RingError(RingError::Kind::Unsupported, f->name_ + ": order exceeds 2^14");
    }
  }
  if (f->order_ == 1) throw RingError(RingError::Kind::ZeroRing, f->name_ + " is the zero ring");
  f->tabulate();
  return f;
}

void RingFactor::build_quotient(std::int64_t modulus, const std::vector<char>& vars,
                                const std::vector<Polynomial>& relations) {
  modulus_ = modulus;
  for (int bound = kFirstBound; bound <= kLastBound; ++bound) {
    if (try_close(bound, modulus, vars, relations)) {
      closure_degree_ = bound;
      return;
    }
  }
  throw RingError(RingError::Kind::NotClosed,
                  name_ + ": presentation does not close at degree bound " +
                      std::to_string(kLastBound));
}

bool RingFactor::try_close(int bound, std::int64_t m, const std::vector<char>& vars,
                           const std::vector<Polynomial>& relations) {
  const std::size_t k = vars.size();
  auto monos = monomials_up_to(k, bound);
  std::map<Exponents, std::size_t> column;
  for (std::size_t i = 0; i < monos.size(); ++i) column[monos[i]] = i;
  const std::size_t ncols = monos.size();

  std::vector<ModVector> gens;
  for (const auto& rel : relations) {
    if (rel.is_zero()) continue;
    int dr = rel.degree();
    for (const auto& mu : monos) {
      if (total_degree(mu) + dr > bound) continue;
      ModVector row(ncols, 0);
      for (const auto& [e, c] : rel.terms()) {
        Exponents sum = mu;
        for (std::size_t i = 0; i < k; ++i) sum[i] += e[i];
        row[column.at(sum)] = mod(c, m);
      }
      gens.push_back(std::move(row));
    }
  }
  HowellForm hf(std::move(gens), m, ncols);

  if (hf.pivot_at(column.at(Exponents(k, 0))) == 1) {
    throw RingError(RingError::Kind::ZeroRing, name_ + ": 1 lies in the ideal");
  }
  // Near the degree bound the truncated ideal misses products, so standard
  // monomials are taken only up to degree `low`; any such choice that passes
  // the checks below is a valid presentation.
  auto attempt = [&](int low) -> bool {
    std::vector<std::size_t> std_cols;
    for (std::size_t c = ncols; c-- > 0;) {
      if (hf.pivot_at(c) != 1 && total_degree(monos[c]) <= low) std_cols.push_back(c);
    }

    const std::size_t n = std_cols.size();
    std::vector<std::size_t> slot(ncols, n);
    for (std::size_t s = 0; s < n; ++s) slot[std_cols[s]] = s;

    basis_.clear();
    moduli_.clear();
    for (auto c : std_cols) {
      basis_.push_back(monomial_name(monos[c], vars));
      std::int64_t d = hf.pivot_at(c);
      moduli_.push_back(d == 0 ? m : d);
    }
    carry_rows_.clear();
    for (const auto& row : hf.rows()) {
      if (row.pivot_value == 1 || slot[row.pivot] == n) continue;
      ModVector entries(n, 0);
      for (std::size_t c = 0; c < ncols; ++c) {
        if (row.entries[c] == 0) continue;
        if (slot[c] == n) return false;
        entries[slot[c]] = row.entries[c];
      }
      carry_rows_.push_back(CarryRow{slot[row.pivot], row.pivot_value, std::move(entries)});
    }

    bool escaped = false;
    auto project = [&](const ModVector& full) {
      ModVector v(n, 0);
      for (std::size_t c = 0; c < ncols; ++c) {
        if (full[c] == 0) continue;
        if (slot[c] == n) escaped = true;
        else v[slot[c]] = full[c];
      }
      return v;
    };

    // Multiplication-by-variable matrices: mats[i][s] = reduce(s * x_i).
    std::vector<std::vector<ModVector>> mats(k, std::vector<ModVector>(n));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t s = 0; s < n; ++s) {
        Exponents e = monos[std_cols[s]];
        e[i] += 1;
        ModVector full(ncols, 0);
        full[column.at(e)] = 1;
        mats[i][s] = project(hf.reduce(std::move(full)));
      }
    }
    if (escaped) return false;
    auto apply = [&](std::size_t i, const ModVector& v) {
      ModVector out(n, 0);
      for (std::size_t s = 0; s < n; ++s) {
        if (v[s] == 0) continue;
        for (std::size_t t = 0; t < n; ++t) out[t] = mod(out[t] + v[s] * mats[i][s][t], m);
      }
      return normalize(std::move(out));
    };
    auto apply_mono = [&](const Exponents& e, ModVector v) {
      for (std::size_t i = 0; i < k; ++i) {
        for (int r = 0; r < e[i]; ++r) v = apply(i, v);
      }
      return v;
    };
    auto unit_vec = [&](std::size_t s) {
      ModVector v(n, 0);
      v[s] = 1 % moduli_[s];
      return v;
    };
    const ModVector zero(n, 0);

    // (a) the matrices commute.
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (std::size_t s = 0; s < n; ++s) {
          if (apply(i, apply(j, unit_vec(s))) != apply(j, apply(i, unit_vec(s)))) return false;
        }
      }
    }
    // (b) each matrix preserves the torsion relations.
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& cr : carry_rows_) {
        if (apply(i, cr.entries) != zero) return false;
      }
    }
    // (c) standard monomials act as themselves on 1.
    const ModVector one = unit_vec(0);
    for (std::size_t s = 0; s < n; ++s) {
      if (apply_mono(monos[std_cols[s]], one) != unit_vec(s)) return false;
    }
    // (d) relations annihilate 1.
    for (const auto& rel : relations) {
      ModVector acc(n, 0);
      for (const auto& [e, c] : rel.terms()) {
        ModVector t = apply_mono(e, one);
        for (std::size_t s = 0; s < n; ++s) acc[s] = mod(acc[s] + c * t[s], m);
      }
      if (normalize(acc) != zero) return false;
    }

    mul_table_.assign(n, std::vector<ModVector>(n));
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        mul_table_[s][t] = apply_mono(monos[std_cols[t]], unit_vec(s));
      }
    }
    one_coords_ = one;
    return true;
  };
  int max_rel_degree = 1;
  for (const auto& rel : relations) max_rel_degree = std::max(max_rel_degree, rel.degree());
  for (int low = bound - 1; low >= std::max(0, bound - max_rel_degree); --low) {
    if (attempt(low)) return true;
  }
  return false;
}

ModVector RingFactor::normalize(ModVector v) const {
  for (auto& x : v) x = mod(x, modulus_);
  for (const auto& cr : carry_rows_) {
    std::int64_t q = v[cr.pivot] / cr.pivot_value;
    if (q == 0) continue;
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = mod(v[s] - q * cr.entries[s], modulus_);
  }
  return v;
}

ModVector RingFactor::add_coords(const ModVector& a, const ModVector& b) const {
  ModVector out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out[s] = a[s] + b[s];
  return normalize(std::move(out));
}

ModVector RingFactor::mul_coords(const ModVector& a, const ModVector& b) const {
  const std::size_t n = a.size();
  ModVector out(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (a[s] == 0) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (b[t] == 0) continue;
      std::int64_t c = mod(a[s] * b[t], modulus_);
      const auto& st = mul_table_[s][t];
      for (std::size_t r = 0; r < n; ++r) {
        if (st[r] != 0) out[r] = mod(out[r] + c * st[r], modulus_);
      }
    }
  }
  return normalize(std::move(out));
}

ModVector RingFactor::coords(Index a) const {
  if (table_only_) return table_coords_[a];
  ModVector v(moduli_.size());
  std::size_t x = a;
  for (std::size_t s = 0; s < moduli_.size(); ++s) {
    v[s] = static_cast<std::int64_t>(x % static_cast<std::size_t>(moduli_[s]));
    x /= static_cast<std::size_t>(moduli_[s]);
  }
  return v;
}

RingFactor::Index RingFactor::index_of(const ModVector& c) const {
  if (table_only_) {
    auto it = std::find(table_coords_.begin(), table_coords_.end(), c);
    if (it == table_coords_.end()) throw std::out_of_range("element not in subring");
    return static_cast<Index>(it - table_coords_.begin());
  }
  std::size_t idx = 0, stride = 1;
  for (std::size_t s = 0; s < moduli_.size(); ++s) {
    idx += static_cast<std::size_t>(mod(c.at(s), moduli_[s])) * stride;
    stride *= static_cast<std::size_t>(moduli_[s]);
  }
  return static_cast<Index>(idx);
}

std::string RingFactor::label(Index a) const {
  if (!labels_.empty()) return labels_[a];
  ModVector c = coords(a);
  std::string out;
  for (std::size_t s = c.size(); s-- > 0;) {
    if (c[s] == 0) continue;
    if (!out.empty()) out += "+";
    if (basis_[s] == "1") {
      out += std::to_string(c[s]);
    } else if (c[s] == 1) {
      out += basis_[s];
    } else {
      out += std::to_string(c[s]) + "*" + basis_[s];
    }
  }
  return out.empty() ? "0" : out;
}

void RingFactor::tabulate() {
  one_ = index_of(one_coords_);
  if (order_ > kTableLimit) return;
  const std::size_t n = order_;
  std::vector<ModVector> all(n);
  for (std::size_t a = 0; a < n; ++a) all[a] = coords(static_cast<Index>(a));
  add_tab_.resize(n * n);
  mul_tab_.resize(n * n);
  neg_tab_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Index s = index_of(add_coords(all[a], all[b]));
      Index p = index_of(mul_coords(all[a], all[b]));
      add_tab_[a * n + b] = add_tab_[b * n + a] = s;
      mul_tab_[a * n + b] = mul_tab_[b * n + a] = p;
      if (s == 0) {
        neg_tab_[a] = static_cast<Index>(b);
        neg_tab_[b] = static_cast<Index>(a);
      }
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[a] = label(static_cast<Index>(a));
  labels_ = std::move(labels);
}

std::shared_ptr<const RingFactor> RingFactor::from_tables(std::string name,
                                                           std::vector<std::string> labels,
                                                           std::vector<ModVector> coords,
                                                           std::vector<Index> add_table,
                                                           std::vector<Index> mul_table,
                                                           Index one) {
  std::shared_ptr<RingFactor> f(new RingFactor());
  f->name_ = std::move(name);
  f->table_only_ = true;
  f->order_ = labels.size();
  f->labels_ = std::move(labels);
  f->table_coords_ = std::move(coords);
  f->add_tab_ = std::move(add_table);
  f->mul_tab_ = std::move(mul_table);
  f->one_ = one;
  const std::size_t n = f->order_;
  f->neg_tab_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (f->add_tab_[a * n + b] == 0) {
        f->neg_tab_[a] = static_cast<Index>(b);
        break;
      }
    }
  }
  return f;
}

RingFactor::Index RingFactor::add(Index a, Index b) const {
  if (!add_tab_.empty()) return add_tab_[a * order_ + b];
  return index_of(add_coords(coords(a), coords(b)));
}

RingFactor::Index RingFactor::mul(Index a, Index b) const {
  if (!mul_tab_.empty()) return mul_tab_[a * order_ + b];
  return index_of(mul_coords(coords(a), coords(b)));
}

RingFactor::Index RingFactor::neg(Index a) const {
  if (!neg_tab_.empty()) return neg_tab_[a];
  ModVector c = coords(a);
  for (auto& x : c) x = -x;
  return index_of(normalize(std::move(c)));
}

// ---------------------------------------------------------------- FiniteRing

FiniteRing::FiniteRing(std::string spec, std::vector<std::shared_ptr<const RingFactor>> factors)
    : spec_(std::move(spec)), factors_(std::move(factors)) {
  order_ = 1;
  for (const auto& f : factors_) {
    strides_.push_back(order_);
    order_ *= f->order();
    if (order_ > kMaxOrder) {
      throw RingError(RingError::Kind::Unsupported, spec_ + ": order exceeds 2^14");
    }
  }
  std::vector<std::uint32_t> ones;
  for (const auto& f : factors_) ones.push_back(f->one());
  one_ = compose(ones);

  characteristic_ = 1;
  for (Index x = one_; x != zero(); x = add(x, one_)) ++characteristic_;

  // Per-factor unit flags, then componentwise criteria for the product.
  std::vector<std::vector<char>> factor_unit;
  for (const auto& f : factors_) {
    std::vector<char> flag(f->order(), 0);
    for (Index a = 0; a < f->order(); ++a) {
      if (flag[a]) continue;
      for (Index b = 0; b < f->order(); ++b) {
        if (f->mul(a, b) == f->one()) {
          flag[a] = flag[b] = 1;
          break;
        }
      }
    }
    factor_unit.push_back(std::move(flag));
  }
  unit_flag_.assign(order_, 0);
  zero_divisor_flag_.assign(order_, 0);
  for (Index a = 0; a < order_; ++a) {
    auto parts = decompose(a);
    bool unit = true;
    for (std::size_t i = 0; i < parts.size(); ++i) unit = unit && factor_unit[i][parts[i]];
    unit_flag_[a] = unit;
    zero_divisor_flag_[a] = (a != zero() && !unit);
    if (unit) units_.push_back(a);
    if (zero_divisor_flag_[a]) zero_divisors_.push_back(a);
    if (mul(a, a) == a) idempotents_.push_back(a);
  }
  for (auto e : idempotents_) {
    if (e == zero()) continue;
    bool primitive = true;
    for (auto f : idempotents_) {
      if (f != zero() && f != e && mul(f, e) == f) {
        primitive = false;
        break;
      }
    }
    if (primitive) primitive_idempotents_.push_back(e);
  }
}

std::vector<std::int64_t> FiniteRing::coord_moduli() const {
  std::vector<std::int64_t> out;
  for (const auto& f : factors_) {
    out.insert(out.end(), f->coord_moduli().begin(), f->coord_moduli().end());
  }
  return out;
}

std::vector<std::uint32_t> FiniteRing::decompose(Index a) const {
  std::vector<std::uint32_t> parts(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    parts[i] = static_cast<std::uint32_t>(a % factors_[i]->order());
    a = static_cast<Index>(a / factors_[i]->order());
  }
  return parts;
}

FiniteRing::Index FiniteRing::compose(const std::vector<std::uint32_t>& parts) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx += parts[i] * strides_[i];
  return static_cast<Index>(idx);
}

FiniteRing::Index FiniteRing::add(Index a, Index b) const {
  if (factors_.size() == 1) return factors_[0]->add(a, b);
  auto pa = decompose(a), pb = decompose(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = factors_[i]->add(pa[i], pb[i]);
  return compose(pa);
}

FiniteRing::Index FiniteRing::mul(Index a, Index b) const {
  if (factors_.size() == 1) return factors_[0]->mul(a, b);
  auto pa = decompose(a), pb = decompose(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = factors_[i]->mul(pa[i], pb[i]);
  return compose(pa);
}

FiniteRing::Index FiniteRing::neg(Index a) const {
  if (factors_.size() == 1) return factors_[0]->neg(a);
  auto pa = decompose(a);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = factors_[i]->neg(pa[i]);
  return compose(pa);
}

FiniteRing::Index FiniteRing::scale(Index a, std::int64_t c) const {
  if (c < 0) return scale(neg(a), -c);
  Index acc = zero(), base = a;
  while (c > 0) {
    if (c & 1) acc = add(acc, base);
    base = add(base, base);
    c >>= 1;
  }
  return acc;
}

RingElement FiniteRing::element(Index a) const {
  RingElement e;
  auto parts = decompose(a);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto c = factors_[i]->coords(parts[i]);
    e.coords.insert(e.coords.end(), c.begin(), c.end());
  }
  return e;
}

FiniteRing::Index FiniteRing::index_of(const RingElement& e) const {
  std::vector<std::uint32_t> parts(factors_.size());
  std::size_t at = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::size_t len = factors_[i]->coords(0).size();
    ModVector c(e.coords.begin() + static_cast<std::ptrdiff_t>(at),
                e.coords.begin() + static_cast<std::ptrdiff_t>(at + len));
    parts[i] = factors_[i]->index_of(c);
    at += len;
  }
  return compose(parts);
}

RingElement FiniteRing::add(const RingElement& a, const RingElement& b) const {
  return element(add(index_of(a), index_of(b)));
}

RingElement FiniteRing::mul(const RingElement& a, const RingElement& b) const {
  return element(mul(index_of(a), index_of(b)));
}

RingElement FiniteRing::neg(const RingElement& a) const { return element(neg(index_of(a))); }

std::string FiniteRing::label(Index a) const {
  if (factors_.size() == 1) return factors_[0]->label(a);
  auto parts = decompose(a);
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += factors_[i]->label(parts[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------- free functions

FiniteRing realize(const RingSpecAST& ast) {
  std::vector<std::shared_ptr<const RingFactor>> factors;
  for (const auto& atom : ast.factors) factors.push_back(RingFactor::from_atom(atom));
  return FiniteRing(format_ring_spec(ast), std::move(factors));
}

FiniteRing realize(std::string_view spec_text) { return realize(parse_ring_spec(spec_text)); }

namespace {

FiniteRing subring_at(const FiniteRing& ring, FiniteRing::Index e) {
  std::set<FiniteRing::Index> elems;
  for (FiniteRing::Index r = 0; r < ring.order(); ++r) elems.insert(ring.mul(r, e));
  std::vector<FiniteRing::Index> list(elems.begin(), elems.end());
  std::map<FiniteRing::Index, RingFactor::Index> local;
  for (std::size_t i = 0; i < list.size(); ++i) local[list[i]] = static_cast<RingFactor::Index>(i);
  const std::size_t n = list.size();
  std::vector<std::string> labels;
  std::vector<ModVector> coords;
  for (auto x : list) {
    labels.push_back(ring.label(x));
    coords.push_back(ring.element(x).coords);
  }
  std::vector<RingFactor::Index> add_tab(n * n), mul_tab(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      add_tab[i * n + j] = local.at(ring.add(list[i], list[j]));
      mul_tab[i * n + j] = local.at(ring.mul(list[i], list[j]));
    }
  }
  std::string name = ring.spec() + " e=" + ring.label(e);
  auto f = RingFactor::from_tables(name, std::move(labels), std::move(coords), std::move(add_tab),
                                   std::move(mul_tab), local.at(e));
  return FiniteRing(name, {f});
}

}  // namespace

std::vector<FiniteRing> local_decomposition(const FiniteRing& ring) {
  if (ring.is_local()) return {ring};
  std::vector<FiniteRing> out;
  for (const auto& f : ring.factors()) {
    FiniteRing single(f->name(), {f});
    if (single.is_local()) {
      out.push_back(std::move(single));
      continue;
    }
    for (auto e : single.primitive_idempotents()) out.push_back(subring_at(single, e));
  }
  return out;
}

LocalData local_data(const FiniteRing& ring) {
  if (!ring.is_local()) {
    throw RingError(RingError::Kind::NotLocal,
                    ring.spec() + " is not local (" + std::to_string(ring.spec_count()) +
                        " maximal ideals)");
  }
  LocalData data;
  for (FiniteRing::Index a = 0; a < ring.order(); ++a) {
    if (!ring.is_unit(a)) data.maximal_ideal.push_back(a);
  }
  data.residue_field_size = ring.order() / data.maximal_ideal.size();
  std::vector<FiniteRing::Index> power = data.maximal_ideal;
  while (true) {
    data.ideal_powers.push_back(power);
    if (power.size() == 1) break;
    std::set<FiniteRing::Index> products;
    for (auto a : power) {
      for (auto b : data.maximal_ideal) products.insert(ring.mul(a, b));
    }
    auto next = additive_closure(ring, {products.begin(), products.end()});
    if (next.size() == power.size()) {
      throw std::logic_error(ring.spec() + ": maximal ideal is not nilpotent");
    }
    power = std::move(next);
  }
  data.nilpotency_index = static_cast<int>(data.ideal_powers.size());
  return data;
}

FiniteRing::Index evaluate(const FiniteRing& ring, const Polynomial& f, FiniteRing::Index u) {
  FiniteRing::Index acc = ring.zero();
  for (const auto& [mono, c] : f.terms()) {
    FiniteRing::Index pw = ring.one();
    for (int k = 0; k < mono.at(0); ++k) pw = ring.mul(pw, u);
    acc = ring.add(acc, ring.scale(pw, c));
  }
  return acc;
}

std::vector<FiniteRing::Index> generated_subring(const FiniteRing& ring, FiniteRing::Index u) {
  std::vector<FiniteRing::Index> powers;
  std::set<FiniteRing::Index> seen;
  for (FiniteRing::Index p = ring.one(); seen.insert(p).second; p = ring.mul(p, u)) {
    powers.push_back(p);
  }
  return additive_closure(ring, powers);
}

std::optional<FiniteRing::Index> find_root_generator(const FiniteRing& ring, std::int64_t p,
                                                     const Polynomial& f) {
  if (!is_prime(p)) {
    throw RingError(RingError::Kind::PreconditionViolated, std::to_string(p) + " is not prime");
  }
  if (ring.characteristic() != p * p) {
    throw RingError(RingError::Kind::PreconditionViolated,
                    ring.spec() + " has characteristic " + std::to_string(ring.characteristic()) +
                        ", expected " + std::to_string(p * p));
  }
  auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(ring.order()))));
  if (root * root != ring.order()) {
    throw RingError(RingError::Kind::PreconditionViolated,
                    ring.spec() + " does not have square order");
  }
  if (f.num_vars() != 1 || f.is_zero()) {
    throw RingError(RingError::Kind::PreconditionViolated, "polynomial must be univariate");
  }
  const auto lead = f.terms().rbegin();
  if (mod(lead->second, p * p) != 1) {
    throw RingError(RingError::Kind::PreconditionViolated, "polynomial must be monic");
  }
  for (FiniteRing::Index u = 0; u < ring.order(); ++u) {
    if (evaluate(ring, f, u) != ring.zero()) continue;
    if (generated_subring(ring, u).size() == ring.order()) return u;
  }
  return std::nullopt;
}

RingInvariants ring_invariants(const FiniteRing& ring) {
  RingInvariants inv;
  inv.order = ring.order();
  inv.characteristic = ring.characteristic();
  inv.spec_count = ring.spec_count();
  for (const auto& local : local_decomposition(ring)) {
    auto data = local_data(local);
    inv.factors.push_back({local.order(), data.residue_field_size, data.nilpotency_index});
  }
  return inv;
}

std::string describe_ring_json(const FiniteRing& ring) {
  auto inv = ring_invariants(ring);
  nlohmann::ordered_json j;
  j["spec"] = ring.spec();
  j["order"] = inv.order;
  j["characteristic"] = inv.characteristic;
  j["spec_count"] = inv.spec_count;
  j["factors"] = nlohmann::ordered_json::array();
  for (const auto& f : inv.factors) {
    j["factors"].push_back({{"order", f.order},
                            {"residue_field_size", f.residue_field_size},
                            {"nilpotency_index", f.nilpotency_index}});
  }
  j["zero_divisor_count"] = ring.zero_divisors().size();
  return j.dump();
}

}  // namespace zdgenus
