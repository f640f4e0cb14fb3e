#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdgenus/howell.hpp"
#include "zdgenus/presentation.hpp"

namespace zdgenus {

class RingError : public std::runtime_error {
 public:
  enum class Kind { NotClosed, ZeroRing, Unsupported, NotLocal, PreconditionViolated };

  RingError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Dense coordinate vector; each coordinate lies in [0, modulus).
struct RingElement {
  ModVector coords;
  bool operator==(const RingElement&) const = default;
  auto operator<=>(const RingElement&) const = default;
};

/// One presentation atom realized as an explicit ring: a Z_m-module with a
/// canonical coordinate basis and multiplication structure constants.
/// Subrings produced by local decomposition are table-only factors.
class RingFactor {
 public:
  using Index = std::uint32_t;

  static std::shared_ptr<const RingFactor> from_atom(const RingAtom& atom);
  static std::shared_ptr<const RingFactor> from_tables(std::string name,
                                                        std::vector<std::string> labels,
                                                        std::vector<ModVector> coords,
                                                        std::vector<Index> add_table,
                                                        std::vector<Index> mul_table,
                                                        Index one);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  std::int64_t base_modulus() const { return modulus_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::vector<std::int64_t>& coord_moduli() const { return moduli_; }
  /// Product of basis elements s and t, as a coordinate vector.
  const ModVector& structure_constant(std::size_t s, std::size_t t) const {
    return mul_table_[s][t];
  }
  /// Degree bound at which the presentation closed (0 for atoms without variables).
  int closure_degree() const { return closure_degree_; }

  Index zero() const { return 0; }
  Index one() const { return one_; }
  Index add(Index a, Index b) const;
  Index mul(Index a, Index b) const;
  Index neg(Index a) const;

  ModVector coords(Index a) const;
  Index index_of(const ModVector& coords) const;
  std::string label(Index a) const;

 private:
  RingFactor() = default;
  void tabulate();
  void build_quotient(std::int64_t modulus, const std::vector<char>& vars,
                      const std::vector<Polynomial>& relations);
  bool try_close(int bound, std::int64_t modulus, const std::vector<char>& vars,
                 const std::vector<Polynomial>& relations);
  ModVector normalize(ModVector v) const;
  ModVector add_coords(const ModVector& a, const ModVector& b) const;
  ModVector mul_coords(const ModVector& a, const ModVector& b) const;

  std::string name_;
  std::size_t order_ = 0;
  std::int64_t modulus_ = 1;
  int closure_degree_ = 0;
  bool table_only_ = false;

  // Coordinate structure (absent for table-only factors).
  std::vector<std::string> basis_;
  std::vector<std::int64_t> moduli_;
  struct CarryRow {
    std::size_t pivot;
    std::int64_t pivot_value;
    ModVector entries;
  };
  std::vector<CarryRow> carry_rows_;
  std::vector<std::vector<ModVector>> mul_table_;
  ModVector one_coords_;

  // Element tables, indexed by mixed-radix coordinate index (or by position
  // for table-only factors).
  Index one_ = 0;
  std::vector<Index> add_tab_;
  std::vector<Index> mul_tab_;
  std::vector<Index> neg_tab_;
  std::vector<std::string> labels_;
  std::vector<ModVector> table_coords_;
};

struct LocalData {
  std::vector<std::uint32_t> maximal_ideal;
  std::size_t residue_field_size = 0;
  /// m^1, m^2, ..., ending with {0}.
  std::vector<std::vector<std::uint32_t>> ideal_powers;
  int nilpotency_index = 0;
};

struct FactorInvariants {
  std::size_t order = 0;
  std::size_t residue_field_size = 0;
  int nilpotency_index = 0;
  bool operator==(const FactorInvariants&) const = default;
};

struct RingInvariants {
  std::size_t order = 0;
  std::int64_t characteristic = 0;
  std::size_t spec_count = 0;
  std::vector<FactorInvariants> factors;
};

/// A realized finite commutative ring: a direct product of RingFactors.
/// Elements are addressed either by coordinate vectors (concatenated factor
/// coordinates) or by a dense index in [0, order). Index 0 is zero.
class FiniteRing {
 public:
  using Index = std::uint32_t;

  FiniteRing(std::string spec, std::vector<std::shared_ptr<const RingFactor>> factors);

  const std::string& spec() const { return spec_; }
  std::size_t order() const { return order_; }
  const std::vector<std::shared_ptr<const RingFactor>>& factors() const { return factors_; }
  std::vector<std::int64_t> coord_moduli() const;

  Index zero() const { return 0; }
  Index one() const { return one_; }
  Index add(Index a, Index b) const;
  Index mul(Index a, Index b) const;
  Index neg(Index a) const;
  /// c * a for an integer c (c may be negative).
  Index scale(Index a, std::int64_t c) const;

  RingElement element(Index a) const;
  Index index_of(const RingElement& e) const;
  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;

  std::string label(Index a) const;

  std::int64_t characteristic() const { return characteristic_; }
  bool is_unit(Index a) const { return unit_flag_[a] != 0; }
  bool is_zero_divisor(Index a) const { return zero_divisor_flag_[a] != 0; }
  const std::vector<Index>& units() const { return units_; }
  /// Nonzero zero-divisors Z(R)^*, ascending by index.
  const std::vector<Index>& zero_divisors() const { return zero_divisors_; }
  const std::vector<Index>& idempotents() const { return idempotents_; }
  const std::vector<Index>& primitive_idempotents() const { return primitive_idempotents_; }
  std::size_t spec_count() const { return primitive_idempotents_.size(); }
  bool is_local() const { return spec_count() == 1; }

  std::vector<std::uint32_t> decompose(Index a) const;
  Index compose(const std::vector<std::uint32_t>& parts) const;

 private:
  std::string spec_;
  std::vector<std::shared_ptr<const RingFactor>> factors_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 0;
  Index one_ = 0;
  std::int64_t characteristic_ = 0;
  std::vector<char> unit_flag_;
  std::vector<char> zero_divisor_flag_;
  std::vector<Index> units_;
  std::vector<Index> zero_divisors_;
  std::vector<Index> idempotents_;
  std::vector<Index> primitive_idempotents_;
};

FiniteRing realize(const RingSpecAST& ast);
FiniteRing realize(std::string_view spec_text);

/// Local factors R*e for the primitive idempotents e; a local ring returns itself.
std::vector<FiniteRing> local_decomposition(const FiniteRing& ring);

/// Throws RingError(NotLocal) for non-local rings.
LocalData local_data(const FiniteRing& ring);

/// Searches for u with f(u) = 0 whose generated subring over Z_{p^2} is all
/// of R, certifying R = Z_{p^2}[x]/(f). `f` is univariate.
std::optional<FiniteRing::Index> find_root_generator(const FiniteRing& ring, std::int64_t p,
                                                     const Polynomial& f);

/// Evaluates a univariate polynomial with integer coefficients at u.
FiniteRing::Index evaluate(const FiniteRing& ring, const Polynomial& f, FiniteRing::Index u);

/// Closure of {1, u, u^2, ...} under addition: the subring Z_m[u].
std::vector<FiniteRing::Index> generated_subring(const FiniteRing& ring, FiniteRing::Index u);

RingInvariants ring_invariants(const FiniteRing& ring);

/// JSON description: {spec, order, characteristic, spec_count, factors, zero_divisor_count}.
std::string describe_ring_json(const FiniteRing& ring);

}  // namespace zdgenus
