#pragma once

#include <cstdint>
#include <vector>

namespace zdgenus {

using ModVector = std::vector<std::int64_t>;

/// Howell normal form of a row span over Z/mZ.
///
/// Rows are kept in echelon order with pivot entries dividing m, entries
/// above each pivot reduced into [0, pivot), and the Howell property (every
/// span element vanishing on the first k columns is a combination of the rows
/// with pivot column >= k). This makes `reduce` a canonical representative
/// map for Z_m^n / span.
class HowellForm {
 public:
  struct Row {
    std::size_t pivot = 0;
    std::int64_t pivot_value = 0;
    ModVector entries;
  };

  HowellForm() = default;
  HowellForm(std::vector<ModVector> generators, std::int64_t modulus, std::size_t columns);

  std::int64_t modulus() const { return modulus_; }
  std::size_t columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Canonical representative of v modulo the span.
  ModVector reduce(ModVector v) const;
  bool contains(const ModVector& v) const;

  /// Pivot value at a column, or 0 when the column has no pivot.
  std::int64_t pivot_at(std::size_t column) const;

  /// Order of the span, as a product of m / pivot_value over the rows.
  std::int64_t span_order() const;

 private:
  std::int64_t modulus_ = 1;
  std::size_t columns_ = 0;
  std::vector<Row> rows_;
  std::vector<std::int64_t> pivot_value_;
};

/// Extended gcd on nonnegative integers: returns g with s*a + t*b = g.
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

/// A unit u of Z_m with u * a = gcd(a, m) (mod m).
std::int64_t normalizing_unit(std::int64_t a, std::int64_t m);

}  // namespace zdgenus
