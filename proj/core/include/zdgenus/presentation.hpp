#pragma once

// Textual presentations of finite commutative rings.
//
//   spec     := atom ("*" atom)*
//   atom     := "Z" INT | "GF" "(" INT ")" | base "[" varlist "]" "/" "(" polylist ")"
//   base     := "Z" INT | "GF" "(" INT ")"
//   varlist  := VAR ("," VAR)*             VAR in {x, y, z}
//   polylist := poly ("," poly)*
//   poly     := term (("+"|"-") term)*
//   term     := INT | INT? monomial        ("*" allowed between factors)
//   monomial := factor+                    factor := VAR ("^" INT)?

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zdgenus {

/// Exponent vector over the declared variables of a presentation.
using Exponents = std::vector<int>;

/// Sparse polynomial with integer coefficients. Zero coefficients are never
/// stored; the variable count is fixed by the owning presentation.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Adds `coeff * monomial`, dropping the term if the result is zero.
  void add_term(const Exponents& monomial, std::int64_t coeff);
  /// Reduces every coefficient into [0, modulus) and drops zeros.
  void reduce_mod(std::int64_t modulus);

  /// Terms in canonical print order: total degree descending, then
  /// lexicographically descending exponent vectors (x > y > z).
  std::vector<std::pair<Exponents, std::int64_t>> ordered_terms() const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::size_t num_vars_ = 0;
  std::map<Exponents, std::int64_t> terms_;
};

/// Formats with the given variable names, e.g. "x^2+3*x*y+1".
std::string format_polynomial(const Polynomial& p, const std::vector<char>& vars);

struct ZMod {
  std::int64_t n = 0;
  bool operator==(const ZMod&) const = default;
};

struct GaloisField {
  std::int64_t q = 0;
  /// Monic defining polynomial in one variable; absent for prime q and for
  /// prime powers without a built-in table entry.
  std::optional<Polynomial> defining_poly;
  bool operator==(const GaloisField&) const = default;
};

using BaseRing = std::variant<ZMod, GaloisField>;

struct Quotient {
  BaseRing base;
  std::vector<char> vars;
  std::vector<Polynomial> relations;
  bool operator==(const Quotient&) const = default;
};

using RingAtom = std::variant<ZMod, GaloisField, Quotient>;

/// A parsed presentation: one atom, or a flattened direct product of atoms.
struct RingSpecAST {
  std::vector<RingAtom> factors;

  bool is_product() const { return factors.size() > 1; }
  bool operator==(const RingSpecAST&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };

  ParseError(Kind kind, std::size_t offset, std::set<std::string> expected,
             const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::set<std::string> expected_;
};

RingSpecAST parse_ring_spec(std::string_view text);
std::string format_ring_spec(const RingSpecAST& ast);
std::string format_atom(const RingAtom& atom);

/// Built-in defining polynomial for GF(q), q in {4, 8, 9, 25, 27, 49}.
std::optional<Polynomial> builtin_field_polynomial(std::int64_t q);

/// Returns (p, d) with q = p^d, or nullopt when q is not a prime power.
std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q);
bool is_prime(std::int64_t n);

/// Characteristic of the base ring (n for Z_n, p for GF(p^d)).
std::int64_t base_characteristic(const BaseRing& base);

}  // namespace zdgenus
