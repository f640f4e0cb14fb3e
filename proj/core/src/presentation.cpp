#include "zdgenus/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zdgenus {

int Polynomial::degree() const {
  int best = -1;
  for (const auto& [mono, c] : terms_) {
    int d = 0;
    for (int e : mono) d += e;
    best = std::max(best, d);
  }
  return best;
}

void Polynomial::add_term(const Exponents& monomial, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(monomial);
  if (it == terms_.end()) {
    terms_.emplace(monomial, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

void Polynomial::reduce_mod(std::int64_t modulus) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second %= modulus;
    if (it->second < 0) it->second += modulus;
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<std::pair<Exponents, std::int64_t>> Polynomial::ordered_terms() const {
  std::vector<std::pair<Exponents, std::int64_t>> out(terms_.begin(), terms_.end());
  auto total = [](const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    int da = total(a.first), db = total(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return out;
}

std::string format_polynomial(const Polynomial& p, const std::vector<char>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : p.ordered_terms()) {
    std::int64_t c = coeff;
    if (!first) out += (c < 0 ? "-" : "+");
    else if (c < 0) out += "-";
    first = false;
    if (c < 0) c = -c;

    std::string factors;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += vars.at(i);
      if (mono[i] > 1) factors += "^" + std::to_string(mono[i]);
    }
    if (factors.empty()) {
      out += std::to_string(c);
    } else if (c == 1) {
      out += factors;
    } else {
      out += std::to_string(c) + "*" + factors;
    }
  }
  return out;
}

ParseError::ParseError(Kind kind, std::size_t offset, std::set<std::string> expected,
                       const std::string& message)
    : std::runtime_error(message), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int d = 0;
  std::int64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++d;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, d);
}

std::optional<Polynomial> builtin_field_polynomial(std::int64_t q) {
  // Conway polynomials, written low degree first.
  static const std::map<std::int64_t, std::vector<std::int64_t>> table = {
      {4, {1, 1, 1}},     // a^2 + a + 1
      {8, {1, 1, 0, 1}},  // a^3 + a + 1
      {9, {2, 2, 1}},     // a^2 + 2a + 2
      {25, {2, 4, 1}},    // a^2 + 4a + 2
      {27, {1, 2, 0, 1}}, // a^3 + 2a + 1
      {49, {3, 6, 1}},    // a^2 + 6a + 3
  };
  auto it = table.find(q);
  if (it == table.end()) return std::nullopt;
  Polynomial p(1);
  for (std::size_t k = 0; k < it->second.size(); ++k) {
    p.add_term({static_cast<int>(k)}, it->second[k]);
  }
  return p;
}

std::int64_t base_characteristic(const BaseRing& base) {
  if (const auto* z = std::get_if<ZMod>(&base)) return z->n;
  const auto& gf = std::get<GaloisField>(base);
  return prime_power(gf.q)->first;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RingSpecAST parse() {
    RingSpecAST ast;
    skip_ws();
    if (at_end()) syntax_error({"Z", "GF"}, "empty ring specification");
    ast.factors.push_back(parse_atom());
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (!accept('*')) syntax_error({"*", "end of input"}, "unexpected character");
      ast.factors.push_back(parse_atom());
    }
    return ast;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) syntax_error({std::string(1, c)}, std::string("expected '") + c + "'");
  }

  [[noreturn]] void syntax_error(std::set<std::string> expected, const std::string& what) const {
    std::ostringstream msg;
    msg << "syntax error at offset " << pos_ << ": " << what << " (expected one of:";
    for (const auto& e : expected) msg << ' ' << e;
    msg << ')';
    throw ParseError(ParseError::Kind::Syntax, pos_, std::move(expected), msg.str());
  }

  [[noreturn]] void semantic_error(std::size_t at, const std::string& what) const {
    throw ParseError(ParseError::Kind::Semantic, at, {},
                     "semantic error at offset " + std::to_string(at) + ": " + what);
  }

  bool peek_int() {
    skip_ws();
    return !at_end() && std::isdigit(static_cast<unsigned char>(peek()));
  }

  std::int64_t parse_int() {
    skip_ws();
    if (!peek_int()) syntax_error({"INT"}, "expected an integer");
    std::int64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > (std::int64_t{1} << 40)) syntax_error({"INT"}, "integer literal too large");
      ++pos_;
    }
    return value;
  }

  BaseRing parse_base() {
    skip_ws();
    std::size_t start = pos_;
    if (text_.substr(pos_, 2) == "GF") {
      pos_ += 2;
      expect('(');
      std::size_t at = pos_;
      std::int64_t q = parse_int();
      expect(')');
      auto pp = prime_power(q);
      if (!pp) semantic_error(at, "GF(" + std::to_string(q) + ") is not a prime power");
      GaloisField gf{q, std::nullopt};
      if (pp->second > 1) gf.defining_poly = builtin_field_polynomial(q);
      return gf;
    }
    if (peek() == 'Z') {
      ++pos_;
      std::size_t at = pos_;
      if (!peek_int()) syntax_error({"INT"}, "expected modulus after 'Z'");
      std::int64_t n = parse_int();
      if (n < 2) semantic_error(at, "modulus must be at least 2");
      return ZMod{n};
    }
    pos_ = start;
    syntax_error({"Z", "GF"}, "expected a base ring");
  }

  RingAtom parse_atom() {
    BaseRing base = parse_base();
    skip_ws();
    if (peek() != '[') {
      if (auto* z = std::get_if<ZMod>(&base)) return *z;
      return std::get<GaloisField>(base);
    }
    ++pos_;
    Quotient quo;
    quo.base = base;
    do {
      skip_ws();
      char v = peek();
      if (v != 'x' && v != 'y' && v != 'z') syntax_error({"x", "y", "z"}, "expected a variable");
      if (std::find(quo.vars.begin(), quo.vars.end(), v) != quo.vars.end()) {
        semantic_error(pos_, std::string("variable '") + v + "' declared twice");
      }
      quo.vars.push_back(v);
      ++pos_;
    } while (accept(','));
    expect(']');
    expect('/');
    expect('(');
    std::int64_t modulus = base_characteristic(base);
    do {
      Polynomial rel = parse_poly(quo.vars);
      rel.reduce_mod(modulus);
      quo.relations.push_back(std::move(rel));
    } while (accept(','));
    expect(')');
    return quo;
  }

  Polynomial parse_poly(const std::vector<char>& vars) {
    Polynomial poly(vars.size());
    int sign = 1;
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      sign = -1;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      auto [mono, coeff] = parse_term(vars);
      poly.add_term(mono, sign * coeff);
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        sign = 1;
      } else if (peek() == '-') {
        ++pos_;
        sign = -1;
      } else {
        break;
      }
    }
    return poly;
  }

  bool peek_var() {
    skip_ws();
    return peek() == 'x' || peek() == 'y' || peek() == 'z';
  }

  std::pair<Exponents, std::int64_t> parse_term(const std::vector<char>& vars) {
    Exponents mono(vars.size(), 0);
    std::int64_t coeff = 1;
    bool have_coeff = false;
    if (peek_int()) {
      coeff = parse_int();
      have_coeff = true;
    }
    bool have_factor = false;
    while (true) {
      skip_ws();
      std::size_t save = pos_;
      if (have_coeff || have_factor) {
        if (peek() == '*') {
          ++pos_;
          if (!peek_var()) {
            pos_ = save;
            break;
          }
        }
      }
      if (!peek_var()) break;
      char v = peek();
      auto it = std::find(vars.begin(), vars.end(), v);
      if (it == vars.end()) semantic_error(pos_, std::string("undeclared variable '") + v + "'");
      ++pos_;
      int exp = 1;
      if (accept('^')) {
        std::int64_t e = parse_int();
        if (e > 64) semantic_error(pos_, "exponent too large");
        exp = static_cast<int>(e);
      }
      mono[static_cast<std::size_t>(it - vars.begin())] += exp;
      have_factor = true;
    }
    if (!have_coeff && !have_factor) {
      std::set<std::string> expected = {"INT"};
      for (char v : vars) expected.insert(std::string(1, v));
      syntax_error(std::move(expected), "expected a term");
    }
    return {mono, coeff};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_base(const BaseRing& base) {
  if (const auto* z = std::get_if<ZMod>(&base)) return "Z" + std::to_string(z->n);
  return "GF(" + std::to_string(std::get<GaloisField>(base).q) + ")";
}

}  // namespace

RingSpecAST parse_ring_spec(std::string_view text) { return Parser(text).parse(); }

std::string format_atom(const RingAtom& atom) {
  if (const auto* z = std::get_if<ZMod>(&atom)) return format_base(*z);
  if (const auto* gf = std::get_if<GaloisField>(&atom)) return format_base(*gf);
  const auto& quo = std::get<Quotient>(atom);
  std::string out = format_base(quo.base) + "[";
  for (std::size_t i = 0; i < quo.vars.size(); ++i) {
    if (i) out += ",";
    out += quo.vars[i];
  }
  out += "]/(";
  for (std::size_t i = 0; i < quo.relations.size(); ++i) {
    if (i) out += ", ";
    out += format_polynomial(quo.relations[i], quo.vars);
  }
  out += ")";
  return out;
}

std::string format_ring_spec(const RingSpecAST& ast) {
  std::string out;
  for (std::size_t i = 0; i < ast.factors.size(); ++i) {
    if (i) out += " * ";
    out += format_atom(ast.factors[i]);
  }
  return out;
}

}  // namespace zdgenus
