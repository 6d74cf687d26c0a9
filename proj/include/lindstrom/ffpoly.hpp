#pragma once

// Sparse multivariate polynomials over a prime field F_p.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "lindstrom/circuit_vector.hpp"
#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"

namespace lindstrom {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Largest e with p^e | k. Works for any integer type with %, / and ==,
// including arbitrary-precision integers. k must be nonzero.
template <class Int>
unsigned p_adic_valuation(Int k, std::uint64_t p) {
  if (k == 0) throw InvalidArgument("p-adic valuation of 0 is infinite");
  if (p < 2) throw InvalidArgument("p-adic valuation needs p >= 2");
  if constexpr (!std::is_unsigned_v<Int>) {
    if (k < 0) k = -k;
  }
  const Int base(p);
  unsigned e = 0;
  while (k % base == 0) {
    k /= base;
    ++e;
  }
  return e;
}

// The prime field F_p with p < 2^31, so products fit in 64 bits.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31)) throw InvalidArgument("characteristic must be below 2^31");
    if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }

  Element reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Element add(Element a, Element b) const { return (a + b) % p_; }
  Element sub(Element a, Element b) const { return (a + p_ - b) % p_; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }

  Element pow(Element a, std::uint64_t e) const {
    Element result = 1 % p_;
    a %= p_;
    while (e) {
      if (e & 1U) result = mul(result, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return result;
  }

  Element inv(Element a) const {
    if (a % p_ == 0) throw InvalidArgument("division by zero in F_p");
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// Ambient context of a polynomial: coefficient field and variable names.
struct Ring {
  PrimeField field;
  std::vector<std::string> vars;

  std::size_t nvars() const { return vars.size(); }
  friend bool operator==(const Ring&, const Ring&) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars, std::uint64_t p) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[i] == vars[j]) throw InvalidArgument("duplicate variable name '" + vars[i] + "'");
    }
  }
  if (vars.size() > ElementSet::kMaxElements) throw InvalidArgument("at most 64 variables are supported");
  return std::make_shared<const Ring>(Ring{PrimeField(p), std::move(vars)});
}

// Variables x1..xn.
inline RingPtr make_indexed_ring(std::size_t n, std::uint64_t p, const std::string& prefix = "x") {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back(prefix + std::to_string(i));
  return make_ring(std::move(vars), p);
}

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  std::uint64_t d = 0;
  for (auto x : e) d += x;
  return d;
}

// Graded-lex with x1 > x2 > ... > xn.
inline bool grlex_greater(const Exponents& a, const Exponents& b) {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

struct Term {
  Exponents exponents;
  PrimeField::Element coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw InvalidArgument("polynomial needs a ring");
  }

  // Normalizes: reduces coefficients, merges duplicate exponents, drops
  // zeros and sorts graded-lex descending.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial f(std::move(ring));
    const PrimeField& F = f.field();
    for (Term& t : terms) {
      if (t.exponents.size() != f.ring_->nvars()) throw InvalidArgument("exponent vector has wrong length");
      t.coeff %= F.characteristic();
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.exponents, b.exponents); });
    for (Term& t : terms) {
      if (!f.terms_.empty() && f.terms_.back().exponents == t.exponents) {
        f.terms_.back().coeff = F.add(f.terms_.back().coeff, t.coeff);
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else if (t.coeff != 0) {
        f.terms_.push_back(std::move(t));
      }
    }
    return f;
  }

  static Polynomial constant(RingPtr ring, std::int64_t c) {
    Exponents zero(ring->nvars(), 0);
    auto coeff = ring->field.reduce(c);
    return from_terms(ring, {Term{std::move(zero), coeff}});
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    Exponents e(ring->nvars(), 0);
    e.at(i) = 1;
    return from_terms(ring, {Term{std::move(e), 1}});
  }

  static Polynomial monomial(RingPtr ring, Exponents e, PrimeField::Element c = 1) {
    return from_terms(std::move(ring), {Term{std::move(e), c}});
  }

  const RingPtr& ring() const { return ring_; }
  const PrimeField& field() const { return ring_->field; }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exponents) == 0);
  }
  bool is_monomial() const { return terms_.size() == 1; }

  // Variables that occur in some term.
  ElementSet support() const {
    ElementSet s;
    for (const Term& t : terms_) {
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (t.exponents[i] != 0) s.insert(i);
      }
    }
    return s;
  }

  Polynomial scaled(PrimeField::Element c) const {
    Polynomial out(ring_);
    c %= field().characteristic();
    if (c == 0) return out;
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff = field().mul(t.coeff, c);
    return out;
  }

  Polynomial operator-() const { return scaled(field().neg(1)); }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return combine(f, g, false); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return combine(f, g, true); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_same_ring(f, g);
    std::vector<Term> prod;
    prod.reserve(f.terms_.size() * g.terms_.size());
    const PrimeField& F = f.field();
    for (const Term& a : f.terms_) {
      for (const Term& b : g.terms_) {
        Exponents e(a.exponents.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(a.exponents[i], b.exponents[i]);
        prod.push_back(Term{std::move(e), F.mul(a.coeff, b.coeff)});
      }
    }
    return from_terms(f.ring_, std::move(prod));
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return same_ring(f, g) && f.terms_ == g.terms_;
  }

  static bool same_ring(const Polynomial& f, const Polynomial& g) {
    return f.ring_ == g.ring_ || *f.ring_ == *g.ring_;
  }

  static void check_same_ring(const Polynomial& f, const Polynomial& g) {
    if (same_ring(f, g)) return;
    if (!(f.field() == g.field())) throw ContextMismatch("polynomials have different characteristics");
    throw ContextMismatch("polynomials have different variables");
  }

  // Scaled so the graded-lex leading coefficient is 1.
  Polynomial monic() const {
    if (terms_.empty()) return *this;
    return scaled(field().inv(terms_.front().coeff));
  }

  // Coefficients above p/2 print as negatives, e.g. "x1^2*x6 - x4*x5" in
  // characteristic 3. The output parses back to the same polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    const std::uint64_t p = field().characteristic();
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
      bool negative = p > 2 && t.coeff > p / 2;
      std::uint64_t mag = negative ? p - t.coeff : t.coeff;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (t.exponents[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += ring_->vars[i];
        if (t.exponents[i] != 1) mono += "^" + std::to_string(t.exponents[i]);
      }
      if (mono.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

  static std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
    if (a > std::numeric_limits<std::uint32_t>::max() - b) throw InvalidArgument("exponent overflow");
    return a + b;
  }

 private:
  static Polynomial combine(const Polynomial& f, const Polynomial& g, bool subtract) {
    check_same_ring(f, g);
    const PrimeField& F = f.field();
    Polynomial out(f.ring_);
    auto& r = out.terms_;
    r.reserve(f.terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    auto gcoeff = [&](const Term& t) { return subtract ? F.neg(t.coeff) : t.coeff; };
    while (i < f.terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size() ||
          (i < f.terms_.size() && grlex_greater(f.terms_[i].exponents, g.terms_[j].exponents))) {
        r.push_back(f.terms_[i++]);
      } else if (i == f.terms_.size() || grlex_greater(g.terms_[j].exponents, f.terms_[i].exponents)) {
        r.push_back(Term{g.terms_[j].exponents, gcoeff(g.terms_[j])});
        ++j;
      } else {
        auto c = F.add(f.terms_[i].coeff, gcoeff(g.terms_[j]));
        if (c != 0) r.push_back(Term{f.terms_[i].exponents, c});
        ++i;
        ++j;
      }
    }
    return out;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

namespace detail {

// Recursive-descent parser for
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := integer | [integer '*'] factor ('*' factor)*
//   factor := var ['^' positive-integer]
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_space();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    terms.push_back(parse_term(negative));
    while (true) {
      skip_space();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("expected '+' or '-', found '") + c + "'", pos_);
      ++pos_;
      terms.push_back(parse_term(c == '-'));
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  // Integer literal reduced mod p digit by digit.
  PrimeField::Element parse_coefficient() {
    const PrimeField& F = ring_->field;
    PrimeField::Element value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = F.add(F.mul(value, 10 % F.characteristic()), F.reduce(peek() - '0'));
      ++pos_;
    }
    return value;
  }

  std::uint32_t parse_exponent() {
    skip_space();
    std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("expected exponent", pos_);
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (value == 0) throw ParseError("exponent must be positive", start);
    return static_cast<std::uint32_t>(value);
  }

  void parse_factor(Exponents& exps) {
    skip_space();
    std::size_t start = pos_;
    if (!ident_start(peek())) {
      if (at_end()) throw ParseError("unexpected end of input", pos_);
      throw ParseError(std::string("expected variable, found '") + peek() + "'", pos_);
    }
    while (!at_end() && ident_char(peek())) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    const auto& vars = ring_->vars;
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw UnknownVariable(name, start);
    std::uint32_t power = 1;
    skip_space();
    if (peek() == '^') {
      ++pos_;
      power = parse_exponent();
    }
    auto& slot = exps[static_cast<std::size_t>(it - vars.begin())];
    slot = Polynomial::checked_add(slot, power);
  }

  Term parse_term(bool negative) {
    const PrimeField& F = ring_->field;
    skip_space();
    Exponents exps(ring_->nvars(), 0);
    PrimeField::Element coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_coefficient();
      skip_space();
      if (peek() != '*') return Term{std::move(exps), negative ? F.neg(coeff) : coeff};
      ++pos_;
    }
    parse_factor(exps);
    while (true) {
      skip_space();
      if (peek() != '*') break;
      ++pos_;
      parse_factor(exps);
    }
    return Term{std::move(exps), negative ? F.neg(coeff) : coeff};
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, RingPtr ring) {
  return detail::PolynomialParser(text, std::move(ring)).parse();
}

inline Polynomial parse_polynomial(std::string_view text, std::vector<std::string> vars, std::uint64_t p) {
  return parse_polynomial(text, make_ring(std::move(vars), p));
}

// f^(p^m). Over F_p the coefficients are fixed by Frobenius, so this is the
// exponent scaling X^u -> X^(p^m u).
inline Polynomial frobenius_power(const Polynomial& f, unsigned m) {
  std::uint64_t scale = 1;
  const std::uint64_t p = f.field().characteristic();
  for (unsigned k = 0; k < m; ++k) {
    if (scale > std::numeric_limits<std::uint32_t>::max() / p) throw InvalidArgument("Frobenius exponent overflow");
    scale *= p;
  }
  std::vector<Term> terms = f.terms();
  for (Term& t : terms) {
    for (auto& e : t.exponents) {
      std::uint64_t v = e * scale;
      if (v > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("Frobenius exponent overflow");
      e = static_cast<std::uint32_t>(v);
    }
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

// Entry i is the least p-adic valuation of the i-th exponent over the
// terms where that exponent is nonzero, or ∞ if X_i does not occur.
inline CircuitVector circuit_vector(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgument("circuit vector of the zero polynomial");
  const std::uint64_t p = f.field().characteristic();
  std::vector<ExtendedInt> entries(f.nvars(), ExtendedInt::infinity());
  for (const Term& t : f.terms()) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      entries[i] = min(entries[i], ExtendedInt(p_adic_valuation<std::uint64_t>(t.exponents[i], p)));
    }
  }
  // A nonzero constant has no variables; it is a unit, never a circuit polynomial.
  if (std::none_of(entries.begin(), entries.end(), [](ExtendedInt x) { return x.is_finite(); })) {
    throw InvalidArgument("circuit vector of a constant polynomial");
  }
  return CircuitVector(std::move(entries));
}

}  // namespace lindstrom
