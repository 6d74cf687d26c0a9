#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"

namespace lindstrom {

// An element of Z ∪ {∞} with min-plus conventions: ∞ is the largest value
// and absorbs addition.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;  // ∞
  constexpr ExtendedInt(std::int64_t value) : value_(value) {}  // NOLINT(implicit)

  static constexpr ExtendedInt infinity() { return ExtendedInt(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }

  std::int64_t value() const {
    if (!value_) throw InvalidArgument("value() on infinite ExtendedInt");
    return *value_;
  }

  friend constexpr ExtendedInt operator+(ExtendedInt a, ExtendedInt b) {
    if (!a.value_ || !b.value_) return infinity();
    return ExtendedInt(*a.value_ + *b.value_);
  }

  friend constexpr bool operator==(ExtendedInt a, ExtendedInt b) = default;

  friend constexpr std::strong_ordering operator<=>(ExtendedInt a, ExtendedInt b) {
    if (!a.value_ && !b.value_) return std::strong_ordering::equal;
    if (!a.value_) return std::strong_ordering::greater;
    if (!b.value_) return std::strong_ordering::less;
    return *a.value_ <=> *b.value_;
  }

  std::string to_string(bool ascii = true) const {
    if (!value_) return ascii ? "inf" : "∞";
    return std::to_string(*value_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedInt x) { return os << x.to_string(); }

 private:
  std::optional<std::int64_t> value_;
};

inline ExtendedInt min(ExtendedInt a, ExtendedInt b) { return a < b ? a : b; }

// A vector in (Z ∪ {∞})^n with at least one finite entry. Houses the
// exponent-valuation vector of a circuit polynomial, valuated circuits and
// valuated cocircuits. Equality is entry-wise; use canonical() to compare
// classes modulo the all-ones shift.
class CircuitVector {
 public:
  explicit CircuitVector(std::vector<ExtendedInt> entries) : entries_(std::move(entries)) {
    if (std::none_of(entries_.begin(), entries_.end(), [](ExtendedInt x) { return x.is_finite(); })) {
      throw InvalidArgument("circuit vector must have a finite entry");
    }
  }

  std::size_t size() const { return entries_.size(); }
  ExtendedInt operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<ExtendedInt>& entries() const { return entries_; }

  ElementSet support() const {
    ElementSet s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].is_finite()) s.insert(i);
    }
    return s;
  }

  std::int64_t min_finite() const {
    ExtendedInt m = ExtendedInt::infinity();
    for (ExtendedInt x : entries_) m = min(m, x);
    return m.value();
  }

  // Adds lambda to every finite entry.
  CircuitVector shifted(std::int64_t lambda) const {
    std::vector<ExtendedInt> out = entries_;
    for (ExtendedInt& x : out) x = x + ExtendedInt(lambda);
    return CircuitVector(std::move(out));
  }

  // Representative of the shift class with minimum finite entry 0.
  CircuitVector canonical() const { return shifted(-min_finite()); }
  bool is_canonical() const { return min_finite() == 0; }

  std::string to_string(bool ascii = true) const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ",";
      out += entries_[i].to_string(ascii);
    }
    return out + ")";
  }

  friend bool operator==(const CircuitVector&, const CircuitVector&) = default;
  friend std::ostream& operator<<(std::ostream& os, const CircuitVector& c) { return os << c.to_string(); }

 private:
  std::vector<ExtendedInt> entries_;
};

// Valuated circuits and cocircuits are stored in canonical form.
using ValuatedCircuit = CircuitVector;

// Deterministic output order: support lexicographic, then entries.
inline bool circuit_order(const CircuitVector& a, const CircuitVector& b) {
  ElementSet sa = a.support(), sb = b.support();
  if (sa != sb) return lex_less(sa, sb);
  return a.entries() < b.entries();
}

inline void sort_and_dedupe(std::vector<CircuitVector>& circuits) {
  std::sort(circuits.begin(), circuits.end(), circuit_order);
  circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());
}

}  // namespace lindstrom
