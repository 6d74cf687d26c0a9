#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "lindstrom/error.hpp"

namespace lindstrom {

// A subset of the ground set {0, ..., n-1}, n <= 64, stored as a bitmask.
// Element indices are 0-based internally; all I/O is 1-based.
class ElementSet {
 public:
  static constexpr std::size_t kMaxElements = 64;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}

  ElementSet(std::initializer_list<std::size_t> elements) {
    for (std::size_t e : elements) insert(e);
  }

  static ElementSet from_elements(const std::vector<std::size_t>& elements) {
    ElementSet s;
    for (std::size_t e : elements) s.insert(e);
    return s;
  }

  // Parses 1-based labels, e.g. {4, 5, 6} -> elements 3, 4, 5.
  static ElementSet from_labels(const std::vector<long long>& labels, std::size_t n) {
    ElementSet s;
    for (long long label : labels) {
      if (label < 1 || static_cast<std::size_t>(label) > n) {
        throw InvalidArgument("element label " + std::to_string(label) +
                              " outside 1.." + std::to_string(n));
      }
      if (s.contains(static_cast<std::size_t>(label - 1))) {
        throw InvalidArgument("element label " + std::to_string(label) + " repeated");
      }
      s.insert(static_cast<std::size_t>(label - 1));
    }
    return s;
  }

  static constexpr ElementSet full(std::size_t n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  static constexpr ElementSet singleton(std::size_t e) { return ElementSet(std::uint64_t{1} << e); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t e) const { return (bits_ >> e) & 1U; }

  void insert(std::size_t e) {
    if (e >= kMaxElements) throw InvalidArgument("element index exceeds 64");
    bits_ |= std::uint64_t{1} << e;
  }
  constexpr void erase(std::size_t e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr ElementSet with(std::size_t e) const { return ElementSet(bits_ | (std::uint64_t{1} << e)); }
  constexpr ElementSet without(std::size_t e) const { return ElementSet(bits_ & ~(std::uint64_t{1} << e)); }

  constexpr bool is_subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ElementSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr std::size_t min_element() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  std::vector<long long> labels() const {
    std::vector<long long> out;
    for (std::size_t e : elements()) out.push_back(static_cast<long long>(e) + 1);
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (std::size_t e : elements()) {
      if (!first) out += ",";
      out += std::to_string(e + 1);
      first = false;
    }
    return out + "}";
  }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits_ | b.bits_); }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & b.bits_); }
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ElementSet a, ElementSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Lexicographic order on the sorted element lists: {1,2,4} < {1,3} < {2}.
inline bool lex_less(ElementSet a, ElementSet b) {
  std::uint64_t x = a.bits(), y = b.bits();
  while (x != 0 && y != 0) {
    int ex = std::countr_zero(x), ey = std::countr_zero(y);
    if (ex != ey) return ex < ey;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

// Size first, then lexicographic.
inline bool size_lex_less(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

// All subsets of `ground` of the given size, in lexicographic order.
inline std::vector<ElementSet> subsets_of_size(ElementSet ground, std::size_t k) {
  std::vector<std::size_t> elems = ground.elements();
  std::vector<ElementSet> out;
  if (k > elems.size()) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    ElementSet s;
    for (std::size_t i : idx) s.insert(elems[i]);
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == elems.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Every subset of `ground` (including empty and `ground` itself), by size then lex.
inline std::vector<ElementSet> all_subsets(ElementSet ground) {
  std::vector<ElementSet> out;
  for (std::size_t k = 0; k <= ground.size(); ++k) {
    auto level = subsets_of_size(ground, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace lindstrom
