#pragma once

// Matroids given by an explicit basis family on a ground set inside
// {0, ..., n-1}. Desk scale: every query is a scan over the bases.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"

namespace lindstrom {

class Matroid {
 public:
  // Basis-exchange verification runs by default when n < 9.
  static constexpr std::size_t kVerifyBelow = 9;

  Matroid(std::size_t n, ElementSet ground, std::vector<ElementSet> bases, std::optional<bool> verify = {})
      : n_(n), ground_(ground), bases_(std::move(bases)) {
    if (n > ElementSet::kMaxElements) throw InvalidArgument("ground set too large");
    if (!ground_.is_subset_of(ElementSet::full(n))) throw InvalidArgument("ground set exceeds n");
    if (bases_.empty()) throw InvalidArgument("a matroid needs at least one basis");
    std::sort(bases_.begin(), bases_.end(), lex_less);
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    rank_ = bases_.front().size();
    for (ElementSet b : bases_) {
      if (b.size() != rank_) throw InvalidArgument("bases have different sizes");
      if (!b.is_subset_of(ground_)) throw InvalidArgument("basis " + b.to_string() + " leaves the ground set");
    }
    by_bits_.reserve(bases_.size());
    for (std::size_t k = 0; k < bases_.size(); ++k) by_bits_.push_back({bases_[k].bits(), k});
    std::sort(by_bits_.begin(), by_bits_.end());
    if (verify.value_or(n < kVerifyBelow)) {
      if (auto bad = exchange_violation()) throw InvalidArgument("basis family violates exchange: " + *bad);
    }
  }

  Matroid(std::size_t n, std::vector<ElementSet> bases, std::optional<bool> verify = {})
      : Matroid(n, ElementSet::full(n), std::move(bases), verify) {}

  // Every subset of the ground set is independent.
  static Matroid free(std::size_t n) { return Matroid(n, {ElementSet::full(n)}); }

  std::size_t n() const { return n_; }
  ElementSet ground() const { return ground_; }
  std::size_t rank() const { return rank_; }

  // Lexicographically sorted.
  const std::vector<ElementSet>& bases() const { return bases_; }

  // Position of B in bases(), if B is a basis.
  std::optional<std::size_t> basis_index(ElementSet b) const {
    auto it = std::lower_bound(by_bits_.begin(), by_bits_.end(), std::pair{b.bits(), std::size_t{0}});
    if (it == by_bits_.end() || it->first != b.bits()) return std::nullopt;
    return it->second;
  }

  bool is_basis(ElementSet b) const { return basis_index(b).has_value(); }

  std::size_t rank_of(ElementSet s) const {
    std::size_t best = 0;
    for (ElementSet b : bases_) best = std::max(best, (b & s).size());
    return best;
  }

  bool is_independent(ElementSet s) const {
    if (!s.is_subset_of(ground_)) return false;
    return std::any_of(bases_.begin(), bases_.end(), [&](ElementSet b) { return s.is_subset_of(b); });
  }

  ElementSet closure(ElementSet s) const {
    const std::size_t r = rank_of(s);
    ElementSet out = s & ground_;
    for (std::size_t e : (ground_ - s).elements()) {
      if (rank_of(s.with(e)) == r) out.insert(e);
    }
    return out;
  }

  // Minimal dependent sets, by size then lexicographic.
  std::vector<ElementSet> circuits() const {
    std::vector<ElementSet> out;
    for (ElementSet s : all_subsets(ground_)) {
      if (s.size() > rank_ + 1) break;
      if (is_independent(s)) continue;
      bool minimal = std::none_of(out.begin(), out.end(), [&](ElementSet c) { return c.is_subset_of(s); });
      if (minimal) out.push_back(s);
    }
    return out;
  }

  // The unique circuit in B ∪ {v}; it contains v.
  ElementSet fundamental_circuit(ElementSet basis, std::size_t v) const {
    if (!is_basis(basis)) throw InvalidArgument(basis.to_string() + " is not a basis");
    if (basis.contains(v) || !ground_.contains(v)) throw InvalidArgument("element must lie outside the basis");
    ElementSet c = ElementSet::singleton(v);
    for (std::size_t u : basis.elements()) {
      if (is_basis(basis.without(u).with(v))) c.insert(u);
    }
    return c;
  }

  // Closed sets of rank r-1, by size then lexicographic.
  std::vector<ElementSet> hyperplanes() const {
    std::vector<ElementSet> out;
    if (rank_ == 0) return out;
    for (ElementSet s : all_subsets(ground_)) {
      if (rank_of(s) == rank_ - 1 && closure(s) == s) out.push_back(s);
    }
    return out;
  }

  // Bases are the complements of bases within the ground set.
  Matroid dual() const {
    std::vector<ElementSet> out;
    for (ElementSet b : bases_) out.push_back(ground_ - b);
    return Matroid(n_, ground_, std::move(out), false);
  }

  // M \ G: the bases meeting G least, with G removed.
  Matroid deletion(ElementSet g) const {
    g = g & ground_;
    std::size_t least = rank_;
    for (ElementSet b : bases_) least = std::min(least, (b & g).size());
    std::vector<ElementSet> out;
    for (ElementSet b : bases_) {
      if ((b & g).size() == least) out.push_back(b - g);
    }
    return Matroid(n_, ground_ - g, std::move(out), false);
  }

  // M / F: the bases meeting F most, with F removed.
  Matroid contraction(ElementSet f) const {
    f = f & ground_;
    std::size_t most = rank_of(f);
    std::vector<ElementSet> out;
    for (ElementSet b : bases_) {
      if ((b & f).size() == most) out.push_back(b - f);
    }
    return Matroid(n_, ground_ - f, std::move(out), false);
  }

  // First violation of: for bases A, B and a in A \ B there is b in B \ A
  // with A - a + b a basis.
  std::optional<std::string> exchange_violation() const {
    for (ElementSet a : bases_) {
      for (ElementSet b : bases_) {
        for (std::size_t x : (a - b).elements()) {
          bool found = false;
          for (std::size_t y : (b - a).elements()) {
            if (is_basis(a.without(x).with(y))) {
              found = true;
              break;
            }
          }
          if (!found) {
            return "no exchange for " + std::to_string(x + 1) + " from " + a.to_string() + " into " + b.to_string();
          }
        }
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.ground_ == b.ground_ && a.bases_ == b.bases_;
  }

 private:
  std::size_t n_;
  ElementSet ground_;
  std::vector<ElementSet> bases_;
  std::size_t rank_ = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> by_bits_;
};

}  // namespace lindstrom
