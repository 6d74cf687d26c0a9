#pragma once

// The algebraic matroid of the fraction field of K[x]/I: a subset S is
// independent iff I ∩ K[x_S] = 0, and each circuit C carries the generator
// of the principal ideal I ∩ K[x_C].

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"
#include "lindstrom/groebner.hpp"
#include "lindstrom/matroid.hpp"

namespace lindstrom {

struct CircuitRecord {
  ElementSet support;
  Polynomial polynomial;  // monic circuit polynomial
};

// Persistent storage for elimination results, keyed by the kept set.
class EliminationStore {
 public:
  virtual ~EliminationStore() = default;
  virtual std::optional<std::vector<Polynomial>> load(ElementSet keep) = 0;
  virtual void save(ElementSet keep, const std::vector<Polynomial>& basis) = 0;
};

class AlgebraicMatroid {
 public:
  explicit AlgebraicMatroid(Ideal ideal, EliminationStore* store = nullptr)
      : ideal_(std::move(ideal)), store_(store) {}

  const Ideal& ideal() const { return ideal_; }
  std::size_t size() const { return ideal_.nvars(); }
  ElementSet ground() const { return ElementSet::full(size()); }

  // Reduced Gröbner basis of I ∩ K[x_keep], memoized.
  std::vector<Polynomial> elimination(ElementSet keep) {
    {
      std::lock_guard lock(mutex_);
      auto it = eliminations_.find(keep.bits());
      if (it != eliminations_.end()) return it->second;
    }
    std::optional<std::vector<Polynomial>> basis;
    if (store_ != nullptr) basis = store_->load(keep);
    if (!basis) {
      basis = eliminate(ideal_, keep);
      ++elimination_calls_;
      if (store_ != nullptr) store_->save(keep, *basis);
    }
    std::lock_guard lock(mutex_);
    eliminations_[keep.bits()] = *basis;
    independent_[keep.bits()] = basis->empty();
    return *basis;
  }

  bool independent(ElementSet s) {
    check_subset(s);
    {
      std::lock_guard lock(mutex_);
      if (auto it = independent_.find(s.bits()); it != independent_.end()) return it->second;
      // Monotonicity: supersets of dependent sets are dependent, subsets of
      // independent sets are independent.
      for (auto [bits, indep] : independent_) {
        ElementSet known(bits);
        if ((!indep && known.is_subset_of(s)) || (indep && s.is_subset_of(known))) {
          independent_[s.bits()] = indep;
          return indep;
        }
      }
    }
    return elimination(s).empty();
  }

  // Greedy: size of a maximal independent subset of s.
  std::size_t rank(ElementSet s) {
    check_subset(s);
    ElementSet current;
    for (std::size_t e : s.elements()) {
      if (independent(current.with(e))) current.insert(e);
    }
    return current.size();
  }

  // Inclusion-minimal dependent sets, by size then lexicographic.
  std::vector<CircuitRecord> circuits() {
    std::vector<CircuitRecord> out;
    const std::size_t r = rank(ground());
    for (std::size_t k = 1; k <= std::min(r + 1, size()); ++k) {
      for (ElementSet s : subsets_of_size(ground(), k)) {
        bool facets_independent = true;
        for (std::size_t e : s.elements()) {
          if (!independent(s.without(e))) {
            facets_independent = false;
            break;
          }
        }
        if (!facets_independent) continue;
        std::vector<Polynomial> basis = elimination(s);
        if (basis.empty()) continue;
        Polynomial f = principal_generator(basis);
        if (f.support() != s) {
          throw NotPrincipal("generator of the elimination ideal on " + s.to_string() +
                             " does not involve every variable: " + f.to_string());
        }
        out.push_back(CircuitRecord{s, std::move(f)});
      }
    }
    return out;
  }

  // Maximal independent sets.
  Matroid matroid(std::optional<bool> verify = {}) {
    const std::size_t r = rank(ground());
    std::vector<ElementSet> bases;
    for (ElementSet s : subsets_of_size(ground(), r)) {
      if (independent(s)) bases.push_back(s);
    }
    return Matroid(size(), std::move(bases), verify);
  }

  std::size_t elimination_calls() const { return elimination_calls_; }

 private:
  void check_subset(ElementSet s) const {
    if (!s.is_subset_of(ground())) throw InvalidArgument("subset " + s.to_string() + " exceeds the variables");
  }

  Ideal ideal_;
  EliminationStore* store_;
  std::mutex mutex_;
  std::map<std::uint64_t, std::vector<Polynomial>> eliminations_;
  std::map<std::uint64_t, bool> independent_;
  std::size_t elimination_calls_ = 0;
};

inline bool independent(const Ideal& ideal, ElementSet s) { return AlgebraicMatroid(ideal).independent(s); }

inline std::size_t rank(const Ideal& ideal, ElementSet s) { return AlgebraicMatroid(ideal).rank(s); }

inline std::vector<CircuitRecord> circuits(const Ideal& ideal) { return AlgebraicMatroid(ideal).circuits(); }

inline Matroid bases(const Ideal& ideal) { return AlgebraicMatroid(ideal).matroid(); }

// The record whose support is the unique circuit inside B ∪ {v}.
inline const CircuitRecord& fundamental_circuit(const Matroid& m, const std::vector<CircuitRecord>& records,
                                                ElementSet basis, std::size_t v) {
  ElementSet support = m.fundamental_circuit(basis, v);
  for (const CircuitRecord& rec : records) {
    if (rec.support == support) return rec;
  }
  throw InvalidArgument("no circuit record with support " + support.to_string());
}

inline std::vector<ElementSet> hyperplanes(const Matroid& m) {
  if (m.rank() == 0) throw InvalidArgument("hyperplanes need rank at least 1");
  return m.hyperplanes();
}

}  // namespace lindstrom
