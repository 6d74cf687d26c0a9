#pragma once

// Valuated matroids in the min-plus convention: valuated circuits, the
// basis valuation recovered from them, duality, cocircuits, minors, and
// executable checks of the valuated-circuit axioms.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lindstrom/algmat.hpp"
#include "lindstrom/circuit_vector.hpp"
#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"
#include "lindstrom/matroid.hpp"
#include "lindstrom/report.hpp"

namespace lindstrom {

// An integer on every basis of a matroid, normalized so the minimum is 0.
class Valuation {
 public:
  // values[k] belongs to matroid.bases()[k].
  Valuation(Matroid matroid, std::vector<std::int64_t> values)
      : matroid_(std::move(matroid)), values_(std::move(values)) {
    if (values_.size() != matroid_.bases().size()) throw InvalidArgument("one value per basis required");
    std::int64_t lo = *std::min_element(values_.begin(), values_.end());
    for (auto& v : values_) v -= lo;
  }

  template <class Fn>
  static Valuation from_function(Matroid matroid, Fn&& value_of) {
    std::vector<std::int64_t> values;
    for (ElementSet b : matroid.bases()) values.push_back(value_of(b));
    return Valuation(std::move(matroid), std::move(values));
  }

  // All bases valued 0.
  static Valuation trivial(Matroid matroid) {
    std::vector<std::int64_t> zeros(matroid.bases().size(), 0);
    return Valuation(std::move(matroid), std::move(zeros));
  }

  const Matroid& matroid() const { return matroid_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::size_t n() const { return matroid_.n(); }

  // ∞ off the basis family.
  ExtendedInt operator()(ElementSet b) const {
    auto k = matroid_.basis_index(b);
    if (!k) return ExtendedInt::infinity();
    return ExtendedInt(values_[*k]);
  }

  std::int64_t at(ElementSet b) const {
    auto k = matroid_.basis_index(b);
    if (!k) throw InvalidArgument(b.to_string() + " is not a basis");
    return values_[*k];
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.matroid_ == b.matroid_ && a.values_ == b.values_;
  }

 private:
  Matroid matroid_;
  std::vector<std::int64_t> values_;
};

// One canonical valuated circuit per circuit record, in record order.
inline std::vector<ValuatedCircuit> valuated_circuits(std::span<const CircuitRecord> records) {
  std::vector<ValuatedCircuit> out;
  out.reserve(records.size());
  for (const CircuitRecord& rec : records) out.push_back(circuit_vector(rec.polynomial).canonical());
  return out;
}

namespace detail {

inline std::map<std::uint64_t, const ValuatedCircuit*> index_by_support(std::span<const ValuatedCircuit> circuits) {
  std::map<std::uint64_t, const ValuatedCircuit*> out;
  for (const ValuatedCircuit& c : circuits) out.emplace(c.support().bits(), &c);
  return out;
}

}  // namespace detail

// Recovers the valuation from its valuated circuits. Starting from the
// seed basis (default: lexicographically smallest), every exchange
// B -> B - u + v is assigned value(B) + C_u - C_v where C is the circuit
// inside B ∪ {v}. Every exchange edge is checked, so two paths that
// disagree raise InconsistentValuation.
inline Valuation valuation_from_circuits(const Matroid& matroid, std::span<const ValuatedCircuit> circuits,
                                         std::optional<ElementSet> seed = {}) {
  const auto by_support = detail::index_by_support(circuits);
  const auto& bases = matroid.bases();
  std::vector<std::optional<std::int64_t>> values(bases.size());

  std::size_t start = 0;
  if (seed) {
    auto k = matroid.basis_index(*seed);
    if (!k) throw InvalidArgument("seed " + seed->to_string() + " is not a basis");
    start = *k;
  }
  values[start] = 0;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const ElementSet b = bases[k];
    for (std::size_t v : (matroid.ground() - b).elements()) {
      const ElementSet support = matroid.fundamental_circuit(b, v);
      auto it = by_support.find(support.bits());
      if (it == by_support.end()) {
        throw InvalidArgument("no valuated circuit with support " + support.to_string());
      }
      const ValuatedCircuit& c = *it->second;
      const std::int64_t cv = c[v].value();
      for (std::size_t u : support.without(v).elements()) {
        const std::size_t target = *matroid.basis_index(b.without(u).with(v));
        const std::int64_t value = *values[k] + c[u].value() - cv;
        if (!values[target]) {
          values[target] = value;
          queue.push_back(target);
        } else if (*values[target] != value) {
          throw InconsistentValuation("exchange " + b.to_string() + " -" + std::to_string(u + 1) + " +" +
                                      std::to_string(v + 1) + " gives " + std::to_string(value) +
                                      ", another path gave " + std::to_string(*values[target]));
        }
      }
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (!values[k]) throw InconsistentValuation("basis " + bases[k].to_string() + " unreachable by exchanges");
    out.push_back(*values[k]);
  }
  return Valuation(matroid, std::move(out));
}

// The circuit in B ∪ {v} read off the valuation: entry v is 0 and entry u
// is value(B - u + v) - value(B), ∞ where that exchange is not a basis.
inline ValuatedCircuit fundamental_valuated_circuit(const Valuation& nu, ElementSet basis, std::size_t v) {
  const Matroid& m = nu.matroid();
  if (!m.is_basis(basis)) throw InvalidArgument(basis.to_string() + " is not a basis");
  if (basis.contains(v) || !m.ground().contains(v)) throw InvalidArgument("element must lie outside the basis");
  const std::int64_t base = nu.at(basis);
  std::vector<ExtendedInt> entries(nu.n(), ExtendedInt::infinity());
  entries[v] = 0;
  for (std::size_t u : basis.elements()) {
    ExtendedInt other = nu(basis.without(u).with(v));
    if (other.is_finite()) entries[u] = other.value() - base;
  }
  return CircuitVector(std::move(entries)).canonical();
}

// All valuated circuits of a valuation, deduplicated and sorted.
inline std::vector<ValuatedCircuit> circuits_of(const Valuation& nu) {
  std::vector<ValuatedCircuit> out;
  const Matroid& m = nu.matroid();
  for (ElementSet b : m.bases()) {
    for (std::size_t v : (m.ground() - b).elements()) out.push_back(fundamental_valuated_circuit(nu, b, v));
  }
  sort_and_dedupe(out);
  return out;
}

// value*(B*) = value(E \ B*).
inline Valuation dual(const Valuation& nu) {
  const Matroid& m = nu.matroid();
  return Valuation::from_function(m.dual(), [&](ElementSet b) { return nu.at(m.ground() - b); });
}

// Circuits of the dual, deduplicated and sorted.
inline std::vector<ValuatedCircuit> cocircuits(const Valuation& nu) { return circuits_of(dual(nu)); }

// The minor M \ G / F on the ground set minus F ∪ G. Deletion completes
// each basis of M \ G with a fixed lexicographically first basis of M / (E \ G)
// inside G; contraction completes with a fixed lexicographically first
// maximal independent subset of F. Other choices give equivalent
// valuations, and the min-0 normalization removes the difference.
inline Valuation minor(const Valuation& nu, ElementSet del, ElementSet con) {
  const Matroid& m = nu.matroid();
  if (del.intersects(con)) throw InvalidArgument("deleted and contracted sets must be disjoint");
  if (!(del | con).is_subset_of(m.ground())) throw InvalidArgument("minor sets must lie in the ground set");

  const ElementSet completion_g = m.contraction(m.ground() - del).bases().front();
  Matroid deleted = m.deletion(del);
  Valuation step = Valuation::from_function(deleted, [&](ElementSet b) { return nu.at(b | completion_g); });

  const Matroid& n = step.matroid();
  const ElementSet completion_f = n.deletion(n.ground() - con).bases().front();
  Matroid contracted = n.contraction(con);
  return Valuation::from_function(contracted, [&](ElementSet b) { return step.at(b | completion_f); });
}

// Checks a family of canonical valuated circuits against the axioms
// characterizing valuated circuits:
//   (1) supports are the circuits of a matroid, namely of `matroid`;
//   (2)/(3) exactly one canonical representative per support;
//   (4) for C, C' with rank(supp C ∪ supp C') = |supp C ∪ supp C'| - 2,
//       u with C_u = C'_u (after shifting C') and C_v < C'_v = ∞, some
//       shifted C'' has C''_u = ∞, C''_v = C_v and C'' >= min(C, C');
// and additionally that the family induces a consistent basis valuation.
inline AxiomReport check_circuit_axioms(std::span<const ValuatedCircuit> circuits, const Matroid& matroid) {
  AxiomReport report{"valuated circuit axioms", 0, {}};
  const std::size_t n = matroid.n();

  // (1)
  std::vector<ElementSet> supports;
  for (const ValuatedCircuit& c : circuits) {
    report.expect(c.size() == n, "circuit " + c.to_string() + " has wrong length");
    supports.push_back(c.support());
  }
  for (std::size_t a = 0; a < supports.size(); ++a) {
    report.expect(!supports[a].empty(), "(1) empty support");
    for (std::size_t b = 0; b < supports.size(); ++b) {
      if (a == b || supports[a] == supports[b]) continue;
      report.expect(!supports[a].is_subset_of(supports[b]),
                    "(1) support " + supports[a].to_string() + " inside " + supports[b].to_string());
      for (std::size_t e : (supports[a] & supports[b]).elements()) {
        ElementSet target = (supports[a] | supports[b]).without(e);
        bool found = std::any_of(supports.begin(), supports.end(),
                                 [&](ElementSet c) { return c.is_subset_of(target); });
        report.expect(found, "(1) no circuit inside " + target.to_string() + " eliminating " +
                                 std::to_string(e + 1) + " from " + supports[a].to_string() + ", " +
                                 supports[b].to_string());
      }
    }
  }
  std::vector<ElementSet> sorted_supports = supports;
  std::sort(sorted_supports.begin(), sorted_supports.end(), size_lex_less);
  sorted_supports.erase(std::unique(sorted_supports.begin(), sorted_supports.end()), sorted_supports.end());
  report.expect(sorted_supports == matroid.circuits(), "(1) supports differ from the matroid's circuits");

  // (2)/(3)
  for (std::size_t a = 0; a < circuits.size(); ++a) {
    report.expect(circuits[a].is_canonical(), "(2) circuit " + circuits[a].to_string() + " is not canonical");
    for (std::size_t b = a + 1; b < circuits.size(); ++b) {
      report.expect(supports[a] != supports[b], "(3) two representatives on support " + supports[a].to_string());
    }
  }

  // (4)
  for (const ValuatedCircuit& c : circuits) {
    for (const ValuatedCircuit& c2 : circuits) {
      const ElementSet sc = c.support(), sc2 = c2.support();
      if (sc == sc2) continue;
      const ElementSet s = sc | sc2;
      if (matroid.rank_of(s) + 2 != s.size()) continue;
      for (std::size_t u : (sc & sc2).elements()) {
        const ValuatedCircuit aligned = c2.shifted(c[u].value() - c2[u].value());
        for (std::size_t v : (sc - sc2).elements()) {
          bool found = false;
          for (const ValuatedCircuit& d : circuits) {
            if (d[u].is_finite() || d[v].is_infinite()) continue;
            const ValuatedCircuit shifted = d.shifted(c[v].value() - d[v].value());
            bool dominates = true;
            for (std::size_t i = 0; i < n && dominates; ++i) {
              if (shifted[i] < min(c[i], aligned[i])) dominates = false;
            }
            if (dominates) {
              found = true;
              break;
            }
          }
          report.expect(found, "(4) no eliminating circuit for " + c.to_string() + ", " + aligned.to_string() +
                                   " at u=" + std::to_string(u + 1) + ", v=" + std::to_string(v + 1));
        }
      }
    }
  }

  try {
    valuation_from_circuits(matroid, circuits);
    report.expect(true, "");
  } catch (const Error& e) {
    report.expect(false, std::string("exchange consistency: ") + e.what());
  }
  return report;
}

// value(B) + C_u = value(B - u + v) + C_v for every basis B, u in B, v
// outside B and circuit C with support in B ∪ {v}; ∞ on one side iff on
// the other.
inline AxiomReport check_exchange_relation(const Valuation& nu, std::span<const ValuatedCircuit> circuits) {
  AxiomReport report{"basis-circuit exchange relation", 0, {}};
  const Matroid& m = nu.matroid();
  for (ElementSet b : m.bases()) {
    for (std::size_t v : (m.ground() - b).elements()) {
      const ElementSet span = b.with(v);
      std::size_t covering = 0;
      for (const ValuatedCircuit& c : circuits) {
        if (!c.support().is_subset_of(span)) continue;
        ++covering;
        for (std::size_t u : b.elements()) {
          ExtendedInt lhs = nu(b) + c[u];
          ExtendedInt rhs = nu(b.without(u).with(v)) + c[v];
          report.expect(lhs == rhs, "B=" + b.to_string() + " u=" + std::to_string(u + 1) + " v=" +
                                        std::to_string(v + 1) + " C=" + c.to_string() + ": " + lhs.to_string() +
                                        " != " + rhs.to_string());
        }
      }
      report.expect(covering >= 1, "no circuit inside " + span.to_string());
    }
  }
  return report;
}

// For circuit C and cocircuit D with intersecting supports, the minimum of
// C_i + D_i is attained at least twice.
inline AxiomReport check_orthogonality(std::span<const ValuatedCircuit> circuits,
                                       std::span<const ValuatedCircuit> cocircuits) {
  AxiomReport report{"tropical orthogonality", 0, {}};
  for (const ValuatedCircuit& c : circuits) {
    for (const ValuatedCircuit& d : cocircuits) {
      if (!c.support().intersects(d.support())) continue;
      ExtendedInt best = ExtendedInt::infinity();
      for (std::size_t i = 0; i < c.size(); ++i) best = min(best, c[i] + d[i]);
      std::size_t attained = 0;
      for (std::size_t i = 0; i < c.size(); ++i) attained += (c[i] + d[i] == best) ? 1 : 0;
      report.expect(attained >= 2, "min of " + c.to_string() + " + " + d.to_string() + " attained once");
    }
  }
  return report;
}

// Cocircuit supports are exactly the complements of the hyperplanes.
inline AxiomReport check_cocircuit_supports(std::span<const ValuatedCircuit> cocircuits, const Matroid& matroid) {
  AxiomReport report{"cocircuit supports are hyperplane complements", 0, {}};
  std::vector<ElementSet> expected;
  for (ElementSet h : matroid.hyperplanes()) expected.push_back(matroid.ground() - h);
  std::vector<ElementSet> actual;
  for (const ValuatedCircuit& d : cocircuits) actual.push_back(d.support());
  std::sort(expected.begin(), expected.end(), lex_less);
  std::sort(actual.begin(), actual.end(), lex_less);
  report.expect(expected == actual, "cocircuit supports differ from hyperplane complements");
  return report;
}

inline AxiomReport check_duality(const Valuation& nu) {
  AxiomReport report{"dual is an involution", 0, {}};
  report.expect(dual(dual(nu)) == nu, "dual(dual(v)) != v");
  return report;
}

}  // namespace lindstrom
