// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>

#include "lindstrom/pipeline.hpp"
#include "support.hpp"

using namespace lindstrom;
using fixtures::labels;
using cli::Analysis;
using cli::analyze_ideal;
using cli::analyze_matrix;
using cli::cross_check;
using cli::CrossCheckReport;

namespace {

constexpr std::size_t kRandomInstances = 50;
constexpr std::uint64_t kInstanceSeed = 20240611;
constexpr std::uint64_t kAlphaSeed = 7;
constexpr std::size_t kSampledAlphas = 10000;
constexpr double kMatrixPathSeconds = 1.0;
constexpr double kGroebnerPathSeconds = 30.0;
constexpr double kInstanceSeconds = 10.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void absorb(const AxiomReport& r, const std::string& where) {
    checks += r.checks;
    for (const std::string& v : r.violations) failures.push_back(where + ": " + r.name + ": " + v);
  }
};

using Table = std::map<std::uint64_t, std::int64_t>;

Table table_of(const Valuation& nu) {
  Table t;
  for (ElementSet b : nu.matroid().bases()) t[b.bits()] = nu.at(b);
  return t;
}

Table table_of(const std::vector<std::pair<ElementSet, std::int64_t>>& pairs) {
  Table t;
  for (const auto& [b, v] : pairs) t[b.bits()] = v;
  return t;
}

ExtendedInt lookup(const Table& t, ElementSet s) {
  auto it = t.find(s.bits());
  return it == t.end() ? ExtendedInt::infinity() : ExtendedInt(it->second);
}

std::size_t table_rank(const Table& t) { return t.empty() ? 0 : std::popcount(t.begin()->first); }

std::size_t rank_in(const Table& t, ElementSet s) {
  std::size_t best = 0;
  for (const auto& [bits, v] : t) best = std::max<std::size_t>(best, std::popcount(bits & s.bits()));
  return best;
}

CircuitVector canonical(std::vector<ExtendedInt> entries) { return CircuitVector(std::move(entries)).canonical(); }

// Circuit entries from basis completions: C_i = nu(T + C - i) for a fixed T
// outside C.
std::set<std::string> completion_circuits(const Table& t, std::size_t n, const std::vector<ElementSet>& supports) {
  std::set<std::string> out;
  const std::size_t r = table_rank(t);
  for (ElementSet c : supports) {
    const std::size_t first = c.elements().front();
    for (ElementSet rest : subsets_of_size(ElementSet::full(n) - c, r + 1 - c.size())) {
      if (lookup(t, c.without(first) | rest).is_infinite()) continue;
      std::vector<ExtendedInt> entries(n, ExtendedInt::infinity());
      for (std::size_t i : c.elements()) entries[i] = lookup(t, c.without(i) | rest);
      out.insert(canonical(entries).to_string());
      break;
    }
  }
  return out;
}

// Cocircuit entries from hyperplanes: D_i = nu(S + i) for a fixed independent
// S inside H of size r - 1.
std::set<std::string> hyperplane_cocircuits(const Table& t, std::size_t n) {
  std::set<std::string> out;
  const std::size_t r = table_rank(t);
  for (ElementSet h : all_subsets(ElementSet::full(n))) {
    if (rank_in(t, h) + 1 != r) continue;
    bool closed = true;
    for (std::size_t e : (ElementSet::full(n) - h).elements()) closed = closed && rank_in(t, h.with(e)) == r;
    if (!closed) continue;
    for (ElementSet s : subsets_of_size(h, r - 1)) {
      if (rank_in(t, s) != r - 1) continue;
      std::vector<ExtendedInt> entries(n, ExtendedInt::infinity());
      for (std::size_t i : (ElementSet::full(n) - h).elements()) entries[i] = lookup(t, s.with(i));
      out.insert(canonical(entries).to_string());
      break;
    }
  }
  return out;
}

std::set<std::string> strings_of(const std::vector<ValuatedCircuit>& cs) {
  std::set<std::string> out;
  for (const ValuatedCircuit& c : cs) out.insert(c.canonical().to_string());
  return out;
}

std::vector<ElementSet> supports_of(const std::vector<ValuatedCircuit>& cs) {
  std::vector<ElementSet> out;
  for (const ValuatedCircuit& c : cs) out.push_back(c.support());
  return out;
}

// Exchange triples (B, u, v) against the unique circuit inside B + v.
void exchange_oracle(const Valuation& nu, const std::vector<ValuatedCircuit>& circuits, Outcome& out,
                     const std::string& where) {
  for (ElementSet b : nu.matroid().bases()) {
    for (std::size_t v : (nu.matroid().ground() - b).elements()) {
      const ValuatedCircuit* covering = nullptr;
      std::size_t found = 0;
      for (const ValuatedCircuit& c : circuits) {
        if (c.support().is_subset_of(b.with(v)) && c.support().contains(v)) {
          covering = &c;
          ++found;
        }
      }
      out.expect(found == 1, where + ": " + std::to_string(found) + " circuits inside " + b.with(v).to_string());
      if (found != 1) continue;
      for (std::size_t u : b.elements()) {
        const ExtendedInt swapped = nu(b.without(u).with(v));
        const ExtendedInt cu = (*covering)[u];
        out.expect(swapped.is_infinite() == cu.is_infinite(),
                   where + ": infinity mismatch at " + b.to_string() + " u=" + std::to_string(u + 1));
        if (swapped.is_finite() && cu.is_finite()) {
          out.expect(ExtendedInt(nu.at(b)) + cu == swapped + (*covering)[v],
                     where + ": exchange fails at " + b.to_string() + " u=" + std::to_string(u + 1) +
                         " v=" + std::to_string(v + 1));
        }
      }
    }
  }
}

void orthogonality_oracle(const std::vector<ValuatedCircuit>& circuits, const std::vector<ValuatedCircuit>& cocircuits,
                          Outcome& out, const std::string& where) {
  for (const ValuatedCircuit& c : circuits) {
    for (const ValuatedCircuit& d : cocircuits) {
      std::vector<ExtendedInt> sums;
      for (std::size_t i = 0; i < c.size(); ++i) sums.push_back(c[i] + d[i]);
      const ExtendedInt lo = *std::min_element(sums.begin(), sums.end());
      if (lo.is_infinite()) continue;
      out.expect(std::count(sums.begin(), sums.end(), lo) >= 2,
                 where + ": " + c.to_string() + " and " + d.to_string() + " attain the minimum once");
    }
  }
}

struct TestValuation {
  std::string name;
  Valuation nu;
  std::vector<ValuatedCircuit> circuits;
  std::optional<Table> oracle;
};

Analysis frobenius_analysis() {
  RingPtr ring = make_indexed_ring(2, 2);
  return analyze_ideal(Ideal(ring, {parse_polynomial("x1 - x2^2", ring)}));
}

std::vector<TestValuation> test_valuations(const std::vector<fixtures::ToricInstance>& instances) {
  std::vector<TestValuation> out;
  const Valuation nf = fixtures::nonfano_valuation();
  const Table nf_table = table_of(fixtures::brute_force_valuation(fixtures::kNonFanoRows, 2));
  out.push_back({"non-Fano", nf, circuits_of(nf), nf_table});
  const Analysis frob = frobenius_analysis();
  out.push_back({"x1 - x2^2", frob.valuation, frob.circuits, std::nullopt});
  for (const ElementSet del : {labels({7}), labels({1})}) {
    Valuation m = minor(nf, del, ElementSet{});
    out.push_back({"non-Fano minus " + del.to_string(), m, circuits_of(m), std::nullopt});
  }
  Valuation con = minor(nf, ElementSet{}, labels({4}));
  out.push_back({"non-Fano contract {4}", con, circuits_of(con), std::nullopt});
  for (const auto& inst : instances) {
    const Analysis a = analyze_ideal(toric_ideal(IntMatrix::from_rows(inst.rows), inst.p));
    out.push_back({inst.describe(), a.valuation, a.circuits, table_of(fixtures::brute_force_valuation(inst.rows, inst.p))});
  }
  return out;
}

Outcome criterion_matrix_path() {
  Outcome out;
  const auto start = Clock::now();
  const Analysis a = analyze_matrix(fixtures::nonfano_matrix(), 2);
  const double elapsed = seconds_since(start);
  out.expect(a.valuation.matroid().bases().size() == 29, "expected 29 bases");
  for (ElementSet b : a.valuation.matroid().bases()) {
    const std::int64_t want = b == labels({4, 5, 6}) ? 1 : 0;
    out.expect(a.valuation.at(b) == want, "value at " + b.to_string());
  }
  out.expect(table_of(a.valuation) == table_of(fixtures::brute_force_valuation(fixtures::kNonFanoRows, 2)),
             "table differs from the Leibniz oracle");
  out.expect(minor_determinant(fixtures::nonfano_matrix(), labels({4, 5, 6})) == -2, "det{4,5,6} != -2");
  out.expect(fixtures::leibniz_determinant(fixtures::pick(fixtures::kNonFanoRows, {0, 1, 2}, {3, 4, 5})) == -2,
             "Leibniz det{4,5,6} != -2");
  out.expect(determinant_valuation(fixtures::nonfano_matrix(), labels({4, 5, 6}), 2) == ExtendedInt(1),
             "val_2 det{4,5,6} != 1");
  out.expect(elapsed < kMatrixPathSeconds, "matrix path took " + std::to_string(elapsed) + " s");
  return out;
}

Outcome criterion_groebner_path() {
  Outcome out;
  const auto start = Clock::now();
  const Analysis a = analyze_ideal(toric_ideal(fixtures::nonfano_matrix(), 2));
  const double elapsed = seconds_since(start);
  out.expect(table_of(a.valuation) == table_of(fixtures::nonfano_valuation()), "table differs from the matrix path");
  out.expect(table_of(a.valuation) == table_of(fixtures::brute_force_valuation(fixtures::kNonFanoRows, 2)),
             "table differs from the Leibniz oracle");
  out.expect(lookup(table_of(a.valuation), labels({4, 5, 6})) == ExtendedInt(1), "nu{4,5,6} != 1");
  out.expect(elapsed < kGroebnerPathSeconds, "Groebner path took " + std::to_string(elapsed) + " s");
  return out;
}

Outcome criterion_flock_slices() {
  Outcome out;
  const Valuation nu = fixtures::nonfano_valuation();
  const Table oracle = table_of(fixtures::brute_force_valuation(fixtures::kNonFanoRows, 2));

  auto weight = [](const Alpha& alpha, ElementSet b) {
    std::int64_t w = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) w += b.contains(i) ? alpha[i] : 0;
    return w;
  };
  auto oracle_slice = [&](const Alpha& alpha) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (const auto& [bits, v] : oracle) best = std::max(best, weight(alpha, ElementSet(bits)) - v);
    std::vector<ElementSet> bases;
    for (const auto& [bits, v] : oracle) {
      if (weight(alpha, ElementSet(bits)) - v == best) bases.push_back(ElementSet(bits));
    }
    std::sort(bases.begin(), bases.end(), lex_less);
    return std::pair{best, bases};
  };

  const FlockSlice zero = flock_slice(nu, Alpha(7, 0));
  out.expect(zero.g_value == 0, "g(0) != 0");
  out.expect(zero.matroid.bases().size() == 28, "slice at 0 does not have 28 bases");
  out.expect(!zero.matroid.is_basis(labels({4, 5, 6})), "slice at 0 contains {4,5,6}");
  out.expect(zero.matroid.hyperplanes().size() == 7, "slice at 0 does not have 7 lines");
  std::vector<ElementSet> triples_but_one;
  for (ElementSet s : subsets_of_size(ElementSet::full(7), 3)) {
    if (s != labels({4, 5, 6}) && nu.matroid().is_basis(s)) triples_but_one.push_back(s);
  }
  out.expect(zero.matroid.bases() == triples_but_one, "slice at 0 is not the bases minus {4,5,6}");
  out.expect(oracle_slice(Alpha(7, 0)).second == zero.matroid.bases(), "slice at 0 differs from the oracle");

  const Alpha alpha = {-1, -1, -1, 0, 0, 0, -1};
  const FlockSlice s = flock_slice(nu, alpha);
  out.expect(s.g_value == -1, "g(alpha) != -1");
  out.expect(s.matroid.is_basis(labels({4, 5, 6})), "slice lacks {4,5,6}");
  out.expect(s.matroid.is_basis(labels({3, 5, 6})), "slice lacks {3,5,6}");
  for (ElementSet b : s.matroid.bases()) {
    out.expect((b & labels({1, 2, 3, 7})).size() < 2, "slice basis " + b.to_string() + " meets {1,2,3,7} twice");
  }
  const auto [g, bases] = oracle_slice(alpha);
  out.expect(g == s.g_value && bases == s.matroid.bases(), "slice at alpha differs from the oracle");
  return out;
}

Outcome criterion_flock_axioms() {
  Outcome out;
  const Valuation nu = fixtures::nonfano_valuation();
  std::vector<Alpha> alphas = sample_alphas(7, -2, 1, kSampledAlphas, kAlphaSeed);
  const std::vector<Alpha> sparse = sparse_alphas(7, -2, 1, 2);
  alphas.insert(alphas.end(), sparse.begin(), sparse.end());
  out.expect(alphas.size() == kSampledAlphas + 211, "unexpected alpha count");
  for (const Alpha& a : alphas) {
    for (auto x : a) out.expect(x >= -2 && x <= 1, "alpha outside [-2,1]^7: " + alpha_to_string(a));
  }
  out.absorb(check_flock_axioms(nu, alphas), "non-Fano");
  return out;
}

Outcome criterion_circuit_axioms(const std::vector<fixtures::ToricInstance>& instances) {
  Outcome out;
  {
    const Valuation nu = fixtures::nonfano_valuation();
    const Analysis a = analyze_ideal(toric_ideal(fixtures::nonfano_matrix(), 2));
    out.absorb(check_circuit_axioms(a.circuits, a.valuation.matroid()), "non-Fano");
    const Table oracle = table_of(fixtures::brute_force_valuation(fixtures::kNonFanoRows, 2));
    out.expect(strings_of(a.circuits) == completion_circuits(oracle, 7, supports_of(a.circuits)),
               "non-Fano circuits differ from the completion oracle");
    out.expect(a.circuits.size() == 17, "non-Fano does not have 17 circuits");
  }
  {
    const Analysis a = frobenius_analysis();
    out.absorb(check_circuit_axioms(a.circuits, a.valuation.matroid()), "x1 - x2^2");
    out.expect(a.circuits.size() == 1 && a.circuits[0] == ValuatedCircuit({ExtendedInt(0), ExtendedInt(1)}),
               "x1 - x2^2 circuit is not (0,1)");
  }
  out.expect(instances.size() >= 50, "fewer than 50 random instances");
  for (const auto& inst : instances) {
    const auto start = Clock::now();
    const Analysis a = analyze_ideal(toric_ideal(IntMatrix::from_rows(inst.rows), inst.p));
    out.absorb(check_circuit_axioms(a.circuits, a.valuation.matroid()), inst.describe());
    const double elapsed = seconds_since(start);
    const Table oracle = table_of(fixtures::brute_force_valuation(inst.rows, inst.p));
    out.expect(table_of(a.valuation) == oracle, inst.describe() + ": valuation differs from the Leibniz oracle");
    out.expect(strings_of(a.circuits) == completion_circuits(oracle, inst.rows.front().size(), supports_of(a.circuits)),
               inst.describe() + ": circuits differ from the completion oracle");
    out.expect(elapsed < kInstanceSeconds, inst.describe() + " took " + std::to_string(elapsed) + " s");
  }
  return out;
}

Outcome criterion_cross_check(const std::vector<fixtures::ToricInstance>& instances) {
  Outcome out;
  out.expect(instances.size() >= 50, "fewer than 50 random instances");
  for (const auto& inst : instances) {
    const CrossCheckReport r = cross_check(IntMatrix::from_rows(inst.rows), inst.p);
    std::string detail = inst.describe();
    for (const std::string& d : r.differences) detail += "; " + d;
    out.expect(r.valuations_equal, "valuations differ: " + detail);
    out.expect(r.circuits_equal, "circuit families differ: " + detail);
    out.expect(r.matroids_equal, "matroids differ: " + detail);
    out.expect(strings_of(r.linear.circuits) == strings_of(r.algebraic.circuits), "canonical circuits differ: " + detail);
  }
  return out;
}

Outcome criterion_duality(const std::vector<TestValuation>& valuations) {
  Outcome out;
  for (const TestValuation& t : valuations) {
    const Valuation d = dual(t.nu);
    out.expect(dual(d) == t.nu, t.name + ": dual of dual differs");
    for (ElementSet b : t.nu.matroid().bases()) {
      out.expect(d(t.nu.matroid().ground() - b) == ExtendedInt(t.nu.at(b)), t.name + ": dual value at complement");
    }
    out.absorb(check_duality(t.nu), t.name);
    const auto co = cocircuits(t.nu);
    out.absorb(check_orthogonality(t.circuits, co), t.name);
    orthogonality_oracle(t.circuits, co, out, t.name);
    out.absorb(check_cocircuit_supports(co, t.nu.matroid()), t.name);
    const Table table = table_of(t.nu);
    if (table_rank(table) > 0) {
      out.expect(strings_of(co) == hyperplane_cocircuits(table, t.nu.n()), t.name + ": cocircuits differ from oracle");
      std::set<std::uint64_t> complements;
      for (ElementSet h : hyperplanes(t.nu.matroid())) complements.insert((t.nu.matroid().ground() - h).bits());
      std::set<std::uint64_t> supports;
      for (const ValuatedCircuit& c : co) supports.insert(c.support().bits());
      out.expect(supports == complements, t.name + ": cocircuit supports are not hyperplane complements");
    }
  }
  return out;
}

Outcome criterion_exchange(const std::vector<TestValuation>& valuations) {
  Outcome out;
  for (const TestValuation& t : valuations) {
    out.absorb(check_exchange_relation(t.nu, t.circuits), t.name);
    exchange_oracle(t.nu, t.circuits, out, t.name);
    if (t.oracle) out.expect(table_of(t.nu) == *t.oracle, t.name + ": valuation differs from the Leibniz oracle");
  }
  return out;
}

}  // namespace

int main() {
  const auto instances = fixtures::random_toric_instances(kRandomInstances, kInstanceSeed);
  std::optional<std::vector<TestValuation>> valuations;
  auto all_valuations = [&]() -> const std::vector<TestValuation>& {
    if (!valuations) valuations = test_valuations(instances);
    return *valuations;
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"non-Fano valuation from the matrix (det{4,5,6} = -2, < 1 s)", criterion_matrix_path},
      {"non-Fano valuation from the toric ideal (< 30 s)", criterion_groebner_path},
      {"flock slices at 0 and (-1,-1,-1,0,0,0,-1)", criterion_flock_slices},
      {"flock axioms on 10^4 sampled alphas plus support <= 2", criterion_flock_axioms},
      {"circuit axioms on non-Fano, x1 - x2^2 and 50 random toric instances (< 10 s each)",
       [&] { return criterion_circuit_axioms(instances); }},
      {"determinant and Groebner paths agree on 50 random toric instances",
       [&] { return criterion_cross_check(instances); }},
      {"duality, orthogonality and cocircuit supports", [&] { return criterion_duality(all_valuations()); }},
      {"exchange relation for every basis, u and v", [&] { return criterion_exchange(all_valuations()); }},
  };

  bool all_passed = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    const bool ok = o.failures.empty();
    all_passed = all_passed && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " [" << o.checks
              << " checks, " << std::fixed << std::setprecision(3) << elapsed << " s]\n";
    for (std::size_t k = 0; k < o.failures.size() && k < 10; ++k) std::cout << "    " << o.failures[k] << "\n";
  }
  return all_passed ? 0 : 1;
}
