#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lindstrom.hpp"

namespace lindstrom::fixtures {

using Rows = std::vector<std::vector<long long>>;

inline const Rows kNonFanoRows = {{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}};

inline IntMatrix nonfano_matrix() { return IntMatrix::from_rows(kNonFanoRows); }

inline ElementSet labels(std::initializer_list<long long> ls, std::size_t n = 7) {
  return ElementSet::from_labels(std::vector<long long>(ls), n);
}

// Leibniz expansion over all permutations.
inline long long leibniz_determinant(const Rows& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline int small_valuation(long long x, long long p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Square submatrix on the given row and column indices.
inline Rows pick(const Rows& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Rows out;
  for (std::size_t r : rows) {
    std::vector<long long> row;
    for (std::size_t c : cols) row.push_back(a[r][c]);
    out.push_back(row);
  }
  return out;
}

// Rank by the largest nonvanishing minor, with the first row subset that
// carries one.
inline std::pair<std::size_t, std::vector<std::size_t>> brute_force_rank(const Rows& a) {
  const std::size_t d = a.size(), n = a.front().size();
  for (std::size_t k = std::min(d, n); k > 0; --k) {
    for (ElementSet rs : subsets_of_size(ElementSet::full(d), k)) {
      for (ElementSet cs : subsets_of_size(ElementSet::full(n), k)) {
        if (leibniz_determinant(pick(a, rs.elements(), cs.elements())) != 0) return {k, rs.elements()};
      }
    }
  }
  return {0, {}};
}

// Brute-force valuation: every r-subset of columns with a nonzero minor on
// a fixed row basis, valued by val_p and shifted to min 0. Pairs come in
// lexicographic order of the subsets.
inline std::vector<std::pair<ElementSet, std::int64_t>> brute_force_valuation(const Rows& a, long long p) {
  const std::size_t n = a.front().size();
  const auto [r, rows] = brute_force_rank(a);
  std::vector<std::pair<ElementSet, std::int64_t>> out;
  for (ElementSet s : subsets_of_size(ElementSet::full(n), r)) {
    long long det = leibniz_determinant(pick(a, rows, s.elements()));
    if (det != 0) out.emplace_back(s, small_valuation(det < 0 ? -det : det, p));
  }
  std::int64_t lo = out.empty() ? 0 : out.front().second;
  for (auto& [b, v] : out) lo = std::min(lo, v);
  for (auto& [b, v] : out) v -= lo;
  return out;
}

struct ToricInstance {
  Rows rows;
  std::uint64_t p;

  std::string describe() const {
    std::string s = "p=" + std::to_string(p) + " A=[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      s += i ? ";" : "";
      for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? " " : "") + std::to_string(rows[i][j]);
    }
    return s + "]";
  }
};

// Random matrices with d <= 3 rows, n <= 6 columns, entries in [0, 3] and
// rank at least 1, with p drawn from {2, 3}.
inline std::vector<ToricInstance> random_toric_instances(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> rows_dist(1, 3), entry(0, 3), prime(0, 1);
  std::vector<ToricInstance> out;
  while (out.size() < count) {
    const int d = rows_dist(rng);
    std::uniform_int_distribution<int> cols_dist(std::max(2, d), 6);
    const int n = cols_dist(rng);
    Rows a(d, std::vector<long long>(n));
    for (auto& row : a) {
      for (auto& x : row) x = entry(rng);
    }
    if (matrix_rank(IntMatrix::from_rows(a)) == 0) continue;
    out.push_back({a, prime(rng) ? 3u : 2u});
  }
  return out;
}

inline Valuation nonfano_valuation() { return linear_valuated_matroid(nonfano_matrix(), 2); }

}  // namespace lindstrom::fixtures
