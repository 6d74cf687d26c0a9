#pragma once

// Matroid flock slices of a valuation: M_alpha keeps the bases maximizing
// e_B · alpha - value(B).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/matroid.hpp"
#include "lindstrom/report.hpp"
#include "lindstrom/valmat.hpp"

namespace lindstrom {

using Alpha = std::vector<std::int64_t>;

struct FlockSlice {
  Alpha alpha;
  Matroid matroid;
  std::int64_t g_value;
};

inline std::string alpha_to_string(const Alpha& alpha) {
  std::string out = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(alpha[i]);
  }
  return out + ")";
}

namespace detail {

inline std::int64_t weight(const Alpha& alpha, ElementSet b) {
  std::int64_t w = 0;
  for (std::size_t i : b.elements()) w += alpha[i];
  return w;
}

inline void check_alpha(const Valuation& nu, const Alpha& alpha) {
  if (alpha.size() != nu.n()) {
    throw InvalidArgument("alpha has length " + std::to_string(alpha.size()) + ", expected " +
                          std::to_string(nu.n()));
  }
}

}  // namespace detail

// g(alpha) = max over bases of e_B · alpha - value(B).
inline std::int64_t flock_value(const Valuation& nu, const Alpha& alpha) {
  detail::check_alpha(nu, alpha);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  const auto& bases = nu.matroid().bases();
  for (std::size_t k = 0; k < bases.size(); ++k) {
    best = std::max(best, detail::weight(alpha, bases[k]) - nu.values()[k]);
  }
  return best;
}

// The argmax family is checked against the basis-exchange axiom unless
// verify is false.
inline FlockSlice flock_slice(const Valuation& nu, const Alpha& alpha, bool verify = true) {
  const std::int64_t g = flock_value(nu, alpha);
  const Matroid& m = nu.matroid();
  std::vector<ElementSet> argmax;
  for (std::size_t k = 0; k < m.bases().size(); ++k) {
    if (detail::weight(alpha, m.bases()[k]) - nu.values()[k] == g) argmax.push_back(m.bases()[k]);
  }
  return FlockSlice{alpha, Matroid(m.n(), m.ground(), std::move(argmax), verify), g};
}

// Every integer vector in [lo, hi]^n, in lexicographic order.
inline std::vector<Alpha> alpha_box(std::size_t n, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) return {};
  std::vector<Alpha> out;
  Alpha current(n, lo);
  while (true) {
    out.push_back(current);
    std::size_t i = n;
    while (i > 0 && current[i - 1] == hi) {
      current[i - 1] = lo;
      --i;
    }
    if (i == 0) break;
    ++current[i - 1];
  }
  return out;
}

// Vectors in [lo, hi]^n with at most `max_support` nonzero entries.
inline std::vector<Alpha> sparse_alphas(std::size_t n, std::int64_t lo, std::int64_t hi, std::size_t max_support) {
  std::vector<Alpha> out;
  for (const Alpha& a : alpha_box(n, lo, hi)) {
    auto nonzero = static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](std::int64_t x) { return x != 0; }));
    if (nonzero <= max_support) out.push_back(a);
  }
  return out;
}

inline std::vector<Alpha> sample_alphas(std::size_t n, std::int64_t lo, std::int64_t hi, std::size_t count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::vector<Alpha> out(count, Alpha(n));
  for (Alpha& a : out) {
    for (auto& x : a) x = dist(rng);
  }
  return out;
}

// The largest radius R <= rank with (2R+1)^n · n · #bases <= budget; the
// box [-R, R]^n is then checked exhaustively.
inline std::int64_t default_box_radius(const Valuation& nu, double budget = 1e6) {
  const double n = static_cast<double>(nu.n());
  const double per_alpha = std::max(1.0, n) * static_cast<double>(nu.matroid().bases().size());
  std::int64_t radius = 0;
  for (std::int64_t r = 1; r <= static_cast<std::int64_t>(nu.matroid().rank()); ++r) {
    double count = 1;
    for (std::size_t i = 0; i < nu.n(); ++i) count *= static_cast<double>(2 * r + 1);
    if (count * per_alpha > budget) break;
    radius = r;
  }
  return radius;
}

// Checks, for each alpha and each element i of the ground set,
//   (1) M_alpha / i = M_{alpha + e_i} \ i
//   (2) M_alpha = M_{alpha + 1}, and g(alpha + 1) = g(alpha) + rank.
inline AxiomReport check_flock_axioms(const Valuation& nu, std::span<const Alpha> alphas) {
  AxiomReport report{"matroid flock axioms", 0, {}};
  const std::size_t r = nu.matroid().rank();
  for (const Alpha& alpha : alphas) {
    const FlockSlice slice = flock_slice(nu, alpha, false);
    auto bad = slice.matroid.exchange_violation();
    report.expect(!bad, "slice at alpha=" + alpha_to_string(alpha) + " is not a matroid: " + bad.value_or(""));
    for (std::size_t i : nu.matroid().ground().elements()) {
      Alpha raised = alpha;
      ++raised[i];
      const FlockSlice next = flock_slice(nu, raised, false);
      const ElementSet single = ElementSet::singleton(i);
      report.expect(slice.matroid.contraction(single) == next.matroid.deletion(single),
                    "(1) alpha=" + alpha_to_string(alpha) + " i=" + std::to_string(i + 1));
    }
    Alpha shifted = alpha;
    for (auto& x : shifted) ++x;
    const FlockSlice up = flock_slice(nu, shifted, false);
    report.expect(up.matroid == slice.matroid && up.g_value == slice.g_value + static_cast<std::int64_t>(r),
                  "(2) alpha=" + alpha_to_string(alpha));
  }
  return report;
}

}  // namespace lindstrom
