#pragma once

// Monomial parametrizations x_i = t^(column i of A): the p-adic valuated
// column matroid of A, its integer kernel circuits, and the toric ideal
// over F_p.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lindstrom/circuit_vector.hpp"
#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"
#include "lindstrom/groebner.hpp"
#include "lindstrom/matroid.hpp"
#include "lindstrom/valmat.hpp"

namespace lindstrom {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("matrix must have at least one row and one column");
  }

  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InvalidArgument("matrix must have at least one row and one column");
    if (entries_.size() != rows * cols) throw InvalidArgument("matrix entry count does not match its shape");
  }

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    if (rows.empty()) throw InvalidArgument("matrix must have at least one row");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InvalidArgument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  // Rows and columns at the given indices, in order. Either list may be
  // empty only through the helper functions below.
  std::vector<std::vector<BigInt>> submatrix(const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& cols) const {
    std::vector<std::vector<BigInt>> out(rows.size(), std::vector<BigInt>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = 0; b < cols.size(); ++b) out[a][b] = (*this)(rows[a], cols[b]);
    }
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<BigInt> entries_;
};

namespace detail {

using DenseInt = std::vector<std::vector<BigInt>>;

// Fraction-free (Bareiss) forward elimination in place. Returns the rank;
// for a square matrix of full rank the last pivot is the determinant up to
// the returned sign.
inline std::size_t bareiss_eliminate(DenseInt& m, int* sign = nullptr) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::size_t r = 0;
  BigInt previous = 1;
  int s = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      std::swap(m[pivot], m[r]);
      s = -s;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        if (num % previous != 0) throw Error("internal: inexact Bareiss division");
        m[i][j] = num / previous;
      }
      m[i][c] = 0;
    }
    previous = m[r][c];
    ++r;
  }
  if (sign) *sign = s;
  return r;
}

inline BigInt determinant(DenseInt m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
  }
  int sign = 1;
  if (bareiss_eliminate(m, &sign) < n) return 0;
  return sign * m[n - 1][n - 1];
}

inline std::size_t rank(DenseInt m) { return bareiss_eliminate(m); }

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Lexicographically first set of rows of A restricted to `cols` spanning
// its row space.
inline std::vector<std::size_t> row_basis(const IntMatrix& a, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<std::size_t> trial = chosen;
    trial.push_back(i);
    if (rank(a.submatrix(trial, cols)) == trial.size()) chosen = std::move(trial);
  }
  return chosen;
}

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Divides by the gcd of the entries and makes the first nonzero entry positive.
inline void make_primitive(IntVector& u) {
  BigInt g = 0;
  for (const BigInt& x : u) g = boost::multiprecision::gcd(g, abs(x));
  if (g == 0) return;
  for (BigInt& x : u) x /= g;
  for (const BigInt& x : u) {
    if (x == 0) continue;
    if (x < 0) {
      for (BigInt& y : u) y = -y;
    }
    break;
  }
}

inline BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Nearest integer to num/den, den > 0.
inline BigInt round_div(const BigInt& num, const BigInt& den) {
  BigInt twice = 2 * num + (num >= 0 ? den : BigInt(-den));
  return twice / (2 * den);
}

// Pairwise size reduction: b_i -= round(<b_i,b_j>/<b_j,b_j>) b_j while it
// shortens b_i. Keeps the lattice and tends to keep binomial degrees low.
inline void size_reduce(std::vector<IntVector>& basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        BigInt nj = dot(basis[j], basis[j]);
        if (nj == 0) continue;
        BigInt q = round_div(dot(basis[i], basis[j]), nj);
        if (q == 0) continue;
        IntVector candidate = basis[i];
        for (std::size_t k = 0; k < candidate.size(); ++k) candidate[k] -= q * basis[j][k];
        if (dot(candidate, candidate) < dot(basis[i], basis[i])) {
          basis[i] = std::move(candidate);
          changed = true;
        }
      }
    }
  }
}

inline std::uint32_t to_exponent(const BigInt& x) {
  if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("exponent out of range");
  return x.convert_to<std::uint32_t>();
}

}  // namespace detail

inline std::size_t matrix_rank(const IntMatrix& a) {
  return detail::rank(a.submatrix(detail::all_indices(a.rows()), detail::all_indices(a.cols())));
}

// The column matroid of A over Q. All columns are loops when A = 0.
inline Matroid column_matroid(const IntMatrix& a) {
  const auto rows = detail::row_basis(a, detail::all_indices(a.cols()));
  const std::size_t r = rows.size();
  std::vector<ElementSet> bases;
  for (ElementSet b : subsets_of_size(ElementSet::full(a.cols()), r)) {
    if (detail::determinant(a.submatrix(rows, b.elements())) != 0) bases.push_back(b);
  }
  return Matroid(a.cols(), std::move(bases));
}

// val_p of the r×r minor on the first row basis and columns B; ∞ when the
// minor vanishes.
inline ExtendedInt determinant_valuation(const IntMatrix& a, ElementSet columns, std::uint64_t p) {
  if (!columns.is_subset_of(ElementSet::full(a.cols()))) throw InvalidArgument("column set exceeds the matrix");
  const auto rows = detail::row_basis(a, detail::all_indices(a.cols()));
  if (columns.size() != rows.size()) {
    throw InvalidArgument("column set has size " + std::to_string(columns.size()) + " but rank is " +
                          std::to_string(rows.size()));
  }
  BigInt det = detail::determinant(a.submatrix(rows, columns.elements()));
  if (det == 0) return ExtendedInt::infinity();
  return ExtendedInt(p_adic_valuation(det, p));
}

inline BigInt minor_determinant(const IntMatrix& a, ElementSet columns) {
  const auto rows = detail::row_basis(a, detail::all_indices(a.cols()));
  if (columns.size() != rows.size()) throw InvalidArgument("column set size differs from the rank");
  return detail::determinant(a.submatrix(rows, columns.elements()));
}

// Bases are the column bases of A, valued by val_p of their minors.
inline Valuation linear_valuated_matroid(const IntMatrix& a, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  Matroid m = column_matroid(a);
  if (m.rank() == 0) throw InvalidArgument("matrix has rank 0");
  const auto rows = detail::row_basis(a, detail::all_indices(a.cols()));
  return Valuation::from_function(std::move(m), [&](ElementSet b) {
    return static_cast<std::int64_t>(p_adic_valuation(detail::determinant(a.submatrix(rows, b.elements())), p));
  });
}

struct KernelCircuit {
  IntVector u;
  ElementSet support;
};

// One primitive kernel vector per circuit C of the column matroid, from the
// signed maximal minors of the (|C|-1)-row basis of A_C. Ordered by support
// size then lexicographically.
inline std::vector<KernelCircuit> integer_kernel_circuits(const IntMatrix& a) {
  std::vector<KernelCircuit> out;
  for (ElementSet c : column_matroid(a).circuits()) {
    const auto cols = c.elements();
    const auto rows = detail::row_basis(a, cols);
    if (rows.size() + 1 != cols.size()) throw Error("internal: circuit columns have unexpected rank");
    IntVector u(a.cols(), 0);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      BigInt minor = detail::determinant(a.submatrix(rows, rest));
      u[cols[j]] = (j % 2 == 0) ? minor : BigInt(-minor);
    }
    detail::make_primitive(u);
    out.push_back(KernelCircuit{std::move(u), c});
  }
  return out;
}

// Entry-wise val_p of a kernel vector, ∞ on its zeros, canonicalized.
inline ValuatedCircuit toric_valuated_circuit(const KernelCircuit& circuit, std::uint64_t p) {
  std::vector<ExtendedInt> entries;
  for (const BigInt& x : circuit.u) {
    entries.push_back(x == 0 ? ExtendedInt::infinity() : ExtendedInt(p_adic_valuation(x, p)));
  }
  return CircuitVector(std::move(entries)).canonical();
}

// A Z-basis of {u : A u = 0} from unimodular column operations on A,
// size-reduced.
inline std::vector<IntVector> kernel_lattice_basis(const IntMatrix& a) {
  const std::size_t d = a.rows(), n = a.cols();
  detail::DenseInt m = a.submatrix(detail::all_indices(d), detail::all_indices(n));
  detail::DenseInt u(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : m) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  auto sub_col = [&](std::size_t target, const BigInt& q, std::size_t source) {
    for (auto& row : m) row[target] -= q * row[source];
    for (auto& row : u) row[target] -= q * row[source];
  };
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < d && pivot < n; ++i) {
    while (true) {
      std::optional<std::size_t> smallest;
      for (std::size_t j = pivot; j < n; ++j) {
        if (m[i][j] != 0 && (!smallest || detail::abs(m[i][j]) < detail::abs(m[i][*smallest]))) smallest = j;
      }
      if (!smallest) break;
      swap_cols(pivot, *smallest);
      bool done = true;
      for (std::size_t j = pivot + 1; j < n; ++j) {
        if (m[i][j] == 0) continue;
        sub_col(j, m[i][j] / m[i][pivot], pivot);
        if (m[i][j] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t j = pivot; j < n; ++j) {
    IntVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = u[k][j];
    basis.push_back(std::move(v));
  }
  detail::size_reduce(basis);
  for (IntVector& v : basis) detail::make_primitive(v);
  return basis;
}

// X^(u+) - X^(u-) with u = u+ - u-.
inline Polynomial toric_binomial(const IntVector& u, const RingPtr& ring) {
  Exponents plus(u.size(), 0), minus(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > 0) plus[i] = detail::to_exponent(u[i]);
    if (u[i] < 0) minus[i] = detail::to_exponent(BigInt(-u[i]));
  }
  return Polynomial::monomial(ring, std::move(plus)) - Polynomial::monomial(ring, std::move(minus));
}

// The prime ideal of the monomial map x_i -> t^(A e_i) over F_p: lattice
// basis binomials saturated at x1···xn.
inline Ideal toric_ideal(const IntMatrix& a, std::uint64_t p) {
  RingPtr ring = make_indexed_ring(a.cols(), p);
  std::vector<Polynomial> gens;
  for (const IntVector& u : kernel_lattice_basis(a)) gens.push_back(toric_binomial(u, ring));
  Ideal lattice(ring, std::move(gens));
  if (lattice.is_zero()) return lattice;
  return saturate(lattice, Polynomial::monomial(ring, Exponents(a.cols(), 1)));
}

}  // namespace lindstrom
