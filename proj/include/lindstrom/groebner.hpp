#pragma once

// Reduced Gröbner bases over F_p: Buchberger's algorithm with the
// Gebauer–Möller criteria, elimination ideals and saturation.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lindstrom/element_set.hpp"
#include "lindstrom/error.hpp"
#include "lindstrom/ffpoly.hpp"

namespace lindstrom {

class MonomialOrder {
 public:
  enum class Kind { lex, grlex, block };

  // Lexicographic with x1 > x2 > ... > xn.
  static MonomialOrder lex(std::size_t n) { return MonomialOrder(Kind::lex, identity(n), {}); }

  // Lexicographic where priority[0] is the largest variable.
  static MonomialOrder lex(std::vector<std::size_t> priority) {
    check_permutation(priority);
    return MonomialOrder(Kind::lex, std::move(priority), {});
  }

  static MonomialOrder grlex(std::size_t n) { return MonomialOrder(Kind::grlex, identity(n), {}); }

  // Lex on the eliminated block, ties broken by graded-lex on the rest.
  // Any monomial involving an eliminated variable exceeds every monomial
  // free of them.
  static MonomialOrder block_elimination(std::size_t n, ElementSet eliminated) {
    if (!eliminated.is_subset_of(ElementSet::full(n))) throw InvalidArgument("eliminated set exceeds variables");
    return MonomialOrder(Kind::block, identity(n), eliminated);
  }

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return priority_.size(); }
  ElementSet eliminated() const { return eliminated_; }

  std::strong_ordering compare(const Exponents& a, const Exponents& b) const {
    switch (kind_) {
      case Kind::lex:
        return lex_compare(a, b, ElementSet::full(nvars()));
      case Kind::grlex:
        return graded_compare(a, b, ElementSet::full(nvars()));
      case Kind::block: {
        auto c = lex_compare(a, b, eliminated_);
        if (c != 0) return c;
        return graded_compare(a, b, ElementSet::full(nvars()) - eliminated_);
      }
    }
    return std::strong_ordering::equal;
  }

  bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> priority, ElementSet eliminated)
      : kind_(kind), priority_(std::move(priority)), eliminated_(eliminated) {}

  static std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
  }

  static void check_permutation(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity(perm.size())) throw InvalidArgument("variable priority is not a permutation");
  }

  std::strong_ordering lex_compare(const Exponents& a, const Exponents& b, ElementSet vars) const {
    for (std::size_t i : priority_) {
      if (!vars.contains(i)) continue;
      if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
  }

  std::strong_ordering graded_compare(const Exponents& a, const Exponents& b, ElementSet vars) const {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i : vars.elements()) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da <=> db;
    return lex_compare(a, b, vars);
  }

  Kind kind_;
  std::vector<std::size_t> priority_;
  ElementSet eliminated_;
};

// A set of generators in a common ring. The empty list is the zero ideal.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {}) : ring_(std::move(ring)) {
    for (Polynomial& g : generators) {
      if (!(g.ring() == ring_ || *g.ring() == *ring_)) throw ContextMismatch("generator from a different ring");
      if (!g.is_zero()) generators_.push_back(std::move(g));
    }
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool is_zero() const { return generators_.empty(); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
};

namespace detail {

using TermList = std::vector<Term>;  // sorted descending in the working order

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

inline Exponents quotient(const Exponents& num, const Exponents& den) {
  Exponents out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = num[i] - den[i];
  return out;
}

inline TermList sorted_terms(const Polynomial& f, const MonomialOrder& order) {
  TermList t = f.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.greater(a.exponents, b.exponents); });
  return t;
}

inline void make_monic(TermList& f, const PrimeField& F) {
  if (f.empty() || f.front().coeff == 1) return;
  auto inv = F.inv(f.front().coeff);
  for (Term& t : f) t.coeff = F.mul(t.coeff, inv);
}

// f[start..] - c * x^shift * g, merged in order.
inline TermList sub_multiple(const TermList& f, std::size_t start, PrimeField::Element c, const Exponents& shift,
                             const TermList& g, const MonomialOrder& order, const PrimeField& F) {
  TermList out;
  out.reserve(f.size() - start + g.size());
  std::size_t i = start, j = 0;
  auto shifted = [&](const Term& t) {
    Exponents e(t.exponents.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = Polynomial::checked_add(t.exponents[k], shift[k]);
    return Term{std::move(e), F.neg(F.mul(c, t.coeff))};
  };
  while (i < f.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(f[i++]);
      continue;
    }
    Term gj = shifted(g[j]);
    if (i == f.size()) {
      out.push_back(std::move(gj));
      ++j;
      continue;
    }
    auto cmp = order.compare(f[i].exponents, gj.exponents);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back(std::move(gj));
      ++j;
    } else {
      auto s = F.add(f[i].coeff, gj.coeff);
      if (s != 0) out.push_back(Term{f[i].exponents, s});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of f by monic divisors.
inline TermList reduce(TermList f, const std::vector<const TermList*>& divisors, const MonomialOrder& order,
                       const PrimeField& F) {
  TermList remainder;
  std::size_t start = 0;
  while (start < f.size()) {
    const Term& lead = f[start];
    const TermList* divisor = nullptr;
    for (const TermList* g : divisors) {
      if (divides(g->front().exponents, lead.exponents)) {
        divisor = g;
        break;
      }
    }
    if (divisor == nullptr) {
      remainder.push_back(lead);
      ++start;
      continue;
    }
    f = sub_multiple(f, start, lead.coeff, quotient(lead.exponents, divisor->front().exponents), *divisor, order, F);
    start = 0;
  }
  return remainder;
}

inline Polynomial to_polynomial(const RingPtr& ring, TermList terms) {
  return Polynomial::from_terms(ring, std::move(terms));
}

class Buchberger {
 public:
  Buchberger(RingPtr ring, const MonomialOrder& order) : ring_(std::move(ring)), order_(order), F_(ring_->field) {}

  std::vector<Polynomial> run(std::span<const Polynomial> generators) {
    for (const Polynomial& g : generators) {
      TermList t = sorted_terms(g, order_);
      if (t.empty()) continue;
      t = reduce(std::move(t), active_divisors(), order_, F_);
      if (t.empty()) continue;
      make_monic(t, F_);
      update(std::move(t));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        auto c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::pair(a.j, a.i) < std::pair(b.j, b.i);
      });
      Pair pair = *best;
      pairs_.erase(best);
      TermList h = reduce(s_polynomial(pair), active_divisors(), order_, F_);
      if (h.empty()) continue;
      make_monic(h, F_);
      update(std::move(h));
    }
    return reduced_basis();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Exponents lcm;
  };

  const Exponents& lead(std::size_t k) const { return polys_[k].front().exponents; }

  std::vector<const TermList*> active_divisors() const {
    std::vector<const TermList*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) out.push_back(&polys_[k]);
    }
    return out;
  }

  TermList s_polynomial(const Pair& pair) const {
    const TermList& f = polys_[pair.i];
    const TermList& g = polys_[pair.j];
    // Both are monic: S = (lcm/lm f) f - (lcm/lm g) g.
    TermList fs;
    Exponents qf = quotient(pair.lcm, f.front().exponents);
    fs.reserve(f.size());
    for (const Term& t : f) {
      Exponents e(t.exponents.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = Polynomial::checked_add(t.exponents[k], qf[k]);
      fs.push_back(Term{std::move(e), t.coeff});
    }
    return sub_multiple(fs, 0, 1, quotient(pair.lcm, g.front().exponents), g, order_, F_);
  }

  // Gebauer–Möller installation of a new basis element h.
  void update(TermList h) {
    std::size_t hidx = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    const Exponents& lh = lead(hidx);

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < hidx; ++g) {
      if (active_[g]) candidates.push_back(Pair{g, hidx, lcm(lead(g), lh)});
    }

    // Chain criterion among the new pairs: keep (g,h) if its leads are
    // coprime or no other new pair has an lcm dividing its lcm.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool keep = coprime(lead(p.i), lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b) {
          if (divides(candidates[b].lcm, p.lcm)) keep = false;
        }
        for (std::size_t b = 0; b < kept.size() && keep; ++b) {
          if (divides(kept[b].lcm, p.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }
    // Product criterion: coprime leads reduce to zero.
    std::vector<Pair> fresh;
    for (Pair& p : kept) {
      if (!coprime(lead(p.i), lh)) fresh.push_back(std::move(p));
    }

    // Old pairs made redundant by h.
    std::vector<Pair> old;
    for (Pair& p : pairs_) {
      bool redundant = divides(lh, p.lcm) && lcm(lead(p.i), lh) != p.lcm && lcm(lead(p.j), lh) != p.lcm;
      if (!redundant) old.push_back(std::move(p));
    }
    pairs_ = std::move(old);
    for (Pair& p : fresh) pairs_.push_back(std::move(p));

    for (std::size_t g = 0; g < hidx; ++g) {
      if (active_[g] && divides(lh, lead(g))) active_[g] = false;
    }
  }

  std::vector<Polynomial> reduced_basis() const {
    std::vector<TermList> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(polys_[k]);
    }
    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<TermList> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
        if (a == b) continue;
        const auto& la = basis[a].front().exponents;
        const auto& lb = basis[b].front().exponents;
        if (divides(lb, la) && (lb != la || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[a]);
    }
    std::vector<TermList> reduced;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      std::vector<const TermList*> others;
      for (std::size_t b = 0; b < minimal.size(); ++b) {
        if (a != b) others.push_back(&minimal[b]);
      }
      TermList tail(minimal[a].begin() + 1, minimal[a].end());
      TermList r = reduce(std::move(tail), others, order_, F_);
      r.insert(r.begin(), minimal[a].front());
      reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const TermList& a, const TermList& b) {
      return order_.compare(a.front().exponents, b.front().exponents) < 0;
    });
    std::vector<Polynomial> out;
    for (TermList& t : reduced) out.push_back(to_polynomial(ring_, std::move(t)));
    return out;
  }

  RingPtr ring_;
  MonomialOrder order_;
  const PrimeField& F_;
  std::vector<TermList> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

inline void check_order(const RingPtr& ring, const MonomialOrder& order) {
  if (order.nvars() != ring->nvars()) throw ContextMismatch("monomial order and ring disagree on variable count");
}

}  // namespace detail

// Leading term of a nonzero polynomial under `order`.
inline Term leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw InvalidArgument("leading term of zero");
  const Term* best = &f.terms().front();
  for (const Term& t : f.terms()) {
    if (order.greater(t.exponents, best->exponents)) best = &t;
  }
  return *best;
}

// The reduced Gröbner basis of the ideal generated by `generators`: monic
// leads, inter-reduced, sorted by ascending leading monomial. Empty for the
// zero ideal, {1} for the unit ideal.
inline std::vector<Polynomial> buchberger(std::span<const Polynomial> generators, const MonomialOrder& order) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  for (const Polynomial& g : generators) Polynomial::check_same_ring(generators.front(), g);
  detail::check_order(ring, order);
  return detail::Buchberger(ring, order).run(generators);
}

inline std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& order) {
  detail::check_order(ideal.ring(), order);
  return buchberger(ideal.generators(), order);
}

// Remainder of f on division by a Gröbner basis; zero iff f is in the ideal.
inline Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> gb, const MonomialOrder& order) {
  detail::check_order(f.ring(), order);
  std::vector<detail::TermList> divisors;
  for (const Polynomial& g : gb) {
    Polynomial::check_same_ring(f, g);
    detail::TermList t = detail::sorted_terms(g, order);
    if (t.empty()) continue;
    detail::make_monic(t, f.field());
    divisors.push_back(std::move(t));
  }
  std::vector<const detail::TermList*> ptrs;
  for (const auto& d : divisors) ptrs.push_back(&d);
  return detail::to_polynomial(f.ring(),
                               detail::reduce(detail::sorted_terms(f, order), ptrs, order, f.field()));
}

inline bool ideal_contains(const Ideal& ideal, const Polynomial& f) {
  auto order = MonomialOrder::grlex(ideal.nvars());
  auto gb = groebner_basis(ideal, order);
  return normal_form(f, gb, order).is_zero();
}

// Reduced Gröbner basis of I ∩ K[x_keep]. Empty iff the elimination ideal
// is zero.
inline std::vector<Polynomial> eliminate(const Ideal& ideal, ElementSet keep) {
  const std::size_t n = ideal.nvars();
  if (!keep.is_subset_of(ElementSet::full(n))) throw InvalidArgument("kept set exceeds variables");
  auto order = MonomialOrder::block_elimination(n, ElementSet::full(n) - keep);
  std::vector<Polynomial> out;
  for (Polynomial& g : groebner_basis(ideal, order)) {
    if (g.support().is_subset_of(keep)) out.push_back(std::move(g));
  }
  return out;
}

// The generator of a principal elimination ideal, made monic.
inline Polynomial principal_generator(std::span<const Polynomial> elimination_basis) {
  if (elimination_basis.size() != 1) {
    throw NotPrincipal("elimination ideal has " + std::to_string(elimination_basis.size()) +
                       " generators, expected exactly one");
  }
  return elimination_basis.front().monic();
}

// (I : m^∞) by adjoining w, adding w*m - 1 and eliminating w.
inline Ideal saturate(const Ideal& ideal, const Polynomial& monomial) {
  if (!monomial.is_monomial()) throw InvalidArgument("saturation needs a nonzero monomial");
  const RingPtr& ring = ideal.ring();
  if (!(*monomial.ring() == *ring)) throw ContextMismatch("saturating monomial from a different ring");
  const std::size_t n = ring->nvars();

  std::vector<std::string> vars = ring->vars;
  std::string w = "_w";
  while (std::find(vars.begin(), vars.end(), w) != vars.end()) w += "_";
  vars.push_back(w);
  RingPtr extended = make_ring(std::move(vars), ring->field.characteristic());

  auto lift = [&](const Polynomial& f) {
    std::vector<Term> terms = f.terms();
    for (Term& t : terms) t.exponents.push_back(0);
    return Polynomial::from_terms(extended, std::move(terms));
  };
  std::vector<Polynomial> gens;
  for (const Polynomial& g : ideal.generators()) gens.push_back(lift(g));
  Exponents wm = monomial.terms().front().exponents;
  wm.push_back(1);
  gens.push_back(Polynomial::monomial(extended, std::move(wm), monomial.terms().front().coeff) -
                 Polynomial::constant(extended, 1));

  auto order = MonomialOrder::block_elimination(n + 1, ElementSet::singleton(n));
  std::vector<Polynomial> result;
  for (const Polynomial& g : buchberger(gens, order)) {
    if (g.support().contains(n)) continue;
    std::vector<Term> terms = g.terms();
    for (Term& t : terms) t.exponents.pop_back();
    result.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return Ideal(ring, std::move(result));
}

}  // namespace lindstrom
