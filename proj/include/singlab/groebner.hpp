#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

/// A monomial order.
///
/// The first `elimination_block` variables form an elimination block: any
/// monomial containing them beats every monomial free of them.  Inside the
/// block monomials compare by degree then `kind`; outside it, by the optional
/// positive `weights` (dot product) and then `kind`.
struct MonomialOrder {
  enum class Kind { Grevlex, Lex };

  Kind kind = Kind::Grevlex;
  std::size_t elimination_block = 0;
  std::vector<std::int64_t> weights;  // over the variables after the block

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, 0, {}}; }
  static MonomialOrder elimination(std::size_t block, Kind rest = Kind::Grevlex) {
    return {rest, block, {}};
  }
  static MonomialOrder weighted(std::vector<std::int64_t> w, Kind tie = Kind::Lex,
                                std::size_t block = 0) {
    return {tie, block, std::move(w)};
  }

  /// Returns <0, 0, >0 as a is smaller, equal, greater than b.
  int compare(const Exponents& a, const Exponents& b) const {
    const std::size_t n = a.size();
    const std::size_t k = std::min(elimination_block, n);
    if (k > 0) {
      std::uint64_t da = 0, db = 0;
      for (std::size_t i = 0; i < k; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
      if (int c = compare_range(a, b, 0, k, Kind::Grevlex, /*skip_degree=*/true); c != 0) return c;
    }
    if (!weights.empty()) {
      std::int64_t wa = 0, wb = 0;
      for (std::size_t i = k; i < n; ++i) {
        const auto w = (i - k) < weights.size() ? weights[i - k] : 1;
        wa += w * static_cast<std::int64_t>(a[i]);
        wb += w * static_cast<std::int64_t>(b[i]);
      }
      if (wa != wb) return wa < wb ? -1 : 1;
      return compare_range(a, b, k, n, kind, /*skip_degree=*/true);
    }
    return compare_range(a, b, k, n, kind, /*skip_degree=*/false);
  }

  bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }

 private:
  static int compare_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi,
                           Kind kind, bool skip_degree) {
    if (kind == Kind::Lex) {
      for (std::size_t i = lo; i < hi; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    }
    if (!skip_degree) {
      std::uint64_t da = 0, db = 0;
      for (std::size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
    }
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  }
};

struct GroebnerOptions {
  /// Cap on S-polynomial reductions plus reduction steps.
  std::uint64_t max_steps = 2'000'000;
};

namespace detail {

struct Term {
  Exponents mono;
  Rational coef;
};

/// Polynomial stored as terms sorted by decreasing monomial order.
using SortedPoly = std::vector<Term>;

inline SortedPoly to_sorted(const Polynomial& p, const MonomialOrder& ord) {
  SortedPoly s;
  s.reserve(p.size());
  for (const auto& [e, c] : p.terms()) s.push_back({e, c});
  std::sort(s.begin(), s.end(), [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
  return s;
}

inline Polynomial from_sorted(const SortedPoly& s, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& t : s) p.add_term(t.mono, t.coef);
  return p;
}

/// a - coef * x^shift * b, with all operands sorted by `ord`.
inline SortedPoly sub_scaled(const SortedPoly& a, const Rational& coef, const Exponents& shift,
                             const SortedPoly& b, std::size_t skip_b, const MonomialOrder& ord) {
  SortedPoly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = skip_b;
  while (i < a.size() || j < b.size()) {
    if (j >= b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Exponents mb = b[j].mono + shift;
    if (i >= a.size()) {
      out.push_back({std::move(mb), -coef * b[j].coef});
      ++j;
      continue;
    }
    const int c = ord.compare(a[i].mono, mb);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({std::move(mb), -coef * b[j].coef});
      ++j;
    } else {
      Rational v = a[i].coef - coef * b[j].coef;
      if (v != 0) out.push_back({std::move(mb), std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

class StepCounter {
 public:
  explicit StepCounter(std::uint64_t cap) : cap_(cap) {}
  void tick() {
    if (++steps_ > cap_)
      fail(ErrorKind::Budget, "symbolic step budget of " + std::to_string(cap_) + " exceeded");
  }

 private:
  std::uint64_t cap_;
  std::uint64_t steps_ = 0;
};

/// Full reduction of p by the basis; the basis elements must be monic.
inline SortedPoly reduce_full(SortedPoly p, const std::vector<SortedPoly>& basis, const MonomialOrder& ord,
                              StepCounter& counter, std::size_t skip = std::numeric_limits<std::size_t>::max()) {
  SortedPoly rem;
  while (!p.empty()) {
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || basis[k].empty()) continue;
      const auto& lt = basis[k].front().mono;
      if (divides(lt, p.front().mono)) {
        counter.tick();
        const Exponents shift = p.front().mono - lt;
        const Rational c = p.front().coef / basis[k].front().coef;
        SortedPoly next = sub_scaled(p, c, shift, basis[k], 0, ord);
        p = std::move(next);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.push_back(std::move(p.front()));
      p.erase(p.begin());
    }
  }
  return rem;
}

inline void make_monic(SortedPoly& p) {
  if (p.empty()) return;
  const Rational lc = p.front().coef;
  if (lc == 1) return;
  for (auto& t : p) t.coef /= lc;
}

inline void check_same_ring(const std::vector<Polynomial>& ps) {
  for (const auto& p : ps)
    if (!(p.ring() == ps.front().ring()))
      fail(ErrorKind::VariableMismatch, "generators live over different variable lists");
}

}  // namespace detail

/// Leading monomial of a nonzero polynomial under the order.
inline Exponents leading_monomial(const Polynomial& p, const MonomialOrder& ord) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "leading monomial of zero");
  const Exponents* best = nullptr;
  for (const auto& [e, c] : p.terms())
    if (!best || ord.compare(e, *best) > 0) best = &e;
  return *best;
}

inline Rational leading_coefficient(const Polynomial& p, const MonomialOrder& ord) {
  return p.coefficient(leading_monomial(p, ord));
}

/// Reduced Groebner basis by Buchberger's algorithm.
///
/// Pairs are processed smallest-lcm first with index tie-breaks, so the run is
/// deterministic.  The product and chain criteria prune useless pairs.  The
/// result is monic, interreduced, and sorted by increasing leading monomial.
inline std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& generators,
                                              const MonomialOrder& order,
                                              const GroebnerOptions& opts = {}) {
  if (generators.empty()) fail(ErrorKind::Precondition, "groebner_basis needs at least one generator");
  detail::check_same_ring(generators);
  const RingPtr ring = generators.front().ring_ptr();
  detail::StepCounter counter(opts.max_steps);

  std::vector<detail::SortedPoly> basis;
  for (const auto& g : generators) {
    auto s = detail::to_sorted(g, order);
    if (s.empty()) continue;
    detail::make_monic(s);
    basis.push_back(std::move(s));
  }
  if (basis.empty()) return {};

  struct Pair {
    std::size_t i, j;
    Exponents lcm;
  };
  std::vector<Pair> pairs;
  std::vector<std::vector<bool>> done;

  auto add_element = [&](detail::SortedPoly p) {
    const std::size_t k = basis.size();
    basis.push_back(std::move(p));
    for (auto& row : done) row.push_back(false);
    done.emplace_back(k + 1, false);
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].empty()) continue;
      pairs.push_back({i, k, lcm(basis[i].front().mono, basis[k].front().mono)});
    }
  };

  {
    auto initial = std::move(basis);
    basis.clear();
    for (auto& p : initial) add_element(std::move(p));
  }

  auto is_done = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<bool>(done[b][a]);
  };

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      const int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);
    done[pr.j][pr.i] = true;
    counter.tick();

    const auto& f = basis[pr.i];
    const auto& g = basis[pr.j];
    if (f.empty() || g.empty()) continue;
    const Exponents& lf = f.front().mono;
    const Exponents& lg = g.front().mono;

    // product criterion: coprime leading monomials
    if (pr.lcm == lf + lg) continue;
    // chain criterion
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || basis[k].empty()) continue;
      if (divides(basis[k].front().mono, pr.lcm) && is_done(pr.i, k) && is_done(pr.j, k)) chain = true;
    }
    if (chain) continue;

    detail::SortedPoly s =
        detail::sub_scaled(detail::SortedPoly{}, Rational(-1), pr.lcm - lf, f, 0, order);
    s = detail::sub_scaled(s, Rational(1), pr.lcm - lg, g, 0, order);
    // the two leading terms cancel by construction
    auto h = detail::reduce_full(std::move(s), basis, order, counter);
    if (h.empty()) continue;
    detail::make_monic(h);
    add_element(std::move(h));
  }

  // minimalize
  std::vector<detail::SortedPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || basis[j].empty()) continue;
      const auto& li = basis[i].front().mono;
      const auto& lj = basis[j].front().mono;
      if (divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // interreduce tails
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    detail::SortedPoly head{minimal[i].front()};
    detail::SortedPoly tail(minimal[i].begin() + 1, minimal[i].end());
    auto rt = detail::reduce_full(std::move(tail), minimal, order, counter, i);
    head.insert(head.end(), std::make_move_iterator(rt.begin()), std::make_move_iterator(rt.end()));
    minimal[i] = std::move(head);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
    return order.compare(a.front().mono, b.front().mono) < 0;
  });
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& s : minimal) out.push_back(detail::from_sorted(s, ring));
  return out;
}

/// Remainder of p on division by a Groebner basis (unique for that basis).
inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                              const MonomialOrder& order, const GroebnerOptions& opts = {}) {
  for (const auto& g : basis)
    if (!(g.ring() == p.ring()))
      fail(ErrorKind::VariableMismatch, "normal_form: basis and polynomial use different variables");
  detail::StepCounter counter(opts.max_steps);
  std::vector<detail::SortedPoly> sb;
  for (const auto& g : basis) {
    auto s = detail::to_sorted(g, order);
    if (s.empty()) continue;
    detail::make_monic(s);
    sb.push_back(std::move(s));
  }
  auto r = detail::reduce_full(detail::to_sorted(p, order), sb, order, counter);
  return detail::from_sorted(r, p.ring_ptr());
}

/// True when the basis defines a zero-dimensional ideal: every variable has
/// a pure power among the leading monomials.
inline bool is_zero_dimensional(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  if (basis.empty()) return false;
  const std::size_t n = basis.front().ring().size();
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& g : basis) {
      const auto lm = leading_monomial(g, order);
      bool pure = lm[v] > 0;
      for (std::size_t u = 0; u < n && pure; ++u)
        if (u != v && lm[u] != 0) pure = false;
      if (pure) found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Monomials outside the initial ideal of a zero-dimensional basis.
inline std::vector<Exponents> staircase(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  if (!is_zero_dimensional(basis, order))
    fail(ErrorKind::NotIsolated, "ideal is not zero-dimensional");
  const std::size_t n = basis.front().ring().size();
  std::vector<Exponents> leads;
  for (const auto& g : basis) leads.push_back(leading_monomial(g, order));
  std::vector<std::uint32_t> bound(n, 0);
  for (const auto& lm : leads)
    for (std::size_t v = 0; v < n; ++v) {
      bool pure = lm[v] > 0;
      for (std::size_t u = 0; u < n && pure; ++u)
        if (u != v && lm[u] != 0) pure = false;
      if (pure && (bound[v] == 0 || lm[v] < bound[v])) bound[v] = lm[v];
    }
  std::vector<Exponents> out;
  Exponents e(n, 0);
  for (;;) {
    bool in_ideal = false;
    for (const auto& lm : leads)
      if (divides(lm, e)) {
        in_ideal = true;
        break;
      }
    if (!in_ideal) out.push_back(e);
    std::size_t v = 0;
    while (v < n) {
      if (++e[v] < bound[v]) break;
      e[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  return out;
}

}  // namespace singlab
