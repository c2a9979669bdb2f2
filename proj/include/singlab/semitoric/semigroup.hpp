#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/parse.hpp"
#include "singlab/rational.hpp"

namespace singlab {

struct NumericalSemigroup {
  std::vector<long> generators;  // minimal, increasing
  long conductor = 0;
  std::vector<long> apery;  // apery[r]: least element congruent to r mod generators[0]

  long multiplicity() const { return generators.front(); }
  long frobenius() const { return conductor - 1; }

  bool contains(long x) const {
    if (x < 0) return false;
    const long m = multiplicity();
    return x >= apery[static_cast<std::size_t>(x % m)];
  }

  std::vector<long> gaps() const {
    std::vector<long> g;
    for (long x = 1; x < conductor; ++x)
      if (!contains(x)) g.push_back(x);
    return g;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + std::to_string(generators[i]);
    return s + ">";
  }
};

namespace detail {

/// Apery set of <gens> with respect to m = min(gens), by shortest paths on
/// residues mod m.
inline std::vector<long> apery_set(const std::vector<long>& gens) {
  const long m = gens.front();
  const long inf = std::numeric_limits<long>::max();
  std::vector<long> dist(static_cast<std::size_t>(m), inf);
  dist[0] = 0;
  std::vector<bool> done(static_cast<std::size_t>(m), false);
  for (long round = 0; round < m; ++round) {
    long best = inf;
    std::size_t r = 0;
    for (std::size_t k = 0; k < dist.size(); ++k)
      if (!done[k] && dist[k] < best) {
        best = dist[k];
        r = k;
      }
    if (best == inf) break;
    done[r] = true;
    for (long g : gens) {
      const auto next = static_cast<std::size_t>((static_cast<long>(r) + g) % m);
      if (best + g < dist[next]) dist[next] = best + g;
    }
  }
  return dist;
}

}  // namespace detail

inline NumericalSemigroup semigroup_from_generators(std::vector<long> gens) {
  if (gens.empty()) fail(ErrorKind::Precondition, "no generators");
  for (long g : gens)
    if (g <= 0) fail(ErrorKind::Precondition, "generators must be positive");
  long g0 = 0;
  for (long g : gens) g0 = std::gcd(g0, g);
  if (g0 != 1) fail(ErrorKind::GcdNotOne, "generators have gcd " + std::to_string(g0));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  NumericalSemigroup s;
  for (long g : gens) {
    bool redundant = false;
    if (!s.generators.empty()) {
      const auto ap = detail::apery_set(s.generators);
      redundant = g >= ap[static_cast<std::size_t>(g % s.generators.front())];
    }
    if (!redundant) s.generators.push_back(g);
  }
  s.apery = detail::apery_set(s.generators);
  const long m = s.multiplicity();
  s.conductor = m == 1 ? 0 : *std::max_element(s.apery.begin(), s.apery.end()) - m + 1;
  return s;
}

/// x = t^beta0, y = sum c_j t^j.
struct PlaneBranch {
  long beta0 = 1;
  Rational x_coefficient{1};
  std::map<long, Rational> y;  // exponent -> nonzero coefficient
};

struct CharacteristicData {
  std::vector<long> beta;       // beta_0, beta_1, ..., beta_g
  std::vector<long> e;          // e_i = gcd(beta_0..beta_i)
  std::vector<long> semigroup;  // beta-bar_0..beta-bar_g
};

inline CharacteristicData characteristic_data(const PlaneBranch& b) {
  if (b.beta0 <= 0) fail(ErrorKind::NotABranch, "x must have positive order");
  if (b.y.empty()) fail(ErrorKind::NotABranch, "y is zero");
  if (b.y.begin()->first < b.beta0)
    fail(ErrorKind::NotABranch, "ord y = " + std::to_string(b.y.begin()->first) + " is below ord x = " +
                                    std::to_string(b.beta0) + "; swap the coordinates");
  CharacteristicData d;
  d.beta.push_back(b.beta0);
  d.e.push_back(b.beta0);
  for (const auto& [j, c] : b.y) {
    if (d.e.back() == 1) break;
    if (j % d.e.back() == 0) continue;
    d.beta.push_back(j);
    d.e.push_back(std::gcd(d.e.back(), j));
  }
  if (d.e.back() != 1)
    fail(ErrorKind::NotABranch, "parametrization is not primitive (gcd of exponents is " + std::to_string(d.e.back()) + ")");
  d.semigroup.push_back(d.beta[0]);
  if (d.beta.size() > 1) d.semigroup.push_back(d.beta[1]);
  for (std::size_t i = 1; i + 1 < d.beta.size(); ++i) {
    const long n_i = d.e[i - 1] / d.e[i];
    d.semigroup.push_back(n_i * d.semigroup[i] + d.beta[i + 1] - d.beta[i]);
  }
  return d;
}

/// Parses "x(t), y(t)" where x is a single term c*t^k.
inline PlaneBranch parse_branch(std::string_view text) {
  const auto parts = split_top_level(text);
  if (parts.size() != 2) fail(ErrorKind::Parse, "branch needs two comma-separated series x(t), y(t)");
  std::vector<std::string> names = collect_variables(parts[0]);
  for (const auto& nm : collect_variables(parts[1]))
    if (std::find(names.begin(), names.end(), nm) == names.end()) names.push_back(nm);
  if (names.size() != 1) fail(ErrorKind::Parse, "branch must use exactly one parameter variable");
  const RingPtr ring = make_ring(names);
  const Polynomial x = parse_polynomial(parts[0], ring);
  const Polynomial y = parse_polynomial(parts[1], ring);
  if (x.size() != 1) fail(ErrorKind::NotABranch, "x(t) must be a single term c*t^k");
  PlaneBranch b;
  b.beta0 = static_cast<long>(x.terms().begin()->first[0]);
  b.x_coefficient = x.terms().begin()->second;
  for (const auto& [e, c] : y.terms()) b.y[static_cast<long>(e[0])] = c;
  return b;
}

inline NumericalSemigroup branch_semigroup(const PlaneBranch& b) {
  return semigroup_from_generators(characteristic_data(b).semigroup);
}

}  // namespace singlab
