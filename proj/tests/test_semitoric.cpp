#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "singlab/groebner.hpp"
#include "singlab/parse.hpp"
#include "singlab/semitoric.hpp"

#include "oracles.hpp"

using namespace singlab;
using namespace oracle;

namespace {

// Oracle: subset-sum sieve.
std::vector<bool> sieve(const std::vector<long>& gens, long limit) {
  std::vector<bool> in(static_cast<std::size_t>(limit + 1), false);
  in[0] = true;
  for (long x = 1; x <= limit; ++x)
    for (long g : gens)
      if (x >= g && in[static_cast<std::size_t>(x - g)]) in[static_cast<std::size_t>(x)] = true;
  return in;
}

PlaneBranch branch(long beta0, std::map<long, Rational> y) { return PlaneBranch{beta0, Rational(1), std::move(y)}; }

Series series_of(std::initializer_list<std::pair<long, long>> terms, std::size_t precision) {
  Series s(precision);
  for (auto [e, c] : terms) s[static_cast<std::size_t>(e)] = c;
  return s;
}

}  // namespace

TEST(Semigroup, Examples) {
  const auto s = semigroup_from_generators({4, 6, 13});
  EXPECT_EQ(s.generators, (std::vector<long>{4, 6, 13}));
  EXPECT_EQ(s.conductor, 16);
  EXPECT_EQ(s.gaps(), (std::vector<long>{1, 2, 3, 5, 7, 9, 11, 15}));
  EXPECT_EQ(s.apery.size(), 4u);
  EXPECT_EQ(s.to_string(), "<4,6,13>");

  const auto t = semigroup_from_generators({3, 2});
  EXPECT_EQ(t.generators, (std::vector<long>{2, 3}));
  EXPECT_EQ(t.conductor, 2);
  EXPECT_EQ(t.gaps(), (std::vector<long>{1}));

  const auto n = semigroup_from_generators({1});
  EXPECT_EQ(n.conductor, 0);
  EXPECT_TRUE(n.contains(0));
  EXPECT_TRUE(n.contains(7));
}

TEST(Semigroup, ExtractsMinimalGenerators) {
  const auto s = semigroup_from_generators({10, 13, 8, 6, 4});
  EXPECT_EQ(s.generators, (std::vector<long>{4, 6, 13}));
  EXPECT_EQ(s.conductor, 16);
}

TEST(Semigroup, Errors) {
  try {
    semigroup_from_generators({4, 6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GcdNotOne);
  }
  EXPECT_THROW(semigroup_from_generators({}), Error);
  EXPECT_THROW(semigroup_from_generators({3, 0}), Error);
}

TEST(Semigroup, MembershipMatchesSubsetSum) {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<long> gen(2, 25), count(2, 4);
  int sets = 0;
  while (sets < 50) {
    std::vector<long> g(static_cast<std::size_t>(count(rng)));
    for (auto& v : g) v = gen(rng);
    long d = 0;
    for (long v : g) d = std::gcd(d, v);
    if (d != 1) continue;
    ++sets;
    const auto s = semigroup_from_generators(g);
    const long limit = 3 * std::max(s.conductor, 1L);
    const auto in = sieve(g, limit);
    for (long x = 0; x <= limit; ++x) ASSERT_EQ(s.contains(x), in[static_cast<std::size_t>(x)]) << x;
    // Minimality: no generator is a sum of the others.
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
      auto others = s.generators;
      others.erase(others.begin() + static_cast<long>(i));
      EXPECT_FALSE(sieve(others, s.generators[i])[static_cast<std::size_t>(s.generators[i])]);
    }
    EXPECT_TRUE(in[static_cast<std::size_t>(s.conductor)]);
    if (s.conductor > 0) EXPECT_FALSE(in[static_cast<std::size_t>(s.conductor - 1)]);
  }
}

TEST(BranchSemigroup, Examples) {
  EXPECT_EQ(branch_semigroup(branch(2, {{3, 1}})).generators, (std::vector<long>{2, 3}));
  EXPECT_EQ(branch_semigroup(branch(4, {{6, 1}, {7, 1}})).generators, (std::vector<long>{4, 6, 13}));
  const auto smooth = branch_semigroup(branch(1, {{2, 1}}));
  EXPECT_EQ(smooth.generators, (std::vector<long>{1}));
  EXPECT_EQ(smooth.conductor, 0);
}

TEST(BranchSemigroup, MatchesIntersectionOrders) {
  struct Case {
    PlaneBranch b;
    long beta1;
  };
  const std::vector<Case> corpus{
      {branch(2, {{3, 1}}), 3},
      {branch(2, {{3, 1}, {4, 1}}), 3},
      {branch(4, {{6, 1}, {7, 1}}), 6},
      {branch(4, {{6, 1}, {9, 1}}), 6},
      {branch(3, {{5, 1}, {6, ratio(1, 2)}}), 5},
      {branch(6, {{8, 1}, {10, 1}, {11, 1}}), 8},
  };
  for (const auto& c : corpus) {
    const auto s = branch_semigroup(c.b);
    const long cutoff = s.conductor + 12;
    const auto orders = intersection_orders(c.b, c.beta1, 4 * cutoff, static_cast<std::size_t>(cutoff + 1));
    for (long v = 0; v <= cutoff; ++v) EXPECT_EQ(s.contains(v), orders.count(v) == 1) << s.to_string() << " v=" << v;
  }
}

TEST(BranchSemigroup, Errors) {
  auto kind = [](const PlaneBranch& b) {
    try {
      branch_semigroup(b);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  EXPECT_EQ(kind(branch(4, {{6, 1}, {8, 1}})), ErrorKind::NotABranch);
  EXPECT_EQ(kind(branch(4, {{2, 1}})), ErrorKind::NotABranch);
  EXPECT_EQ(kind(branch(4, {})), ErrorKind::NotABranch);
}

TEST(ToricIdeal, Examples) {
  const auto i23 = toric_ideal(semigroup_from_generators({2, 3}));
  ASSERT_EQ(i23.basis.size(), 1u);
  EXPECT_EQ(i23.basis[0], parse_polynomial("U1^2 - U0^3", i23.ring));

  const auto i = toric_ideal(semigroup_from_generators({4, 6, 13}));
  auto has = [&](const std::string& text) {
    const auto p = parse_polynomial(text, i.ring);
    return std::any_of(i.basis.begin(), i.basis.end(), [&](const Polynomial& q) { return q == p || q == -p; });
  };
  EXPECT_TRUE(has("U1^2 - U0^3"));
  EXPECT_TRUE(has("U2^2 - U0^5*U1"));
  for (const auto& b : i.binomials) EXPECT_EQ(b.lambda, 1);

  try {
    toric_ideal(semigroup_from_generators({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(ToricIdeal, EqualsKernelOfMonomialMap) {
  for (const auto& gens : std::vector<std::vector<long>>{{2, 3}, {3, 5}, {4, 6, 13}, {3, 4, 5}, {5, 7, 9}}) {
    const auto s = semigroup_from_generators(gens);
    const auto ideal = toric_ideal(s);
    const std::size_t n = gens.size();
    const auto tring = make_ring({"T"});
    // Every basis element vanishes under U_i -> T^gamma_i.
    for (const auto& p : ideal.basis) {
      Polynomial image(tring);
      for (const auto& [e, c] : p.terms()) {
        long deg = 0;
        for (std::size_t k = 0; k < n; ++k) deg += static_cast<long>(e[k]) * gens[k];
        image += Polynomial::monomial(tring, {static_cast<std::uint32_t>(deg)}, c);
      }
      EXPECT_TRUE(image.is_zero()) << p.to_string();
    }
    // Every kernel binomial of bounded weight lies in the ideal.
    const auto gb = groebner_basis(ideal.basis, MonomialOrder::grevlex());
    const long bound = 3 * gens.back();
    std::map<long, std::vector<Exponents>> by_weight;
    Exponents e(n, 0);
    while (true) {
      const long w = weighted_degree(e, gens);
      if (w <= bound) by_weight[w].push_back(e);
      std::size_t k = 0;
      while (k < n) {
        ++e[k];
        if (weighted_degree(e, gens) <= bound) break;
        e[k] = 0;
        ++k;
      }
      if (k == n) break;
    }
    for (const auto& [w, monos] : by_weight)
      for (std::size_t a = 1; a < monos.size(); ++a) {
        Polynomial b = Polynomial::monomial(ideal.ring, monos[0], Rational(1));
        b -= Polynomial::monomial(ideal.ring, monos[a], Rational(1));
        EXPECT_TRUE(normal_form(b, gb, MonomialOrder::grevlex()).is_zero()) << b.to_string();
      }
  }
}

TEST(Resolution, TwoThree) {
  const auto cert = resolve_monomial_curve(semigroup_from_generators({2, 3}));
  std::vector<std::vector<Ray>> cones;
  for (const auto& c : cert.fan) cones.push_back(c.rays);
  const std::vector<std::vector<Ray>> expected{{{0, 1}, {1, 2}}, {{1, 0}, {1, 1}}, {{1, 1}, {2, 3}}, {{1, 2}, {2, 3}}};
  EXPECT_EQ(cones, expected);
  EXPECT_EQ(cert.fan[cert.chart].rays, (std::vector<Ray>{{1, 1}, {2, 3}}));
  EXPECT_EQ(cert.a, (std::vector<long>{0, 1}));
}

TEST(Resolution, TwoFive) {
  const auto cert = resolve_monomial_curve(semigroup_from_generators({2, 5}));
  EXPECT_EQ(cert.fan[cert.chart].rays, (std::vector<Ray>{{1, 2}, {2, 5}}));
  EXPECT_EQ(cert.a, (std::vector<long>{0, 1}));
}

TEST(Resolution, CertificateInvariants) {
  std::mt19937_64 rng(9);
  for (const auto& gens : std::vector<std::vector<long>>{{2, 3}, {3, 7}, {5, 8}, {4, 6, 13}, {3, 4, 5}, {5, 7, 11}}) {
    const auto cert = resolve_monomial_curve(semigroup_from_generators(gens));
    const std::size_t d = gens.size();
    bool gamma_is_ray = false;
    for (const auto& c : cert.fan) {
      EXPECT_EQ(std::abs(idet(c.rays)), 1);
      for (const auto& r : c.rays)
        for (long x : r) EXPECT_GE(x, 0);
      if (std::find(c.rays.begin(), c.rays.end(), gens) != c.rays.end()) gamma_is_ray = true;
    }
    EXPECT_TRUE(gamma_is_ray);
    const auto& chart = cert.fan[cert.chart].rays;
    EXPECT_EQ(cramer(chart, gens), [&] {
      std::vector<long> a = cert.a;
      for (auto& v : a) v *= idet(chart);
      return a;
    }());
    EXPECT_EQ(std::count(cert.a.begin(), cert.a.end(), 1), 1);
    EXPECT_EQ(std::count(cert.a.begin(), cert.a.end(), 0), static_cast<long>(d) - 1);

    std::uniform_int_distribution<long> coord(1, 1000);
    for (int k = 0; k < 1000; ++k) {
      Ray p(d);
      for (auto& v : p) v = coord(rng);
      int interior = 0, containing = 0;
      for (const auto& c : cert.fan) {
        const long D = idet(c.rays);
        auto lam = cramer(c.rays, p);
        if (D < 0)
          for (auto& v : lam) v = -v;
        if (std::all_of(lam.begin(), lam.end(), [](long v) { return v >= 0; })) {
          ++containing;
          if (std::all_of(lam.begin(), lam.end(), [](long v) { return v > 0; })) ++interior;
        }
      }
      EXPECT_TRUE(interior == 1 ? containing == 1 : (interior == 0 && containing >= 2))
          << "ray " << p[0] << "," << p[1] << " interior " << interior << " containing " << containing;
    }
  }
}

TEST(Resolution, Errors) {
  try {
    resolve_monomial_curve(semigroup_from_generators({5, 6, 7, 8}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionTooLarge);
  }
  try {
    resolve_monomial_curve(semigroup_from_generators({4, 6, 13}), ResolveOptions{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RegularizationBudget);
  }
}

TEST(StrictTransform, CuspMonomialChart) {
  const auto s = semigroup_from_generators({2, 3});
  const auto cert = resolve_monomial_curve(s);
  const std::size_t P = static_cast<std::size_t>(s.conductor + 10);
  const auto rep = verify_strict_transform({series_of({{2, 1}}, P), series_of({{3, 1}}, P)}, cert);
  EXPECT_TRUE(rep.pass) << rep.note;
  EXPECT_EQ(rep.orders, (std::vector<long>{0, 1}));
  EXPECT_EQ(rep.leading_units, (std::vector<Rational>{1, 1}));
  // y1 = x^3 y^-2 = 1, y2 = x^-1 y = t exactly.
  for (std::size_t k = 0; k < rep.precision; ++k) {
    EXPECT_EQ(rep.coordinates[0][k], k == 0 ? 1 : 0);
    EXPECT_EQ(rep.coordinates[1][k], k == 1 ? 1 : 0);
  }
}

TEST(StrictTransform, DeformedCusp) {
  const PlaneBranch b = branch(2, {{3, 1}, {4, 1}});
  const auto s = branch_semigroup(b);
  const auto cert = resolve_monomial_curve(s);
  const auto xi = embedding_series(b, static_cast<std::size_t>(s.conductor + 10));
  const auto rep = verify_strict_transform(xi, cert);
  EXPECT_TRUE(rep.pass) << rep.note;
  EXPECT_EQ(rep.orders, (std::vector<long>{0, 1}));
  // y1 = (1+t)^-2, y2 = t(1+t).
  ASSERT_GE(rep.precision, 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(rep.coordinates[0][k], Rational((k % 2 ? -1 : 1) * static_cast<long>(k + 1)));
  for (std::size_t k = 0; k < rep.precision; ++k) EXPECT_EQ(rep.coordinates[1][k], (k == 1 || k == 2) ? 1 : 0);
}

TEST(StrictTransform, SemirootBranch) {
  const PlaneBranch b = branch(4, {{6, 1}, {7, 1}});
  const auto s = branch_semigroup(b);
  const auto cert = resolve_monomial_curve(s);
  const std::size_t P = static_cast<std::size_t>(s.conductor + 10);
  const auto xi = embedding_series(b, P);
  ASSERT_EQ(xi.size(), 3u);
  // xi_2 = y^2 - x^3 = 2 t^13 + t^14.
  for (std::size_t k = 0; k < P; ++k) EXPECT_EQ(xi[2][k], k == 13 ? 2 : (k == 14 ? 1 : 0));
  const auto rep = verify_strict_transform(xi, cert);
  EXPECT_TRUE(rep.pass) << rep.note;
  EXPECT_EQ(cert.a, (std::vector<long>{0, 0, 1}));
  EXPECT_EQ(rep.orders, cert.a);

  // Orders against a direct evaluation of the chart monomials on the series.
  const auto& V = cert.fan[cert.chart].rays;
  const long D = idet(V);
  for (std::size_t j = 0; j < 3; ++j) {
    // Entry (j, i) of V^-1 is the j-th Cramer coefficient of e_i over D.
    long order = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      Ray ei(3, 0);
      ei[i] = 1;
      order += cramer(V, ei)[j] * s.generators[i];
    }
    EXPECT_EQ(order / D, rep.orders[j]);
  }
}

TEST(StrictTransform, MonomialCurvesHaveUnitCoordinates) {
  for (const auto& gens : std::vector<std::vector<long>>{{2, 3}, {2, 5}, {3, 4}, {5, 7}, {4, 6, 13}, {3, 4, 5}, {5, 7, 11}}) {
    const auto s = semigroup_from_generators(gens);
    const auto cert = resolve_monomial_curve(s);
    const std::size_t P = static_cast<std::size_t>(std::max(s.conductor, gens.back()) + 10);
    std::vector<Series> xi;
    for (long g : gens) xi.push_back(Series::monomial(P, g, Rational(1)));
    const auto rep = verify_strict_transform(xi, cert);
    EXPECT_TRUE(rep.pass) << s.to_string() << ": " << rep.note;
    EXPECT_EQ(rep.orders, cert.a);
    for (const auto& u : rep.leading_units) EXPECT_EQ(u, 1);
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t k = 0; k < rep.precision; ++k)
        EXPECT_EQ(rep.coordinates[j][k], static_cast<long>(k) == cert.a[j] ? 1 : 0);
  }
}

TEST(StrictTransform, Errors) {
  const auto s = semigroup_from_generators({2, 3});
  const auto cert = resolve_monomial_curve(s);
  try {
    verify_strict_transform({series_of({{2, 1}}, 4), series_of({{3, 1}}, 4)}, cert);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationInsufficient);
  }
  try {
    verify_strict_transform({series_of({{3, 1}}, 12), series_of({{2, 1}}, 12)}, cert);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderMismatch);
  }
}

TEST(Overweight, Weights) {
  const auto ring = toric_ring(3);
  const std::vector<long> w{4, 6, 13};
  EXPECT_EQ(weight(parse_polynomial("U1^2 - U0^3", ring), w), 12);
  EXPECT_EQ(weight(Polynomial(ring), w), std::nullopt);
  EXPECT_EQ(weight(parse_polynomial("U2 + U0*U1", ring), w), 10);
}

TEST(Overweight, Verdicts) {
  const auto ring = toric_ring(3);
  const std::vector<long> w{4, 6, 13};
  const auto binom = parse_polynomial("U1^2 - U0^3", ring);
  const auto v = overweight_check(w,
                                  {parse_polynomial("U1^2 - U0^3 + U2", ring), parse_polynomial("U1^2 - U0^3 + U0", ring),
                                   parse_polynomial("U1^2 - U0^3", ring)},
                                  {binom, binom, binom});
  ASSERT_EQ(v.size(), 3u);
  EXPECT_TRUE(v[0].pass);
  EXPECT_FALSE(v[1].pass);
  EXPECT_EQ(v[1].initial, parse_polynomial("U0", ring));
  EXPECT_EQ(v[1].weight, 4);
  EXPECT_TRUE(v[2].pass);
}

TEST(Overweight, PassIgnoresCoefficients) {
  const auto ring = toric_ring(3);
  const std::vector<long> w{4, 6, 13};
  const auto binom = parse_polynomial("U1^2 - U0^3", ring);
  const std::vector<std::string> extras{"U2", "U0*U2", "U1^3", "U2^2", "U0^4"};
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial s = binom;
    for (const auto& e : extras) {
      long n = 0;
      while (n == 0) n = num(rng);
      s += ratio(n, den(rng)) * parse_polynomial(e, ring);
    }
    EXPECT_TRUE(overweight_check(w, {s}, {binom})[0].pass) << s.to_string();
  }
}
