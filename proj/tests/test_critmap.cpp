#include <gtest/gtest.h>

#include "singlab/critmap.hpp"
#include "singlab/parse.hpp"

using namespace singlab;

namespace {

Unfolding U(const char* germ) { return unfold(parse_polynomial(germ)); }
Polynomial P(const Unfolding& u, const char* s) { return parse_polynomial(s, u.ring); }

}  // namespace

TEST(CriticalSystem, Cusp) {
  auto u = U("z^3");
  auto cs = critical_system(u);
  ASSERT_EQ(cs.equations.size(), 1u);
  EXPECT_EQ(cs.equations[0], P(u, "3*z^2 + t1"));
  ASSERT_EQ(cs.chart_map.size(), 1u);
  EXPECT_EQ(cs.chart_map[0], P(u, "-3*z^2"));
}

TEST(CriticalSystem, Swallowtail) {
  auto u = U("z^4");
  auto cs = critical_system(u);
  EXPECT_EQ(cs.equations[0], P(u, "4*z^3 + 2*t2*z + t1"));
  ASSERT_EQ(cs.chart_map.size(), 2u);
  EXPECT_EQ(cs.chart_map[0], P(u, "-4*z^3 - 2*t2*z"));
  EXPECT_EQ(cs.chart_map[1], P(u, "t2"));
}

TEST(CriticalSystem, SumOfCubes) {
  auto u = U("z^3 + w^3");
  auto cs = critical_system(u);
  EXPECT_EQ(cs.equations[0], P(u, "3*z^2 + t1 + t3*w"));
  EXPECT_EQ(cs.equations[1], P(u, "3*w^2 + t2 + t3*z"));
  ASSERT_EQ(cs.chart_map.size(), 3u);
  EXPECT_EQ(cs.chart_map[0], P(u, "-3*z^2 - t3*w"));
  EXPECT_EQ(cs.chart_map[1], P(u, "-3*w^2 - t3*z"));
  EXPECT_EQ(cs.chart_map[2], P(u, "t3"));
}

TEST(CriticalSystem, RequiresOrderThree) {
  auto u = U("z^2");
  EXPECT_THROW((void)critical_system(u), Error);
}

TEST(JacobianIdentity, WorkedExamples) {
  {
    auto u = U("z^3");
    auto id = verify_jacobian_identity(u);
    EXPECT_TRUE(id.holds);
    EXPECT_EQ(id.jacobian, P(u, "-6*z"));
  }
  {
    auto u = U("z^4");
    auto id = verify_jacobian_identity(u);
    EXPECT_TRUE(id.holds);
    EXPECT_EQ(id.jacobian, P(u, "-(12*z^2 + 2*t2)"));
  }
  {
    auto u = U("z^3 + w^3");
    auto id = verify_jacobian_identity(u);
    EXPECT_TRUE(id.holds);
    EXPECT_EQ(id.jacobian, P(u, "36*z*w - t3^2"));
    EXPECT_EQ(hessian(u).h, P(u, "36*z*w - t3^2"));
  }
}

TEST(JacobianIdentity, HoldsOnCorpus) {
  for (const char* germ : {"z^3", "z^4", "z^5", "z^6", "z^7", "z^3 + w^3", "z^3 + w^4", "z^2*w + w^4"}) {
    auto u = U(germ);
    auto id = require_jacobian_identity(u);
    EXPECT_TRUE(id.holds) << germ;
    EXPECT_FALSE(id.jacobian.is_zero()) << germ;
  }
}

TEST(HessianData, SymmetricAndDeterminant) {
  auto u = U("z^3 + w^4");
  auto hd = hessian(u);
  ASSERT_EQ(hd.H.size(), 2u);
  EXPECT_EQ(hd.H[0][1], hd.H[1][0]);
  EXPECT_EQ(hd.h, hd.H[0][0] * hd.H[1][1] - hd.H[0][1] * hd.H[1][0]);
}

TEST(SignRelation, Examples) {
  EXPECT_TRUE(sign_relation_check(Rational(6), 0, 1));
  EXPECT_TRUE(sign_relation_check(Rational(-6), 1, 1));
  EXPECT_FALSE(sign_relation_check(Rational(5), 1, 2));
  EXPECT_TRUE(sign_relation_check(Rational(-5), 1, 2));
  EXPECT_TRUE(sign_relation_check(Rational(5), 2, 2));
}

TEST(SignRelation, DegenerateRejected) {
  try {
    (void)sign_relation_check(Rational(0), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePoint);
  }
}
