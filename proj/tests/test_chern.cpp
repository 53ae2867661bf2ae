#include <gtest/gtest.h>

#include <random>

#include "chainstab/charge.hpp"
#include "chainstab/chern.hpp"
#include "oracles.hpp"

using namespace chainstab;

namespace {

SurfaceModel a1() { return SurfaceModel(2, {ExcComponent::ade(parse_ade_label("A1"))}); }
SurfaceModel chain33() { return SurfaceModel(1, {ExcComponent::chain({-3, -3})}); }
SurfaceModel mixed() {
  return SurfaceModel(Rational(5, 2), {ExcComponent::chain({-1}), ExcComponent::chain({-3, -3, -4}),
                                       ExcComponent::ade(parse_ade_label("A3"))});
}

const CurveId c11{0, 0};

}  // namespace

TEST(Twist, Examples) {
  const auto m = a1();
  const auto beta = DivisorClass::curve(c11, Rational(1, 4));
  const ChernCharacter one(1, DivisorClass{}, 0);
  EXPECT_EQ(twist(one, beta, m), ChernCharacter(1, -beta, Rational(-1, 16)));
  std::mt19937_64 rng(1);
  const auto v = oracle::random_class(rng, m);
  EXPECT_EQ(twist(v, DivisorClass{}, m), v);
  EXPECT_EQ(twist(class_of_point(), beta, m), class_of_point());
}

TEST(Twist, CompositionAndInverse) {
  const auto m = mixed();
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto v = oracle::random_class(rng, m);
    const auto b1 = oracle::random_divisor(rng, m), b2 = oracle::random_divisor(rng, m);
    EXPECT_EQ(twist(twist(v, b1, m), b2, m), twist(v, b1 + b2, m));
    EXPECT_EQ(twist(twist(v, b1, m), -b1, m), v);
  }
}

TEST(Twist, DiscriminantIsInvariant) {
  const auto m = mixed();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto v = oracle::random_class(rng, m);
    const auto t = twist(v, oracle::random_divisor(rng, m), m);
    EXPECT_EQ(self_intersection(t.d, m) - 2 * Rational(t.r) * t.c, self_intersection(v.d, m) - 2 * Rational(v.r) * v.c);
  }
}

TEST(CurveBundle, Examples) {
  const auto m = a1();
  EXPECT_EQ(class_of_point(), ChernCharacter(0, DivisorClass{}, 1));
  EXPECT_EQ(class_of_curve_bundle(c11, 0, m), ChernCharacter(0, DivisorClass::curve(c11), 1));
  const SurfaceModel minus_one(1, {ExcComponent::chain({-1})});
  EXPECT_EQ(class_of_curve_bundle(c11, -1, minus_one), ChernCharacter(0, DivisorClass::curve(c11), Rational(-1, 2)));
  EXPECT_EQ(class_of_curve_sheaf(c11, 3, 5, m), ChernCharacter(0, DivisorClass::curve(c11, 3), 8));
  EXPECT_THROW(class_of_curve_bundle(CurveId{0, 1}, 0, m), ConfigurationError);
  EXPECT_THROW(class_of_curve_bundle(CurveId{2, 0}, 0, m), ConfigurationError);
}

TEST(CurveBundle, RealChargeClosedForm) {
  const auto m = mixed();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> deg(-6, 6);
  for (int i = 0; i < 200; ++i) {
    const auto beta = oracle::random_divisor(rng, m);
    for (const auto& id : m.curves()) {
      const Integer d = deg(rng);
      const auto z = central_charge(class_of_curve_bundle(id, d, m), beta, DivisorClass::pullback(1), m);
      const auto curve = DivisorClass::curve(id);
      EXPECT_EQ(z.re, -(Rational(d) - oracle::dot(m, curve, curve) / 2) + oracle::dot(m, beta, curve));
      EXPECT_EQ(z.im, Rational(0));
    }
  }
}

TEST(ChainBundle, Examples) {
  const auto m = chain33();
  EXPECT_EQ(class_of_chain_bundle(0, 0, 1, {0, 0}, m), ChernCharacter(0, m.subchain(0, 0, 1), 2));
  const SurfaceModel a2(1, {ExcComponent::ade(parse_ade_label("A2"))});
  EXPECT_EQ(class_of_chain_bundle(0, 0, 1, {-1, -1}, a2), ChernCharacter(0, a2.subchain(0, 0, 1), -1));
  EXPECT_EQ(class_of_chain_bundle(0, 1, 1, {4}, m), class_of_curve_bundle(CurveId{0, 1}, 4, m));
  EXPECT_THROW(class_of_chain_bundle(0, 0, 1, {0}, m), UsageError);
  EXPECT_THROW(class_of_chain_bundle(0, 1, 0, {0, 0}, m), UsageError);
  const SurfaceModel d4(1, {ExcComponent::ade(parse_ade_label("D4"))});
  // curves 2 and 3 of D4 are both legs of the fork and do not meet
  EXPECT_THROW(class_of_chain_bundle(0, 1, 2, {0, 0}, d4), UsageError);
}

TEST(ChainBundle, MatchesRiemannRochOracle) {
  const auto m = mixed();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(-5, 5);
  for (int comp = 0; comp < 3; ++comp) {
    const int r = m.component(comp).size();
    for (int j = 0; j < r; ++j)
      for (int jj = j; jj < r; ++jj)
        for (int trial = 0; trial < 10; ++trial) {
          std::vector<Integer> degrees;
          Integer total = 0;
          for (int a = j; a <= jj; ++a) {
            degrees.push_back(deg(rng));
            total += degrees.back();
          }
          const auto v = class_of_chain_bundle(comp, j, jj, degrees, m);
          EXPECT_EQ(v.c, oracle::chain_bundle_ch2(m, m.subchain(comp, j, jj), total));
          EXPECT_EQ(v.r, 0);
          EXPECT_EQ(v.d, m.subchain(comp, j, jj));
        }
  }
}

TEST(ChainBundle, GluingIsAdditiveInCh1) {
  const auto m = mixed();
  const auto left = class_of_chain_bundle(1, 0, 0, {2}, m);
  const auto right = class_of_chain_bundle(1, 1, 2, {-1, 3}, m);
  const auto whole = class_of_chain_bundle(1, 0, 2, {2, -1, 3}, m);
  EXPECT_EQ(left.d + right.d, whole.d);
  // gluing along one node drops chi by one
  EXPECT_EQ(left.c + right.c - 1, whole.c);
}

TEST(HrrPairing, Examples) {
  const SurfaceModel m3(1, {ExcComponent::chain({-3})});
  EXPECT_EQ(hrr_chain_pairing(0, 0, 0, {0}, class_of_point(), m3), Rational(0));
  EXPECT_EQ(hrr_chain_pairing(0, 0, 0, {-1}, ChernCharacter(1, DivisorClass{}, 0), m3), Rational(1));
  const auto m2 = a1();
  EXPECT_EQ(hrr_chain_pairing(0, 0, 0, {0}, ChernCharacter(0, DivisorClass::curve(c11), 5), m2), Rational(2));
  EXPECT_THROW(hrr_chain_pairing(0, 0, 0, {0, 1}, class_of_point(), m2), UsageError);
}

TEST(HrrPairing, MatchesEulerPairingOracle) {
  // chi(F, E) from the Todd class, F the chain bundle with degrees k
  const auto m = mixed();
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> kd(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int comp = trial % 2 ? 1 : 2;
    const int r = m.component(comp).size();
    const int j = trial % r, jj = std::min(r - 1, j + trial % 3);
    std::vector<Integer> k;
    for (int a = j; a <= jj; ++a) k.push_back(kd(rng));
    const auto f = class_of_chain_bundle(comp, j, jj, k, m);
    const auto e = oracle::random_class(rng, m);
    EXPECT_EQ(hrr_chain_pairing(comp, j, jj, k, e, m), oracle::euler_pairing_torsion(m, f.d, f.c, e));
  }
}

TEST(ChernText, RoundTrip) {
  const auto m = mixed();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto v = oracle::random_class(rng, m);
    EXPECT_EQ(parse_chern(to_string(v)), v);
  }
  EXPECT_EQ(parse_chern("(0;f*eta;0)"), ChernCharacter(0, DivisorClass::pullback(1), 0));
  EXPECT_EQ(to_string(ChernCharacter(1, DivisorClass::pullback(1), 1)), "(1;1/1*f*eta+0C;1/1)");
  EXPECT_THROW(parse_chern("(1/2;0;0)"), ConfigurationError);
  EXPECT_THROW(parse_chern("(1;0)"), ConfigurationError);
  EXPECT_THROW(parse_chern("1;0;0"), ConfigurationError);
}
