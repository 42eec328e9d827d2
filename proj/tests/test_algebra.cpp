#include <gtest/gtest.h>

#include "loccoh/algebra.hpp"
#include "loccoh/expr.hpp"
#include "loccoh/independence.hpp"

namespace loccoh {
namespace {

const Field Q = Field::rational();

Element parse(std::string_view text, const ModuleShape& shape, std::int64_t bound) {
  return parse_element(text, Q, shape, TruncationBox::uniform(shape.size(), bound));
}

Element parse_xy(std::string_view text, const ModuleShape& shape, const TruncationBox& box) {
  return parse_element(text, Q, shape, box, xy_names());
}

TEST(Element, RejectsWrongSignsAndBoxes) {
  Element e(Q, ModuleShape::injective_hull(1), TruncationBox::uniform(1, 2));
  EXPECT_THROW(e.add_term({1}, Scalar::one(Q)), RoleViolation);
  EXPECT_THROW(e.add_term({-3}, Scalar::one(Q)), OutOfBox);
  EXPECT_THROW(e.add_term({0, 0}, Scalar::one(Q)), ShapeMismatch);
  e.add_or_truncate({-3}, Scalar::one(Q));
  EXPECT_TRUE(e.is_zero());
  EXPECT_FALSE(e.exact());
}

TEST(LinearCombine, Examples) {
  const ModuleShape r = ModuleShape::ring(1);
  const Element x = parse("X1", r, 3);
  const Scalar one = Scalar::one(Q);
  EXPECT_EQ(linear_combine({{one, x}}), x);
  EXPECT_TRUE(linear_combine({{one, x}, {-one, x}}).is_zero());
  EXPECT_EQ(linear_combine({{Scalar::from_integer(Q, 2), x}, {Scalar::from_integer(Q, 3), x}}), parse("5*X1", r, 3));
}

TEST(LinearCombine, RejectsMixedModules) {
  const Scalar one = Scalar::one(Q);
  const Element a = parse("X1", ModuleShape::ring(1), 3);
  const Element b = parse("X1^-1", ModuleShape::injective_hull(1), 3);
  EXPECT_THROW(linear_combine({{one, a}, {one, b}}), ShapeMismatch);
  EXPECT_THROW(linear_combine(std::span<const WeightedElement>{}), Error);
}

TEST(RingAct, KillRuleInInjectiveHull) {
  const ModuleShape e1 = ModuleShape::injective_hull(1);
  const Element x = parse("X1", ModuleShape::ring(1), 3);
  const Element killed = ring_act(x, parse("1", e1, 3));
  EXPECT_TRUE(killed.is_zero());
  EXPECT_TRUE(killed.exact());
  EXPECT_EQ(ring_act(x, parse("X1^-1", e1, 3)), parse("1", e1, 3));
}

TEST(RingAct, YTimesD2DropsConstantTerm) {
  const Element d2 = make_d(Q, 2, 5);
  const Element y = parse_xy("Y", ModuleShape::ring(2), d2.box());
  const Element expected =
      parse_xy("Y^0*X + Y^-3*X^2 + Y^-8*X^3 + Y^-15*X^4 + Y^-24*X^5", dual_shape_xy(), d2.box());
  const Element got = ring_act(y, d2);
  EXPECT_EQ(got, expected);
  EXPECT_TRUE(got.exact());
}

TEST(RingAct, SeriesOverflowClearsExactness) {
  const ModuleShape r = ModuleShape::ring(1);
  const Element got = ring_act(parse("X1^2", r, 2), parse("1 + X1", r, 2));
  EXPECT_EQ(got, parse("X1^2", r, 2));
  EXPECT_FALSE(got.exact());
}

TEST(RingAct, RequiresRingOperand) {
  const Element m = parse("X1^-1", ModuleShape::injective_hull(1), 2);
  EXPECT_THROW(ring_act(m, m), RoleViolation);
}

TEST(DerivationAct, SeriesVariable) {
  const ModuleShape r = ModuleShape::ring(1);
  EXPECT_EQ(derivation_act(0, parse("X1^2", r, 3)), parse("2*X1", r, 3));
  EXPECT_TRUE(derivation_act(0, parse("7", r, 3)).is_zero());
}

TEST(DerivationAct, InverseVariableUsesShiftedExponent) {
  const ModuleShape e2 = ModuleShape::injective_hull(2);
  const TruncationBox box = TruncationBox::uniform(2, 4);
  EXPECT_EQ(derivation_act(1, parse_xy("Y^-3", e2, box)), parse_xy("-4*Y^-4", e2, box));
  EXPECT_EQ(derivation_act(1, parse_xy("1", e2, box)), parse_xy("-Y^-1", e2, box));
}

TEST(DerivationAct, DerivativeOfD2) {
  const Element d2 = make_d(Q, 2, 3);
  const Element expected = parse_xy("Y^-1 + 2*Y^-4*X + 3*Y^-9*X^2", dual_shape_xy(), d2.box());
  EXPECT_EQ(derivation_act(0, d2), expected);
}

TEST(DerivationAct, WeylBracketOnInverseVariable) {
  const ModuleShape e1 = ModuleShape::injective_hull(1);
  const TruncationBox box = TruncationBox::uniform(1, 5);
  const Element x = ring_variable(Q, box, 0);
  for (int k = 0; k <= 4; ++k) {
    const Element m = Element::monomial(Q, e1, box, {-k});
    const Element bracket = derivation_act(0, ring_act(x, m)) - ring_act(x, derivation_act(0, m));
    EXPECT_EQ(bracket, m) << "k = " << k;
  }
}

TEST(QuotientBySeriesVar, Examples) {
  const ModuleShape r = ModuleShape::ring(2);
  const Element q = quotient_by_series_var(0, parse("1 + X1*X2", r, 3));
  EXPECT_EQ(q, parse("1", ModuleShape::ring(1), 3));
  EXPECT_TRUE(quotient_by_series_var(0, parse("X1^2", r, 3)).is_zero());
  const Element d2 = make_d(Q, 2, 6);
  const Element reduced = quotient_by_series_var(0, d2);
  EXPECT_EQ(reduced.shape(), ModuleShape::injective_hull(1));
  EXPECT_EQ(serialize_element(reduced), "1");
  EXPECT_THROW(quotient_by_series_var(1, d2), RoleViolation);
}

} // namespace
} // namespace loccoh
