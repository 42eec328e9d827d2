#include <gtest/gtest.h>

#include "loccoh/duality.hpp"
#include "loccoh/expr.hpp"
#include "loccoh/independence.hpp"

namespace loccoh {
namespace {

const Field Q = Field::rational();

const ModuleShape kD = ModuleShape::dual_local_cohomology(2, 1);
const ModuleShape kH = ModuleShape::local_cohomology(2, 1);

Element xy(std::string_view text, const ModuleShape& shape, std::int64_t bound = 4) {
  return parse_element(text, Q, shape, TruncationBox::uniform(shape.size(), bound), xy_names());
}

TEST(DualShape, FlipsEveryRole) {
  EXPECT_EQ(dual_shape(ModuleShape::ring(3)), ModuleShape::injective_hull(3));
  EXPECT_EQ(dual_shape(kH), kD);
  EXPECT_EQ(kD.code(), "SI");
}

TEST(MatlisPair, MonomialRule) {
  const Element socle = matlis_pair(xy("Y^-3*X^2", kD), xy("X^-2*Y^3", kH));
  EXPECT_EQ(serialize_element(socle, xy_names()), "1");
  EXPECT_EQ(socle.shape(), ModuleShape::injective_hull(2));
  EXPECT_TRUE(matlis_pair(xy("X", kD), xy("Y^3", kH)).is_zero());
  EXPECT_EQ(serialize_element(matlis_pair(xy("1", kD), xy("1", kH)), xy_names()), "1");
  EXPECT_EQ(serialize_element(matlis_pair(xy("Y^-1*X", kD), xy("X^-3", kH)), xy_names()), "X^-2*Y^-1");
}

TEST(MatlisPair, SocleFunctional) {
  EXPECT_EQ(socle_functional(xy("Y^-3*X^2", kD), xy("X^-2*Y^3", kH)), Scalar::one(Q));
  EXPECT_TRUE(socle_functional(xy("Y^-3*X^2", kD), xy("X^-1*Y^3", kH)).is_zero());
}

TEST(MatlisPair, RejectsNonDualShapes) {
  EXPECT_THROW(matlis_pair(xy("X", ModuleShape::ring(2)), xy("X", ModuleShape::ring(2))), ShapeMismatch);
}

TEST(PairingPerfection, TwoVariablesIsANineByNinePermutation) {
  const auto report = pairing_perfection_check(Q, 2, 1, TruncationBox::uniform(2, 2));
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.dual_count, 9u);
  EXPECT_EQ(report.primal_count, 9u);
  std::vector<std::int64_t> sorted = report.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (std::int64_t k = 0; k < 9; ++k) EXPECT_EQ(sorted[static_cast<std::size_t>(k)], k);
}

TEST(PairingPerfection, OneVariable) {
  const auto report = pairing_perfection_check(Q, 1, 1, TruncationBox::uniform(1, 1));
  EXPECT_TRUE(report.pass);
  ASSERT_EQ(report.permutation.size(), 2u);
  const auto duals = monomial_basis(Q, ModuleShape::dual_local_cohomology(1, 1), TruncationBox::uniform(1, 1));
  const auto primals = monomial_basis(Q, ModuleShape::local_cohomology(1, 1), TruncationBox::uniform(1, 1));
  for (std::size_t a = 0; a < 2; ++a) {
    const auto b = static_cast<std::size_t>(report.permutation[a]);
    EXPECT_EQ(duals[a].terms().begin()->first[0], -primals[b].terms().begin()->first[0]);
  }
}

TEST(PairingPerfection, ZeroElementDoesNotChangeVerdict) {
  const TruncationBox box = TruncationBox::uniform(2, 2);
  auto duals = monomial_basis(Q, kD, box);
  auto primals = monomial_basis(Q, kH, box);
  duals.push_back(Element(Q, kD, box));
  primals.insert(primals.begin(), Element(Q, kH, box));
  EXPECT_TRUE(pairing_perfection_check(duals, primals).pass);
  duals.pop_back();
  duals.pop_back();
  EXPECT_FALSE(pairing_perfection_check(duals, primals).pass);
}

TEST(Surjectivity, Witnesses) {
  const ModuleShape e2 = ModuleShape::injective_hull(2);
  const auto w = tensor_surjectivity_witness(xy("X^-2*Y^-3", e2), 2, 1);
  EXPECT_EQ(w.primal, xy("X^-2", kH));
  EXPECT_EQ(w.dual, xy("Y^-3", kD));
  const auto unit = tensor_surjectivity_witness(xy("1", e2), 2, 1);
  EXPECT_EQ(serialize_element(unit.primal), "1");
  EXPECT_EQ(serialize_element(unit.dual), "1");

  const TruncationBox box = TruncationBox::uniform(3, 3);
  const Element target = Element::monomial(Q, ModuleShape::injective_hull(3), box, {-1, 0, -2});
  const auto w3 = tensor_surjectivity_witness(target, 3, 2);
  EXPECT_EQ(w3.primal, Element::monomial(Q, ModuleShape::local_cohomology(3, 2), box, {-1, 0, 0}));
  EXPECT_EQ(w3.dual, Element::monomial(Q, ModuleShape::dual_local_cohomology(3, 2), box, {0, 0, -2}));
  EXPECT_EQ(matlis_pair(w3.dual, w3.primal), target);
}

TEST(Torsion, Examples) {
  const ModuleShape e2 = ModuleShape::injective_hull(2);
  const std::vector<std::size_t> both{0, 1}, x_only{0}, y_only{1};
  EXPECT_TRUE(is_torsion(xy("X^-2*Y^-1 + 3*Y^-4", e2), both));
  EXPECT_FALSE(is_torsion(xy("1", kD), x_only));
  EXPECT_TRUE(is_torsion(Element(Q, kD, TruncationBox::uniform(2, 4)), x_only));
  EXPECT_TRUE(is_torsion(xy("Y^-2 + X*Y^-1", kD), y_only));
  EXPECT_THROW(is_torsion(xy("1", kD), std::vector<std::size_t>{}), PreconditionError);
}

TEST(Torsion, DefaultBoundSuffices) {
  const ModuleShape e2 = ModuleShape::injective_hull(2);
  const std::vector<std::size_t> both{0, 1};
  EXPECT_TRUE(is_torsion(xy("X^-1*Y^-1", e2, 1), both));
}

TEST(Torsion, TruncatedInputIsNotDecided) {
  Element e = xy("Y^-1", kD);
  e.set_exact(false);
  EXPECT_THROW(is_torsion(e, std::vector<std::size_t>{1}), PreconditionError);
}

TEST(Gamma, ClosedForm) {
  const std::vector<std::size_t> first{0}, second{1};
  EXPECT_EQ(gamma_of_shape(ModuleShape::injective_hull(3), std::vector<std::size_t>{0, 1, 2}), GammaResult::full);
  EXPECT_EQ(gamma_of_shape(ModuleShape::ring(2), first), GammaResult::zero);
  EXPECT_EQ(gamma_of_shape(kD, second), GammaResult::full);
  EXPECT_EQ(gamma_of_shape(kD, first), GammaResult::zero);
}

TEST(Regularity, TwoVariables) {
  const auto report = regular_on_dual_check(Q, 2, 1, TruncationBox::uniform(2, 4));
  EXPECT_TRUE(report.pass);
  ASSERT_EQ(report.steps.size(), 1u);
  EXPECT_EQ(report.steps[0].kernel_dim, 0u);
  EXPECT_EQ(report.quotient_shape, ModuleShape::injective_hull(1));
  EXPECT_TRUE(report.quotient_is_hull);
  EXPECT_EQ(report.quotient_size, 5u);
}

TEST(Regularity, ThreeVariables) {
  const auto report = regular_on_dual_check(Q, 3, 2, TruncationBox::uniform(3, 3));
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.steps.size(), 2u);
  EXPECT_EQ(report.quotient_shape, ModuleShape::injective_hull(1));
}

TEST(Regularity, RejectsIndexOutOfRange) {
  EXPECT_THROW(regular_on_dual_check(Q, 2, 0, TruncationBox::uniform(2, 2)), PreconditionError);
  EXPECT_THROW(regular_on_dual_check(Q, 2, 3, TruncationBox::uniform(2, 2)), Error);
}

} // namespace
} // namespace loccoh
