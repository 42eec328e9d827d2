#include <gtest/gtest.h>

#include "loccoh/algebra.hpp"
#include "loccoh/cech.hpp"
#include "loccoh/expr.hpp"

namespace loccoh {
namespace {

const Field Q = Field::rational();

using Dims = std::vector<std::size_t>;

TEST(BareissRank, SmallMatrices) {
  EXPECT_EQ(bareiss_rank(DenseMatrix<std::int64_t>{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(bareiss_rank(DenseMatrix<std::int64_t>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 3u);
  EXPECT_EQ(bareiss_rank(DenseMatrix<std::int64_t>{{0, 0}, {0, 0}}), 0u);
  EXPECT_EQ(bareiss_rank(DenseMatrix<std::int64_t>{}), 0u);
}

TEST(CechPiece, IdentityLocalizationIsAcyclic) {
  EXPECT_EQ(cech_dims_at_degree(2, 1, {0, 0}), (Dims{0, 0}));
}

TEST(CechPiece, NegativeDegreeOnlyInLocalization) {
  EXPECT_EQ(cech_dims_at_degree(2, 1, {-1, 0}), (Dims{0, 1}));
  EXPECT_EQ(cech_dims_at_degree(2, 1, {-2, 3}), (Dims{0, 1}));
  EXPECT_EQ(cech_dims_at_degree(2, 1, {-1, -1}), (Dims{0, 0}));
}

TEST(CechPiece, ThreeVariablesTwoInverted) {
  const CechDegreePiece piece = build_cech_piece(3, 2, {-1, -1, 0});
  EXPECT_EQ(piece.dim(0), 0u);
  EXPECT_EQ(piece.dim(1), 0u);
  EXPECT_EQ(piece.dim(2), 1u);
  EXPECT_TRUE(piece.composes_to_zero());
  EXPECT_EQ(piece.cohomology_dims(), (Dims{0, 0, 1}));
}

TEST(CechPiece, FullComplexAtZeroDegree) {
  const CechDegreePiece piece = build_cech_piece(3, 3, {0, 0, 0});
  EXPECT_EQ(piece.dim(0), 1u);
  EXPECT_EQ(piece.dim(1), 3u);
  EXPECT_EQ(piece.dim(2), 3u);
  EXPECT_EQ(piece.dim(3), 1u);
  EXPECT_TRUE(piece.composes_to_zero());
  EXPECT_EQ(piece.cohomology_dims(), (Dims{0, 0, 0, 0}));
}

TEST(CechPiece, RejectsBadIndices) {
  EXPECT_THROW(build_cech_piece(2, 3, {0, 0}), Error);
  EXPECT_THROW(build_cech_piece(2, 1, {0}), Error);
}

TEST(Realization, TwoVariablesWindowThree) {
  const auto result = verify_realization(2, 1, TruncationBox::uniform(2, 3));
  EXPECT_TRUE(result.pass);
  EXPECT_EQ(result.table.dims.size(), 49u);
  EXPECT_EQ(result.table.nonzero_top_degrees(), 12u);
}

TEST(Realization, OneVariable) {
  const auto result = verify_realization(1, 1, TruncationBox::uniform(1, 2));
  EXPECT_TRUE(result.pass);
  for (std::int64_t a = -2; a <= 2; ++a) {
    EXPECT_EQ(result.table.dims.at({a})[1], a < 0 ? 1u : 0u) << "a = " << a;
  }
}

TEST(Realization, PredictedSupport) {
  EXPECT_TRUE(realization_predicts_class(1, {-1, 0}));
  EXPECT_FALSE(realization_predicts_class(1, {0, 0}));
  EXPECT_FALSE(realization_predicts_class(1, {-1, -1}));
  EXPECT_TRUE(realization_predicts_class(2, {-3, -1, 4}));
}

TEST(IdentifyBasis, UnitShift) {
  const TruncationBox box = TruncationBox::uniform(2, 4);
  EXPECT_EQ(serialize_element(identify_basis(2, 1, {-1, 0}, Q, box)), "1");
  EXPECT_EQ(identify_basis(2, 1, {-3, 2}, Q, box),
            Element::monomial(Q, ModuleShape::local_cohomology(2, 1), box, {-2, 2}));
  EXPECT_EQ(identify_basis(3, 2, {-2, -1, 4}, Q, TruncationBox::uniform(3, 4)),
            Element::monomial(Q, ModuleShape::local_cohomology(3, 2), TruncationBox::uniform(3, 4), {-1, 0, 4}));
  EXPECT_THROW(identify_basis(2, 1, {0, 0}, Q, box), PreconditionError);
}

TEST(IdentifyBasis, PowerThatKillsTheClass) {
  const TruncationBox box = TruncationBox::uniform(2, 4);
  const Element m = identify_basis(2, 1, {-3, 2}, Q, box);
  EXPECT_TRUE(ring_act(ring_variable(Q, box, 0, 3), m).is_zero());
  EXPECT_FALSE(ring_act(ring_variable(Q, box, 0, 2), m).is_zero());
  EXPECT_EQ(cech_multiplication_rank(2, 1, {-3, 2}, 0, 1), 1u);
  EXPECT_EQ(cech_multiplication_rank(2, 1, {-1, 2}, 0, 1), 0u);
}

TEST(IdentifyBasis, EquivariantWithRingAction) {
  const std::size_t n = 3, i = 2;
  const TruncationBox box = TruncationBox::uniform(n, 5);
  for (const auto& label : enumerate_box(ModuleShape::local_cohomology(n, i), TruncationBox::uniform(n, 3))) {
    ExponentVector deg = label;
    for (std::size_t j = 0; j < i; ++j) deg[j] -= 1;
    const Element m = identify_basis(n, i, deg, Q, box);
    for (std::size_t j = 0; j < n; ++j) {
      ExponentVector up = deg;
      up[j] += 1;
      const bool survives = cech_multiplication_rank(n, i, deg, j, i) == 1;
      const Element image = ring_act(ring_variable(Q, box, j), m);
      EXPECT_EQ(survives, !image.is_zero());
      if (survives) {
        EXPECT_EQ(image, identify_basis(n, i, up, Q, box));
      }
    }
  }
}

} // namespace
} // namespace loccoh
