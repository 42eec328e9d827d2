#include <gtest/gtest.h>

#include "loccoh/scalar.hpp"
#include "loccoh/shape.hpp"

namespace loccoh {
namespace {

TEST(Field, ParsesDescriptors) {
  EXPECT_TRUE(Field::parse("rational").is_rational());
  const Field f = Field::parse("prime:7");
  EXPECT_FALSE(f.is_rational());
  EXPECT_EQ(f.modulus(), 7u);
  EXPECT_EQ(f.descriptor(), "prime:7");
  EXPECT_THROW(Field::parse("prime:8"), PreconditionError);
  EXPECT_THROW(Field::parse("complex"), Error);
}

TEST(Scalar, RationalArithmeticIsExact) {
  const Field q = Field::rational();
  const Scalar a = Scalar::parse(q, "3/4"), b = Scalar::parse(q, "-1/6");
  EXPECT_EQ((a + b).to_string(), "7/12");
  EXPECT_EQ((a * b).to_string(), "-1/8");
  EXPECT_EQ((a / b).to_string(), "-9/2");
  EXPECT_EQ(Scalar::parse(q, "4/2").to_string(), "2");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_THROW(Scalar::parse(q, "1/0"), Error);
}

TEST(Scalar, PrimeFieldReducesResidues) {
  const Field f = Field::prime(5);
  EXPECT_EQ(Scalar::from_integer(f, 7).to_string(), "2");
  EXPECT_EQ(Scalar::from_integer(f, -1).to_string(), "4");
  EXPECT_EQ(Scalar::parse(f, "1/2").to_string(), "3");
  EXPECT_TRUE((Scalar::from_integer(f, 2) * Scalar::from_integer(f, 3) - Scalar::one(f)).is_zero());
  EXPECT_THROW(Scalar::parse(f, "1/5"), Error);
}

TEST(Scalar, MixingFieldsThrows) {
  const Scalar a = Scalar::one(Field::rational());
  const Scalar b = Scalar::one(Field::prime(3));
  EXPECT_THROW(a + b, ShapeMismatch);
}

TEST(ModuleShape, StandardShapes) {
  EXPECT_EQ(ModuleShape::ring(3).code(), "SSS");
  EXPECT_EQ(ModuleShape::injective_hull(2).code(), "II");
  EXPECT_EQ(ModuleShape::local_cohomology(3, 2).code(), "IIS");
  EXPECT_EQ(ModuleShape::dual_local_cohomology(3, 2).code(), "SSI");
  EXPECT_EQ(ModuleShape::local_cohomology(2, 0), ModuleShape::ring(2));
  EXPECT_THROW(ModuleShape::local_cohomology(2, 3), Error);
}

TEST(ModuleShape, DualIsAnInvolution) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      const ModuleShape s = ModuleShape::local_cohomology(n, i);
      EXPECT_EQ(s.dual().dual(), s);
    }
    EXPECT_EQ(ModuleShape::ring(n).dual(), ModuleShape::injective_hull(n));
  }
}

TEST(TruncationBox, RejectsNegativeBounds) {
  EXPECT_THROW(TruncationBox({1, -1}), Error);
  const TruncationBox b({2, 3});
  EXPECT_TRUE(b.within(1, -3));
  EXPECT_FALSE(b.within(0, 3));
  EXPECT_EQ(b.max_bound(), 3);
}

TEST(TruncationBox, EnumerationRespectsRoles) {
  const auto all = enumerate_box(ModuleShape::local_cohomology(2, 1), TruncationBox::uniform(2, 2));
  ASSERT_EQ(all.size(), 9u);
  for (const auto& e : all) {
    EXPECT_LE(e[0], 0);
    EXPECT_GE(e[1], 0);
  }
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

} // namespace
} // namespace loccoh
