#include <gtest/gtest.h>

#include "twdesc/error.hpp"
#include "twdesc/matrix.hpp"
#include "twdesc/scalar.hpp"

namespace twdesc {
namespace {

TEST(ScalarTest, RationalsStayInLowestTerms) {
  const Field q = Field::rationals();
  const Scalar a = Scalar::parse(q, "6/-4");
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ((a + Scalar::parse(q, "1/2")).to_string(), "-1/1");
  EXPECT_EQ((a * a).to_string(), "9/4");
  EXPECT_EQ(a.inverse().to_string(), "-2/3");
}

TEST(ScalarTest, PrimeFieldResiduesAreCanonical) {
  const Field f = Field::prime(7);
  EXPECT_EQ(Scalar::from_int(f, -1).to_string(), "6");
  EXPECT_EQ(Scalar::from_int(f, 15).to_string(), "1");
  EXPECT_EQ(Scalar::parse(f, "1/3").to_string(), "5");
  for (long v = 1; v < 7; ++v) {
    const Scalar s = Scalar::from_int(f, v);
    EXPECT_TRUE((s * s.inverse()).is_one()) << v;
  }
}

TEST(ScalarTest, FieldParsing) {
  EXPECT_EQ(Field::parse("q"), Field::rationals());
  EXPECT_EQ(Field::parse("fp:7"), Field::prime(7));
  EXPECT_THROW(Field::parse("fp:8"), Error);
  EXPECT_THROW(Field::parse("reals"), Error);
}

TEST(ScalarTest, MixedFieldsAreRejected) {
  const Scalar a = Scalar::one(Field::rationals());
  const Scalar b = Scalar::one(Field::prime(5));
  try {
    (void)(a + b);
    FAIL() << "expected a field mismatch";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("field mismatch"), std::string::npos);
  }
}

TEST(ScalarTest, DivisionByZeroThrows) {
  const Field q = Field::rationals();
  EXPECT_THROW(Scalar::zero(q).inverse(), Error);
  EXPECT_THROW(Scalar::zero(Field::prime(7)).inverse(), Error);
}

TEST(MatrixTest, ProductAndEmptyShapes) {
  const Field q = Field::rationals();
  const Matrix a = Matrix::from_ints(q, {{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_ints(q, {{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, Matrix::from_ints(q, {{2, 1}, {4, 3}}));
  const Matrix e(q, 0, 2);
  EXPECT_EQ((e * a).rows(), 0u);
  const Matrix z = Matrix(q, 2, 0) * Matrix(q, 0, 3);
  EXPECT_EQ(z, Matrix(q, 2, 3));
  EXPECT_TRUE(z.is_zero());
}

}  // namespace
}  // namespace twdesc
