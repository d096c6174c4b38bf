#include <gtest/gtest.h>

#include <cmath>

#include "degeis/constant_terms.hpp"

using namespace degeis;

namespace {

const IwasawaPoint kPoint(3, {0.21, -0.17, 0.33}, {1.15, 0.93});

}  // namespace

TEST(ConstantTerm, AgreesWithTorusQuadratureRealS) {
  const auto v = verify_constant_terms(kPoint, 1.3, 32);
  EXPECT_LT(v.constant_term.rel_deviation, 1e-10);
  EXPECT_LT(v.constant_square.rel_deviation, 1e-10);
  EXPECT_EQ(v.constant_term.grid_size, 32);
}

TEST(ConstantTerm, IndependentOfLastColumn) {
  IwasawaPoint moved = kPoint;
  moved.X(1, 3) += 0.37;
  moved.X(2, 3) -= 0.11;
  const cplx s(1.3, 2.0);
  EXPECT_LT(std::abs(constant_term_formula(kPoint, s).value - constant_term_formula(moved, s).value), 1e-13);
  EXPECT_LT(std::abs(constant_square_formula(kPoint, s).value - constant_square_formula(moved, s).value), 1e-12);
}

TEST(ConstantSquare, PiecesSumToTotal) {
  const cplx s(1.3, 0.0);
  const auto p = constant_square_pieces(kPoint, s);
  EXPECT_NEAR(p.total(), constant_square_formula(kPoint, s).value.real(), 1e-12 * p.total());
  EXPECT_GT(p.power, 0.0);
  EXPECT_GE(p.bessel, 0.0);
  EXPECT_NEAR(p.power, 4.0 * std::pow(kPoint.det(), 2.0 * 1.3), 1e-12 * p.power);
}

TEST(ConstantSquare, IsRealAndPositive) {
  const auto v = constant_square_formula(kPoint, cplx(0.5, 5.0)).value;
  EXPECT_GT(v.real(), 0.0);
  EXPECT_LT(std::abs(v.imag()), 1e-12 * v.real());
}

TEST(ConstantSquare, DisplayedVariantDiffersFromQuadrature) {
  const auto v = verify_constant_terms(kPoint, 1.3, 32);
  EXPECT_GT(v.constant_square_as_displayed.rel_deviation, 1e-2);
}

TEST(ConstantTerm, RequiresRankThree) {
  EXPECT_THROW(constant_term_formula(IwasawaPoint(2, {0.1}, {1.0}), 1.3), DomainError);
  EXPECT_THROW(verify_constant_terms(kPoint, 1.3, 8), DomainError);
}
