#include <gtest/gtest.h>

#include <cmath>

#include "degeis/gln_geometry.hpp"
#include "degeis/rng.hpp"

using namespace degeis;

namespace {

Eigen::MatrixXd random_unimodular(int n, CounterRng& r, int steps = 6) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(r.uniform() * n), j = (i + 1 + static_cast<int>(r.uniform() * (n - 1))) % n;
    const double c = std::floor(r.uniform(-2.0, 3.0));
    Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
    e(i, j) = c;
    g = e * g;
  }
  return g;
}

bool same_point(const IwasawaPoint& a, const IwasawaPoint& b, double tol = 1e-10) {
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > tol * std::max(1.0, std::abs(a.x[i]))) return false;
  for (std::size_t i = 0; i < a.y.size(); ++i)
    if (std::abs(a.y[i] - b.y[i]) > tol * a.y[i]) return false;
  return true;
}

}  // namespace

TEST(Iwasawa, DecomposeRoundTrip) {
  const IwasawaPoint z(3, {0.2, -0.4, 0.7}, {1.3, 0.8});
  const IwasawaPoint w = iwasawa_decompose(z.matrix());
  for (std::size_t i = 0; i < z.x.size(); ++i) EXPECT_NEAR(w.x[i], z.x[i], 1e-13);
  for (std::size_t i = 0; i < z.y.size(); ++i) EXPECT_NEAR(w.y[i], z.y[i], 1e-13);
}

TEST(Iwasawa, DecomposeIgnoresOrthogonalAndScalarFactors) {
  const IwasawaPoint z(3, {0.2, -0.4, 0.7}, {1.3, 0.8});
  Eigen::MatrixXd k(3, 3);
  const double c = std::cos(0.7), s = std::sin(0.7);
  k << c, -s, 0, s, c, 0, 0, 0, 1;
  const IwasawaPoint w = iwasawa_decompose(2.5 * z.matrix() * k);
  EXPECT_TRUE(same_point(w, z));
}

TEST(Iwasawa, DeterminantAndDiagonal) {
  const IwasawaPoint z(3, {0, 0, 0}, {2.0, 3.0});
  EXPECT_DOUBLE_EQ(z.d(1), 6.0);
  EXPECT_DOUBLE_EQ(z.d(2), 2.0);
  EXPECT_DOUBLE_EQ(z.d(3), 1.0);
  EXPECT_DOUBLE_EQ(z.det(), 12.0);  // y_1^2 y_2
  EXPECT_NEAR(z.matrix().determinant(), 12.0, 1e-12);
}

TEST(Iwasawa, InvalidInputsRejected) {
  EXPECT_THROW(IwasawaPoint(1), GeometryError);
  EXPECT_THROW(IwasawaPoint(2, {0.0}, {-1.0}), GeometryError);
  EXPECT_THROW(IwasawaPoint(3, {0.0}, {1.0, 1.0}), GeometryError);
  EXPECT_THROW(iwasawa_decompose(Eigen::MatrixXd::Zero(3, 3)), GeometryError);
}

TEST(Action, UpperHalfPlaneMobius) {
  // At n = 2, gamma z matches the Mobius action on x + iy with the transpose convention.
  const IwasawaPoint z(2, {0.3}, {1.7});
  Eigen::MatrixXd s(2, 2);
  s << 0, -1, 1, 0;
  const IwasawaPoint w = act(s, z);
  const double r2 = 0.3 * 0.3 + 1.7 * 1.7;
  EXPECT_NEAR(w.y[0], 1.7 / r2, 1e-14);
  EXPECT_NEAR(std::abs(w.x[0]), 0.3 / r2, 1e-14);
}

TEST(Action, IsAGroupAction) {
  CounterRng r(7, 0);
  const IwasawaPoint z(3, {0.1, 0.2, -0.3}, {1.1, 0.9});
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd a = random_unimodular(3, r), b = random_unimodular(3, r);
    EXPECT_TRUE(same_point(act(a * b, z), act(a, act(b, z))));
  }
  EXPECT_THROW(act(2.0 * Eigen::MatrixXd::Identity(3, 3), z), GeometryError);
  Eigen::MatrixXd half = Eigen::MatrixXd::Identity(3, 3);
  half(0, 1) = 0.5;
  EXPECT_THROW(act(half, z), GeometryError);
}

TEST(BlockAction, RhoSquaredIsTheBlockNorm) {
  const IwasawaPoint z(3, {0.1, 0.2, -0.3}, {1.1, 0.9});
  const BlockAction b = block_action(CosetDatum{{1}}, z);
  EXPECT_NEAR(b.rho, 1.0, 1e-15);
  EXPECT_NEAR(b.xprime, z.X(1, 2), 1e-15);
}

TEST(PowerFunction, MinimalParabolicExponents) {
  const IwasawaPoint z(2, {0.0}, {3.0});
  // n = 2: I_nu(z) = y^{b_{11} nu} with b_{11} = 1.
  EXPECT_NEAR(i_function(z, {cplx(0.5, 0.0)}).real(), std::sqrt(3.0), 1e-14);
  const Eigen::MatrixXd b = i_exponents(3);
  EXPECT_EQ(b.rows(), 2);
}

TEST(PowerFunction, ParabolicConstraint) {
  const IwasawaPoint z(3, {0, 0, 0}, {2.0, 3.0});
  EXPECT_THROW(i_function_parabolic(z, {1.0, 1.0}, Partition{{2, 1}}), GeometryError);
  EXPECT_NO_THROW(i_function_parabolic(z, {0.5, -1.0}, Partition{{2, 1}}));
}

TEST(Measure, ConstantsAndVolume) {
  EXPECT_NEAR(measure_constant(2), 3.0 / M_PI, 1e-15);
  const auto box = CoordinateBox::make(2, {{-0.25, 0.25}}, {{2.0, 3.0}});
  EXPECT_NEAR(volume_box(box), (3.0 / M_PI) * 0.5 * (1.0 / 2.0 - 1.0 / 3.0), 1e-15);
  const IwasawaPoint z(2, {0.0}, {2.0});
  EXPECT_NEAR(haar_density(z), (3.0 / M_PI) / 4.0, 1e-15);  // c_2 y^{-2}
}

TEST(Measure, BoxDefaultsAndValidation) {
  const auto box = CoordinateBox::make(3, {}, {{1.0, 2.0}, {1.0, 2.0}});
  ASSERT_EQ(box.x.size(), 3u);
  EXPECT_DOUBLE_EQ(box.x[2].lo, -0.5);
  EXPECT_DOUBLE_EQ(box.x[2].hi, 0.5);
  EXPECT_THROW(CoordinateBox::make(2, {{0.0, 1.0}}, {{0.0, 1.0}}), GeometryError);
}

TEST(Reduction, UpperHalfPlaneFundamentalDomain) {
  const IwasawaPoint z(2, {3.7}, {0.05});
  const IwasawaPoint w = reduce_to_fundamental(z);
  EXPECT_LE(std::abs(w.x[0]), 0.5 + 1e-12);
  EXPECT_GE(w.x[0] * w.x[0] + w.y[0] * w.y[0], 1.0 - 1e-12);
}

TEST(Reduction, LllIsIdempotentAndOrbitPreserving) {
  CounterRng r(3, 0);
  const IwasawaPoint z(3, {0.05, -0.02, 0.03}, {1.3, 1.2});
  const IwasawaPoint moved = act(random_unimodular(3, r, 10), z);
  const IwasawaPoint a = reduce_to_fundamental(moved);
  const IwasawaPoint b = reduce_to_fundamental(a);
  EXPECT_TRUE(same_point(a, b));
}

TEST(Certification, BoxesInsideAndOutside) {
  EXPECT_TRUE(certify_box(CoordinateBox::make(2, {{-0.25, 0.25}}, {{2.0, 3.0}}), 1000, 1));
  EXPECT_FALSE(certify_box(CoordinateBox::make(2, {{-0.25, 0.25}}, {{0.5, 1.5}}), 1000, 1));
  const auto a3 = CoordinateBox::make(3, {{-0.1, 0.1}, {-0.1, 0.1}, {-0.1, 0.1}}, {{1.1, 1.5}, {1.1, 1.5}});
  EXPECT_TRUE(in_certified_region_n3(a3));
  EXPECT_TRUE(certify_box(a3, 2000, 1));
  const auto bad = CoordinateBox::make(3, {}, {{0.5, 1.5}, {1.1, 1.5}});
  EXPECT_FALSE(certify_box(bad, 2000, 1));
}
