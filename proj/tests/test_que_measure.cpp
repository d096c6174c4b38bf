#include <gtest/gtest.h>

#include <cmath>

#include "degeis/que_measure.hpp"

using namespace degeis;

namespace {

const CoordinateBox kBoxA = CoordinateBox::make(2, {{-0.25, 0.25}}, {{2.0, 3.0}});

}  // namespace

TEST(Preconditions, BudgetAndCertification) {
  EXPECT_NO_THROW(check_que_preconditions(2, 120.0, kBoxA, 1000, 1));
  EXPECT_THROW(check_que_preconditions(2, 250.0, kBoxA, 1000, 1), DomainError);
  const auto low = CoordinateBox::make(2, {{-0.25, 0.25}}, {{0.5, 1.5}});
  EXPECT_THROW(check_que_preconditions(2, 20.0, low, 1000, 1), CertificationError);
  EXPECT_THROW(check_que_preconditions(3, 20.0, kBoxA, 1000, 1), DomainError);
}

TEST(MuEstimate, DeterministicAndThreadIndependent) {
  MuOptions one, four;
  four.threads = 4;
  const auto a = mu_estimate(2, 20.0, kBoxA, 2000, 99, one);
  const auto b = mu_estimate(2, 20.0, kBoxA, 2000, 99, four);
  const auto c = mu_estimate(2, 20.0, kBoxA, 2000, 100, one);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.value, c.value);
  EXPECT_EQ(a.samples, 2000);
  EXPECT_EQ(a.seed, 99u);
}

TEST(MuEstimate, AgreesWithTensorQuadrature) {
  const double q = mu_quadrature(2, 20.0, kBoxA, 80);
  const auto mc = mu_estimate(2, 20.0, kBoxA, 20000, 5);
  EXPECT_LT(std::abs(mc.value - q), 4.0 * mc.std_error);
}

TEST(SlopeFit, RecoversExactLine) {
  std::vector<MeasureEstimate> e;
  for (double t : {10.0, 20.0, 40.0, 80.0}) {
    MeasureEstimate m;
    m.t = t;
    m.value = 0.7 * std::log(t) + 1.5;
    m.std_error = 0.01;
    e.push_back(m);
  }
  const auto f = slope_fit(e);
  EXPECT_NEAR(f.slope, 0.7, 1e-12);
  EXPECT_NEAR(f.intercept, 1.5, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-12);
  e.pop_back();
  EXPECT_THROW(slope_fit(e), DomainError);
}

TEST(Ratio, SharedSeedAndTarget) {
  const auto b = CoordinateBox::make(2, {{-0.25, 0.25}}, {{3.0, 5.0}});
  const auto r = ratio_check(kBoxA, b, 2, 20.0, 2000, 11);
  EXPECT_NEAR(r.target, volume_box(kBoxA) / volume_box(b), 1e-15);
  EXPECT_EQ(r.a.seed, r.b.seed);
  EXPECT_GT(r.sigma, 0.0);
}

TEST(IncompleteEisenstein, InvariantUnderModularGroup) {
  const auto eta = polynomial_bump(1.1, 2.0, 4, 1000.0);
  const IwasawaPoint z(2, {0.31}, {0.6});
  Eigen::MatrixXd g(2, 2);
  g << 1, 1, 0, 1;
  const double a = incomplete_min_eisenstein(z, eta);
  EXPECT_NEAR(incomplete_min_eisenstein(act(g, z), eta), a, 1e-10 * std::max(1.0, a));
  g << 0, -1, 1, 0;
  EXPECT_NEAR(incomplete_min_eisenstein(act(g, z), eta), a, 1e-10 * std::max(1.0, a));
}

TEST(IncompleteEisenstein, OnlyIdentityCosetHighInCusp) {
  const auto eta = polynomial_bump(1.1, 2.0, 4, 1.0);
  const IwasawaPoint z(2, {0.1}, {1.5});
  EXPECT_NEAR(incomplete_min_eisenstein(z, eta), eta.f({1.5}), 1e-15);
}

TEST(FundamentalDomain, TotalMassIsOne) {
  const auto m = fundamental_domain_mass(200000, 1);
  EXPECT_LT(std::abs(m.value - 1.0), 4.0 * m.std_error);
}

TEST(MeanIdentity, CandidatesAreInRatioOfMeasureConstant) {
  const auto eta = polynomial_bump(1.1, 2.0, 4, 1000.0);
  const auto r = mean_identity_check(eta, 2, 20000, 3);
  EXPECT_NEAR(r.mellin_value, 0.26204640293141434, 1e-12);
  EXPECT_NEAR(r.alt_value, 0.25023588207591074, 1e-12);
  EXPECT_THROW(mean_identity_check(eta, 3, 100, 1), DomainError);
}
