#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "degeis/eisenstein.hpp"
#include "degeis/rng.hpp"

using namespace degeis;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

TruncationPolicy policy(const SpectralParameter& sp) { return TruncationPolicy::for_parameter(sp); }

// Lattice-sum values from tests/oracles/generate.py (incomplete-gamma
// splitting of the Epstein zeta function in mpmath, 40 digits).
const cplx kN2Real = 10.853335313204158;
const cplx kN2Complex(-1.0100215884201077, 2.8934109673434538);
const cplx kN3Real = 22.271379610885173;
const cplx kN3Complex(3.644145559165628, -0.084235555314164157);

}  // namespace

TEST(SpectralParameter, OrdersAndExponents) {
  const SpectralParameter sp{3, cplx(0.5, 10.0)};
  EXPECT_EQ(sp.zeta_arg(), cplx(1.5, 30.0));
  EXPECT_EQ(sp.bessel_order(1), cplx(-0.25, 15.0));
  EXPECT_EQ(sp.bessel_order(2), cplx(0.25, 15.0));
  EXPECT_EQ(sp.divisor_exp(1), cplx(0.5, -30.0));
  EXPECT_DOUBLE_EQ(sp.tau(), 15.0);
}

TEST(TruncationPolicy, MinimumCutoffEnforced) {
  const SpectralParameter sp{2, cplx(0.5, 100.0)};
  const double tau = 100.0;
  EXPECT_NEAR(TruncationPolicy::minimum_x_max(sp), tau + 10.0 * std::cbrt(tau) + 40.0, 1e-12);
  TruncationPolicy p = policy(sp);
  EXPECT_NO_THROW(p.validate(sp));
  p.x_max = 50.0;
  EXPECT_THROW(p.validate(sp), DomainError);
}

TEST(Epstein, MatchesMpmathOracle) {
  const IwasawaPoint z2(2, {0.3}, {1.7});
  EXPECT_LT(rel(epstein_direct(z2, 1.3, 80).value, kN2Real), 1e-8);
  const IwasawaPoint z3(3, {1, 1, 1}, {1, 1});
  EXPECT_LT(rel(epstein_direct(z3, 1.2, 40).value, kN3Real), 1e-7);
}

TEST(Epstein, RefusesOutsideConvergence) {
  const IwasawaPoint z(2, {0.3}, {1.7});
  EXPECT_THROW(epstein_direct(z, cplx(0.5, 10.0), 40), DivergenceError);
  EXPECT_THROW(epstein_direct(z, 1.05, 40), DivergenceError);
}

TEST(Fourier, MatchesMpmathOracleN2) {
  const IwasawaPoint z(2, {0.3}, {1.7});
  for (const auto& [s, ref] : {std::pair<cplx, cplx>{1.3, kN2Real}, {cplx(1.4, 3.0), kN2Complex}}) {
    const SpectralParameter sp{2, s};
    EXPECT_LT(rel(eisenstein_fourier_eval(z, sp, policy(sp)).value, ref), 1e-12);
  }
}

TEST(Fourier, MatchesMpmathOracleN3) {
  const IwasawaPoint z(3, {1, 1, 1}, {1, 1});
  for (const auto& [s, ref] : {std::pair<cplx, cplx>{1.2, kN3Real}, {cplx(1.4, 3.0), kN3Complex}}) {
    const SpectralParameter sp{3, s};
    EXPECT_LT(rel(eisenstein_fourier_eval(z, sp, policy(sp)).value, ref), 1e-10);
  }
}

TEST(Fourier, FunctionalEquationOfCompletedSeries) {
  // xi(ns) E(z, s) is invariant under s -> 1 - s combined with z -> transpose inverse,
  // which at n = 2 is the identity on the upper half-plane.
  const IwasawaPoint z(2, {0.21}, {1.3});
  const cplx s(0.5, 7.0), t = 1.0 - s;
  const SpectralParameter a{2, s}, b{2, t};
  const cplx ea = completed_zeta(2.0 * s).value * eisenstein_fourier_eval(z, a, policy(a)).value;
  const cplx eb = completed_zeta(2.0 * t).value * eisenstein_fourier_eval(z, b, policy(b)).value;
  EXPECT_LT(rel(ea, eb), 1e-10);
}

TEST(Fourier, CompletedSeriesIsRealOnUnitaryLine) {
  // conj(xi(2s) E(z, s)) = xi(2 - 2s) E(z, 1 - s) = xi(2s) E(z, s) when Re s = 1/2.
  const IwasawaPoint z(2, {0.4}, {0.9});
  const cplx s(0.5, 25.0);
  const SpectralParameter sp{2, s};
  const cplx e = completed_zeta(2.0 * s).value * eisenstein_fourier_eval(z, sp, policy(sp)).value;
  EXPECT_LT(std::abs(e.imag()), 1e-10 * std::abs(e));
}

TEST(Automorphy, N2HighFrequency) {
  const SpectralParameter sp{2, cplx(0.5, 100.0)};
  Eigen::MatrixXd g(2, 2);
  g << 2, 1, 1, 1;
  EXPECT_LT(automorphy_check(IwasawaPoint(2, {0.1}, {1.3}), g, sp, policy(sp)), 1e-8);
}

TEST(Automorphy, N3RandomUnimodular) {
  const SpectralParameter sp{3, cplx(0.5, 10.0)};
  const IwasawaPoint z(3, {0.12, -0.31, 0.25}, {1.2, 1.05});
  Eigen::MatrixXd g(3, 3);
  g << 1, 2, 0, 0, 1, 0, 1, 3, 1;
  EXPECT_LT(automorphy_check(z, g, sp, policy(sp)), 1e-8);
}

TEST(Cosets, PrimitiveVectorsAreCanonicalAndComplete) {
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(2, 2);
  const auto v = primitive_vectors(2, gram, std::sqrt(5.0) + 1e-9);
  // Up to sign: (1,0), (0,1), (1,1), (1,-1), (1,2), (1,-2), (2,1), (2,-1).
  EXPECT_EQ(v.size(), 8u);
  for (const auto& c : v) {
    const auto first = c.a[0] != 0 ? c.a[0] : c.a[1];
    EXPECT_GT(first, 0);
    EXPECT_EQ(std::gcd(std::abs(c.a[0]), std::abs(c.a[1])), 1);
  }
  EXPECT_THROW(primitive_vectors(2, gram, 100.0, 10), BudgetError);
}

TEST(Cosets, BlockGramMatchesBlockAction) {
  const IwasawaPoint z(3, {0.12, -0.31, 0.25}, {1.2, 1.05});
  const Eigen::MatrixXd g = block_gram(z, 2);
  const CosetDatum c{{2, -1}};
  const Eigen::Vector2d a(2, -1);
  EXPECT_NEAR(block_action(c, z).rho, std::sqrt(a.dot(g * a)), 1e-13);
}

TEST(BesselTable, InterpolatesToDirectEvaluation) {
  const cplx nu(0.25, 15.0);
  const BesselTable t(nu, 1.0, 80.0);
  EXPECT_TRUE(t.covers(40.0));
  EXPECT_FALSE(t.covers(90.0));
  for (double x : {1.3, 7.7, 15.1, 33.3, 79.0}) {
    const cplx direct = bessel_k_scaled(nu, x);
    EXPECT_LT(std::abs(t(x) - direct), 1e-10 * std::max(std::abs(direct), 1e-3)) << x;
  }
}

TEST(Fourier, ContextMatchesOneShotEvaluation) {
  const IwasawaPoint z(3, {0.2, 0.1, -0.3}, {1.1, 1.2});
  const SpectralParameter sp{3, cplx(0.5, 5.0)};
  const auto pol = policy(sp);
  const FourierContext ctx(sp, pol, 0.5);
  std::vector<CoeffTerm> terms;
  const auto d = eisenstein_fourier_eval_detailed(z, ctx, &terms);
  EXPECT_EQ(static_cast<std::size_t>(d.terms), terms.size());
  EXPECT_LT(rel(d.result.value, eisenstein_fourier_eval(z, sp, pol).value), 1e-10);
}
