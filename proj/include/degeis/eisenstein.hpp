// Two evaluators of the maximal-parabolic Eisenstein series E(z, s) on
// SL_n(Z)\X_n, normalized by the Epstein lattice sum
//
//   E(z, s) = det(z)^s * sum_{a in Z^n, a != 0} |a^T z|^{-ns} / zeta(ns),
//
// together with the closed-form Fourier coefficients and the coset
// enumeration that the expansion needs.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "degeis/gln_geometry.hpp"
#include "degeis/specfun.hpp"

namespace degeis {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SpectralParameter {
  int n = 2;
  cplx s{0.5, 0.0};

  cplx zeta_arg() const { return static_cast<double>(n) * s; }
  // Order of the K-Bessel factor in the level-k coefficients, 1 <= k <= n-1.
  cplx bessel_order(int k) const { return 0.5 * static_cast<double>(n) * s - 0.5 * (n - k); }
  cplx divisor_exp(int k) const { return -static_cast<double>(n) * s + static_cast<double>(n - k); }
  // Largest |Im| of the Bessel orders.
  double tau() const { return 0.5 * std::abs(static_cast<double>(n) * s.imag()); }
};

struct TruncationPolicy {
  double x_max = 0.0;                   // cutoff for Bessel arguments
  std::int64_t m_max = 1000000;         // cap on the Fourier index m
  std::int64_t vector_budget = 2000000; // cap on enumerated primitive vectors per level
  int threads = 1;                      // workers for the term sum

  // Smallest admissible cutoff: tau + 10 tau^{1/3} + 40.
  static double minimum_x_max(const SpectralParameter& sp);
  static TruncationPolicy for_parameter(const SpectralParameter& sp, double extra = 0.0);
  void validate(const SpectralParameter& sp) const;
};

// Lattice sum over 0 < max|a_i| <= R with an integral tail correction for
// the complement of the cube. The error estimate compares cutoffs R and
// about 0.7 R. Requires Re(ns) > n + 0.2.
EvaluatedValue epstein_direct(const IwasawaPoint& z, cplx s, int R);

// Constant Fourier coefficient:
// sum_{k=0}^{n-1} 2 xi(ns-n+k+1)/xi(ns) (y_1 y_2^2...y_{n-k-1}^{n-k-1})^{1-s} (y_{n-k}^k...y_{n-1})^s.
EvaluatedValue constant_coefficient(const IwasawaPoint& z, cplx s);

// Contribution of the (k, m) coefficient for one canonical coset, with
// y_{n-k} replaced by y_{n-k} rho and x_{k,k+1} by xprime, both signs of m
// combined into 2 cos(2 pi m xprime).
EvaluatedValue mode_coefficient(int k, std::int64_t m, double rho, double xprime,
                                const IwasawaPoint& z, cplx s);

// All primitive a in Z^k with a^T gram a <= rho_max^2 and first nonzero
// entry positive (Fincke-Pohst enumeration followed by a gcd filter).
std::vector<CosetDatum> primitive_vectors(int k, const Eigen::MatrixXd& gram, double rho_max,
                                          std::int64_t budget = 2000000);

// Gram matrix m_k(z) m_k(z)^T of the normalized upper-left k-block, so that
// block_action(a, z).rho^2 = a^T gram a.
Eigen::MatrixXd block_gram(const IwasawaPoint& z, int k);

// Piecewise Chebyshev interpolant of exp(pi |Im nu|/2) K_nu(x) on [x_lo, x_hi]
// for a fixed order, built adaptively to a relative accuracy near 1e-12.
class BesselTable {
 public:
  BesselTable(cplx nu, double x_lo, double x_hi);
  bool covers(double x) const { return x >= lo_ && x <= hi_; }
  cplx operator()(double x) const;
  cplx order() const { return nu_; }
  std::size_t panels() const { return breaks_.size() - 1; }
  // Largest discrepancy between the interpolant and direct evaluation at the
  // midpoints checked during construction, relative to the table maximum.
  double check_error() const { return check_error_; }

 private:
  void build_panel(double a, double b, int depth);
  cplx nu_;
  double lo_, hi_;
  double check_error_ = 0.0;
  std::vector<double> breaks_;
  std::vector<std::vector<cplx>> coef_;
};

// Precomputed data for repeated evaluation at a fixed spectral parameter:
// per-level Bessel tables over an argument range and divisor-sum tables.
class FourierContext {
 public:
  FourierContext(const SpectralParameter& sp, const TruncationPolicy& pol, double x_lo);
  const SpectralParameter& parameter() const { return sp_; }
  const TruncationPolicy& policy() const { return pol_; }
  cplx bessel_scaled(int k, double x, double* err) const;
  cplx sigma(int k, std::int64_t m) const;
  cplx log_two_over_xi() const { return log_two_over_xi_; }

 private:
  SpectralParameter sp_;
  TruncationPolicy pol_;
  cplx log_two_over_xi_;
  std::vector<std::unique_ptr<BesselTable>> tables_;  // index k-1
  std::vector<std::vector<cplx>> sigma_;              // index k-1, then m
};

struct CoeffTerm {
  int k = 0;
  std::int64_t m = 0;
  CosetDatum coset;
  cplx value{0.0, 0.0};
};

struct FourierEvaluation {
  EvaluatedValue result;
  std::int64_t terms = 0;
  std::int64_t cosets = 0;
};

// Full expansion: constant coefficient plus every (k, coset, m) term whose
// Bessel argument is at most pol.x_max, summed in descending magnitude with
// compensated summation. abs_error collects quadrature errors and a tail estimate.
EvaluatedValue eisenstein_fourier_eval(const IwasawaPoint& z, const SpectralParameter& sp,
                                       const TruncationPolicy& pol);
FourierEvaluation eisenstein_fourier_eval_detailed(const IwasawaPoint& z, const FourierContext& ctx,
                                                   std::vector<CoeffTerm>* terms = nullptr);

// |E(gamma z) - E(z)| / max(|E(z)|, 1e-300).
double automorphy_check(const IwasawaPoint& z, const Eigen::MatrixXd& gamma, const SpectralParameter& sp,
                        const TruncationPolicy& pol);

}  // namespace degeis
