// Monte-Carlo estimates of mu_t(A) = int_A |E(z, 1/2 + it)|^2 d*z over
// coordinate boxes, slope fits against log t, ratio checks, and the mean
// value of incomplete minimal-parabolic Eisenstein series at n = 2.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "degeis/eisenstein.hpp"

namespace degeis {

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double t = 0.0;
  std::string box_id;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;     // weighted chi^2 per degree of freedom
  double slope_error = 0.0;  // standard error of the slope from the weights
  std::vector<double> t_grid;
};

struct MuOptions {
  int threads = 1;
  int certify_samples = 10000;
  std::string box_id = "A";
};

// Rejects boxes outside the certified injectivity region or outside the
// Bessel budget n t / 2 <= 200.
void check_que_preconditions(int n, double t, const CoordinateBox& box, int certify_samples, std::uint64_t seed);

// Importance sampling: x uniform, each y_k drawn from the normalized
// y_k^{-k(n-k)-1} density on its interval, so the estimate is
// volume_box(box) * mean |E|^2. Sample i uses substream i of the seed.
MeasureEstimate mu_estimate(int n, double t, const CoordinateBox& box, std::int64_t samples, std::uint64_t seed,
                            const MuOptions& opt = {});

// Tensor Gauss-Legendre estimate of the same integral with `nodes` points per axis.
double mu_quadrature(int n, double t, const CoordinateBox& box, int nodes, int threads = 1);

// Weighted least squares of value against log t; needs >= 4 distinct t.
SlopeFit slope_fit(const std::vector<MeasureEstimate>& estimates);

struct RatioResult {
  double ratio = 0.0;
  double target = 0.0;
  double sigma = 0.0;
  MeasureEstimate a, b;
};

RatioResult ratio_check(const CoordinateBox& A, const CoordinateBox& B, int n, double t, std::int64_t samples,
                        std::uint64_t seed, int threads = 1);

// A function on (0, inf)^{n-1} with compact support in a product of intervals.
struct SupportedFunction {
  std::function<double(const std::vector<double>&)> f;
  std::vector<std::pair<double, double>> support;
};

// Polynomial bump c ((y - lo)(hi - y))^power on [lo, hi], zero outside.
SupportedFunction polynomial_bump(double lo, double hi, int power, double c = 1.0);

// sum over the cosets P_{1,...,1}(Z)\SL_n(Z) of eta(Im gamma z). Implemented
// for n = 2 by enumerating coprime bottom rows (c, d) with c >= 0 whose
// height y / |cz + d|^2 can fall inside the support.
double incomplete_min_eisenstein(const IwasawaPoint& z, const SupportedFunction& eta,
                                 std::int64_t budget = 10000000);

struct MeanIdentityResult {
  double mc_value = 0.0;
  double std_error = 0.0;
  double mellin_value = 0.0;  // eta~(1) at n = 2
  double alt_value = 0.0;    // c_2 eta~(1)
  bool matches_mellin = false;
  bool matches_alt = false;
};

// Monte Carlo of int_F E(z, eta) d*z over the exact fundamental domain at n = 2,
// with x uniform on [-1/2, 1/2] and y = (sqrt 3 / 2) / U.
MeanIdentityResult mean_identity_check(const SupportedFunction& eta, int n, std::int64_t samples, std::uint64_t seed,
                                       int threads = 1);

struct MassResult {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo of int_F 1 d*z at n = 2 with the sampler above.
MassResult fundamental_domain_mass(std::int64_t samples, std::uint64_t seed, int threads = 1);

}  // namespace degeis
