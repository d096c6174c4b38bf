// Scalar special functions: Gamma, zeta, completed zeta, divisor sums,
// K-Bessel functions of complex order, and executable forms of the
// Mellin-Bessel and divisor-series identities.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace degeis {

using cplx = std::complex<double>;

struct EvaluatedValue {
  cplx value{0.0, 0.0};
  double abs_error = 0.0;
  bool pole = false;
};

struct ScaledBessel {
  cplx order{0.0, 0.0};
  double argument = 0.0;
  cplx scaled_value{0.0, 0.0};  // exp(pi*|Im order|/2) * K_order(argument)
  double scale_exponent = 0.0;  // pi*|Im order|/2
  double abs_error = 0.0;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// log Gamma(z) with the imaginary part only meaningful modulo 2*pi.
cplx log_gamma(cplx z);
EvaluatedValue gamma_complex(cplx s);

// log sin(z) evaluated without overflow for large |Im z|.
cplx log_sin(cplx z);

EvaluatedValue riemann_zeta(cplx s);

// log xi(s), xi(s) = pi^{-s/2} Gamma(s/2) zeta(s). Throws PoleError at 0, 1.
cplx log_completed_zeta(cplx s);
EvaluatedValue completed_zeta(cplx s);

// sum_{d | m} d^w.
cplx sigma_complex(std::uint64_t m, cplx w);

// Public entry point with the documented domain box:
// x in [1e-3, 700], |Im order| <= 200, |Re order| <= 5.
ScaledBessel bessel_k(cplx order, double x);

// exp(pi*|Im nu|/2) * K_nu(x) without domain checks (x > 0).
// Primary algorithm: quadrature of the integral representation along a
// contour that follows the steepest-descent geometry of the integrand.
cplx bessel_k_scaled(cplx nu, double x, double* abs_error = nullptr);

// Second, independent algorithm: ascending series through I_{+-nu} where it
// is well conditioned, otherwise composite Gauss-Legendre along a horizontal
// line contour distinct from the primary one.
cplx bessel_k_scaled_alt(cplx nu, double x, double* abs_error = nullptr);

struct IdentityCheck {
  EvaluatedValue lhs;
  EvaluatedValue rhs;
};

// int_0^inf K_mu(y) K_nu(y) y^s dy/y against the Gamma-product closed form.
IdentityCheck stade_check(cplx mu, cplx nu, cplx s);

struct RamanujanCheck {
  cplx lhs_partial{0.0, 0.0};
  cplx rhs{0.0, 0.0};
  double tail_bound = 0.0;
};

// sum_{n<=N} sigma_a(n) sigma_b(n) n^{-s} against the zeta-quotient.
RamanujanCheck ramanujan_check(cplx a, cplx b, cplx s, std::int64_t N);

// Multi-dimensional Mellin transform
//   eta~(s) = int eta(y) prod y_i^{-s_i} dy_i / y_i
// of a function supported in the given product of intervals, by tensor
// Gauss-Legendre quadrature with `panels` panels of 20 nodes per axis.
using MultiFunction = std::function<double(const std::vector<double>&)>;
cplx mellin_transform(const MultiFunction& eta,
                      const std::vector<std::pair<double, double>>& support,
                      const std::vector<cplx>& s, int panels = 8);

}  // namespace degeis
