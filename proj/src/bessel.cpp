// K-Bessel functions of complex order nu = a + ib for real positive argument.
//
// Both algorithms start from
//   K_nu(x) = (1/2) int_{-inf}^{inf} exp(-x cosh u + nu u) du
// and return exp(pi*|b|/2) K_nu(x) so that magnitudes stay O(1) for large b.
// Symmetries K_{-nu} = K_nu and K_{conj nu}(x) = conj K_nu(x) reduce to a, b >= 0.

#include <algorithm>
#include <cmath>
#include <limits>

#include "degeis/quadrature.hpp"
#include "degeis/specfun.hpp"

namespace degeis {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;

struct Reduced {
  double a, b;
  bool conj;
};

Reduced reduce(cplx nu) {
  double a = nu.real(), b = nu.imag();
  if (a < 0.0) {
    a = -a;
    b = -b;
  }
  bool c = b < 0.0;
  return {a, std::abs(b), c};
}

inline cplx integrand(cplx u, cplx nu, double x, double shift) {
  return std::exp(-x * std::cosh(u) + nu * u + shift);
}

// log |integrand| at u = t + i theta.
inline double log_magnitude(double t, double theta, double a, double b, double x, double shift) {
  return -x * std::cosh(t) * std::cos(theta) + a * t - b * theta + shift;
}

// Imaginary-part profile of the steepest-descent path for the pure imaginary
// order ib, written as sin(theta(t)) = h(t).
struct DescentProfile {
  double b, x, c0;
  bool from_origin;  // saddle on the imaginary axis (b < x)

  double h(double t) const {
    if (from_origin) {
      double r = (std::abs(t) < 1e-4) ? 1.0 - t * t / 6.0 : t / std::sinh(t);
      return b / x * r;
    }
    return (b * t - c0) / (x * std::sinh(t));
  }
  double dh(double t) const {
    if (from_origin) {
      double g = (std::abs(t) < 1e-4) ? -t / 3.0
                                       : (std::sinh(t) - t * std::cosh(t)) /
                                             (std::sinh(t) * std::sinh(t));
      return b / x * g;
    }
    double sh = std::sinh(t);
    return (b * sh - (b * t - c0) * std::cosh(t)) / (x * sh * sh);
  }
};

}  // namespace

cplx bessel_k_scaled(cplx nu_in, double x, double* abs_error) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  const Reduced r = reduce(nu_in);
  const double a = r.a, b = r.b;
  const cplx nu(a, b);
  const double shift = kHalfPi * b;

  double total_err = 0.0;
  cplx total = 0.0;

  if (b <= 5.0) {
    // Real-axis quadrature; the cancellation factor is at most exp(pi*5/2).
    double T = 1.0;
    const double ref = log_magnitude(0.0, 0.0, a, b, x, shift);
    double peak = ref;
    for (double t = 0.0; t <= T; t += 0.05) peak = std::max(peak, log_magnitude(t, 0.0, a, b, x, shift));
    while (log_magnitude(T, 0.0, a, b, x, shift) > peak - 40.0) {
      T += 0.25;
      peak = std::max(peak, log_magnitude(T, 0.0, a, b, x, shift));
    }
    auto f = [&](double t) -> cplx {
      return 0.5 * (integrand(cplx(t, 0.0), nu, x, shift) + integrand(cplx(-t, 0.0), nu, x, shift));
    };
    int panels = std::max(4, static_cast<int>(std::ceil(b * T / (2.0 * kPi))) + 4);
    auto q = integrate_adaptive<21>(f, 0.0, T, 0.0, 1e-13, panels, 4000, 1e-15);
    total = q.value;
    total_err = q.error + 1e-15 * q.l1;
  } else {
    const double delta = std::min(0.5, 2.0 / b);
    const double cos_delta = std::cos(delta);
    DescentProfile prof{b, x, 0.0, b < x * (1.0 + 1e-6)};
    double t0 = 0.0;
    if (!prof.from_origin) {
      t0 = std::acosh(b / x);
      prof.c0 = b * t0 - std::sqrt(b * b - x * x);
    }
    // End of the horizontal segment: first t >= t0 where h(t) = cos(delta).
    double tc = 0.0;
    if (prof.h(t0) > cos_delta) {
      double lo = t0, hi = std::max(t0, 1e-3) * 2.0 + 0.5;
      while (prof.h(hi) > cos_delta) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (prof.h(mid) > cos_delta)
          lo = mid;
        else
          hi = mid;
      }
      tc = hi;
    }
    const double theta_line = kHalfPi - delta;
    auto theta_of = [&](double t) { return t < tc ? theta_line : std::asin(std::min(1.0, prof.h(t))); };

    // Reference magnitude: the larger of the two segment starts.
    const double ref = std::max(log_magnitude(0.0, theta_of(0.0), a, b, x, shift),
                                log_magnitude(tc, theta_of(tc), a, b, x, shift));
    double peak = ref;

    if (tc > 0.0) {
      auto fh = [&](double t) -> cplx {
        return 0.5 * (integrand(cplx(t, theta_line), nu, x, shift) +
                      integrand(cplx(-t, theta_line), nu, x, shift));
      };
      int panels = std::max(2, static_cast<int>(std::ceil(b * tc / kPi)) + 2);
      auto q = integrate_adaptive<21>(fh, 0.0, tc, 0.0, 1e-12, panels, 20000, 1e-14);
      total += q.value;
      total_err += q.error + 1e-15 * q.l1;
    }

    // Descent tail from tc until the integrand is negligible.
    double T = tc + 0.25;
    while (true) {
      double lm = log_magnitude(T, theta_of(T), a, b, x, shift);
      peak = std::max(peak, lm);
      if (lm < peak - 40.0) break;
      T += 0.25;
    }
    auto ft = [&](double t) -> cplx {
      double s = std::min(1.0, prof.h(t));
      double th = std::asin(s);
      double dth = prof.dh(t) / std::sqrt(std::max(1e-300, 1.0 - s * s));
      cplx up = integrand(cplx(t, th), nu, x, shift) * cplx(1.0, dth);
      cplx dn = integrand(cplx(-t, th), nu, x, shift) * cplx(1.0, -dth);
      return 0.5 * (up + dn);
    };
    int panels = std::max(4, static_cast<int>(std::ceil(a * (T - tc) / (2.0 * kPi))) + 4);
    auto q = integrate_adaptive<21>(ft, tc, T, 0.0, 1e-13, panels, 4000, 1e-15);
    total += q.value;
    total_err += q.error + 1e-15 * q.l1;
  }

  if (r.conj) total = std::conj(total);
  if (abs_error) *abs_error = total_err;
  return total;
}

namespace {

// Ascending series K = pi/(2 sin(pi nu)) (I_{-nu} - I_nu), scaled. Returns
// false if the evaluation is ill conditioned.
bool series_k(cplx nu, double x, double shift, cplx& out, double& err) {
  const double q = 0.25 * x * x;
  const cplx common = std::log(kHalfPi) - log_sin(kPi * nu) + shift;
  cplx parts[2];
  double bound = 0.0;
  for (int idx = 0; idx < 2; ++idx) {
    const cplx v = idx == 0 ? -nu : nu;
    cplx term = 1.0, sum = 1.0;
    double abs_sum = 1.0;
    for (int k = 1; k < 5000; ++k) {
      term *= q / (static_cast<double>(k) * (static_cast<double>(k) + v));
      sum += term;
      abs_sum += std::abs(term);
      if (k > x && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    const cplx pref = std::exp(v * std::log(0.5 * x) - log_gamma(1.0 + v) + common);
    parts[idx] = pref * sum;
    bound += std::abs(pref) * (abs_sum * 1e-15 + std::abs(sum) * 5e-14);
  }
  out = parts[0] - parts[1];
  err = bound;
  return std::isfinite(out.real()) && std::isfinite(out.imag()) && err <= 1e-11 * std::abs(out);
}

}  // namespace

cplx bessel_k_scaled_alt(cplx nu_in, double x, double* abs_error) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  const Reduced r = reduce(nu_in);
  const double a = r.a, b = r.b;
  const cplx nu(a, b);
  const double shift = kHalfPi * b;

  cplx result;
  double err = 0.0;
  if (b >= 0.5 && series_k(nu, x, shift, result, err)) {
    if (r.conj) result = std::conj(result);
    if (abs_error) *abs_error = err;
    return result;
  }

  // Horizontal line through (or just below) the saddle height.
  const double delta = std::min(0.7, 3.0 / std::max(b, 1e-300));
  const double theta = (b <= 0.0) ? 0.0 : std::min(std::asin(std::min(1.0, b / x)), kHalfPi - delta);
  double peak = log_magnitude(0.0, theta, a, b, x, shift);
  double T = 0.5;
  while (true) {
    double lm = log_magnitude(T, theta, a, b, x, shift);
    peak = std::max(peak, lm);
    if (lm < peak - 40.0) break;
    T += 0.25;
  }
  const double maxfreq = std::max({b, x * std::cosh(T) * std::sin(theta), 1.0});
  auto f = [&](double t) -> cplx {
    return 0.5 * (integrand(cplx(t, theta), nu, x, shift) + integrand(cplx(-t, theta), nu, x, shift));
  };
  int panels = static_cast<int>(std::ceil(T * maxfreq / kPi)) + 4;
  cplx prev = integrate_gauss_legendre<20>(f, 0.0, T, panels);
  for (int level = 0; level < 8; ++level) {
    panels *= 2;
    cplx cur = integrate_gauss_legendre<20>(f, 0.0, T, panels);
    err = std::abs(cur - prev);
    prev = cur;
    if (err <= 1e-14 * std::max(1.0, std::abs(cur)) * std::exp(std::max(0.0, peak))) break;
  }
  result = prev;
  err += 1e-15 * std::exp(std::max(0.0, peak)) * T;
  if (r.conj) result = std::conj(result);
  if (abs_error) *abs_error = err;
  return result;
}

ScaledBessel bessel_k(cplx order, double x) {
  if (!(x >= 1e-3 && x <= 700.0)) throw DomainError("bessel_k: argument outside [1e-3, 700]");
  if (std::abs(order.imag()) > 200.0) throw DomainError("bessel_k: |Im order| > 200");
  if (std::abs(order.real()) > 5.0) throw DomainError("bessel_k: |Re order| > 5");
  ScaledBessel out;
  out.order = order;
  out.argument = x;
  out.scale_exponent = kHalfPi * std::abs(order.imag());
  out.scaled_value = bessel_k_scaled(order, x, &out.abs_error);
  if (order.imag() == 0.0) out.scaled_value = cplx(out.scaled_value.real(), 0.0);
  return out;
}

}  // namespace degeis
