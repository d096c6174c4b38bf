// Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace degeis {

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  double l1 = 0.0;
  int intervals = 0;
};

namespace detail {

struct Panel {
  double a, b;
  std::complex<double> value;
  double error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Single Gauss-Kronrod panel; the nodes and weights come from Boost.
template <unsigned N, class F>
Panel gk_panel(F& f, double a, double b) {
  using Kron = boost::math::quadrature::gauss_kronrod<double, N>;
  using Gauss = boost::math::quadrature::gauss<double, (N - 1) / 2>;
  const auto& xk = Kron::abscissa();
  const auto& wk = Kron::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  constexpr unsigned gauss_order = (N - 1) / 2;
  unsigned gauss_start = 2, kronrod_start = 1;
  std::complex<double> fc = f(mid);
  std::complex<double> kr = fc * wk[0];
  std::complex<double> gr = 0.0;
  if (gauss_order & 1) {
    gr = fc * wg[0];
  } else {
    gauss_start = 1;
    kronrod_start = 2;
  }
  double l1 = std::abs(fc) * wk[0];
  for (unsigned i = gauss_start; i < xk.size(); i += 2) {
    auto fp = f(mid + half * xk[i]);
    auto fm = f(mid - half * xk[i]);
    kr += (fp + fm) * wk[i];
    gr += (fp + fm) * wg[i / 2];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
  }
  for (unsigned i = kronrod_start; i < xk.size(); i += 2) {
    auto fp = f(mid + half * xk[i]);
    auto fm = f(mid - half * xk[i]);
    kr += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
  }
  Panel p{a, b, kr * half, std::abs(kr - gr) * half, l1 * half};
  return p;
}

}  // namespace detail

// Globally adaptive integration on [a, b]. Stops when the summed error
// estimate is below max(abs_tol, rel_tol * |value|, l1_tol * int|f|) or the
// panel budget is exhausted. The initial partition uses `initial_panels` equal pieces.
template <unsigned N = 21, class F>
QuadResult integrate_adaptive(F f, double a, double b, double abs_tol, double rel_tol,
                              int initial_panels = 1, int max_panels = 4000,
                              double l1_tol = 0.0) {
  std::priority_queue<detail::Panel> heap;
  QuadResult r;
  const int n0 = std::max(1, initial_panels);
  const double w = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    double lo = a + i * w, hi = (i + 1 == n0) ? b : a + (i + 1) * w;
    heap.push(detail::gk_panel<N>(f, lo, hi));
  }
  auto totals = [&]() {
    std::complex<double> v = 0.0;
    double e = 0.0, l1 = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
    r.value = v;
    r.error = e;
    r.l1 = l1;
  };
  totals();
  int count = n0;
  while (count < max_panels) {
    if (r.error <= std::max({abs_tol, rel_tol * std::abs(r.value), l1_tol * r.l1})) break;
    detail::Panel worst = heap.top();
    heap.pop();
    double m = 0.5 * (worst.a + worst.b);
    auto left = detail::gk_panel<N>(f, worst.a, m);
    auto right = detail::gk_panel<N>(f, m, worst.b);
    r.value += left.value + right.value - worst.value;
    r.error += left.error + right.error - worst.error;
    r.l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++count;
    if (count % 64 == 0) totals();
  }
  totals();
  r.intervals = count;
  return r;
}

// Fixed composite Gauss-Legendre rule with `panels` equal panels.
template <unsigned N = 20, class F>
std::complex<double> integrate_gauss_legendre(F f, double a, double b, int panels) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  std::complex<double> total = 0.0;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width, half = 0.5 * width;
    std::complex<double> acc = 0.0;
    unsigned start = 0;
    if (N & 1) {
      acc += f(mid) * w[0];
      start = 1;
    }
    for (unsigned i = start; i < x.size(); ++i) {
      acc += (f(mid + half * x[i]) + f(mid - half * x[i])) * w[i];
    }
    total += acc * half;
  }
  return total;
}

}  // namespace degeis
