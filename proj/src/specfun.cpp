#include "degeis/specfun.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "degeis/quadrature.hpp"
#include "degeis/summation.hpp"

namespace degeis {
namespace {

constexpr double kPi = 3.14159265358979323846;
const double kLogPi = std::log(kPi);
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

cplx log_sin(cplx z) {
  if (z.imag() < 0.0) return std::conj(log_sin(std::conj(z)));
  // sin z = exp(-iz) (1 - exp(2iz)) i/2 with |exp(2iz)| <= 1.
  const cplx i(0.0, 1.0);
  return -i * z + std::log((1.0 - std::exp(2.0 * i * z)) * cplx(0.0, 0.5));
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole");
  if (z.real() < 0.5) return kLogPi - log_sin(kPi * z) - log_gamma(1.0 - z);
  cplx acc = 0.0;
  while (std::abs(z) < 15.0) {
    acc -= std::log(z);
    z += 1.0;
  }
  cplx res = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  const cplx inv = 1.0 / z, inv2 = inv * inv;
  cplx p = inv;
  for (int k = 1; k <= 12; ++k) {
    res += boost::math::bernoulli_b2n<double>(k) / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= inv2;
  }
  return res + acc;
}

EvaluatedValue gamma_complex(cplx s) {
  EvaluatedValue out;
  if (is_nonpositive_integer(s)) {
    out.pole = true;
    out.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
    out.abs_error = 0.0;
    return out;
  }
  const cplx lg = log_gamma(s);
  out.value = std::exp(lg);
  // Absolute error of log Gamma is dominated by rounding in the Stirling sum.
  out.abs_error = std::abs(out.value) * 4e-16 * (1.0 + std::abs(lg));
  return out;
}

namespace {

// Euler-Maclaurin for Re s >= 1/2 (s != 1).
EvaluatedValue zeta_em(cplx s) {
  const double as = std::abs(s);
  const int N = std::max(12, static_cast<int>(std::ceil((as + 80.0) / kPi)));
  KahanSum<cplx> head;
  double abs_head = 0.0;
  for (int k = 1; k < N; ++k) {
    cplx t = std::exp(-s * std::log(static_cast<double>(k)));
    head.add(t);
    abs_head += std::abs(t);
  }
  const double lnN = std::log(static_cast<double>(N));
  const cplx Nms = std::exp(-s * lnN);
  cplx sum = head.value() + Nms * static_cast<double>(N) / (s - 1.0) + 0.5 * Nms;
  cplx poch = s;  // s (s+1) ... (s+2j-2)
  double last = 0.0;
  double Npow = 1.0 / N;  // N^{1-2j}
  for (int j = 1; j <= 40; ++j) {
    double coef = boost::math::bernoulli_b2n<double>(j) / std::tgamma(2.0 * j + 1.0);
    cplx term = coef * poch * Npow * Nms;
    sum += term;
    last = std::abs(term);
    if (last < 1e-17 * std::abs(sum)) break;
    poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    Npow /= static_cast<double>(N) * N;
  }
  EvaluatedValue out;
  out.value = sum;
  out.abs_error = last + 2e-16 * (abs_head + std::abs(sum));
  return out;
}

}  // namespace

EvaluatedValue riemann_zeta(cplx s) {
  EvaluatedValue out;
  if (s == cplx(1.0, 0.0)) {
    out.pole = true;
    out.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }
  if (s == cplx(0.0, 0.0)) {
    out.value = -0.5;
    return out;
  }
  if (s.real() >= 0.5) return zeta_em(s);
  if (s.imag() == 0.0 && s.real() < 0.0 && std::fmod(s.real(), 2.0) == 0.0) {
    out.value = 0.0;  // trivial zeros
    return out;
  }
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  EvaluatedValue reflected = zeta_em(1.0 - s);
  const cplx lf = s * std::log(2.0) + (s - 1.0) * kLogPi + log_sin(0.5 * kPi * s) + log_gamma(1.0 - s);
  const cplx f = std::exp(lf);
  out.value = f * reflected.value;
  out.abs_error = std::abs(f) * reflected.abs_error + std::abs(out.value) * 4e-16 * (1.0 + std::abs(lf));
  return out;
}

cplx log_completed_zeta(cplx s) {
  if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0)) throw PoleError("completed_zeta: pole");
  if (s.real() < 0.5) s = 1.0 - s;
  EvaluatedValue z = riemann_zeta(s);
  return -0.5 * s * kLogPi + log_gamma(0.5 * s) + std::log(z.value);
}

EvaluatedValue completed_zeta(cplx s) {
  EvaluatedValue out;
  if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0)) {
    out.pole = true;
    out.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }
  if (s.real() < 0.5) s = 1.0 - s;
  EvaluatedValue z = riemann_zeta(s);
  const cplx lg = -0.5 * s * kLogPi + log_gamma(0.5 * s);
  const cplx g = std::exp(lg);
  out.value = g * z.value;
  out.abs_error = std::abs(g) * z.abs_error + std::abs(out.value) * 4e-16 * (1.0 + std::abs(lg));
  return out;
}

cplx sigma_complex(std::uint64_t m, cplx w) {
  if (m == 0) throw DomainError("sigma_complex: m must be positive");
  if (std::abs(w.real()) * std::log(static_cast<double>(m)) > 700.0)
    throw DomainError("sigma_complex: overflow guard");
  cplx result = 1.0;
  std::uint64_t n = m;
  auto factor = [&](std::uint64_t p) {
    if (n % p != 0) return;
    const cplx pw = std::exp(w * std::log(static_cast<double>(p)));
    cplx local = 1.0, power = 1.0;
    while (n % p == 0) {
      n /= p;
      power *= pw;
      local += power;
    }
    result *= local;
  };
  factor(2);
  for (std::uint64_t p = 3; p * p <= n; p += 2) factor(p);
  if (n > 1) result *= 1.0 + std::exp(w * std::log(static_cast<double>(n)));
  return result;
}

IdentityCheck stade_check(cplx mu, cplx nu, cplx s) {
  const double margin = s.real() - std::abs(mu.real()) - std::abs(nu.real());
  if (!(margin > 0.0)) throw DomainError("stade_check: Re s must exceed |Re mu| + |Re nu|");
  IdentityCheck out;
  // Right-hand side.
  const cplx lr = (s - 3.0) * std::log(2.0) + log_gamma(0.5 * (s + mu + nu)) +
                  log_gamma(0.5 * (s + mu - nu)) + log_gamma(0.5 * (s - mu + nu)) +
                  log_gamma(0.5 * (s - mu - nu)) - log_gamma(s);
  out.rhs.value = std::exp(lr);
  out.rhs.abs_error = std::abs(out.rhs.value) * 1e-15 * (5.0 + std::abs(lr));
  // Left-hand side in the variable y = e^u.
  const double sm = 0.5 * kPi * (std::abs(mu.imag()) + std::abs(nu.imag()));
  const double u_lo = -36.0 / margin;
  const double u_hi = std::log(60.0 + 2.0 * (std::abs(mu.imag()) + std::abs(nu.imag())));
  auto f = [&](double u) -> cplx {
    const double y = std::exp(u);
    cplx k1 = bessel_k_scaled(mu, y);
    cplx k2 = bessel_k_scaled(nu, y);
    return k1 * k2 * std::exp(s * u - sm);
  };
  auto q = integrate_adaptive<21>(f, u_lo, u_hi, 0.0, 1e-12, 16, 4000, 1e-15);
  out.lhs.value = q.value;
  out.lhs.abs_error = q.error + 1e-14 * q.l1;
  return out;
}

RamanujanCheck ramanujan_check(cplx a, cplx b, cplx s, std::int64_t N) {
  const double ap = std::max(a.real(), 0.0), bp = std::max(b.real(), 0.0);
  const double sigma0 = 1.0 + ap + bp;
  if (!(s.real() > sigma0 + 0.5)) throw DomainError("ramanujan_check: Re s too small for convergence");
  if (N < 1) throw DomainError("ramanujan_check: N must be positive");
  RamanujanCheck out;
  // Divisor sums by sieving.
  std::vector<cplx> sa(N + 1, 0.0), sb(N + 1, 0.0);
  for (std::int64_t d = 1; d <= N; ++d) {
    const double ld = std::log(static_cast<double>(d));
    const cplx da = std::exp(a * ld), db = std::exp(b * ld);
    for (std::int64_t m = d; m <= N; m += d) {
      sa[m] += da;
      sb[m] += db;
    }
  }
  NeumaierSum<cplx> acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    acc.add(sa[n] * sb[n] * std::exp(-s * std::log(static_cast<double>(n))));
  }
  out.lhs_partial = acc.value();
  out.rhs = riemann_zeta(s).value * riemann_zeta(s - a).value * riemann_zeta(s - b).value *
            riemann_zeta(s - a - b).value / riemann_zeta(2.0 * s - a - b).value;
  // Tail: |sigma_a(n) sigma_b(n)| <= sigma_A(n) sigma_B(n) with A, B the real
  // parts. For n > N and sigma0 < c < Re s, n^{-Re s} <= N^{c - Re s} n^{-c},
  // and the positive series at c has the closed form of the same identity.
  const double A = a.real(), B = b.real(), sr = s.real();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 200; ++i) {
    const double c = sigma0 + (sr - sigma0) * i / 200.0;
    const double series = riemann_zeta(c).value.real() * riemann_zeta(c - A).value.real() *
                          riemann_zeta(c - B).value.real() * riemann_zeta(c - A - B).value.real() /
                          riemann_zeta(2.0 * c - A - B).value.real();
    const double bound = std::pow(static_cast<double>(N), c - sr) * series;
    best = std::min(best, bound);
  }
  out.tail_bound = best;
  return out;
}

cplx mellin_transform(const MultiFunction& eta, const std::vector<std::pair<double, double>>& support,
                      const std::vector<cplx>& s, int panels) {
  const std::size_t d = support.size();
  if (d == 0 || s.size() != d) throw DomainError("mellin_transform: dimension mismatch");
  for (const auto& iv : support) {
    if (!(iv.first > 0.0 && iv.second > iv.first && std::isfinite(iv.second)))
      throw DomainError("mellin_transform: support must be a compact subset of (0, inf)");
  }
  using G = boost::math::quadrature::gauss<double, 20>;
  // Per-axis nodes and weights (weights include y^{-s-1}).
  std::vector<std::vector<double>> nodes(d);
  std::vector<std::vector<cplx>> weights(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double lo = support[k].first, hi = support[k].second;
    const double w = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * w, half = 0.5 * w;
      for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
        for (int sgn : {1, -1}) {
          const double y = mid + sgn * half * G::abscissa()[i];
          nodes[k].push_back(y);
          weights[k].push_back(G::weights()[i] * half * std::exp(-(s[k] + 1.0) * std::log(y)));
        }
      }
    }
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> y(d);
  NeumaierSum<cplx> acc;
  while (true) {
    cplx w = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      y[k] = nodes[k][idx[k]];
      w *= weights[k][idx[k]];
    }
    acc.add(w * eta(y));
    std::size_t k = 0;
    while (k < d && ++idx[k] == nodes[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
  return acc.value();
}

}  // namespace degeis
