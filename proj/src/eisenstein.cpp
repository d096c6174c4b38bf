#include "degeis/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "degeis/parallel.hpp"
#include "degeis/summation.hpp"

namespace degeis {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double log_det(const IwasawaPoint& z) {
  double v = 0.0;
  for (int k = 1; k < z.n; ++k) v += (z.n - k) * std::log(z.y[k - 1]);
  return v;
}

// |a^T z|^2 for an integer vector a.
double lattice_norm2(const IwasawaPoint& z, const std::vector<std::int64_t>& a) {
  double q = 0.0;
  for (int j = 1; j <= z.n; ++j) {
    double b = static_cast<double>(a[j - 1]);
    for (int i = 1; i < j; ++i) b += static_cast<double>(a[i - 1]) * z.X(i, j);
    b *= z.d(j);
    q += b * b;
  }
  return q;
}

// Same for a real vector.
double form_norm2(const IwasawaPoint& z, const std::vector<double>& p) {
  double q = 0.0;
  for (int j = 1; j <= z.n; ++j) {
    double b = p[j - 1];
    for (int i = 1; i < j; ++i) b += p[i - 1] * z.X(i, j);
    b *= z.d(j);
    q += b * b;
  }
  return q;
}

// Sum over Z^n with 0 < max|a_i| <= R of |a^T z|^{-2w}, plus the integral of
// |p^T z|^{-2w} over the complement of the cube of half-width R + 1/2.
cplx epstein_partial(const IwasawaPoint& z, cplx w, int R) {
  const int n = z.n;
  std::vector<std::int64_t> a(n, -R);
  NeumaierSum<cplx> sum;
  while (true) {
    int first = 0;
    while (first < n && a[first] == 0) ++first;
    if (first < n && a[first] > 0) sum.add(2.0 * std::exp(-w * std::log(lattice_norm2(z, a))));
    int i = n - 1;
    while (i >= 0 && a[i] == R) {
      a[i] = -R;
      --i;
    }
    if (i < 0) break;
    ++a[i];
  }

  // Tail: (h / (2w - n)) * sum over faces of int Q^{-w} dA; opposite faces agree.
  const double h = R + 0.5;
  constexpr int kNodes = 20;
  using GL = boost::math::quadrature::gauss<double, kNodes>;
  const int panels = 6;
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    const double lo = -h + 2.0 * h * p / panels, hi = -h + 2.0 * h * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const auto& xs = GL::abscissa();
    const auto& ws = GL::weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      nodes.push_back(mid + half * xs[i]);
      weights.push_back(half * ws[i]);
      if (xs[i] != 0.0) {
        nodes.push_back(mid - half * xs[i]);
        weights.push_back(half * ws[i]);
      }
    }
  }
  const int m = static_cast<int>(nodes.size());
  NeumaierSum<cplx> face_sum;
  std::vector<double> p(n);
  std::vector<int> idx(n - 1, 0);
  for (int axis = 0; axis < n; ++axis) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      double wt = 1.0;
      for (int c = 0, j = 0; c < n; ++c) {
        if (c == axis) {
          p[c] = h;
        } else {
          p[c] = nodes[idx[j]];
          wt *= weights[idx[j]];
          ++j;
        }
      }
      face_sum.add(wt * std::exp(-w * std::log(form_norm2(z, p))));
      int j = n - 2;
      while (j >= 0 && idx[j] == m - 1) {
        idx[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++idx[j];
    }
  }
  const cplx tail = 2.0 * face_sum.value() * h / (2.0 * w - static_cast<double>(n));
  return sum.value() + tail;
}

}  // namespace

double TruncationPolicy::minimum_x_max(const SpectralParameter& sp) {
  const double tau = sp.tau();
  return tau + 10.0 * std::cbrt(tau) + 40.0;
}

TruncationPolicy TruncationPolicy::for_parameter(const SpectralParameter& sp, double extra) {
  TruncationPolicy p;
  p.x_max = minimum_x_max(sp) + extra;
  return p;
}

void TruncationPolicy::validate(const SpectralParameter& sp) const {
  if (sp.n < 2) throw DomainError("SpectralParameter: n must be at least 2");
  if (x_max < minimum_x_max(sp) * (1.0 - 1e-12))
    throw DomainError("TruncationPolicy: x_max below tau + 10 tau^(1/3) + 40");
  if (m_max < 1 || vector_budget < 1) throw DomainError("TruncationPolicy: caps must be positive");
}

EvaluatedValue epstein_direct(const IwasawaPoint& z, cplx s, int R) {
  const int n = z.n;
  const cplx ns = static_cast<double>(n) * s;
  if (!(ns.real() > n + 0.2)) throw DivergenceError("epstein_direct: requires Re(ns) > n + 0.2");
  if (R < 1) throw DomainError("epstein_direct: R must be at least 1");
  const cplx w = 0.5 * ns;
  // The corrected partial sums carry an error c h^{-p} + O(h^{-p-2}) with
  // h = R + 1/2 and p = 2w - n + 2; one Richardson step removes the leading
  // term, and the spread between two extrapolations estimates the rest.
  const cplx p = 2.0 * w - static_cast<double>(n) + 2.0;
  const int R1 = std::max(1, static_cast<int>(std::lround(0.7 * R)));
  const int R2 = std::max(1, static_cast<int>(std::lround(0.49 * R)));
  const cplx v0 = epstein_partial(z, w, R);
  cplx value = v0;
  double err = 0.0;
  if (R2 < R1 && R1 < R) {
    const cplx v1 = epstein_partial(z, w, R1);
    const cplx v2 = epstein_partial(z, w, R2);
    auto extrapolate = [&](cplx va, int ra, cplx vb, int rb) {
      const cplx ha = std::pow(ra + 0.5, p), hb = std::pow(rb + 0.5, p);
      return (va * ha - vb * hb) / (ha - hb);
    };
    value = extrapolate(v0, R, v1, R1);
    const cplx value_coarse = extrapolate(v1, R1, v2, R2);
    err = std::abs(value - value_coarse);
  } else {
    err = std::abs(v0);
  }
  const auto zeta = riemann_zeta(ns);
  const cplx scale = std::exp(s * log_det(z)) / zeta.value;
  EvaluatedValue out;
  out.value = scale * value;
  out.abs_error = std::abs(scale) * (err + 1e-15 * std::abs(value)) +
                  std::abs(out.value) * zeta.abs_error / std::abs(zeta.value);
  return out;
}

EvaluatedValue constant_coefficient(const IwasawaPoint& z, cplx s) {
  const int n = z.n;
  const cplx ns = static_cast<double>(n) * s;
  EvaluatedValue out;
  const cplx lxi = log_completed_zeta(ns);
  NeumaierSum<cplx> sum;
  for (int k = 0; k <= n - 1; ++k) {
    double lp1 = 0.0, lp2 = 0.0;
    for (int i = 1; i <= n - k - 1; ++i) lp1 += i * std::log(z.y[i - 1]);
    for (int j = 0; j < k; ++j) lp2 += (k - j) * std::log(z.y[n - k + j - 1]);
    cplx ratio_log;
    if (k == n - 1) {
      ratio_log = 0.0;
    } else {
      ratio_log = log_completed_zeta(ns - static_cast<double>(n - k - 1)) - lxi;
    }
    sum.add(2.0 * std::exp(ratio_log + (1.0 - s) * lp1 + s * lp2));
  }
  out.value = sum.value();
  out.abs_error = 1e-14 * n * std::abs(out.value);
  return out;
}

namespace {

struct LevelPowers {
  double log_p1 = 0.0, log_p2 = 0.0;
};

LevelPowers level_powers(const IwasawaPoint& z, int k) {
  LevelPowers lp;
  const int n = z.n;
  for (int i = 1; i <= n - k - 1; ++i) lp.log_p1 += i * std::log(z.y[i - 1]);
  for (int j = 0; j < k; ++j) lp.log_p2 += (k - j) * std::log(z.y[n - k + j - 1]);
  return lp;
}

// Everything in a (k, m) coefficient except the scaled Bessel value and the
// factor 4 cos(2 pi m xprime), as exp(log); includes the Bessel descaling.
cplx coefficient_log_prefactor(cplx log_two_over_xi, cplx alpha, std::int64_t m, double rho_prime,
                               const LevelPowers& lp, cplx s) {
  const double scale = 0.5 * kPi * std::abs(alpha.imag());
  return log_two_over_xi + alpha * std::log(static_cast<double>(m)) + (1.0 - s) * lp.log_p1 +
         s * lp.log_p2 - alpha * std::log(rho_prime) - scale;
}

}  // namespace

EvaluatedValue mode_coefficient(int k, std::int64_t m, double rho, double xprime, const IwasawaPoint& z,
                                cplx s) {
  const int n = z.n;
  if (k < 1 || k > n - 1) throw DomainError("mode_coefficient: k out of range");
  if (m < 1) throw DomainError("mode_coefficient: m must be positive");
  if (!(rho > 0.0)) throw DomainError("mode_coefficient: rho must be positive");
  const SpectralParameter sp{n, s};
  const cplx alpha = sp.bessel_order(k);
  const double rho_prime = z.y[n - k - 1] * rho;
  const auto kb = bessel_k(alpha, kTwoPi * static_cast<double>(m) * rho_prime);
  const cplx lpre = coefficient_log_prefactor(std::log(2.0) - log_completed_zeta(sp.zeta_arg()), alpha, m,
                                              rho_prime, level_powers(z, k), s);
  const cplx pre = std::exp(lpre) * sigma_complex(static_cast<std::uint64_t>(m), sp.divisor_exp(k));
  const double c = 4.0 * std::cos(kTwoPi * static_cast<double>(m) * xprime);
  EvaluatedValue out;
  out.value = pre * kb.scaled_value * c;
  out.abs_error = std::abs(pre) * std::abs(c) * kb.abs_error + 1e-14 * std::abs(out.value);
  return out;
}

Eigen::MatrixXd block_gram(const IwasawaPoint& z, int k) {
  if (k < 1 || k > z.n) throw DomainError("block_gram: k out of range");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  const double dk = z.d(k);
  for (int j = 1; j <= k; ++j) {
    const double dj = z.d(j) / dk;
    m(j - 1, j - 1) = dj;
    for (int i = 1; i < j; ++i) m(i - 1, j - 1) = z.X(i, j) * dj;
  }
  return m * m.transpose();
}

std::vector<CosetDatum> primitive_vectors(int k, const Eigen::MatrixXd& gram, double rho_max,
                                          std::int64_t budget) {
  if (k < 1 || gram.rows() != k || gram.cols() != k) throw DomainError("primitive_vectors: bad Gram matrix");
  if (!(rho_max > 0.0)) throw DomainError("primitive_vectors: rho_max must be positive");
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw DomainError("primitive_vectors: Gram matrix not positive definite");
  const Eigen::MatrixXd R = llt.matrixL().transpose();  // gram = R^T R, R upper triangular
  const double r2 = rho_max * rho_max * (1.0 + 1e-12);

  std::vector<CosetDatum> out;
  std::vector<std::int64_t> a(k, 0);
  std::vector<double> rem(k + 1, 0.0);
  rem[k] = r2;

  // Depth-first over coordinates k-1, ..., 0.
  auto center = [&](int i) {
    double c = 0.0;
    for (int j = i + 1; j < k; ++j) c += R(i, j) * static_cast<double>(a[j]);
    return -c / R(i, i);
  };
  std::vector<std::int64_t> hi(k, 0);
  int i = k - 1;
  auto init_level = [&](int lvl) {
    const double c = center(lvl);
    const double hw = std::sqrt(std::max(0.0, rem[lvl + 1])) / R(lvl, lvl);
    a[lvl] = static_cast<std::int64_t>(std::ceil(c - hw));
    hi[lvl] = static_cast<std::int64_t>(std::floor(c + hw));
  };
  init_level(i);
  while (true) {
    if (a[i] > hi[i]) {
      ++i;
      if (i >= k) break;
      ++a[i];
      continue;
    }
    double t = R(i, i) * static_cast<double>(a[i]);
    for (int j = i + 1; j < k; ++j) t += R(i, j) * static_cast<double>(a[j]);
    rem[i] = rem[i + 1] - t * t;
    if (rem[i] < 0.0) {
      ++a[i];
      continue;
    }
    if (i == 0) {
      int first = 0;
      while (first < k && a[first] == 0) ++first;
      if (first < k && a[first] > 0) {
        std::int64_t g = 0;
        for (auto v : a) g = std::gcd(g, v < 0 ? -v : v);
        if (g == 1) {
          if (static_cast<std::int64_t>(out.size()) >= budget)
            throw BudgetError("primitive_vectors: vector budget exceeded");
          out.push_back(CosetDatum{a});
        }
      }
      ++a[i];
      continue;
    }
    --i;
    init_level(i);
  }
  std::sort(out.begin(), out.end(), [&](const CosetDatum& x, const CosetDatum& y) {
    Eigen::VectorXd vx(k), vy(k);
    for (int j = 0; j < k; ++j) {
      vx[j] = static_cast<double>(x.a[j]);
      vy[j] = static_cast<double>(y.a[j]);
    }
    const double qx = vx.dot(gram * vx), qy = vy.dot(gram * vy);
    if (qx != qy) return qx < qy;
    return x.a < y.a;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Bessel table

namespace {
constexpr int kChebDegree = 32;
}

BesselTable::BesselTable(cplx nu, double x_lo, double x_hi) : nu_(nu), lo_(x_lo), hi_(x_hi) {
  if (!(x_lo > 0.0 && x_hi > x_lo)) throw DomainError("BesselTable: invalid range");
  breaks_.push_back(x_lo);
  const int initial = std::max(1, static_cast<int>(std::ceil((x_hi - x_lo) / 2.0)));
  for (int p = 0; p < initial; ++p)
    build_panel(x_lo + (x_hi - x_lo) * p / initial, x_lo + (x_hi - x_lo) * (p + 1) / initial, 0);
}

void BesselTable::build_panel(double a, double b, int depth) {
  const int D = kChebDegree;
  std::vector<cplx> f(D + 1);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fmax = 0.0;
  for (int j = 0; j <= D; ++j) {
    f[j] = bessel_k_scaled(nu_, mid + half * std::cos(kPi * j / D));
    fmax = std::max(fmax, std::abs(f[j]));
  }
  std::vector<cplx> c(D + 1);
  for (int kk = 0; kk <= D; ++kk) {
    cplx acc = 0.0;
    for (int j = 0; j <= D; ++j) {
      const double w = (j == 0 || j == D) ? 0.5 : 1.0;
      acc += w * f[j] * std::cos(kPi * j * kk / D);
    }
    c[kk] = acc * (2.0 / D);
  }
  c[0] *= 0.5;
  c[D] *= 0.5;
  const double tail = std::max({std::abs(c[D - 2]), std::abs(c[D - 1]), std::abs(c[D])});
  if (tail > 5e-12 * fmax && depth < 24 && half > 1e-4) {
    build_panel(a, mid, depth + 1);
    build_panel(mid, b, depth + 1);
    return;
  }
  breaks_.push_back(b);
  coef_.push_back(std::move(c));
  const double xc = a + 0.37 * (b - a);
  const cplx direct = bessel_k_scaled(nu_, xc);
  const cplx interp = (*this)(xc);
  check_error_ = std::max(check_error_, std::abs(direct - interp) / std::max(fmax, 1e-300));
}

cplx BesselTable::operator()(double x) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t p = (it == breaks_.begin()) ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  if (p >= coef_.size()) p = coef_.size() - 1;
  const double a = breaks_[p], b = breaks_[p + 1];
  const double t = (2.0 * x - a - b) / (b - a);
  const auto& c = coef_[p];
  cplx b1 = 0.0, b2 = 0.0;
  for (int kk = static_cast<int>(c.size()) - 1; kk >= 1; --kk) {
    const cplx tmp = 2.0 * t * b1 - b2 + c[kk];
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + c[0];
}

// ---------------------------------------------------------------------------
// Fourier evaluator

FourierContext::FourierContext(const SpectralParameter& sp, const TruncationPolicy& pol, double x_lo)
    : sp_(sp), pol_(pol) {
  pol_.validate(sp_);
  log_two_over_xi_ = std::log(2.0) - log_completed_zeta(sp_.zeta_arg());
  tables_.resize(sp_.n - 1);
  sigma_.resize(sp_.n - 1);
  if (x_lo > 0.0 && x_lo < pol_.x_max) {
    const auto mcap = static_cast<std::int64_t>(std::min<double>(pol_.x_max / x_lo + 1.0, 1e6));
    for (int k = 1; k < sp_.n; ++k) {
      const cplx alpha = sp_.bessel_order(k);
      bool shared = false;
      for (int j = 1; j < k; ++j)
        if (tables_[j - 1] && tables_[j - 1]->order() == alpha) shared = true;
      if (!shared) tables_[k - 1] = std::make_unique<BesselTable>(alpha, x_lo, pol_.x_max);
      auto& sg = sigma_[k - 1];
      sg.resize(static_cast<std::size_t>(mcap) + 1);
      for (std::int64_t m = 1; m <= mcap; ++m)
        sg[static_cast<std::size_t>(m)] = sigma_complex(static_cast<std::uint64_t>(m), sp_.divisor_exp(k));
    }
  }
}

cplx FourierContext::bessel_scaled(int k, double x, double* err) const {
  const auto& t = tables_[k - 1];
  if (t && t->covers(x)) {
    const cplx v = (*t)(x);
    if (err) *err = 1e-12 * std::max(1.0, std::abs(v));
    return v;
  }
  return bessel_k_scaled(sp_.bessel_order(k), x, err);
}

cplx FourierContext::sigma(int k, std::int64_t m) const {
  const auto& sg = sigma_[k - 1];
  if (m >= 1 && static_cast<std::size_t>(m) < sg.size()) return sg[static_cast<std::size_t>(m)];
  return sigma_complex(static_cast<std::uint64_t>(m), sp_.divisor_exp(k));
}

namespace {

struct RawTerm {
  cplx value;
  double mag;
  double err;
  int k;
  std::int64_t m;
  std::size_t coset;
};

}  // namespace

FourierEvaluation eisenstein_fourier_eval_detailed(const IwasawaPoint& z, const FourierContext& ctx,
                                                   std::vector<CoeffTerm>* terms_out) {
  const SpectralParameter& sp = ctx.parameter();
  const TruncationPolicy& pol = ctx.policy();
  const int n = sp.n;
  if (z.n != n) throw DomainError("eisenstein_fourier_eval: dimension mismatch");
  const cplx s = sp.s;

  FourierEvaluation fe;
  const EvaluatedValue c0 = constant_coefficient(z, s);
  std::vector<RawTerm> all;
  std::vector<std::vector<CosetDatum>> cosets(n);
  double tail = 0.0;

  for (int k = 1; k <= n - 1; ++k) {
    const double ynk = z.y[n - k - 1];
    const double rho_max = pol.x_max / (kTwoPi * ynk);
    std::vector<CosetDatum> cs;
    if (k == 1) {
      if (rho_max >= 1.0) cs.push_back(CosetDatum{{1}});
    } else {
      cs = primitive_vectors(k, block_gram(z, k), rho_max, pol.vector_budget);
    }
    fe.cosets += static_cast<std::int64_t>(cs.size());
    const LevelPowers lp = level_powers(z, k);
    const cplx alpha = sp.bessel_order(k);

    std::vector<std::vector<RawTerm>> per(cs.size());
    std::vector<double> per_pref(cs.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(cs.size()), pol.threads, [&](std::int64_t b, std::int64_t e) {
      for (std::int64_t ci = b; ci < e; ++ci) {
        const auto ba = block_action(cs[static_cast<std::size_t>(ci)], z);
        const double rho_prime = ynk * ba.rho;
        const auto mmax = std::min<std::int64_t>(
            pol.m_max, static_cast<std::int64_t>(std::floor(pol.x_max / (kTwoPi * rho_prime))));
        auto& vec = per[static_cast<std::size_t>(ci)];
        for (std::int64_t m = 1; m <= mmax; ++m) {
          const double xarg = kTwoPi * static_cast<double>(m) * rho_prime;
          double kerr = 0.0;
          const cplx kv = ctx.bessel_scaled(k, xarg, &kerr);
          const cplx pre = std::exp(coefficient_log_prefactor(ctx.log_two_over_xi(), alpha, m, rho_prime, lp, s)) *
                           ctx.sigma(k, m);
          const double c = 4.0 * std::cos(kTwoPi * static_cast<double>(m) * ba.xprime);
          const cplx v = pre * kv * c;
          per_pref[static_cast<std::size_t>(ci)] = std::max(per_pref[static_cast<std::size_t>(ci)], 4.0 * std::abs(pre));
          vec.push_back(RawTerm{v, std::abs(v), std::abs(pre) * 4.0 * kerr, k, m, static_cast<std::size_t>(ci)});
        }
      }
    });
    double max_pref = 0.0;
    std::int64_t level_terms = 0;
    for (std::size_t ci = 0; ci < per.size(); ++ci) {
      max_pref = std::max(max_pref, per_pref[ci]);
      level_terms += static_cast<std::int64_t>(per[ci].size());
      for (auto& t : per[ci]) all.push_back(t);
    }
    // Tail estimate: every omitted term has Bessel argument beyond x_max.
    if (max_pref > 0.0) {
      const cplx kx = ctx.bessel_scaled(k, pol.x_max, nullptr);
      tail += max_pref * std::abs(kx) * static_cast<double>(level_terms + 1);
    }
    cosets[k] = std::move(cs);
  }

  std::stable_sort(all.begin(), all.end(), [](const RawTerm& a, const RawTerm& b) { return a.mag > b.mag; });
  NeumaierSum<cplx> sum;
  double err = c0.abs_error + tail;
  double abs_total = std::abs(c0.value);
  for (const auto& t : all) {
    sum.add(t.value);
    err += t.err;
    abs_total += t.mag;
  }
  sum.add(c0.value);
  fe.result.value = sum.value();
  fe.result.abs_error = err + 1e-16 * abs_total;
  fe.terms = static_cast<std::int64_t>(all.size());
  if (terms_out) {
    terms_out->clear();
    terms_out->reserve(all.size());
    for (const auto& t : all) terms_out->push_back(CoeffTerm{t.k, t.m, cosets[t.k][t.coset], t.value});
  }
  return fe;
}

EvaluatedValue eisenstein_fourier_eval(const IwasawaPoint& z, const SpectralParameter& sp,
                                       const TruncationPolicy& pol) {
  FourierContext ctx(sp, pol, 0.0);
  return eisenstein_fourier_eval_detailed(z, ctx).result;
}

double automorphy_check(const IwasawaPoint& z, const Eigen::MatrixXd& gamma, const SpectralParameter& sp,
                        const TruncationPolicy& pol) {
  const IwasawaPoint gz = act(gamma, z);
  FourierContext ctx(sp, pol, 0.0);
  const cplx e0 = eisenstein_fourier_eval_detailed(z, ctx).result.value;
  const cplx e1 = eisenstein_fourier_eval_detailed(gz, ctx).result.value;
  return std::abs(e1 - e0) / std::max(std::abs(e0), 1e-300);
}

}  // namespace degeis
