#include "degeis/que_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <boost/math/quadrature/gauss.hpp>

#include "degeis/parallel.hpp"
#include "degeis/rng.hpp"
#include "degeis/summation.hpp"

namespace degeis {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean and standard error of the mean, reduced in index order.
Moments moments(const std::vector<double>& f) {
  NeumaierSum<double> s;
  for (double v : f) s.add(v);
  const double n = static_cast<double>(f.size());
  const double mean = s.value() / n;
  NeumaierSum<double> ss;
  for (double v : f) ss.add((v - mean) * (v - mean));
  const double var = f.size() > 1 ? ss.value() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

// Inverse CDF of the density proportional to y^{-e-1} on [lo, hi].
double sample_power(double u, double lo, double hi, double e) {
  const double a = std::pow(lo, -e), b = std::pow(hi, -e);
  return std::pow(a - u * (a - b), -1.0 / e);
}

// Lower bound for 2 pi y_{n-k} |p^T m_k(z)| over the box, all k, nonzero p.
double bessel_argument_floor(const CoordinateBox& box) {
  const int n = box.n;
  double best = INFINITY;
  for (int k = 1; k < n; ++k) {
    double g = 1.0;
    double prod = 1.0;
    // Diagonal of m_k: prod_{r=n-k+1}^{n-i} y_r for i = k-1, ..., 1.
    for (int i = k - 1; i >= 1; --i) {
      prod *= box.y[n - i - 1].lo;
      g = std::min(g, prod);
    }
    best = std::min(best, 2.0 * kPi * box.y[n - k - 1].lo * g);
  }
  return 0.999 * best;
}

SpectralParameter unitary(int n, double t) { return SpectralParameter{n, cplx(0.5, t)}; }

}  // namespace

void check_que_preconditions(int n, double t, const CoordinateBox& box, int certify_samples, std::uint64_t seed) {
  box.validate();
  if (box.n != n) throw DomainError("que: box dimension does not match n");
  if (n * std::abs(t) / 2.0 > 200.0) throw DomainError("que: n t / 2 exceeds the Bessel budget 200");
  if (n >= 3 && n != 3) throw CertificationError("que: certified region only available for n = 2, 3");
  if (!certify_box(box, certify_samples, seed)) throw CertificationError("que: box failed certification");
}

MeasureEstimate mu_estimate(int n, double t, const CoordinateBox& box, std::int64_t samples, std::uint64_t seed,
                            const MuOptions& opt) {
  check_que_preconditions(n, t, box, opt.certify_samples, seed);
  if (samples < 2) throw DomainError("mu_estimate: need at least 2 samples");
  const SpectralParameter sp = unitary(n, t);
  const FourierContext ctx(sp, TruncationPolicy::for_parameter(sp), bessel_argument_floor(box));
  const double vol = volume_box(box);
  std::vector<double> f(static_cast<std::size_t>(samples));
  parallel_for(samples, opt.threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      IwasawaPoint z(n);
      for (std::size_t j = 0; j < z.x.size(); ++j) z.x[j] = rng.uniform(box.x[j].lo, box.x[j].hi);
      for (int k = 1; k < n; ++k)
        z.y[k - 1] = sample_power(rng.uniform(), box.y[k - 1].lo, box.y[k - 1].hi, k * (n - k));
      f[static_cast<std::size_t>(i)] = std::norm(eisenstein_fourier_eval_detailed(z, ctx).result.value);
    }
  });
  const Moments m = moments(f);
  MeasureEstimate est;
  est.value = vol * m.mean;
  est.std_error = vol * m.std_error;
  est.samples = samples;
  est.seed = seed;
  est.t = t;
  est.box_id = opt.box_id;
  return est;
}

double mu_quadrature(int n, double t, const CoordinateBox& box, int nodes, int threads) {
  check_que_preconditions(n, t, box, 1000, 0);
  using GL = boost::math::quadrature::gauss<double, 20>;
  const int panels = std::max(1, (nodes + 19) / 20);
  std::vector<double> xs, ws;
  for (int p = 0; p < panels; ++p) {
    const double lo = -1.0 + 2.0 * p / panels, hi = -1.0 + 2.0 * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
      xs.push_back(mid + half * GL::abscissa()[i]);
      ws.push_back(half * GL::weights()[i]);
      if (GL::abscissa()[i] != 0.0) {
        xs.push_back(mid - half * GL::abscissa()[i]);
        ws.push_back(half * GL::weights()[i]);
      }
    }
  }
  const int m = static_cast<int>(xs.size());
  const int dims = static_cast<int>(box.x.size() + box.y.size());
  std::int64_t total = 1;
  for (int d = 0; d < dims; ++d) total *= m;
  const SpectralParameter sp = unitary(n, t);
  const FourierContext ctx(sp, TruncationPolicy::for_parameter(sp), bessel_argument_floor(box));
  std::vector<double> vals(static_cast<std::size_t>(total));
  parallel_for(total, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t idx = begin; idx < end; ++idx) {
      std::int64_t r = idx;
      IwasawaPoint z(n);
      double w = 1.0;
      for (std::size_t j = 0; j < z.x.size(); ++j) {
        const int q = static_cast<int>(r % m);
        r /= m;
        const auto& iv = box.x[j];
        z.x[j] = 0.5 * (iv.lo + iv.hi) + 0.5 * iv.width() * xs[q];
        w *= 0.5 * iv.width() * ws[q];
      }
      for (std::size_t j = 0; j < z.y.size(); ++j) {
        const int q = static_cast<int>(r % m);
        r /= m;
        const auto& iv = box.y[j];
        z.y[j] = 0.5 * (iv.lo + iv.hi) + 0.5 * iv.width() * xs[q];
        w *= 0.5 * iv.width() * ws[q];
      }
      vals[static_cast<std::size_t>(idx)] =
          w * haar_density(z) * std::norm(eisenstein_fourier_eval_detailed(z, ctx).result.value);
    }
  });
  NeumaierSum<double> s;
  for (double v : vals) s.add(v);
  return s.value();
}

SlopeFit slope_fit(const std::vector<MeasureEstimate>& est) {
  std::set<double> distinct;
  for (const auto& e : est) distinct.insert(e.t);
  if (distinct.size() < 4) throw DomainError("slope_fit: need at least 4 distinct t values");
  for (const auto& e : est)
    if (!(e.t > 0.0)) throw DomainError("slope_fit: t must be positive");
  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (const auto& e : est) {
    const double w = e.std_error > 0.0 ? 1.0 / (e.std_error * e.std_error) : 1.0;
    const double x = std::log(e.t);
    S += w;
    Sx += w * x;
    Sy += w * e.value;
    Sxx += w * x * x;
    Sxy += w * x * e.value;
  }
  const double det = S * Sxx - Sx * Sx;
  SlopeFit fit;
  fit.slope = (S * Sxy - Sx * Sy) / det;
  fit.intercept = (Sxx * Sy - Sx * Sxy) / det;
  fit.slope_error = std::sqrt(S / det);
  double chi2 = 0.0;
  for (const auto& e : est) {
    const double w = e.std_error > 0.0 ? 1.0 / (e.std_error * e.std_error) : 1.0;
    const double r = e.value - fit.intercept - fit.slope * std::log(e.t);
    chi2 += w * r * r;
  }
  fit.residual = est.size() > 2 ? chi2 / static_cast<double>(est.size() - 2) : 0.0;
  fit.t_grid.assign(distinct.begin(), distinct.end());
  return fit;
}

RatioResult ratio_check(const CoordinateBox& A, const CoordinateBox& B, int n, double t, std::int64_t samples,
                        std::uint64_t seed, int threads) {
  RatioResult r;
  MuOptions oa;
  oa.threads = threads;
  oa.box_id = "A";
  MuOptions ob = oa;
  ob.box_id = "B";
  r.a = mu_estimate(n, t, A, samples, seed, oa);
  r.b = mu_estimate(n, t, B, samples, seed, ob);
  r.ratio = r.a.value / r.b.value;
  r.target = volume_box(A) / volume_box(B);
  const double ra = r.a.std_error / r.a.value, rb = r.b.std_error / r.b.value;
  r.sigma = std::abs(r.ratio) * std::sqrt(ra * ra + rb * rb);
  return r;
}

SupportedFunction polynomial_bump(double lo, double hi, int power, double c) {
  if (!(hi > lo && lo > 0.0)) throw DomainError("polynomial_bump: need 0 < lo < hi");
  SupportedFunction eta;
  eta.support = {{lo, hi}};
  eta.f = [lo, hi, power, c](const std::vector<double>& y) {
    const double v = y[0];
    if (v <= lo || v >= hi) return 0.0;
    return c * std::pow((v - lo) * (hi - v), power);
  };
  return eta;
}

double incomplete_min_eisenstein(const IwasawaPoint& z, const SupportedFunction& eta, std::int64_t budget) {
  if (z.n != 2) throw DomainError("incomplete_min_eisenstein: implemented for n = 2 only");
  if (eta.support.size() != 1) throw DomainError("incomplete_min_eisenstein: support must be one interval");
  const double lo = eta.support[0].first;
  if (!(lo > 0.0)) throw DomainError("incomplete_min_eisenstein: support must be bounded away from 0");
  const double x = z.x[0], y = z.y[0];
  NeumaierSum<double> sum;
  sum.add(eta.f({y}));
  std::int64_t visited = 1;
  // Height y / ((cx + d)^2 + c^2 y^2) >= lo forces c <= 1 / sqrt(y lo).
  const auto cmax = static_cast<std::int64_t>(std::floor(1.0 / std::sqrt(y * lo)));
  for (std::int64_t c = 1; c <= cmax; ++c) {
    const double room = y / lo - static_cast<double>(c * c) * y * y;
    if (room < 0.0) break;
    const double r = std::sqrt(room);
    const double cx = static_cast<double>(c) * x;
    const auto dlo = static_cast<std::int64_t>(std::ceil(-cx - r));
    const auto dhi = static_cast<std::int64_t>(std::floor(-cx + r));
    for (std::int64_t d = dlo; d <= dhi; ++d) {
      if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
      if (++visited > budget) throw BudgetError("incomplete_min_eisenstein: coset budget exceeded");
      const double u = cx + static_cast<double>(d);
      sum.add(eta.f({y / (u * u + static_cast<double>(c * c) * y * y)}));
    }
  }
  return sum.value();
}

namespace {

// x uniform on [-1/2, 1/2], y = y0 / U with y0 = sqrt(3)/2; returns the
// weight d*z / (sampling density), zero outside the fundamental domain.
struct DomainSample {
  IwasawaPoint z;
  double weight;
};

DomainSample sample_fundamental_domain(CounterRng& rng) {
  const double y0 = std::sqrt(3.0) / 2.0;
  const double x = rng.uniform(-0.5, 0.5);
  const double y = y0 / rng.uniform();
  const double c2 = measure_constant(2);
  const double w = (x * x + y * y >= 1.0) ? c2 / y0 : 0.0;
  return {IwasawaPoint(2, {x}, {y}), w};
}

}  // namespace

MassResult fundamental_domain_mass(std::int64_t samples, std::uint64_t seed, int threads) {
  if (samples < 2) throw DomainError("fundamental_domain_mass: need at least 2 samples");
  std::vector<double> f(static_cast<std::size_t>(samples));
  parallel_for(samples, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      f[static_cast<std::size_t>(i)] = sample_fundamental_domain(rng).weight;
    }
  });
  const Moments m = moments(f);
  return {m.mean, m.std_error};
}

MeanIdentityResult mean_identity_check(const SupportedFunction& eta, int n, std::int64_t samples, std::uint64_t seed,
                                       int threads) {
  if (n != 2) throw DomainError("mean_identity_check: requires n = 2");
  if (samples < 2) throw DomainError("mean_identity_check: need at least 2 samples");
  std::vector<double> f(static_cast<std::size_t>(samples));
  parallel_for(samples, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      const auto s = sample_fundamental_domain(rng);
      f[static_cast<std::size_t>(i)] = s.weight > 0.0 ? s.weight * incomplete_min_eisenstein(s.z, eta) : 0.0;
    }
  });
  const Moments m = moments(f);
  MeanIdentityResult r;
  r.mc_value = m.mean;
  r.std_error = m.std_error;
  // The factor 1/n^{n-2} equals 1 at n = 2.
  r.mellin_value = mellin_transform(eta.f, eta.support, {cplx(1.0, 0.0)}).real();
  r.alt_value = measure_constant(2) * r.mellin_value;
  r.matches_mellin = std::abs(r.mc_value - r.mellin_value) <= 3.0 * r.std_error;
  r.matches_alt = std::abs(r.mc_value - r.alt_value) <= 3.0 * r.std_error;
  return r;
}

}  // namespace degeis
