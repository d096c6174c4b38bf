#include "degeis/constant_terms.hpp"

#include <algorithm>
#include <cmath>

#include "degeis/parallel.hpp"
#include "degeis/summation.hpp"

namespace degeis {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_n3(const IwasawaPoint& z) {
  if (z.n < 3) throw DomainError("constant terms: n must be at least 3");
}

double log_det(const IwasawaPoint& z) {
  double v = 0.0;
  for (int k = 1; k < z.n; ++k) v += (z.n - k) * std::log(z.y[k - 1]);
  return v;
}

struct InnerData {
  cplx log_ratio;  // log xi(ns-1) - log xi(ns)
  cplx inner;      // E(m_{n-1}(z), (ns-1)/(n-1))
  double inner_error;
  cplx s_inner;
};

InnerData inner_data(const IwasawaPoint& z, cplx s) {
  const int n = z.n;
  const cplx ns = static_cast<double>(n) * s;
  InnerData d;
  d.log_ratio = log_completed_zeta(ns - 1.0) - log_completed_zeta(ns);
  d.s_inner = (ns - 1.0) / static_cast<double>(n - 1);
  const SpectralParameter sp{n - 1, d.s_inner};
  const auto e = eisenstein_fourier_eval(z.leading_block(n - 1), sp, TruncationPolicy::for_parameter(sp));
  d.inner = e.value;
  d.inner_error = e.abs_error;
  return d;
}

// sum over canonical primitive p in Z^{n-1} and N >= 1 of
// N^{na-1} |sigma_{1-ns}(N)|^2 (y_1 rho)^{-(na-1)} |K_{(ns-1)/2}(2 pi N y_1 rho)|^2,
// scaled by exp(-2 Re log xi(ns) + 2 a log det).
double bessel_series(const IwasawaPoint& z, cplx s, double* tail) {
  const int n = z.n;
  const SpectralParameter sp{n, s};
  const TruncationPolicy pol = TruncationPolicy::for_parameter(sp);
  const int k = n - 1;
  const cplx alpha = sp.bessel_order(k);
  const cplx w = sp.divisor_exp(k);
  const double a = s.real();
  const double na1 = n * a - 1.0;
  const double y1 = z.y[0];
  const double log_outer = -2.0 * log_completed_zeta(sp.zeta_arg()).real() + 2.0 * a * log_det(z) -
                           kPi * std::abs(alpha.imag());
  const double rho_max = pol.x_max / (2.0 * kPi * y1);
  std::vector<CosetDatum> cs;
  if (k == 1) {
    if (rho_max >= 1.0) cs.push_back(CosetDatum{{1}});
  } else {
    cs = primitive_vectors(k, block_gram(z, k), rho_max, pol.vector_budget);
  }
  std::vector<double> terms;
  double max_pref = 0.0;
  for (const auto& c : cs) {
    const double rp = y1 * block_action(c, z).rho;
    const auto mmax = static_cast<std::int64_t>(std::floor(pol.x_max / (2.0 * kPi * rp)));
    for (std::int64_t m = 1; m <= mmax; ++m) {
      const double sg = std::norm(sigma_complex(static_cast<std::uint64_t>(m), w));
      const double pref = std::exp(log_outer + na1 * std::log(static_cast<double>(m)) - na1 * std::log(rp)) * sg;
      const cplx kv = bessel_k_scaled(alpha, 2.0 * kPi * static_cast<double>(m) * rp);
      terms.push_back(pref * std::norm(kv));
      max_pref = std::max(max_pref, pref);
    }
  }
  std::sort(terms.begin(), terms.end(), [](double x, double y) { return x > y; });
  NeumaierSum<double> sum;
  for (double t : terms) sum.add(t);
  if (tail) {
    const cplx kx = bessel_k_scaled(alpha, pol.x_max);
    *tail = max_pref * std::norm(kx) * static_cast<double>(terms.size() + 1);
  }
  return sum.value();
}

}  // namespace

EvaluatedValue constant_term_formula(const IwasawaPoint& z, cplx s) {
  require_n3(z);
  const int n = z.n;
  const InnerData d = inner_data(z, s);
  const double ld = log_det(z);
  const cplx first = 2.0 * std::exp(s * ld);
  const cplx second_pref = std::exp(d.log_ratio + (1.0 - s) / static_cast<double>(n - 1) * ld);
  EvaluatedValue out;
  out.value = first + second_pref * d.inner;
  out.abs_error = std::abs(second_pref) * d.inner_error + 1e-14 * (std::abs(first) + std::abs(second_pref * d.inner));
  return out;
}

ConstantSquarePieces constant_square_pieces(const IwasawaPoint& z, cplx s) {
  require_n3(z);
  const int n = z.n;
  const double a = s.real(), b = s.imag();
  const InnerData d = inner_data(z, s);
  const double ld = log_det(z);
  ConstantSquarePieces p;
  p.power = 4.0 * std::exp(2.0 * a * ld);
  p.inner = std::exp(2.0 * d.log_ratio.real() + 2.0 * (1.0 - a) / (n - 1) * ld) * std::norm(d.inner);
  const cplx cross_exp = cplx(n * a - 2.0 * a + 1.0, n * b) / static_cast<double>(n - 1);
  p.cross = 2.0 * std::exp(cross_exp * ld + std::conj(d.log_ratio)) * std::conj(d.inner);
  p.bessel = 32.0 * bessel_series(z, s, &p.bessel_tail);
  p.bessel_tail *= 32.0;
  return p;
}

EvaluatedValue constant_square_formula(const IwasawaPoint& z, cplx s) {
  const auto p = constant_square_pieces(z, s);
  EvaluatedValue out;
  out.value = p.total();
  out.abs_error = p.bessel_tail + 1e-13 * (p.power + p.inner + 2.0 * std::abs(p.cross) + p.bessel);
  return out;
}

EvaluatedValue constant_square_formula_as_displayed(const IwasawaPoint& z, cplx s) {
  require_n3(z);
  const int n = z.n;
  const double a = s.real();
  const auto p = constant_square_pieces(z, s);
  const double ld = log_det(z);
  // Replace the second piece's power and the Bessel prefactor 32/|xi(ns)|^2.
  const double inner_displayed = p.inner * std::exp(((2.0 - a) - 2.0 * (1.0 - a)) / (n - 1) * ld);
  const double ratio = 8.0 / 32.0 *
                       std::exp(2.0 * log_completed_zeta(static_cast<double>(n) * s).real() -
                                2.0 * log_completed_zeta(s).real());
  EvaluatedValue out;
  out.value = p.power + inner_displayed + 2.0 * p.cross.real() + ratio * p.bessel;
  out.abs_error = ratio * p.bessel_tail;
  return out;
}

ConstantTermsVerification verify_constant_terms(const IwasawaPoint& z, cplx s, int grid, int threads) {
  require_n3(z);
  if (grid < 16) throw DomainError("verify_constant_terms: grid must be at least 16 per axis");
  const int n = z.n;
  const int dims = n - 1;
  std::int64_t total = 1;
  for (int i = 0; i < dims; ++i) total *= grid;

  const SpectralParameter sp{n, s};
  const FourierContext ctx(sp, TruncationPolicy::for_parameter(sp), 0.0);
  std::vector<cplx> values(static_cast<std::size_t>(total));
  parallel_for(total, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t idx = begin; idx < end; ++idx) {
      IwasawaPoint p = z;
      std::int64_t r = idx;
      for (int h = 1; h <= dims; ++h) {
        p.X(h, n) = static_cast<double>(r % grid) / grid;
        r /= grid;
      }
      values[static_cast<std::size_t>(idx)] = eisenstein_fourier_eval_detailed(p, ctx).result.value;
    }
  });
  NeumaierSum<cplx> mean;
  NeumaierSum<double> mean_sq;
  for (const auto& v : values) {
    mean.add(v);
    mean_sq.add(std::norm(v));
  }
  const cplx quad = mean.value() / static_cast<double>(total);
  const double quad_sq = mean_sq.value() / static_cast<double>(total);

  auto report = [&](cplx formula, cplx q) {
    ConstantTermReport r;
    r.formula_value = formula;
    r.quadrature_value = q;
    r.rel_deviation = std::abs(formula - q) / std::max(std::abs(formula), 1e-300);
    r.grid_size = grid;
    return r;
  };
  ConstantTermsVerification v;
  v.constant_term = report(constant_term_formula(z, s).value, quad);
  v.constant_square = report(constant_square_formula(z, s).value, quad_sq);
  v.constant_square_as_displayed = report(constant_square_formula_as_displayed(z, s).value, quad_sq);
  return v;
}

}  // namespace degeis
