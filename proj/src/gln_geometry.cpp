#include "degeis/gln_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "degeis/rng.hpp"
#include "degeis/specfun.hpp"

namespace degeis {

IwasawaPoint::IwasawaPoint(int n_) : n(n_), x(n_ * (n_ - 1) / 2, 0.0), y(n_ - 1, 1.0) {
  if (n_ < 2) throw GeometryError("IwasawaPoint: n must be at least 2");
}

IwasawaPoint::IwasawaPoint(int n_, std::vector<double> x_, std::vector<double> y_)
    : n(n_), x(std::move(x_)), y(std::move(y_)) {
  if (n < 2) throw GeometryError("IwasawaPoint: n must be at least 2");
  if (static_cast<int>(x.size()) != n * (n - 1) / 2 || static_cast<int>(y.size()) != n - 1)
    throw GeometryError("IwasawaPoint: coordinate count mismatch");
  for (double v : y)
    if (!(v > 0.0)) throw GeometryError("IwasawaPoint: y coordinates must be positive");
}

std::size_t IwasawaPoint::index(int i, int j) const {
  return static_cast<std::size_t>((i - 1) * n - (i - 1) * i / 2 + (j - i - 1));
}

double IwasawaPoint::d(int i) const {
  double p = 1.0;
  for (int r = 1; r <= n - i; ++r) p *= y[r - 1];
  return p;
}

double IwasawaPoint::det() const {
  double p = 1.0;
  for (int k = 1; k < n; ++k) p *= std::pow(y[k - 1], n - k);
  return p;
}

Eigen::MatrixXd IwasawaPoint::matrix() const {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    const double dj = d(j);
    z(j - 1, j - 1) = dj;
    for (int i = 1; i < j; ++i) z(i - 1, j - 1) = X(i, j) * dj;
  }
  return z;
}

IwasawaPoint IwasawaPoint::leading_block(int j) const {
  if (j < 1 || j > n) throw GeometryError("leading_block: size out of range");
  if (j == 1) {
    IwasawaPoint p;
    p.n = 1;
    return p;
  }
  IwasawaPoint p(j);
  for (int i = 1; i < j; ++i) p.y[i - 1] = y[n - j + i - 1];
  for (int i = 1; i <= j; ++i)
    for (int k = i + 1; k <= j; ++k) p.X(i, k) = X(i, k);
  return p;
}

CoordinateBox CoordinateBox::make(int n, std::vector<Interval> x, std::vector<Interval> y) {
  CoordinateBox b;
  b.n = n;
  b.x = std::move(x);
  b.y = std::move(y);
  const std::size_t nx = static_cast<std::size_t>(n * (n - 1) / 2);
  while (b.x.size() < nx) b.x.push_back({-0.5, 0.5});
  b.validate();
  return b;
}

void CoordinateBox::validate() const {
  if (n < 2) throw GeometryError("CoordinateBox: n must be at least 2");
  if (static_cast<int>(x.size()) != n * (n - 1) / 2 || static_cast<int>(y.size()) != n - 1)
    throw GeometryError("CoordinateBox: interval count mismatch");
  for (const auto& iv : x)
    if (!(iv.hi >= iv.lo)) throw GeometryError("CoordinateBox: empty x interval");
  for (const auto& iv : y)
    if (!(iv.lo > 0.0 && iv.hi >= iv.lo && std::isfinite(iv.hi)))
      throw GeometryError("CoordinateBox: y intervals must be positive and finite");
}

IwasawaPoint iwasawa_decompose(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  if (n < 2 || g.cols() != n) throw GeometryError("iwasawa_decompose: square matrix of size >= 2 required");
  // g = R Q with R upper triangular (positive diagonal) and Q orthogonal,
  // by Gram-Schmidt on the rows from the bottom up, with one
  // re-orthogonalization pass.
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  double log_det = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    Eigen::RowVectorXd v = g.row(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = i + 1; j < n; ++j) {
        const double c = v.dot(Q.row(j));
        R(i, j) += c;
        v -= c * Q.row(j);
      }
    }
    const double nv = v.norm();
    if (!(nv > 0.0) || !std::isfinite(nv)) throw GeometryError("iwasawa_decompose: singular matrix");
    log_det += std::log(nv);
    R(i, i) = nv;
    Q.row(i) = v / nv;
  }
  if (log_det < std::log(1e-300)) throw GeometryError("iwasawa_decompose: singular matrix");
  IwasawaPoint z(n);
  for (int k = 1; k < n; ++k) z.y[k - 1] = R(n - k - 1, n - k - 1) / R(n - k, n - k);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) z.X(i, j) = R(i - 1, j - 1) / R(j - 1, j - 1);
  return z;
}

namespace {

void check_unimodular(const Eigen::MatrixXd& gamma, int n) {
  if (gamma.rows() != n || gamma.cols() != n) throw GeometryError("act: dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (gamma(i, j) != std::round(gamma(i, j))) throw GeometryError("act: gamma must be integral");
  const double det = gamma.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9) throw GeometryError("act: gamma must have determinant +-1");
}

}  // namespace

IwasawaPoint act(const Eigen::MatrixXd& gamma, const IwasawaPoint& z) {
  check_unimodular(gamma, z.n);
  if (gamma.isIdentity(0.0)) return z;
  return iwasawa_decompose(gamma * z.matrix());
}

BlockAction block_action(const CosetDatum& a, const IwasawaPoint& z) {
  const int k = a.k();
  if (k < 1 || k > z.n - 1) throw GeometryError("block_action: k out of range");
  // Normalized upper-left k-block: entries x_{i,j} d_j/d_k and diagonal d_j/d_k.
  const double dk = z.d(k);
  double rho2 = 0.0;
  for (int j = 1; j <= k; ++j) {
    double bj = static_cast<double>(a.a[j - 1]);
    for (int i = 1; i < j; ++i) bj += static_cast<double>(a.a[i - 1]) * z.X(i, j);
    bj *= z.d(j) / dk;
    rho2 += bj * bj;
  }
  double xp = 0.0;
  for (int i = 1; i <= k; ++i) xp += static_cast<double>(a.a[i - 1]) * z.X(i, k + 1);
  return {std::sqrt(rho2), xp};
}

Eigen::MatrixXd i_exponents(int n) {
  Eigen::MatrixXd b(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) b(i - 1, j - 1) = (i + j <= n) ? i * j : (n - i) * (n - j);
  return b;
}

cplx i_function(const IwasawaPoint& z, const std::vector<cplx>& nu) {
  if (static_cast<int>(nu.size()) != z.n - 1) throw GeometryError("i_function: nu must have length n-1");
  const Eigen::MatrixXd b = i_exponents(z.n);
  cplx log_val = 0.0;
  for (int i = 0; i < z.n - 1; ++i) {
    cplx e = 0.0;
    for (int j = 0; j < z.n - 1; ++j) e += b(i, j) * nu[j];
    log_val += e * std::log(z.y[i]);
  }
  return std::exp(log_val);
}

cplx i_function_parabolic(const IwasawaPoint& z, const std::vector<cplx>& s, const Partition& p) {
  int total = 0;
  for (int v : p.parts) {
    if (v < 1) throw GeometryError("i_function_parabolic: parts must be positive");
    total += v;
  }
  if (total != z.n || s.size() != p.parts.size())
    throw GeometryError("i_function_parabolic: partition does not match n or s");
  cplx constraint = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) constraint += static_cast<double>(p.parts[i]) * s[i];
  if (std::abs(constraint) > 1e-12) throw GeometryError("i_function_parabolic: sum n_i s_i must vanish");
  // Y_j = d_{n+1-j}; block i covers j in (n - n_1 - ... - n_i, n - n_1 - ... - n_{i-1}].
  cplx log_val = 0.0;
  int upper = z.n;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int lower = upper - p.parts[i] + 1;
    double log_block = 0.0;
    for (int j = lower; j <= upper; ++j) log_block += std::log(z.d(z.n + 1 - j));
    log_val += s[i] * log_block;
    upper = lower - 1;
  }
  return std::exp(log_val);
}

double measure_constant(int n) {
  double c = 1.0 / n;
  for (int l = 2; l <= n; ++l) c /= completed_zeta(static_cast<double>(l)).value.real();
  return c;
}

double haar_density(const IwasawaPoint& z) {
  double dens = measure_constant(z.n);
  for (int k = 1; k < z.n; ++k) dens *= std::pow(z.y[k - 1], -(k * (z.n - k)) - 1);
  return dens;
}

double volume_box(const CoordinateBox& box) {
  box.validate();
  double v = measure_constant(box.n);
  for (const auto& iv : box.x) v *= iv.width();
  for (int k = 1; k < box.n; ++k) {
    const double e = k * (box.n - k);
    const auto& iv = box.y[k - 1];
    v *= (std::pow(iv.lo, -e) - std::pow(iv.hi, -e)) / e;
  }
  return v;
}

namespace {

IwasawaPoint reduce_n2(IwasawaPoint z) {
  double x = z.x[0], y = z.y[0];
  for (int it = 0; it < 10000; ++it) {
    x -= std::round(x);
    const double r2 = x * x + y * y;
    if (r2 >= 1.0 - 1e-15) break;
    x = -x / r2;
    y = y / r2;
  }
  z.x[0] = x;
  z.y[0] = y;
  return z;
}

// LLL (delta = 3/4) on the rows of z taken bottom-up, which matches the
// Gram-Schmidt order of the Iwasawa decomposition.
IwasawaPoint reduce_lll(const IwasawaPoint& z) {
  const int n = z.n;
  const Eigen::MatrixXd m = z.matrix();
  std::vector<Eigen::VectorXd> b(n);
  for (int i = 0; i < n; ++i) b[i] = m.row(n - 1 - i).transpose();
  auto gram_schmidt = [&](std::vector<Eigen::VectorXd>& bs, Eigen::MatrixXd& mu) {
    bs.assign(n, Eigen::VectorXd());
    mu = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (int j = 0; j < i; ++j) {
        mu(i, j) = b[i].dot(bs[j]) / bs[j].squaredNorm();
        bs[i] -= mu(i, j) * bs[j];
      }
    }
  };
  std::vector<Eigen::VectorXd> bs;
  Eigen::MatrixXd mu;
  gram_schmidt(bs, mu);
  int k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    for (int j = k - 1; j >= 0; --j) {
      const double q = std::round(mu(k, j));
      if (q != 0.0) {
        b[k] -= q * b[j];
        gram_schmidt(bs, mu);
      }
    }
    if (bs[k].squaredNorm() >= (0.75 - mu(k, k - 1) * mu(k, k - 1)) * bs[k - 1].squaredNorm()) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt(bs, mu);
      k = std::max(k - 1, 1);
    }
  }
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) out.row(n - 1 - i) = b[i].transpose();
  return iwasawa_decompose(out);
}

bool same_point(const IwasawaPoint& a, const IwasawaPoint& b) {
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > 1e-10 * std::max(1.0, std::abs(a.x[i]))) return false;
  for (std::size_t i = 0; i < a.y.size(); ++i)
    if (std::abs(a.y[i] - b.y[i]) > 1e-10 * a.y[i]) return false;
  return true;
}

}  // namespace

IwasawaPoint reduce_to_fundamental(const IwasawaPoint& z) {
  if (z.n == 2) return reduce_n2(z);
  return reduce_lll(z);
}

bool in_certified_region_n3(const CoordinateBox& box) {
  if (box.n != 3) return false;
  for (const auto& iv : box.x)
    if (iv.lo < -0.1 || iv.hi > 0.1) return false;
  for (const auto& iv : box.y)
    if (iv.lo < 1.05) return false;
  return true;
}

bool certify_box(const CoordinateBox& box, int samples, std::uint64_t seed) {
  box.validate();
  if (box.n == 2) {
    const auto& xi = box.x[0];
    const auto& yi = box.y[0];
    if (xi.lo < -0.5 || xi.hi > 0.5) return false;
    const double xmin = (xi.lo <= 0.0 && xi.hi >= 0.0) ? 0.0 : std::min(std::abs(xi.lo), std::abs(xi.hi));
    return xmin * xmin + yi.lo * yi.lo >= 1.0;
  }
  if (box.n == 3 && !in_certified_region_n3(box)) return false;
  CounterRng rng(seed, 0xce47ULL);
  for (int s = 0; s < samples; ++s) {
    IwasawaPoint z(box.n);
    for (std::size_t i = 0; i < z.x.size(); ++i) z.x[i] = rng.uniform(box.x[i].lo, box.x[i].hi);
    for (std::size_t i = 0; i < z.y.size(); ++i) z.y[i] = rng.uniform(box.y[i].lo, box.y[i].hi);
    if (!same_point(z, reduce_to_fundamental(z))) return false;
  }
  return true;
}

}  // namespace degeis
