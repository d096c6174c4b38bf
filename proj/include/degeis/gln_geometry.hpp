// Iwasawa coordinates on X_n = GL_n(R)/(O_n(R) R^*), the invariant measure,
// power functions, and the action of SL_n(Z).
//
// A point is z = x * d with x unit upper triangular (entries x_{i,j}, i < j)
// and d = diag(y_1...y_{n-1}, y_1...y_{n-2}, ..., y_1, 1).
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace degeis {

using cplx = std::complex<double>;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IwasawaPoint {
  int n = 2;
  std::vector<double> x;  // x_{i,j}, i < j, row-major: (1,2),(1,3),...,(1,n),(2,3),...
  std::vector<double> y;  // y_1, ..., y_{n-1}

  IwasawaPoint() = default;
  explicit IwasawaPoint(int n_);
  IwasawaPoint(int n_, std::vector<double> x_, std::vector<double> y_);

  // 1-based accessors, i < j.
  double X(int i, int j) const { return x[index(i, j)]; }
  double& X(int i, int j) { return x[index(i, j)]; }
  double Y(int k) const { return y[k - 1]; }

  // Diagonal entry d_i = y_1 ... y_{n-i} (1-based, d_n = 1).
  double d(int i) const;
  // det(z) = y_1^{n-1} y_2^{n-2} ... y_{n-1}.
  double det() const;
  Eigen::MatrixXd matrix() const;
  std::size_t index(int i, int j) const;

  // Upper-left j x j block rescaled so its last diagonal entry is 1, as a
  // point of X_j: y^{(j)}_i = y_{n-j+i}, x^{(j)}_{i,i'} = x_{i,i'}.
  IwasawaPoint leading_block(int j) const;
};

struct Partition {
  std::vector<int> parts;
};

struct CosetDatum {
  std::vector<std::int64_t> a;  // primitive, first nonzero entry positive
  int k() const { return static_cast<int>(a.size()); }
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
};

struct CoordinateBox {
  int n = 2;
  // One interval per x-coordinate in IwasawaPoint ordering; unspecified
  // coordinates default to a full period [-1/2, 1/2].
  std::vector<Interval> x;
  std::vector<Interval> y;  // one per y_k, strictly positive

  static CoordinateBox make(int n, std::vector<Interval> x, std::vector<Interval> y);
  void validate() const;
};

IwasawaPoint iwasawa_decompose(const Eigen::MatrixXd& g);

// Iwasawa coordinates of gamma * z; gamma must be integral with det = +-1.
IwasawaPoint act(const Eigen::MatrixXd& gamma, const IwasawaPoint& z);

struct BlockAction {
  double rho;
  double xprime;
};

// Effect of the embedded gamma_k in SL_k(Z) with bottom row a acting on the
// upper-left k-block: y_{n-k} -> y_{n-k} * rho, x_{k,k+1} -> xprime.
BlockAction block_action(const CosetDatum& a, const IwasawaPoint& z);

// Exponent matrix b_{i,j} (1-based semantics, returned 0-based (n-1)x(n-1)).
Eigen::MatrixXd i_exponents(int n);

// prod_i y_i^{sum_j b_{i,j} nu_j}.
cplx i_function(const IwasawaPoint& z, const std::vector<cplx>& nu);

// Parabolic power function I_s(z, P_{n_1,...,n_r}); requires sum n_i s_i = 0.
cplx i_function_parabolic(const IwasawaPoint& z, const std::vector<cplx>& s, const Partition& p);

// c_n = n^{-1} prod_{l=2}^n xi(l)^{-1}.
double measure_constant(int n);

// Density of d*z against prod dx prod dy.
double haar_density(const IwasawaPoint& z);

// Integral of haar_density over the box.
double volume_box(const CoordinateBox& box);

// n = 2: the reduced representative (|x| <= 1/2, x^2 + y^2 >= 1).
// n >= 3: an LLL-reduced representative of the same orbit.
IwasawaPoint reduce_to_fundamental(const IwasawaPoint& z);

// True if every point of a sample of the box is left fixed by
// reduce_to_fundamental (n >= 3), or if the box lies in the standard
// fundamental domain (n = 2).
bool certify_box(const CoordinateBox& box, int samples, std::uint64_t seed);

// Certified injectivity region for n = 3 used by the experiments.
bool in_certified_region_n3(const CoordinateBox& box);

}  // namespace degeis
