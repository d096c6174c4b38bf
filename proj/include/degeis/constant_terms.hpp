// Closed forms for the integrals of E and |E|^2 over the last column
// x_{1,n}, ..., x_{n-1,n} of the unipotent coordinates, and their
// verification against trapezoid quadrature on the torus.
#pragma once

#include "degeis/eisenstein.hpp"

namespace degeis {

struct ConstantTermReport {
  cplx formula_value{0.0, 0.0};
  cplx quadrature_value{0.0, 0.0};
  double rel_deviation = 0.0;
  int grid_size = 0;
};

// 2 det^s + (xi(ns-1)/xi(ns)) det^{(1-s)/(n-1)} E(m_{n-1}(z), (ns-1)/(n-1)).
// Requires n >= 3; the inner series is evaluated by its Fourier expansion.
EvaluatedValue constant_term_formula(const IwasawaPoint& z, cplx s);

struct ConstantSquarePieces {
  double power = 0.0;   // 4 det^{2a}
  double inner = 0.0;   // |ratio|^2 det^{2(1-a)/(n-1)} |E'|^2
  cplx cross{0.0, 0.0}; // first cross piece; the second is its conjugate
  double bessel = 0.0;  // K-Bessel divisor series
  double bessel_tail = 0.0;
  double total() const { return power + inner + 2.0 * cross.real() + bessel; }
};

// Integral of |E|^2 over the last column, s = a + ib.
ConstantSquarePieces constant_square_pieces(const IwasawaPoint& z, cplx s);
EvaluatedValue constant_square_formula(const IwasawaPoint& z, cplx s);

// The same five-piece sum with the exponent (2-a)/(n-1) on the second piece
// and the prefactor 8/|xi(s)|^2 on the Bessel series, kept for comparison.
EvaluatedValue constant_square_formula_as_displayed(const IwasawaPoint& z, cplx s);

struct ConstantTermsVerification {
  ConstantTermReport constant_term;
  ConstantTermReport constant_square;
  ConstantTermReport constant_square_as_displayed;
};

// Trapezoid rule with `grid` points per axis on [0,1)^{n-1}; grid >= 16.
ConstantTermsVerification verify_constant_terms(const IwasawaPoint& z, cplx s, int grid, int threads = 1);

}  // namespace degeis
