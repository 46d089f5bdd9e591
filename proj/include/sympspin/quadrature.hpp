#pragma once

// Tensor Gauss-Hermite quadrature over V = R^2 (n = 1) for integrands whose
// logarithm has a concave quadratic real part. The Gaussian weight is matched
// to that real part (center and Cholesky scaling), and the integrand is
// evaluated in the log domain. Convergence is assessed by order doubling.

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "sympspin/mpc.hpp"

namespace sympspin {

// Nodes and weights for the integral of f(x) exp(-x^2) over R.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // weights[i] * exp(nodes[i]^2)
  std::vector<double> scaled_weights;
};

GaussHermiteRule gauss_hermite(int order);

struct QuadratureResult {
  std::complex<double> value;
  // |value(order) - value(2 order)|, or zero when not requested.
  double delta = 0;
};

// Integral over frame coordinates x in R^2 of exp(logf(x)). Throws DomainError
// when the real part of logf is not a concave quadratic form.
using LogIntegrand = std::function<std::complex<double>(double, double)>;
std::complex<double> gaussian_quadrature_2d(const LogIntegrand& logf, int order);
QuadratureResult gaussian_quadrature_2d(const LogIntegrand& logf, int order, bool with_delta);

// (z, w) -> h^{-1} int K1(z, u) K2(u, w) exp(-|u|^2 / 2hbar) du at n = 1.
class NumericKernel {
 public:
  NumericKernel(SymplecticModel<double> model, GaussianKernel<double> k1, GaussianKernel<double> k2, int order);

  std::complex<double> operator()(const Vec<double>& z, const Vec<double>& w) const;
  QuadratureResult evaluate(const Vec<double>& z, const Vec<double>& w, bool with_delta) const;
  int order() const { return order_; }

 private:
  SymplecticModel<double> model_;
  GaussianKernel<double> k1_;
  GaussianKernel<double> k2_;
  int order_;
};

NumericKernel kernel_compose_numeric(const SymplecticModel<double>& model, const GaussianKernel<double>& k1,
                                     const GaussianKernel<double>& k2, int quad_order = 60);

struct ConjugationReport {
  // max |lhs - rhs| / |rhs| over the sample points
  double max_residual = 0;
  // largest order-doubling delta relative to |rhs|
  double max_delta = 0;
  int samples = 0;
};

// Compares the kernel of U U_j(v, t) U^{-1} with that of U_j(g v, t).
ConjugationReport conjugation_check(const SymplecticModel<double>& model, const MpcElement<double>& u,
                                    const HeisenbergElement<double>& h,
                                    const std::vector<std::pair<Vec<double>, Vec<double>>>& samples,
                                    int quad_order = 60, bool with_delta = false);

struct GaussianIntegralReport {
  std::complex<double> lhs;
  // det(1 - Z1 Z2)^{-1/2} = exp(-a(1 - Z1 Z2) / 2)
  std::complex<double> rhs;
  // exp(-a(1 - Z2 Z1) / 2)
  std::complex<double> rhs_swapped;
  double residual = 0;
  double residual_swapped = 0;
  double delta = 0;
};

// int exp(-(pi/2)(<z, Z1 z> + <Z2 z, z>)) exp(-pi |z|^2) dz at n = 1.
GaussianIntegralReport gaussian_integral_check(const SymplecticModel<double>& model, const Mat<double>& z1,
                                               const Mat<double>& z2, int quad_order = 60, bool with_delta = false);

// Sample points with |z|, |w| <= radius.
std::vector<std::pair<Vec<double>, Vec<double>>> random_sample_pairs(const SymplecticModel<double>& model,
                                                                     std::mt19937_64& rng, int count,
                                                                     double radius = 1.0);

}  // namespace sympspin
