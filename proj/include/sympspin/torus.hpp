#pragma once

// Flat torus [0, 2pi)^{2n} with the standard constant symplectic form and
// complex structure. Fields are trigonometric polynomials stored as Fourier
// coefficients over the modes k in [-M, M]^{2n} (mixed-radix order, first
// coordinate fastest). A field with C components is a C x K matrix. Products
// go through a uniform grid with at least 3M + 1 points per coordinate and
// are truncated back to the cutoff M.

#include <vector>

#include "sympspin/symplinalg.hpp"

namespace sympspin {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

class TorusModel {
 public:
  // grid = 0 selects 3M + 1.
  TorusModel(SymplecticModel<double> model, int cutoff, int grid = 0);

  const SymplecticModel<double>& model() const { return model_; }
  int dim() const { return model_.dim(); }
  int cutoff() const { return M_; }
  int grid() const { return P_; }
  int num_modes() const { return K_; }
  int num_points() const { return npts_; }
  // Integer wave vector of mode m.
  const Eigen::VectorXi& mode(int m) const { return modes_[m]; }
  // Mode index of k, or -1 when outside the cutoff.
  int mode_index(const std::vector<int>& k) const;
  int zero_mode() const { return zero_; }
  // Index of -k for mode m.
  int negated(int m) const { return neg_[m]; }
  // Coordinates of grid point p.
  VectorXd point(int p) const;
  // Volume (2 pi)^{2n}.
  double volume() const;
  // g(k, k) for mode m.
  double mode_norm2(int m) const;

  // coefficients (C x K) -> grid values (C x num_points)
  MatrixXcd to_grid(const MatrixXcd& coeffs) const;
  // grid values -> coefficients truncated to the cutoff
  MatrixXcd from_grid(const MatrixXcd& values) const;
  // d/dx^b of a field.
  MatrixXcd derivative(const MatrixXcd& coeffs, int b) const;

 private:
  MatrixXcd apply_axes(const MatrixXcd& data, const std::vector<MatrixXcd>& ops, int in_size) const;

  SymplecticModel<double> model_;
  int M_;
  int P_;
  int K_;
  int npts_;
  int zero_ = 0;
  std::vector<Eigen::VectorXi> modes_;
  std::vector<int> neg_;
  std::vector<MatrixXcd> synth_;  // P x (2M+1)
  std::vector<MatrixXcd> anal_;   // (2M+1) x P
};

struct ScalarField {
  MatrixXcd coeffs;  // 1 x K
};

struct VectorField {
  MatrixXcd coeffs;  // D x K, row a = component X^a
};

// Antisymmetric 2-form, row a*D + b = F(d_a, d_b).
struct TwoForm {
  MatrixXcd coeffs;
};

// Pointwise product of two scalar-valued coefficient rows, truncated.
MatrixXcd field_product(const TorusModel& torus, const MatrixXcd& f, const MatrixXcd& g);

// Max |value| over grid points.
double grid_max_abs(const TorusModel& torus, const MatrixXcd& coeffs);

// Max |Im| over grid points (real-valuedness check).
double grid_max_imag(const TorusModel& torus, const MatrixXcd& coeffs);

// Coefficients of c cos(k.x) + s sin(k.x) added into row block of out.
void add_trig_mode(const TorusModel& torus, MatrixXcd& out, int row, const std::vector<int>& k,
                   std::complex<double> c, std::complex<double> s);

// Random real trigonometric field with modes |k_i| <= kmax, amplitude ~ scale.
template <typename Rng>
MatrixXcd random_real_field(const TorusModel& torus, int rows, int kmax, double scale, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  MatrixXcd out = MatrixXcd::Zero(rows, torus.num_modes());
  for (int m = 0; m < torus.num_modes(); ++m) {
    const Eigen::VectorXi& k = torus.mode(m);
    if (k.cwiseAbs().maxCoeff() > kmax) continue;
    const int mm = torus.negated(m);
    if (mm < m) continue;
    for (int r = 0; r < rows; ++r) {
      if (mm == m) {
        out(r, m) = scale * nd(rng);
      } else {
        const std::complex<double> c(scale * nd(rng), scale * nd(rng));
        out(r, m) = c / 2.0;
        out(r, mm) = std::conj(c) / 2.0;
      }
    }
  }
  return out;
}

}  // namespace sympspin
