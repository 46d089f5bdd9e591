#include "sympspin/torus.hpp"

#include <cmath>

namespace sympspin {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TorusModel::TorusModel(SymplecticModel<double> model, int cutoff, int grid)
    : model_(std::move(model)), M_(cutoff), P_(grid == 0 ? 3 * cutoff + 1 : grid) {
  if (M_ < 0) throw DomainError("TorusModel: cutoff must be >= 0");
  if (P_ < 3 * M_ + 1) throw DomainError("TorusModel: grid must have at least 3M + 1 points");
  const int D = dim();
  const int side = 2 * M_ + 1;
  K_ = 1;
  npts_ = 1;
  for (int d = 0; d < D; ++d) {
    K_ *= side;
    npts_ *= P_;
  }
  modes_.reserve(K_);
  for (int m = 0; m < K_; ++m) {
    Eigen::VectorXi k(D);
    int r = m;
    for (int d = 0; d < D; ++d) {
      k(d) = r % side - M_;
      r /= side;
    }
    modes_.push_back(k);
  }
  neg_.resize(K_);
  for (int m = 0; m < K_; ++m) {
    std::vector<int> kk(D);
    for (int d = 0; d < D; ++d) kk[d] = -modes_[m](d);
    neg_[m] = mode_index(kk);
  }
  zero_ = mode_index(std::vector<int>(D, 0));
  MatrixXcd synth(P_, side), anal(side, P_);
  for (int p = 0; p < P_; ++p)
    for (int s = 0; s < side; ++s) {
      const double phase = 2.0 * kPi * double((s - M_) * p % P_) / P_;
      synth(p, s) = std::polar(1.0, phase);
      anal(s, p) = std::polar(1.0 / P_, -phase);
    }
  synth_.assign(D, synth);
  anal_.assign(D, anal);
}

int TorusModel::mode_index(const std::vector<int>& k) const {
  if (static_cast<int>(k.size()) != dim()) throw DimensionError("mode_index: wrong wave-vector length");
  const int side = 2 * M_ + 1;
  int idx = 0, mult = 1;
  for (int d = 0; d < dim(); ++d) {
    if (k[d] < -M_ || k[d] > M_) return -1;
    idx += (k[d] + M_) * mult;
    mult *= side;
  }
  return idx;
}

VectorXd TorusModel::point(int p) const {
  VectorXd x(dim());
  for (int d = 0; d < dim(); ++d) {
    x(d) = 2.0 * kPi * (p % P_) / P_;
    p /= P_;
  }
  return x;
}

double TorusModel::volume() const { return std::pow(2.0 * kPi, dim()); }

double TorusModel::mode_norm2(int m) const {
  const VectorXd k = modes_[m].cast<double>();
  // Wave vectors are covectors; g^{-1} = G^{-1} (identity in the standard model).
  return k.dot(model_.metric().ldlt().solve(k));
}

// Apply ops[d] along axis d of a tensor [C, n_0, ..., n_{D-1}] stored column-major.
MatrixXcd TorusModel::apply_axes(const MatrixXcd& data, const std::vector<MatrixXcd>& ops, int in_size) const {
  const int C = static_cast<int>(data.rows());
  const int D = dim();
  const int out_size = static_cast<int>(ops[0].rows());
  std::vector<int> sizes(D, in_size);
  Eigen::VectorXcd cur = Eigen::Map<const Eigen::VectorXcd>(data.data(), data.size());
  for (int d = 0; d < D; ++d) {
    int inner = C;
    for (int e = 0; e < d; ++e) inner *= sizes[e];
    int outer = 1;
    for (int e = d + 1; e < D; ++e) outer *= sizes[e];
    const int n = sizes[d];
    Eigen::VectorXcd next(static_cast<Eigen::Index>(inner) * out_size * outer);
    for (int o = 0; o < outer; ++o) {
      Eigen::Map<const MatrixXcd> src(cur.data() + static_cast<Eigen::Index>(o) * inner * n, inner, n);
      Eigen::Map<MatrixXcd> dst(next.data() + static_cast<Eigen::Index>(o) * inner * out_size, inner, out_size);
      dst.noalias() = src * ops[d].transpose();
    }
    cur.swap(next);
    sizes[d] = out_size;
  }
  int cols = 1;
  for (int d = 0; d < D; ++d) cols *= sizes[d];
  return Eigen::Map<MatrixXcd>(cur.data(), C, cols);
}

MatrixXcd TorusModel::to_grid(const MatrixXcd& coeffs) const {
  if (coeffs.cols() != K_) throw DimensionError("to_grid: wrong number of modes");
  return apply_axes(coeffs, synth_, 2 * M_ + 1);
}

MatrixXcd TorusModel::from_grid(const MatrixXcd& values) const {
  if (values.cols() != npts_) throw DimensionError("from_grid: wrong number of grid points");
  return apply_axes(values, anal_, P_);
}

MatrixXcd TorusModel::derivative(const MatrixXcd& coeffs, int b) const {
  if (b < 0 || b >= dim()) throw DimensionError("derivative: direction out of range");
  MatrixXcd out = coeffs;
  for (int m = 0; m < K_; ++m) out.col(m) *= std::complex<double>(0, modes_[m](b));
  return out;
}

MatrixXcd field_product(const TorusModel& torus, const MatrixXcd& f, const MatrixXcd& g) {
  if (f.rows() != g.rows()) throw DimensionError("field_product: row mismatch");
  const MatrixXcd fg = torus.to_grid(f).cwiseProduct(torus.to_grid(g));
  return torus.from_grid(fg);
}

double grid_max_abs(const TorusModel& torus, const MatrixXcd& coeffs) {
  if (coeffs.size() == 0) return 0.0;
  return torus.to_grid(coeffs).cwiseAbs().maxCoeff();
}

double grid_max_imag(const TorusModel& torus, const MatrixXcd& coeffs) {
  if (coeffs.size() == 0) return 0.0;
  return torus.to_grid(coeffs).imag().cwiseAbs().maxCoeff();
}

void add_trig_mode(const TorusModel& torus, MatrixXcd& out, int row, const std::vector<int>& k,
                   std::complex<double> c, std::complex<double> s) {
  const int m = torus.mode_index(k);
  if (m < 0) throw DomainError("trig mode exceeds the Fourier cutoff");
  const int mm = torus.negated(m);
  if (m == mm) {
    out(row, m) += c;
    return;
  }
  const std::complex<double> i(0, 1);
  out(row, m) += c / 2.0 + s / (2.0 * i);
  out(row, mm) += c / 2.0 - s / (2.0 * i);
}

}  // namespace sympspin
