#pragma once

// Linear algebra of a symplectic vector space (V, Omega, j) of real
// dimension 2n with a positive compatible complex structure j.
//
// Conventions:
//   g(v,w)      = Omega(v, j w)                   (metric, matrix G = Omega j)
//   <v,w>_j     = Omega(v, j w) - i Omega(v, w)   (linear in the first slot)
//   zeta_k(v)   = <v, e_k>_j for a unitary frame e_1..e_n
// In the standard model the frame is the first n basis vectors and
// zeta_k(v) = v_k + i v_{n+k}.
//
// Complex views: a j-linear real matrix M has complex matrix H with
// H_{ki} = <M e_i, e_k>_j; a j-antilinear real matrix Z has complex matrix S
// with S_{ki} = <Z e_i, e_k>_j, so zeta(Z v) = S conj(zeta(v)).

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include "sympspin/error.hpp"

namespace sympspin {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMat = Mat<std::complex<Scalar>>;
template <typename Scalar>
using CVec = Vec<std::complex<Scalar>>;

namespace detail {

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::RealScalar(0) : m.cwiseAbs().maxCoeff();
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

// Minimum eigenvalue of the Hermitean part (H + H^*)/2.
template <typename Scalar>
Scalar min_hermitean_eigenvalue(const CMat<Scalar>& h) {
  if (h.rows() == 0) return Scalar(1);
  CMat<Scalar> herm = (h + h.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<CMat<Scalar>> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

// Fiber data (V, Omega, j, hbar) with a unitary frame for complex views.
template <typename Scalar = double>
class SymplecticModel {
 public:
  using Complex = std::complex<Scalar>;

  SymplecticModel(Mat<Scalar> omega, Mat<Scalar> j, Scalar hbar = Scalar(1))
      : omega_(std::move(omega)), j_(std::move(j)), hbar_(hbar) {
    const auto d = omega_.rows();
    if (d == 0 || d % 2 != 0 || omega_.cols() != d || j_.rows() != d || j_.cols() != d)
      throw DimensionError("SymplecticModel: Omega and j must be 2n x 2n");
    if (!(hbar_ > 0)) throw DomainError("SymplecticModel: hbar must be positive");
    n_ = static_cast<int>(d / 2);
    const Mat<Scalar> id = Mat<Scalar>::Identity(d, d);
    const Scalar scale = std::max(Scalar(1), detail::max_abs(omega_));
    if (detail::max_abs(Mat<Scalar>(omega_ + omega_.transpose())) > Scalar(1e-13) * scale)
      throw DomainError("SymplecticModel: Omega is not antisymmetric");
    Eigen::FullPivLU<Mat<Scalar>> lu(omega_);
    if (!lu.isInvertible()) throw DomainError("SymplecticModel: Omega is degenerate");
    if (detail::max_abs(Mat<Scalar>(j_ * j_ + id)) > Scalar(1e-13) * std::max(Scalar(1), detail::max_abs(j_) * detail::max_abs(j_)))
      throw DomainError("SymplecticModel: j^2 != -1");
    if (detail::max_abs(Mat<Scalar>(j_.transpose() * omega_ * j_ - omega_)) > Scalar(1e-12) * scale)
      throw DomainError("SymplecticModel: j does not preserve Omega");
    metric_ = omega_ * j_;
    metric_ = (metric_ + metric_.transpose()).eval() / Scalar(2);
    Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(metric_, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0)) throw DomainError("SymplecticModel: j is not positive");
    build_frame();
  }

  // V = R^{2n}, Omega = [[0, I], [-I, 0]], j = [[0, -I], [I, 0]].
  static SymplecticModel standard(int n, Scalar hbar = Scalar(1)) {
    if (n < 1) throw DomainError("SymplecticModel: n must be positive");
    Mat<Scalar> omega = Mat<Scalar>::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n).setIdentity();
    omega.bottomLeftCorner(n, n) = -Mat<Scalar>::Identity(n, n);
    Mat<Scalar> j = -omega;
    return SymplecticModel(omega, j, hbar);
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  Scalar hbar() const { return hbar_; }
  const Mat<Scalar>& omega() const { return omega_; }
  const Mat<Scalar>& j() const { return j_; }
  // Matrix of g(v,w) = Omega(v, j w).
  const Mat<Scalar>& metric() const { return metric_; }
  // Columns e_1..e_n, j e_1..j e_n of a unitary frame.
  const Mat<Scalar>& frame() const { return frame_; }
  const Mat<Scalar>& frame_inverse() const { return frame_inv_; }

  Scalar omega_form(const Vec<Scalar>& v, const Vec<Scalar>& w) const {
    check_vec(v);
    check_vec(w);
    return v.dot(omega_ * w);
  }

  // zeta(v): complex coordinates in the unitary frame.
  CVec<Scalar> coords(const Vec<Scalar>& v) const {
    check_vec(v);
    const Vec<Scalar> x = frame_inv_ * v;
    CVec<Scalar> z(n_);
    for (int k = 0; k < n_; ++k) z(k) = Complex(x(k), x(n_ + k));
    return z;
  }

  Vec<Scalar> from_coords(const CVec<Scalar>& z) const {
    detail::require(z.size() == n_, "from_coords: expected n complex coordinates");
    Vec<Scalar> x(2 * n_);
    for (int k = 0; k < n_; ++k) {
      x(k) = z(k).real();
      x(n_ + k) = z(k).imag();
    }
    return frame_ * x;
  }

 private:
  void check_vec(const Vec<Scalar>& v) const {
    detail::require(v.size() == 2 * n_, "vector length must be 2n");
  }

  Complex raw_form(const Vec<Scalar>& v, const Vec<Scalar>& w) const {
    return Complex(v.dot(metric_ * w), -v.dot(omega_ * w));
  }

  // Hermitean Gram-Schmidt over the standard basis vectors.
  void build_frame() {
    const int d = 2 * n_;
    Mat<Scalar> es(d, n_);
    int found = 0;
    for (int c = 0; c < d && found < n_; ++c) {
      Vec<Scalar> w = Vec<Scalar>::Unit(d, c);
      for (int pass = 0; pass < 2; ++pass) {
        for (int k = 0; k < found; ++k) {
          const Vec<Scalar> e = es.col(k);
          const Complex p = raw_form(w, e);
          w -= p.real() * e + p.imag() * (j_ * e);
        }
      }
      const Scalar nrm2 = raw_form(w, w).real();
      if (nrm2 > Scalar(1e-8)) es.col(found++) = w / std::sqrt(nrm2);
    }
    if (found != n_) throw DomainError("SymplecticModel: failed to build a unitary frame");
    frame_.resize(d, d);
    frame_.leftCols(n_) = es;
    frame_.rightCols(n_) = j_ * es;
    frame_inv_ = frame_.inverse();
  }

  Mat<Scalar> omega_;
  Mat<Scalar> j_;
  Scalar hbar_;
  int n_ = 0;
  Mat<Scalar> metric_;
  Mat<Scalar> frame_;
  Mat<Scalar> frame_inv_;
};

// <v,w>_j = Omega(v, j w) - i Omega(v, w).
template <typename Scalar>
std::complex<Scalar> hermitean_form(const SymplecticModel<Scalar>& model, const Vec<Scalar>& v,
                                    const Vec<Scalar>& w) {
  detail::require(v.size() == model.dim() && w.size() == model.dim(),
                  "hermitean_form: vector length must be 2n");
  return {v.dot(model.metric() * w), -v.dot(model.omega() * w)};
}

// Squared norm |v|_j^2 = g(v,v).
template <typename Scalar>
Scalar norm2(const SymplecticModel<Scalar>& model, const Vec<Scalar>& v) {
  return hermitean_form(model, v, v).real();
}

// ---- complex and antilinear views -------------------------------------

template <typename Scalar>
Mat<Scalar> linear_part(const SymplecticModel<Scalar>& model, const Mat<Scalar>& x) {
  return (x - model.j() * x * model.j()) / Scalar(2);
}

template <typename Scalar>
Mat<Scalar> antilinear_part(const SymplecticModel<Scalar>& model, const Mat<Scalar>& x) {
  return (x + model.j() * x * model.j()) / Scalar(2);
}

// Residual of M j = j M.
template <typename Scalar>
Scalar linearity_residual(const SymplecticModel<Scalar>& model, const Mat<Scalar>& m) {
  return detail::max_abs(Mat<Scalar>(m * model.j() - model.j() * m));
}

// Residual of Z j = -j Z.
template <typename Scalar>
Scalar antilinearity_residual(const SymplecticModel<Scalar>& model, const Mat<Scalar>& z) {
  return detail::max_abs(Mat<Scalar>(z * model.j() + model.j() * z));
}

// Complex matrix of the j-linear part of x.
template <typename Scalar>
CMat<Scalar> complex_view(const SymplecticModel<Scalar>& model, const Mat<Scalar>& x) {
  detail::require(x.rows() == model.dim() && x.cols() == model.dim(), "complex_view: expected 2n x 2n");
  const int n = model.n();
  const Mat<Scalar> f = model.frame_inverse() * linear_part(model, x) * model.frame();
  CMat<Scalar> h(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) h(k, i) = {f(k, i), f(n + k, i)};
  return h;
}

template <typename Scalar>
Mat<Scalar> real_from_complex(const SymplecticModel<Scalar>& model, const CMat<Scalar>& h) {
  const int n = model.n();
  detail::require(h.rows() == n && h.cols() == n, "real_from_complex: expected n x n");
  Mat<Scalar> f(2 * n, 2 * n);
  f.topLeftCorner(n, n) = h.real();
  f.topRightCorner(n, n) = -h.imag();
  f.bottomLeftCorner(n, n) = h.imag();
  f.bottomRightCorner(n, n) = h.real();
  return model.frame() * f * model.frame_inverse();
}

// Complex matrix S of the antilinear part of x.
template <typename Scalar>
CMat<Scalar> antilinear_view(const SymplecticModel<Scalar>& model, const Mat<Scalar>& x) {
  detail::require(x.rows() == model.dim() && x.cols() == model.dim(), "antilinear_view: expected 2n x 2n");
  const int n = model.n();
  const Mat<Scalar> f = model.frame_inverse() * antilinear_part(model, x) * model.frame();
  CMat<Scalar> s(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) s(k, i) = {f(k, i), f(n + k, i)};
  return s;
}

template <typename Scalar>
Mat<Scalar> real_from_antilinear(const SymplecticModel<Scalar>& model, const CMat<Scalar>& s) {
  const int n = model.n();
  detail::require(s.rows() == n && s.cols() == n, "real_from_antilinear: expected n x n");
  Mat<Scalar> f(2 * n, 2 * n);
  f.topLeftCorner(n, n) = s.real();
  f.topRightCorner(n, n) = s.imag();
  f.bottomLeftCorner(n, n) = s.imag();
  f.bottomRightCorner(n, n) = -s.real();
  return model.frame() * f * model.frame_inverse();
}

// Adjoint with respect to g (for j-linear maps this is the Hermitean adjoint).
template <typename Scalar>
Mat<Scalar> j_adjoint(const SymplecticModel<Scalar>& model, const Mat<Scalar>& m) {
  return model.metric().ldlt().solve(Mat<Scalar>(m.transpose() * model.metric()));
}

// Complex trace of the j-linear part of x.
template <typename Scalar>
std::complex<Scalar> complex_trace(const SymplecticModel<Scalar>& model, const Mat<Scalar>& x) {
  return complex_view(model, x).trace();
}

// A real 2n x 2n matrix commuting with j, with its n x n complex matrix.
template <typename Scalar = double>
class ComplexLinearView {
 public:
  ComplexLinearView(const SymplecticModel<Scalar>& model, Mat<Scalar> underlying, Scalar tol = Scalar(1e-12))
      : underlying_(std::move(underlying)) {
    detail::require(underlying_.rows() == model.dim() && underlying_.cols() == model.dim(),
                    "ComplexLinearView: expected 2n x 2n");
    if (linearity_residual(model, underlying_) > tol * std::max(Scalar(1), detail::max_abs(underlying_)))
      throw DomainError("ComplexLinearView: matrix does not commute with j");
    complex_ = complex_view(model, underlying_);
  }

  static ComplexLinearView from_complex(const SymplecticModel<Scalar>& model, const CMat<Scalar>& h) {
    return ComplexLinearView(model, real_from_complex(model, h));
  }

  const Mat<Scalar>& underlying() const { return underlying_; }
  const CMat<Scalar>& complex_matrix() const { return complex_; }

 private:
  Mat<Scalar> underlying_;
  CMat<Scalar> complex_;
};

// A real 2n x 2n matrix anticommuting with j.
template <typename Scalar = double>
class AntiLinearView {
 public:
  AntiLinearView(const SymplecticModel<Scalar>& model, Mat<Scalar> underlying, Scalar tol = Scalar(1e-12))
      : underlying_(std::move(underlying)) {
    detail::require(underlying_.rows() == model.dim() && underlying_.cols() == model.dim(),
                    "AntiLinearView: expected 2n x 2n");
    if (antilinearity_residual(model, underlying_) > tol * std::max(Scalar(1), detail::max_abs(underlying_)))
      throw DomainError("AntiLinearView: matrix does not anticommute with j");
    complex_ = antilinear_view(model, underlying_);
  }

  static AntiLinearView from_complex(const SymplecticModel<Scalar>& model, const CMat<Scalar>& s) {
    return AntiLinearView(model, real_from_antilinear(model, s));
  }

  const Mat<Scalar>& underlying() const { return underlying_; }
  const CMat<Scalar>& complex_matrix() const { return complex_; }

 private:
  Mat<Scalar> underlying_;
  CMat<Scalar> complex_;
};

// Symplectic map in (C, Z) coordinates: g = C (1 + Z).
template <typename Scalar = double>
struct CZPair {
  ComplexLinearView<Scalar> C;
  AntiLinearView<Scalar> Z;
};

template <typename Scalar>
CZPair<Scalar> cz_identity(const SymplecticModel<Scalar>& model) {
  const int d = model.dim();
  return {ComplexLinearView<Scalar>(model, Mat<Scalar>::Identity(d, d)),
          AntiLinearView<Scalar>(model, Mat<Scalar>::Zero(d, d))};
}

// ---- predicates ---------------------------------------------------------

// max |g^T Omega g - Omega|.
template <typename Scalar>
Scalar sp_residual(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g) {
  detail::require(g.rows() == model.dim() && g.cols() == model.dim(), "sp_residual: expected 2n x 2n");
  return detail::max_abs(Mat<Scalar>(g.transpose() * model.omega() * g - model.omega()));
}

// max of sp_residual and |g j - j g|.
template <typename Scalar>
Scalar u_residual(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g) {
  return std::max(sp_residual(model, g), linearity_residual(model, g));
}

// max |xi^T Omega + Omega xi|: membership in the Lie algebra sp(V, Omega).
template <typename Scalar>
Scalar sp_algebra_residual(const SymplecticModel<Scalar>& model, const Mat<Scalar>& xi) {
  detail::require(xi.rows() == model.dim() && xi.cols() == model.dim(), "sp_algebra_residual: expected 2n x 2n");
  return detail::max_abs(Mat<Scalar>(xi.transpose() * model.omega() + model.omega() * xi));
}

template <typename Scalar>
bool sp_check(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g, Scalar tol = Scalar(1e-11)) {
  return sp_residual(model, g) <= tol * std::max(Scalar(1), detail::max_abs(g) * detail::max_abs(g));
}

template <typename Scalar>
bool u_check(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g, Scalar tol = Scalar(1e-11)) {
  return u_residual(model, g) <= tol * std::max(Scalar(1), detail::max_abs(g) * detail::max_abs(g));
}

template <typename Scalar>
struct SiegelDiagnostics {
  bool antilinear = false;
  bool symmetric = false;
  bool positive = false;
  Scalar antilinear_residual = 0;
  Scalar symmetry_residual = 0;
  // Minimum eigenvalue of the Hermitean part of 1 - Z^2.
  Scalar min_eigenvalue = 0;
  bool ok() const { return antilinear && symmetric && positive; }
};

// Zj = -jZ, <v, Z w>_j symmetric, 1 - Z^2 positive definite.
template <typename Scalar>
SiegelDiagnostics<Scalar> siegel_check(const SymplecticModel<Scalar>& model, const Mat<Scalar>& z,
                                       Scalar tol = Scalar(1e-10)) {
  detail::require(z.rows() == model.dim() && z.cols() == model.dim(), "siegel_check: expected 2n x 2n");
  SiegelDiagnostics<Scalar> d;
  const Scalar scale = std::max(Scalar(1), detail::max_abs(z));
  d.antilinear_residual = antilinearity_residual(model, z);
  d.antilinear = d.antilinear_residual <= tol * scale;
  const CMat<Scalar> s = antilinear_view(model, z);
  d.symmetry_residual = detail::max_abs(CMat<Scalar>(s - s.transpose()));
  d.symmetric = d.symmetry_residual <= tol * scale;
  const int n = model.n();
  const CMat<Scalar> one_minus = CMat<Scalar>::Identity(n, n) - s * s.conjugate();
  d.min_eigenvalue = detail::min_hermitean_eigenvalue<Scalar>(one_minus);
  d.positive = d.min_eigenvalue > tol;
  return d;
}

template <typename Scalar>
SiegelDiagnostics<Scalar> siegel_check(const SymplecticModel<Scalar>& model, const AntiLinearView<Scalar>& z,
                                       Scalar tol = Scalar(1e-10)) {
  return siegel_check(model, z.underlying(), tol);
}

// ---- smooth logarithm of the determinant --------------------------------

// a(h) for an n x n complex matrix whose Hermitean part is positive definite:
// sum of principal logarithms of the eigenvalues.
template <typename Scalar>
std::complex<Scalar> smooth_log_det_complex(const CMat<Scalar>& h) {
  if (h.rows() != h.cols()) throw DimensionError("smooth_log_det: expected a square matrix");
  if (!(detail::min_hermitean_eigenvalue<Scalar>(h) > 0))
    throw DomainError("smooth_log_det: matrix is not in GL(V,j)_+");
  if (h.rows() == 0) return {0, 0};
  if (h.isIdentity(Scalar(0))) return {0, 0};
  Eigen::ComplexEigenSolver<CMat<Scalar>> es(h, false);
  std::complex<Scalar> a(0, 0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) a += std::log(es.eigenvalues()(i));
  return a;
}

template <typename Scalar>
std::complex<Scalar> smooth_log_det(const SymplecticModel<Scalar>& /*model*/, const ComplexLinearView<Scalar>& g) {
  return smooth_log_det_complex<Scalar>(g.complex_matrix());
}

template <typename Scalar>
std::complex<Scalar> smooth_log_det(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g) {
  return smooth_log_det(model, ComplexLinearView<Scalar>(model, g));
}

// ---- C/Z decomposition ----------------------------------------------------

// Residual of the image condition 1 - Z^2 = (C^* C)^{-1}.
template <typename Scalar>
Scalar image_residual(const SymplecticModel<Scalar>& model, const CZPair<Scalar>& p) {
  const CMat<Scalar>& c = p.C.complex_matrix();
  const CMat<Scalar>& s = p.Z.complex_matrix();
  const int n = model.n();
  const CMat<Scalar> lhs = CMat<Scalar>::Identity(n, n) - s * s.conjugate();
  const CMat<Scalar> rhs = (c.adjoint() * c).inverse();
  return detail::max_abs(CMat<Scalar>(lhs - rhs)) / std::max(Scalar(1), detail::max_abs(rhs));
}

template <typename Scalar>
CZPair<Scalar> cz_decompose(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g, Scalar tol = Scalar(1e-10)) {
  detail::require(g.rows() == model.dim() && g.cols() == model.dim(), "cz_decompose: expected 2n x 2n");
  const Scalar gn = std::max(Scalar(1), detail::max_abs(g));
  if (sp_residual(model, g) > tol * gn * gn) throw DomainError("cz_decompose: input is not symplectic");
  const Mat<Scalar> jgj = model.j() * g * model.j();
  const Mat<Scalar> c = (g - jgj) / Scalar(2);
  const Mat<Scalar> d = (g + jgj) / Scalar(2);
  Eigen::PartialPivLU<Mat<Scalar>> lu(c);
  const Scalar rcond = lu.rcond();
  if (!(rcond > Scalar(1e3) * Eigen::NumTraits<Scalar>::epsilon()))
    throw DomainError("cz_decompose: C_g is numerically singular");
  Mat<Scalar> z = lu.solve(d);
  // Project away roundoff so the stored parts are exactly (anti)linear.
  return {ComplexLinearView<Scalar>(model, linear_part(model, c), Scalar(1e-8)),
          AntiLinearView<Scalar>(model, antilinear_part(model, z), Scalar(1e-8))};
}

template <typename Scalar>
Mat<Scalar> cz_compose(const SymplecticModel<Scalar>& model, const CZPair<Scalar>& p, Scalar tol = Scalar(1e-10)) {
  if (image_residual(model, p) > tol) throw DomainError("cz_compose: image condition 1 - Z^2 = (C^*C)^{-1} violated");
  const int d = model.dim();
  return p.C.underlying() * (Mat<Scalar>::Identity(d, d) + p.Z.underlying());
}

// C_{g^{-1}} = C^*, Z_{g^{-1}} = -C Z C^{-1}.
template <typename Scalar>
CZPair<Scalar> cz_inverse(const SymplecticModel<Scalar>& model, const CZPair<Scalar>& p) {
  const CMat<Scalar>& c = p.C.complex_matrix();
  Eigen::PartialPivLU<CMat<Scalar>> lu(c);
  if (!(lu.rcond() > Scalar(1e3) * Eigen::NumTraits<Scalar>::epsilon()))
    throw DomainError("cz_inverse: C is singular");
  // In complex views the antilinear composite C Z C^{-1} has matrix C S conj(C)^{-1}.
  const CMat<Scalar> s = p.Z.complex_matrix();
  const CMat<Scalar> cbar = c.conjugate();
  const CMat<Scalar> s_inv = -(c * s) * cbar.partialPivLu().inverse();
  return {ComplexLinearView<Scalar>::from_complex(model, c.adjoint()),
          AntiLinearView<Scalar>::from_complex(model, s_inv)};
}

// Z_{g^{-1}} only.
template <typename Scalar>
CMat<Scalar> inverse_z(const CZPair<Scalar>& p) {
  const CMat<Scalar>& c = p.C.complex_matrix();
  return -(c * p.Z.complex_matrix()) * c.conjugate().partialPivLu().inverse();
}

// 1 - Z_1 Z_{g_2^{-1}} as a complex matrix.
template <typename Scalar>
CMat<Scalar> product_defect(const CZPair<Scalar>& p1, const CZPair<Scalar>& p2) {
  const CMat<Scalar> s2inv = inverse_z(p2);
  const auto n = s2inv.rows();
  return CMat<Scalar>::Identity(n, n) - p1.Z.complex_matrix() * s2inv.conjugate();
}

// C_{12} = C_1 (1 - Z_1 Z_{2^-}) C_2,
// Z_{12} = C_2^{-1} (1 - Z_1 Z_{2^-})^{-1} (Z_1 - Z_{2^-}) C_2.
template <typename Scalar>
CZPair<Scalar> cz_product(const SymplecticModel<Scalar>& model, const CZPair<Scalar>& p1, const CZPair<Scalar>& p2) {
  const CMat<Scalar>& c1 = p1.C.complex_matrix();
  const CMat<Scalar>& c2 = p2.C.complex_matrix();
  const CMat<Scalar>& s1 = p1.Z.complex_matrix();
  const CMat<Scalar> s2inv = inverse_z(p2);
  const int n = model.n();
  const CMat<Scalar> k = CMat<Scalar>::Identity(n, n) - s1 * s2inv.conjugate();
  if (!(detail::min_hermitean_eigenvalue<Scalar>(k) > 0))
    throw DomainError("cz_product: 1 - Z_1 Z_2^- is not in GL(V,j)_+");
  const CMat<Scalar> c12 = c1 * k * c2;
  // (Z_1 - Z_{2^-}) C_2 has matrix (S_1 - S_{2^-}) conj(C_2); C_2^{-1} K^{-1} is linear.
  const CMat<Scalar> s12 = c2.partialPivLu().solve(CMat<Scalar>(k.partialPivLu().solve(CMat<Scalar>((s1 - s2inv) * c2.conjugate()))));
  return {ComplexLinearView<Scalar>::from_complex(model, c12), AntiLinearView<Scalar>::from_complex(model, s12)};
}

// ---- random samples -------------------------------------------------------

// Random element of sp(V, Omega): Omega^{-1} S with S symmetric Gaussian.
template <typename Scalar, typename Rng>
Mat<Scalar> random_sp_algebra(const SymplecticModel<Scalar>& model, Rng& rng, Scalar scale = Scalar(0.5)) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const int d = model.dim();
  Mat<Scalar> s(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b <= a; ++b) s(a, b) = s(b, a) = scale * Scalar(nd(rng));
  return model.omega().partialPivLu().solve(s);
}

template <typename Scalar, typename Rng>
Mat<Scalar> random_sp(const SymplecticModel<Scalar>& model, Rng& rng, Scalar scale = Scalar(0.5)) {
  return random_sp_algebra(model, rng, scale).exp();
}

// Deterministic per seed.
template <typename Scalar>
Mat<Scalar> random_sp(const SymplecticModel<Scalar>& model, std::uint64_t seed, Scalar scale = Scalar(0.5)) {
  std::mt19937_64 rng(seed);
  return random_sp(model, rng, scale);
}

// Random element of u(V, Omega, j).
template <typename Scalar, typename Rng>
Mat<Scalar> random_u_algebra(const SymplecticModel<Scalar>& model, Rng& rng, Scalar scale = Scalar(0.5)) {
  return linear_part(model, random_sp_algebra(model, rng, scale));
}

template <typename Scalar, typename Rng>
Mat<Scalar> random_unitary(const SymplecticModel<Scalar>& model, Rng& rng, Scalar scale = Scalar(0.5)) {
  return random_u_algebra(model, rng, scale).exp();
}

// Random point of the Siegel domain with operator norm at most radius.
template <typename Scalar, typename Rng>
Mat<Scalar> random_siegel(const SymplecticModel<Scalar>& model, Rng& rng, Scalar radius = Scalar(0.8)) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.05, 1.0);
  const int n = model.n();
  CMat<Scalar> s(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) s(a, b) = s(b, a) = {Scalar(nd(rng)), Scalar(nd(rng))};
  Eigen::JacobiSVD<CMat<Scalar>> svd(s);
  const Scalar top = svd.singularValues()(0);
  if (top > 0) s *= radius * Scalar(ud(rng)) / top;
  return real_from_antilinear(model, s);
}

}  // namespace sympspin
