#pragma once

// Mp^c group in (C, Z, lambda) parameters, its characters, the MU^c action
// on truncated Fock vectors, the Lie-algebra action and Berezin kernels.

#include "sympspin/coherent.hpp"

namespace sympspin {

template <typename Scalar = double>
struct MpcElement {
  CZPair<Scalar> cz;
  std::complex<Scalar> lambda;
};

// |lambda^2 det C| - 1.
template <typename Scalar>
Scalar mpc_constraint_residual(const MpcElement<Scalar>& u) {
  return std::abs(std::abs(u.lambda * u.lambda * u.cz.C.complex_matrix().determinant()) - Scalar(1));
}

template <typename Scalar>
MpcElement<Scalar> make_mpc(const CZPair<Scalar>& cz, std::complex<Scalar> lambda, Scalar tol = Scalar(1e-10)) {
  MpcElement<Scalar> u{cz, lambda};
  if (mpc_constraint_residual(u) > tol) throw DomainError("MpcElement: |lambda^2 det C| != 1");
  return u;
}

template <typename Scalar>
MpcElement<Scalar> mpc_identity(const SymplecticModel<Scalar>& model) {
  return {cz_identity(model), std::complex<Scalar>(1)};
}

// Central U(1): (I, lambda).
template <typename Scalar>
MpcElement<Scalar> mpc_central(const SymplecticModel<Scalar>& model, std::complex<Scalar> lambda) {
  return make_mpc(cz_identity(model), lambda);
}

// MU^c element (k, lambda) for unitary k.
template <typename Scalar>
MpcElement<Scalar> mpc_from_unitary(const SymplecticModel<Scalar>& model, const Mat<Scalar>& k,
                                    std::complex<Scalar> lambda) {
  if (!u_check(model, k, Scalar(1e-10))) throw DomainError("mpc_from_unitary: k is not unitary");
  const int d = model.dim();
  return make_mpc(CZPair<Scalar>{ComplexLinearView<Scalar>(model, k, Scalar(1e-10)),
                                 AntiLinearView<Scalar>(model, Mat<Scalar>::Zero(d, d))},
                  lambda);
}

// Lift of a symplectic g with lambda = |det C|^{-1/2} e^{i phase}.
template <typename Scalar>
MpcElement<Scalar> mpc_lift(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g, Scalar phase = Scalar(0)) {
  CZPair<Scalar> cz = cz_decompose(model, g);
  const Scalar m = std::abs(cz.C.complex_matrix().determinant());
  return make_mpc(cz, std::polar(Scalar(1) / std::sqrt(m), phase));
}

// Metaplectic lift: lambda = exp(-a(C)/2) when C lies in GL(V,j)_+, so eta = 1.
template <typename Scalar>
MpcElement<Scalar> mpc_metaplectic_lift(const SymplecticModel<Scalar>& model, const Mat<Scalar>& g) {
  CZPair<Scalar> cz = cz_decompose(model, g);
  const std::complex<Scalar> a = smooth_log_det(model, cz.C);
  return make_mpc(cz, std::exp(-a / Scalar(2)));
}

template <typename Rng, typename Scalar>
MpcElement<Scalar> random_mpc(const SymplecticModel<Scalar>& model, Rng& rng, Scalar scale = Scalar(0.5)) {
  std::uniform_real_distribution<double> ud(-3.14159, 3.14159);
  const Mat<Scalar> g = random_sp(model, rng, scale);
  return mpc_lift(model, g, Scalar(ud(rng)));
}

// lambda_12 = lambda_1 lambda_2 exp(-a(1 - Z_1 Z_{g_2^{-1}}) / 2).
template <typename Scalar>
MpcElement<Scalar> mpc_mul(const SymplecticModel<Scalar>& model, const MpcElement<Scalar>& u1,
                           const MpcElement<Scalar>& u2) {
  const CMat<Scalar> k = product_defect(u1.cz, u2.cz);
  const std::complex<Scalar> a = smooth_log_det_complex<Scalar>(k);
  return {cz_product(model, u1.cz, u2.cz), u1.lambda * u2.lambda * std::exp(-a / Scalar(2))};
}

// lambda(U^{-1}) = exp(a(1 - Z^2) / 2) / lambda.
template <typename Scalar>
MpcElement<Scalar> mpc_inverse(const SymplecticModel<Scalar>& model, const MpcElement<Scalar>& u) {
  const CMat<Scalar>& s = u.cz.Z.complex_matrix();
  const int n = model.n();
  const std::complex<Scalar> a = smooth_log_det_complex<Scalar>(CMat<Scalar>(CMat<Scalar>::Identity(n, n) - s * s.conjugate()));
  return {cz_inverse(model, u.cz), std::exp(a / Scalar(2)) / u.lambda};
}

// eta = lambda^2 det C.
template <typename Scalar>
std::complex<Scalar> eta(const MpcElement<Scalar>& u) {
  return u.lambda * u.lambda * u.cz.C.complex_matrix().determinant();
}

template <typename Scalar>
bool is_metaplectic(const MpcElement<Scalar>& u, Scalar tol = Scalar(1e-10)) {
  return std::abs(eta(u) - std::complex<Scalar>(1)) <= tol;
}

// Matrix of (U f)(z) = lambda f(k^{-1} z) on an MU^c element.
template <typename Scalar>
FockOperator<Scalar> muc_operator(const FockSpace<Scalar>& space, const MpcElement<Scalar>& u, Scalar tol = Scalar(1e-10)) {
  if (detail::max_abs(u.cz.Z.complex_matrix()) > tol) throw DomainError("muc_apply: element is not in MU^c (Z != 0)");
  const CMat<Scalar> kinv = u.cz.C.complex_matrix().inverse();
  CMat<Scalar> m = substitution_matrix<Scalar>(space.basis(), kinv);
  m *= u.lambda;
  return {space.basis_ptr(), m, 0};
}

template <typename Scalar>
FockVector<Scalar> muc_apply(const FockSpace<Scalar>& space, const MpcElement<Scalar>& u, const FockVector<Scalar>& f) {
  return muc_operator(space, u)(f);
}

// ---- Lie algebra ---------------------------------------------------------

// (mu, xi): mu = d lambda / dt, xi in sp(V, Omega).
template <typename Scalar = double>
struct MpcLieElement {
  std::complex<Scalar> mu;
  Mat<Scalar> xi;
};

template <typename Scalar>
MpcLieElement<Scalar> make_mpc_lie(const SymplecticModel<Scalar>& model, std::complex<Scalar> mu, Mat<Scalar> xi,
                                   Scalar tol = Scalar(1e-12)) {
  if (sp_algebra_residual(model, xi) > tol * std::max(Scalar(1), detail::max_abs(xi)))
    throw DomainError("MpcLieElement: xi is not in sp(V, Omega)");
  if (std::abs(mu.real()) > tol) throw DomainError("MpcLieElement: mu must be imaginary");
  return {mu, std::move(xi)};
}

// Bracket in (mu, xi) coordinates. The mu-component of the commutator is
// -tr_C([xi_1, xi_2]) / 2, so that the eta-derivative mu + tr_C(xi) / 2 of a
// bracket vanishes.
template <typename Scalar>
MpcLieElement<Scalar> mpc_lie_bracket(const SymplecticModel<Scalar>& model, const MpcLieElement<Scalar>& x1,
                                      const MpcLieElement<Scalar>& x2) {
  const Mat<Scalar> c = x1.xi * x2.xi - x2.xi * x1.xi;
  return {-complex_trace(model, c) / Scalar(2), c};
}

// Derivative of eta: mu + tr_C(xi) / 2 (times two gives eta_*).
template <typename Scalar>
std::complex<Scalar> half_eta_derivative(const SymplecticModel<Scalar>& model, const MpcLieElement<Scalar>& x) {
  return x.mu + complex_trace(model, x.xi) / Scalar(2);
}

// Matrix of
//   f -> mu f - (d f)(eta z) + <z, zeta z>_j f / 4hbar - hbar sum_i d(d f(e_i))(zeta e_i),
// xi = eta + zeta split into j-linear and antilinear parts. With H the complex
// view of eta and S that of zeta this is
//   mu f - sum (H z)_k d_k f + (1/4hbar) sum conj(S_km) z_k z_m f - hbar sum S_km d_k d_m f.
// Accepts a complex mu and any real 2n x 2n xi; the complex-linear extension
// in xi is obtained by linearity of the matrix in (mu, xi).
template <typename Scalar>
FockOperator<Scalar> mpc_lie_operator(const FockSpace<Scalar>& space, std::complex<Scalar> mu, const Mat<Scalar>& xi) {
  const SymplecticModel<Scalar>& model = space.model();
  const FockBasis& b = space.basis();
  const int n = b.n();
  const Scalar hb = model.hbar();
  const CMat<Scalar> h = complex_view(model, xi);
  const CMat<Scalar> s = antilinear_view(model, xi);
  CMat<Scalar> m = CMat<Scalar>::Zero(b.dim(), b.dim());
  for (int c = 0; c < b.dim(); ++c) {
    MultiIndex a = b.index(c);
    m(c, c) += mu;
    // -(H z)_k d_k: z^a -> -a_k H_{km} z^{a - e_k + e_m}
    for (int k = 0; k < n; ++k) {
      if (a[k] == 0) continue;
      for (int q = 0; q < n; ++q) {
        if (h(k, q) == std::complex<Scalar>(0)) continue;
        MultiIndex t = a;
        --t[k];
        ++t[q];
        m(b.find(t), c) -= Scalar(a[k]) * h(k, q);
      }
    }
    // (1/4hbar) conj(S_km) z_k z_m
    for (int k = 0; k < n; ++k)
      for (int q = 0; q < n; ++q) {
        MultiIndex t = a;
        ++t[k];
        ++t[q];
        const int r = b.find(t);
        if (r >= 0) m(r, c) += std::conj(s(k, q)) / (Scalar(4) * hb);
      }
    // -hbar S_km d_k d_m
    for (int k = 0; k < n; ++k)
      for (int q = 0; q < n; ++q) {
        MultiIndex t = a;
        Scalar mult(1);
        if (t[k] == 0) continue;
        mult *= Scalar(t[k]);
        --t[k];
        if (t[q] == 0) continue;
        mult *= Scalar(t[q]);
        --t[q];
        m(b.find(t), c) -= hb * mult * s(k, q);
      }
  }
  const bool linear = detail::max_abs(s) == Scalar(0);
  return {space.basis_ptr(), m, linear ? std::optional<int>(0) : std::nullopt};
}

template <typename Scalar>
FockOperator<Scalar> mpc_lie_operator(const FockSpace<Scalar>& space, const MpcLieElement<Scalar>& x) {
  return mpc_lie_operator(space, x.mu, x.xi);
}

template <typename Scalar>
FockVector<Scalar> mpc_lie_act(const FockSpace<Scalar>& space, const MpcLieElement<Scalar>& x,
                               const FockVector<Scalar>& f) {
  return mpc_lie_operator(space, x)(f);
}

// ---- Berezin kernels ------------------------------------------------------

// U(z, v) = lambda exp((2<A z, v> - <z, B z> - <Cq v, v>) / 4hbar) with
// A = C_g^{-1}, B = Z_{g^{-1}}, Cq = Z_g. Stored as complex matrices
// (A linear view, B and Cq antilinear views).
template <typename Scalar = double>
struct GaussianKernel {
  std::complex<Scalar> lambda;
  CMat<Scalar> A;
  CMat<Scalar> B;
  CMat<Scalar> Cq;
};

template <typename Scalar>
GaussianKernel<Scalar> mpc_kernel(const MpcElement<Scalar>& u) {
  return {u.lambda, u.cz.C.complex_matrix().inverse(), inverse_z(u.cz), u.cz.Z.complex_matrix()};
}

// Logarithm of the kernel exponent (without lambda).
template <typename Scalar>
std::complex<Scalar> kernel_exponent(const SymplecticModel<Scalar>& model, const GaussianKernel<Scalar>& k,
                                     const Vec<Scalar>& z, const Vec<Scalar>& v) {
  const CVec<Scalar> zc = model.coords(z);
  const CVec<Scalar> vc = model.coords(v);
  // <A z, v> = (A z)^T conj(v); <z, B z> = z^T conj(B) z; <Cq v, v> = conj(v)^T Cq conj(v).
  const std::complex<Scalar> t1 = (k.A * zc).transpose() * vc.conjugate();
  const std::complex<Scalar> t2 = zc.transpose() * k.B.conjugate() * zc;
  const std::complex<Scalar> t3 = vc.conjugate().transpose() * k.Cq * vc.conjugate();
  return (Scalar(2) * t1 - t2 - t3) / (Scalar(4) * model.hbar());
}

template <typename Scalar>
std::complex<Scalar> kernel_eval(const SymplecticModel<Scalar>& model, const GaussianKernel<Scalar>& k,
                                 const Vec<Scalar>& z, const Vec<Scalar>& v) {
  return k.lambda * std::exp(kernel_exponent(model, k, z, v));
}

}  // namespace sympspin
