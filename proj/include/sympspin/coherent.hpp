#pragma once

// Exact coherent-state calculus: finite combinations sum c_i e_{v_i} with
// e_v(z) = exp(<z, v>_j / 2hbar).

#include <vector>

#include "sympspin/fock.hpp"

namespace sympspin {

template <typename Scalar = double>
struct CoherentTerm {
  std::complex<Scalar> coeff;
  Vec<Scalar> center;
};

template <typename Scalar = double>
struct CoherentCombo {
  std::vector<CoherentTerm<Scalar>> terms;
};

// e_v(z) = exp(<z, v>_j / 2hbar).
template <typename Scalar>
std::complex<Scalar> coherent_eval(const SymplecticModel<Scalar>& model, const Vec<Scalar>& v, const Vec<Scalar>& z) {
  return std::exp(hermitean_form(model, z, v) / (Scalar(2) * model.hbar()));
}

// (e_v, e_w)_j = e_v(w).
template <typename Scalar>
std::complex<Scalar> coherent_inner(const SymplecticModel<Scalar>& model, const Vec<Scalar>& v, const Vec<Scalar>& w) {
  return coherent_eval(model, v, w);
}

template <typename Scalar>
CMat<Scalar> coherent_gram(const SymplecticModel<Scalar>& model, const std::vector<Vec<Scalar>>& centers) {
  const auto m = static_cast<Eigen::Index>(centers.size());
  CMat<Scalar> g(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) g(a, b) = coherent_inner(model, centers[a], centers[b]);
  return g;
}

template <typename Scalar>
std::complex<Scalar> combo_inner(const SymplecticModel<Scalar>& model, const CoherentCombo<Scalar>& psi,
                                 const CoherentCombo<Scalar>& phi) {
  std::complex<Scalar> s(0);
  for (const auto& p : psi.terms)
    for (const auto& q : phi.terms) s += p.coeff * std::conj(q.coeff) * coherent_inner(model, p.center, q.center);
  return s;
}

template <typename Scalar>
std::complex<Scalar> combo_eval(const SymplecticModel<Scalar>& model, const CoherentCombo<Scalar>& psi,
                                const Vec<Scalar>& z) {
  std::complex<Scalar> s(0);
  for (const auto& p : psi.terms) s += p.coeff * coherent_eval(model, p.center, z);
  return s;
}

// U_j(v, t) e_w = s e_{v + w} with
// s = exp(-i t / hbar - |v|^2 / 4hbar - <v, w>_j / 2hbar).
template <typename Scalar>
std::complex<Scalar> uj_scalar(const SymplecticModel<Scalar>& model, const HeisenbergElement<Scalar>& h,
                               const Vec<Scalar>& w) {
  const Scalar hb = model.hbar();
  const std::complex<Scalar> e = std::complex<Scalar>(-norm2(model, h.v) / (Scalar(4) * hb), -h.t / hb) -
                                 hermitean_form(model, h.v, w) / (Scalar(2) * hb);
  return std::exp(e);
}

template <typename Scalar>
CoherentCombo<Scalar> uj_apply(const SymplecticModel<Scalar>& model, const HeisenbergElement<Scalar>& h,
                               const CoherentCombo<Scalar>& psi) {
  CoherentCombo<Scalar> out;
  out.terms.reserve(psi.terms.size());
  for (const auto& p : psi.terms) out.terms.push_back({p.coeff * uj_scalar(model, h, p.center), h.v + p.center});
  return out;
}

// Taylor truncation: coefficient of zeta^alpha in e_v is conj(zeta(v))^alpha / N_alpha.
template <typename Scalar>
FockVector<Scalar> project_coherent(const FockSpace<Scalar>& space, const CoherentCombo<Scalar>& psi) {
  const FockBasis& b = space.basis();
  FockVector<Scalar> f = FockVector<Scalar>::zero(space.basis_ptr());
  for (const auto& p : psi.terms) {
    const CVec<Scalar> z = space.model().coords(p.center).conjugate();
    for (int i = 0; i < b.dim(); ++i) {
      std::complex<Scalar> m(1);
      const MultiIndex& a = b.index(i);
      for (int k = 0; k < b.n(); ++k)
        for (int q = 0; q < a[k]; ++q) m *= z(k);
      f.coeffs(i) += p.coeff * m / space.norms()(i);
    }
  }
  return f;
}

// A(z, w) = (A P_N e_w)(z).
template <typename Scalar>
std::complex<Scalar> berezin_kernel_eval(const FockSpace<Scalar>& space, const FockOperator<Scalar>& a,
                                         const Vec<Scalar>& z, const Vec<Scalar>& w) {
  CoherentCombo<Scalar> ew{{{std::complex<Scalar>(1), w}}};
  return fock_eval(space, a(project_coherent(space, ew)), z);
}

}  // namespace sympspin
