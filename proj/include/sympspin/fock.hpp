#pragma once

// Degree-truncated Bargmann-Fock space. Vectors are coefficient arrays over
// the monomials zeta^alpha, |alpha| <= N, in graded lexicographic order
// (degree ascending, then alpha lexicographically descending). The monomial
// norms are N_alpha = alpha! (2 hbar)^{|alpha|}.

#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <vector>

#include "sympspin/symplinalg.hpp"

namespace sympspin {

using MultiIndex = std::vector<int>;

// Combinatorial monomial basis shared by vectors and operators.
class FockBasis {
 public:
  FockBasis(int n, int max_degree) : n_(n), N_(max_degree) {
    if (n < 1 || max_degree < 0) throw DomainError("FockBasis: need n >= 1 and N >= 0");
    begin_.push_back(0);
    for (int d = 0; d <= N_; ++d) {
      MultiIndex a(n_, 0);
      emit(a, 0, d);
      begin_.push_back(static_cast<int>(table_.size()));
    }
    for (int i = 0; i < dim(); ++i) lookup_.emplace(table_[i], i);
  }

  int n() const { return n_; }
  int max_degree() const { return N_; }
  int dim() const { return static_cast<int>(table_.size()); }
  const MultiIndex& index(int i) const { return table_.at(i); }
  int degree(int i) const { return degree_of_[i]; }
  // Position of alpha, or -1 when |alpha| > N.
  int find(const MultiIndex& alpha) const {
    auto it = lookup_.find(alpha);
    return it == lookup_.end() ? -1 : it->second;
  }
  // Half-open range [degree_begin(d), degree_end(d)) of degree-d monomials.
  int degree_begin(int d) const { return begin_.at(d); }
  int degree_end(int d) const { return begin_.at(d + 1); }
  int degree_size(int d) const { return degree_end(d) - degree_begin(d); }
  // Number of monomials of degree <= d.
  int dim_upto(int d) const { return d < 0 ? 0 : begin_.at(std::min(d, N_) + 1); }

  bool operator==(const FockBasis& o) const { return n_ == o.n_ && N_ == o.N_; }

 private:
  void emit(MultiIndex& a, int pos, int remaining) {
    if (pos == n_ - 1) {
      a[pos] = remaining;
      table_.push_back(a);
      degree_of_.push_back(static_cast<int>(std::accumulate(a.begin(), a.end(), 0)));
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      a[pos] = v;
      emit(a, pos + 1, remaining - v);
    }
    a[pos] = 0;
  }

  int n_;
  int N_;
  std::vector<MultiIndex> table_;
  std::vector<int> degree_of_;
  std::vector<int> begin_;
  std::map<MultiIndex, int> lookup_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

// ||zeta^alpha||^2 = alpha! (2 hbar)^{|alpha|}.
template <typename Scalar>
Scalar monomial_norm(const SymplecticModel<Scalar>& model, const MultiIndex& alpha) {
  Scalar v(1);
  for (int a : alpha) {
    if (a < 0) throw DomainError("monomial_norm: negative multi-index entry");
    for (int m = 1; m <= a; ++m) v *= Scalar(2) * model.hbar() * Scalar(m);
  }
  return v;
}

// A model together with a truncated basis and its monomial norms.
template <typename Scalar = double>
class FockSpace {
 public:
  FockSpace(SymplecticModel<Scalar> model, int max_degree)
      : model_(std::move(model)), basis_(std::make_shared<FockBasis>(model_.n(), max_degree)) {
    norms_.resize(basis_->dim());
    for (int i = 0; i < basis_->dim(); ++i) norms_(i) = monomial_norm(model_, basis_->index(i));
  }

  const SymplecticModel<Scalar>& model() const { return model_; }
  const FockBasisPtr& basis_ptr() const { return basis_; }
  const FockBasis& basis() const { return *basis_; }
  int dim() const { return basis_->dim(); }
  int max_degree() const { return basis_->max_degree(); }
  const Vec<Scalar>& norms() const { return norms_; }

 private:
  SymplecticModel<Scalar> model_;
  FockBasisPtr basis_;
  Vec<Scalar> norms_;
};

template <typename Scalar = double>
struct FockVector {
  FockBasisPtr basis;
  CVec<Scalar> coeffs;

  static FockVector zero(const FockBasisPtr& b) { return {b, CVec<Scalar>::Zero(b->dim())}; }
  static FockVector monomial(const FockBasisPtr& b, const MultiIndex& alpha) {
    FockVector f = zero(b);
    const int i = b->find(alpha);
    if (i < 0) throw DimensionError("FockVector::monomial: degree exceeds truncation");
    f.coeffs(i) = 1;
    return f;
  }
  static FockVector vacuum(const FockBasisPtr& b) { return monomial(b, MultiIndex(b->n(), 0)); }
};

template <typename Scalar = double>
struct FockOperator {
  FockBasisPtr basis;
  CMat<Scalar> matrix;
  // Degree change of every nonzero entry; empty when mixed.
  std::optional<int> degree_shift;

  FockVector<Scalar> operator()(const FockVector<Scalar>& f) const {
    if (!(*f.basis == *basis)) throw DimensionError("FockOperator: basis mismatch");
    return {basis, matrix * f.coeffs};
  }
};

namespace detail {

inline void same_basis(const FockBasis& a, const FockBasis& b) {
  if (!(a == b)) throw DimensionError("Fock basis mismatch");
}

}  // namespace detail

// (f, g) = sum_alpha f_alpha conj(g_alpha) N_alpha.
template <typename Scalar>
std::complex<Scalar> fock_inner(const FockSpace<Scalar>& space, const FockVector<Scalar>& f,
                                const FockVector<Scalar>& g) {
  detail::same_basis(*f.basis, space.basis());
  detail::same_basis(*g.basis, space.basis());
  std::complex<Scalar> s(0);
  for (int i = 0; i < space.dim(); ++i) s += f.coeffs(i) * std::conj(g.coeffs(i)) * space.norms()(i);
  return s;
}

// Adjoint of a matrix with respect to fock_inner: W^{-1} A^H W.
template <typename Scalar>
CMat<Scalar> fock_adjoint(const FockSpace<Scalar>& space, const CMat<Scalar>& a) {
  const Vec<Scalar>& w = space.norms();
  CMat<Scalar> r = a.adjoint();
  for (int i = 0; i < r.rows(); ++i)
    for (int k = 0; k < r.cols(); ++k) r(i, k) *= w(k) / w(i);
  return r;
}

// Largest |entry| mapping degree k to degree k', k' != k + shift.
template <typename Scalar>
Scalar off_shift_mass(const FockBasis& basis, const CMat<Scalar>& a, int shift) {
  Scalar m(0);
  for (int r = 0; r < basis.dim(); ++r)
    for (int c = 0; c < basis.dim(); ++c)
      if (basis.degree(r) != basis.degree(c) + shift) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// Leading block acting on degrees <= d.
template <typename Scalar>
CMat<Scalar> restrict_to_degrees(const FockBasis& basis, const CMat<Scalar>& a, int d) {
  const int m = basis.dim_upto(d);
  return a.topLeftCorner(m, m);
}

// c(v) f = <zeta, v>_j f / 2hbar, top degree dropped.
template <typename Scalar>
FockOperator<Scalar> creation_op(const FockSpace<Scalar>& space, const Vec<Scalar>& v) {
  const FockBasis& b = space.basis();
  const CVec<Scalar> z = space.model().coords(v);
  const Scalar inv2h = Scalar(1) / (Scalar(2) * space.model().hbar());
  CMat<Scalar> m = CMat<Scalar>::Zero(b.dim(), b.dim());
  for (int c = 0; c < b.dim(); ++c) {
    MultiIndex a = b.index(c);
    for (int k = 0; k < b.n(); ++k) {
      ++a[k];
      const int r = b.find(a);
      if (r >= 0) m(r, c) += std::conj(z(k)) * inv2h;
      --a[k];
    }
  }
  return {space.basis_ptr(), m, 1};
}

// a(v) = sum_k zeta_k(v) d/dzeta_k.
template <typename Scalar>
FockOperator<Scalar> annihilation_op(const FockSpace<Scalar>& space, const Vec<Scalar>& v) {
  const FockBasis& b = space.basis();
  const CVec<Scalar> z = space.model().coords(v);
  CMat<Scalar> m = CMat<Scalar>::Zero(b.dim(), b.dim());
  for (int c = 0; c < b.dim(); ++c) {
    MultiIndex a = b.index(c);
    for (int k = 0; k < b.n(); ++k) {
      if (a[k] == 0) continue;
      const Scalar mult = Scalar(a[k]);
      --a[k];
      m(b.find(a), c) += z(k) * mult;
      ++a[k];
    }
  }
  return {space.basis_ptr(), m, -1};
}

// cl(v) = c(v) - a(v).
template <typename Scalar>
FockOperator<Scalar> clifford_op(const FockSpace<Scalar>& space, const Vec<Scalar>& v) {
  return {space.basis_ptr(), creation_op(space, v).matrix - annihilation_op(space, v).matrix, std::nullopt};
}

// ---- polynomial helpers -------------------------------------------------

// f(zeta(z)) = sum f_alpha zeta(z)^alpha.
template <typename Scalar>
std::complex<Scalar> fock_eval(const FockSpace<Scalar>& space, const FockVector<Scalar>& f, const Vec<Scalar>& z) {
  const CVec<Scalar> c = space.model().coords(z);
  const FockBasis& b = space.basis();
  std::complex<Scalar> s(0);
  for (int i = 0; i < b.dim(); ++i) {
    std::complex<Scalar> m(1);
    const MultiIndex& a = b.index(i);
    for (int k = 0; k < b.n(); ++k)
      for (int p = 0; p < a[k]; ++p) m *= c(k);
    s += f.coeffs(i) * m;
  }
  return s;
}

// Multiply by the linear form sum_m l_m zeta_m, dropping the top degree.
template <typename Scalar>
CVec<Scalar> multiply_linear(const FockBasis& b, const CVec<Scalar>& f, const CVec<Scalar>& l) {
  CVec<Scalar> r = CVec<Scalar>::Zero(b.dim());
  for (int c = 0; c < b.dim(); ++c) {
    if (f(c) == std::complex<Scalar>(0)) continue;
    MultiIndex a = b.index(c);
    for (int m = 0; m < b.n(); ++m) {
      ++a[m];
      const int t = b.find(a);
      if (t >= 0) r(t) += l(m) * f(c);
      --a[m];
    }
  }
  return r;
}

// Matrix of f(zeta) -> f(L zeta) for a complex n x n matrix L (degree preserving).
template <typename Scalar>
CMat<Scalar> substitution_matrix(const FockBasis& b, const CMat<Scalar>& l) {
  CMat<Scalar> out = CMat<Scalar>::Zero(b.dim(), b.dim());
  out(0, 0) = 1;
  for (int c = 1; c < b.dim(); ++c) {
    MultiIndex a = b.index(c);
    int k = 0;
    while (a[k] == 0) ++k;
    --a[k];
    const int prev = b.find(a);
    out.col(c) = multiply_linear<Scalar>(b, out.col(prev), l.row(k).transpose());
  }
  return out;
}

// ---- Heisenberg group ----------------------------------------------------

template <typename Scalar = double>
struct HeisenbergElement {
  Vec<Scalar> v;
  Scalar t = 0;
};

// (v1, t1)(v2, t2) = (v1 + v2, t1 + t2 - Omega(v1, v2)/2).
template <typename Scalar>
HeisenbergElement<Scalar> heisenberg_mul(const SymplecticModel<Scalar>& model, const HeisenbergElement<Scalar>& h1,
                                         const HeisenbergElement<Scalar>& h2) {
  return {h1.v + h2.v, h1.t + h2.t - model.omega_form(h1.v, h2.v) / Scalar(2)};
}

template <typename Scalar>
HeisenbergElement<Scalar> heisenberg_inverse(const HeisenbergElement<Scalar>& h) {
  return {-h.v, -h.t};
}

// Lie bracket of the Heisenberg algebra: [(v1, a1), (v2, a2)] = (0, -Omega(v1, v2)).
template <typename Scalar>
HeisenbergElement<Scalar> heisenberg_lie_bracket(const SymplecticModel<Scalar>& model,
                                                 const HeisenbergElement<Scalar>& x1,
                                                 const HeisenbergElement<Scalar>& x2) {
  return {Vec<Scalar>::Zero(model.dim()), -model.omega_form(x1.v, x2.v)};
}

// Matrix of (v, alpha) -> (-i alpha / hbar) + cl(v).
template <typename Scalar>
FockOperator<Scalar> heisenberg_lie_op(const FockSpace<Scalar>& space, const HeisenbergElement<Scalar>& x) {
  FockOperator<Scalar> op = clifford_op(space, x.v);
  op.matrix.diagonal().array() += std::complex<Scalar>(0, -x.t / space.model().hbar());
  return op;
}

template <typename Scalar>
FockVector<Scalar> heisenberg_lie_act(const FockSpace<Scalar>& space, const HeisenbergElement<Scalar>& x,
                                      const FockVector<Scalar>& f) {
  return heisenberg_lie_op(space, x)(f);
}

}  // namespace sympspin
