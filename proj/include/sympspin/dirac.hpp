#pragma once

// Symplectic Dirac operators on the flat torus with a trivialized Mp^c
// connection. Frames are constant; e^i = -sum_k omega^{ik} e_k.
//   D psi       = sum_i Cl(e_i) nabla_{e^i} psi
//   Dtilde psi  = sum_i Cl(J e_i) nabla_{e^i} psi
//   D' psi      = sum_i C_J(e_i) nabla_{e^i} psi,  D'' psi = -sum_i A_J(e_i) nabla_{e^i} psi
//   P           = 2 [D', D'']

#include <utility>
#include <vector>

#include "sympspin/connection.hpp"

namespace sympspin {

// Fiber operators of the coordinate frame: C_J(e_i), A_J(e_i), Cl(e_i), Cl(J e_i).
struct FrameOperators {
  std::vector<CMat<double>> c, a, cl, clj;
};

class DiracContext {
 public:
  DiracContext(const Connection& conn, int max_degree);

  const TorusModel& torus() const { return conn_.torus(); }
  const Connection& connection() const { return conn_; }
  const FockSpace<double>& space() const { return space_; }
  const FockSpace<double>& promoted_space() const { return space_up_; }
  const FockBasisPtr& basis() const { return space_.basis_ptr(); }
  // Spinor connection on the fiber space matching psi.basis.
  const SpinorConnection& nabla_for(const FockBasis& basis) const;
  const FockSpace<double>& space_for(const FockBasis& basis) const;
  const FrameOperators& frame_ops_for(const FockBasis& basis) const;
  void require_unitary(const char* what) const;

 private:
  Connection conn_;
  FockSpace<double> space_;
  FockSpace<double> space_up_;
  SpinorConnection nabla_;
  SpinorConnection nabla_up_;
  FrameOperators ops_;
  FrameOperators ops_up_;
};

// Embed into the (N+1)-truncated fiber / project back to degree <= N.
SpinorField promote(const DiracContext& ctx, const SpinorField& psi);
SpinorField demote(const DiracContext& ctx, const SpinorField& psi);

SpinorField dirac_D(const DiracContext& ctx, const SpinorField& psi);
SpinorField dirac_D(const DiracContext& ctx, const SpinorField& psi, const MatrixXd& frame);
SpinorField dirac_Dtilde(const DiracContext& ctx, const SpinorField& psi);
SpinorField dirac_Dtilde(const DiracContext& ctx, const SpinorField& psi, const MatrixXd& frame);

// form 0: sum C_J(e_i) nabla_{e^i}; 1: sum C_J(e_i) nabla'_{e^i}; 2: sum Cl(e_i) nabla'_{e^i}
// with nabla'_X = (nabla_X - i nabla_{JX}) / 2.
SpinorField dirac_Dprime(const DiracContext& ctx, const SpinorField& psi, int form = 0);
// form 0: -sum A_J(e_i) nabla_{e^i}; 1: -sum A_J(e_i) nabla''_{e^i}; 2: sum Cl(e_i) nabla''_{e^i}
// with nabla''_X = (nabla_X + i nabla_{JX}) / 2.
SpinorField dirac_Dsecond(const DiracContext& ctx, const SpinorField& psi, int form = 0);

// 2 [D', D''], evaluated in the (N+1)-truncated fiber so that every degree <= N is exact.
SpinorField P_op(const DiracContext& ctx, const SpinorField& psi);
// i [Dtilde, D], evaluated the same way.
SpinorField P_op_tilde(const DiracContext& ctx, const SpinorField& psi);

// L^2 pairing with omega^n / n! (grid quadrature, exact for band-limited fields).
std::complex<double> l2_inner(const DiracContext& ctx, const SpinorField& psi, const SpinorField& phi);
double l2_norm(const DiracContext& ctx, const SpinorField& psi);
// sum g^{ab} <beta_a, beta'_b>.
std::complex<double> l2_inner_oneform(const DiracContext& ctx, const SpinorOneForm& beta, const SpinorOneForm& gamma);

// |<D' psi, phi> - <psi, (D'' + A_J(tau)) phi>| / (|psi| |phi|).
double adjoint_residual(const DiracContext& ctx, const SpinorField& psi, const SpinorField& phi);

// nabla psi as the components nabla_{d_a} psi.
SpinorOneForm nabla(const DiracContext& ctx, const SpinorField& psi);
// nabla^* beta = -sum g^{ab} (nabla_{e_a} beta)(e_b) + beta(J tau).
SpinorField nabla_star(const DiracContext& ctx, const SpinorOneForm& beta);
// nabla^* nabla psi = -g^{ab} (nabla^2 psi)(e_a, e_b) + nabla_{J tau} psi.
SpinorField laplacian(const DiracContext& ctx, const SpinorField& psi);

struct WeitzenbockReport {
  // |[D', D''] psi - rhs| / |[D', D''] psi| with the curvature-torsion term as written.
  double residual = 0;
  // Same with the curvature-torsion term negated.
  double residual_negated = 0;
  // |C/A form - Clifford form| / |[D', D''] psi| of the curvature-torsion term.
  double forms_agreement = 0;
  // |[D', D''] psi| / |psi|.
  double lhs_norm = 0;
  // |curvature-torsion term| / |psi|.
  double term_norm = 0;
};

WeitzenbockReport weitzenbock_residual(const DiracContext& ctx, const SpinorField& psi);

// Same-mode block e^{-ik.x} P e^{ik.x} on degree d, and -(1/hbar) g(k,k) I.
std::pair<CMat<double>, CMat<double>> symbol_check(const DiracContext& ctx, const std::vector<int>& k, int degree);

// Matrix of P on the degree-d block (modes x degree-d monomials).
CMat<double> p_block(const DiracContext& ctx, int degree, int budget = 2500);
// Eigenvalues of the degree-d block sorted by (real, imaginary).
std::vector<std::complex<double>> spectrum(const DiracContext& ctx, int degree, int budget = 2500);

// Max over degrees d of |P psi_d| outside degree d, relative to |P psi_d|, for random psi_d of pure degree d.
double p_degree_leakage(const DiracContext& ctx, std::mt19937_64& rng, int kmax);

}  // namespace sympspin
