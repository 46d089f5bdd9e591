#pragma once

// Trivialized Mp^c connections on the flat torus. In the coordinate frame a
// connection is given by fields Gamma_b (2n x 2n real matrices in sp(V, Omega),
// the linear connection nabla_{d_b} d_c = (Gamma_b)_{.c}) and purely imaginary
// scalars a_b (the lambda-component). Spinors are differentiated by
//   nabla_b psi = d_b psi + rho(a_b, Gamma_b) psi
// with rho the mp^c action on the truncated Fock fiber.

#include <vector>

#include "sympspin/mpc.hpp"
#include "sympspin/torus.hpp"

namespace sympspin {

// Gamma_b(x) += cos_part cos(k.x) + sin_part sin(k.x).
struct GammaMode {
  int direction = 0;
  std::vector<int> k;
  MatrixXd cos_part;
  MatrixXd sin_part;
};

// a_b(x) += i (cos_part cos(k.x) + sin_part sin(k.x)).
struct AMode {
  int direction = 0;
  std::vector<int> k;
  double cos_part = 0;
  double sin_part = 0;
};

class Connection {
 public:
  // gamma[b] is D*D x K with row r*D + c holding (Gamma_b)_{rc}; a is D x K.
  Connection(TorusModel torus, std::vector<MatrixXcd> gamma, MatrixXcd a);

  static Connection flat(const TorusModel& torus);
  static Connection from_modes(const TorusModel& torus, const std::vector<GammaMode>& gamma_modes,
                               const std::vector<AMode>& a_modes);

  const TorusModel& torus() const { return torus_; }
  const MatrixXcd& gamma(int b) const { return gamma_.at(b); }
  const std::vector<MatrixXcd>& gamma() const { return gamma_; }
  const MatrixXcd& a() const { return a_; }
  // All Gamma_b(x) commute with J.
  bool unitary_flag() const { return unitary_; }
  // Fourier coefficient of Gamma_b at mode m as a D x D complex matrix.
  MatrixXcd gamma_at(int b, int m) const;
  // Gamma_b and a_b identically zero.
  bool direction_is_zero(int b) const { return zero_dir_.at(b); }

  // max over b, modes of |Gamma^T Omega + Omega Gamma| (pointwise omega-compatibility).
  double nabla_omega_residual() const;
  // max over b, modes of |Gamma J - J Gamma|.
  double nabla_j_residual() const;

 private:
  TorusModel torus_;
  std::vector<MatrixXcd> gamma_;
  MatrixXcd a_;
  bool unitary_ = false;
  std::vector<bool> zero_dir_;
};

// Random sp-valued (or u-valued) band-limited connection.
Connection random_connection(const TorusModel& torus, std::mt19937_64& rng, int kmax, double scale, bool unitary,
                             bool with_a);

// Random connection with Gamma_b = gamma_b(x) J and random a (u(1)-valued, n = 1 style).
Connection random_u1_connection(const TorusModel& torus, std::mt19937_64& rng, int kmax, double scale);

// ---- linear-connection geometry -------------------------------------------

// Dual frame e^j = -sum_k omega^{jk} e_k for a constant frame (columns).
MatrixXd dual_frame(const TorusModel& torus, const MatrixXd& frame);

// nabla_b X = d_b X + Gamma_b X.
VectorField cov_deriv_vec(const Connection& conn, const VectorField& x, int b);

// T^c(d_a, d_b) = (Gamma_a)_{cb} - (Gamma_b)_{ca}; row (a*D + b)*D + c.
struct TorsionField {
  MatrixXcd coeffs;
};
TorsionField torsion(const Connection& conn);

// T(u, v) for constant vectors u, v.
VectorField torsion_apply(const Connection& conn, const TorsionField& t, const VectorXd& u, const VectorXd& v);

// tau = (1/2) sum_k T(e_k, e^k) in the coordinate frame.
VectorField tau(const Connection& conn);
// Same sum in an arbitrary constant frame.
VectorField tau_in_frame(const Connection& conn, const MatrixXd& frame);

// Covector field Z -> Trace[Y -> T(Y, Z)], row b = value on d_b.
MatrixXcd torsion_trace(const Connection& conn);
// Covector field Z -> omega(tau, Z).
MatrixXcd omega_tau(const Connection& conn);

// div X = Trace[Y -> nabla_Y X].
ScalarField divergence(const Connection& conn, const VectorField& x);

// Max over the grid of |L_X omega^n / omega^n - (div X + omega(X, tau))|.
double lie_lemma_residual(const Connection& conn, const VectorField& x);

// Curvature 2-form of the u(1)-part: omega^alpha = -(i/2) eta_*(F^alpha).
TwoForm central_curvature(const Connection& conn);
// Curvature of the eta line bundle: d(2a + tr_C Gamma).
TwoForm eta_curvature(const Connection& conn);

// nabla_X Y = nabla^1_X Y - (1/2n)(omega(tau,Y)X + omega(X,Y)tau + omega(J tau,Y)JX + omega(JX,Y)J tau).
Connection torsion_removal(const Connection& conn);

// ---- spinors ---------------------------------------------------------------

struct SpinorField {
  FockBasisPtr basis;
  MatrixXcd coeffs;  // F x K

  static SpinorField zero(const FockBasisPtr& b, const TorusModel& torus) {
    return {b, MatrixXcd::Zero(b->dim(), torus.num_modes())};
  }
};

using SpinorOneForm = std::vector<SpinorField>;

// Spinor covariant derivative of a connection on the fiber space.
class SpinorConnection {
 public:
  SpinorConnection(const Connection& conn, const FockSpace<double>& space);

  const Connection& connection() const { return conn_; }
  const FockSpace<double>& space() const { return space_; }
  const TorusModel& torus() const { return conn_.torus(); }

  // nabla_{d_b} psi.
  SpinorField derivative(const SpinorField& psi, int b) const;
  // nabla_X psi for a constant vector X.
  SpinorField along(const SpinorField& psi, const VectorXd& x) const;
  // nabla_X psi = sum_c X^c nabla_c psi for a vector field X.
  SpinorField along_field(const SpinorField& psi, const VectorField& x) const;
  // Fourier coefficients of the fiber operator rho(a_b, Gamma_b): F*F x K.
  const MatrixXcd& fiber_operator(int b) const { return rho_hat_.at(b); }
  // Max entry of rho(a_b, Gamma_b) between different degrees.
  double degree_off_block_mass() const;

 private:
  Connection conn_;
  FockSpace<double> space_;
  std::vector<MatrixXcd> rho_hat_;
  std::vector<MatrixXcd> rho_grid_;
};

// R(d_a, d_b) psi = nabla_a nabla_b psi - nabla_b nabla_a psi.
SpinorField spinor_curvature(const SpinorConnection& nabla, const SpinorField& psi, int a, int b);

// Multiply a spinor field by a constant fiber matrix.
SpinorField fiber_apply(const CMat<double>& op, const SpinorField& psi);
// Multiply a spinor field by a scalar field (truncated).
SpinorField scalar_multiply(const TorusModel& torus, const MatrixXcd& f, const SpinorField& psi);

SpinorField operator+(const SpinorField& a, const SpinorField& b);
SpinorField operator-(const SpinorField& a, const SpinorField& b);
SpinorField operator*(std::complex<double> s, const SpinorField& a);

// Random band-limited spinor field with fiber degrees <= max_degree.
SpinorField random_spinor(const TorusModel& torus, const FockBasisPtr& basis, std::mt19937_64& rng, int kmax,
                          int max_degree);

}  // namespace sympspin
