#include "sympspin/connection.hpp"

#include <cmath>

namespace sympspin {

namespace {

using cd = std::complex<double>;

MatrixXcd as_matrix(const MatrixXcd& rows, int m, int D) {
  MatrixXcd g(D, D);
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) g(r, c) = rows(r * D + c, m);
  return g;
}

void store_matrix(MatrixXcd& rows, int m, const MatrixXcd& g) {
  const int D = static_cast<int>(g.rows());
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) rows(r * D + c, m) = g(r, c);
}

// Complex-linear extension of tr_C(X) = (tr X - i tr(J X)) / 2.
cd trace_c(const MatrixXcd& x, const MatrixXd& j) { return (x.trace() - cd(0, 1) * (j * x).trace()) / 2.0; }

// tr_C of each Gamma-coefficient column: 1 x K.
MatrixXcd trace_c_field(const TorusModel& torus, const MatrixXcd& gamma) {
  const int D = torus.dim();
  MatrixXcd out(1, torus.num_modes());
  for (int m = 0; m < torus.num_modes(); ++m) out(0, m) = trace_c(as_matrix(gamma, m, D), torus.model().j());
  return out;
}

// Pointwise matrix-vector product of a D*D-row matrix field and a D-row field.
MatrixXcd matvec_field(const TorusModel& torus, const MatrixXcd& mat, const MatrixXcd& vec) {
  const int D = torus.dim();
  const MatrixXcd mg = torus.to_grid(mat);
  const MatrixXcd vg = torus.to_grid(vec);
  MatrixXcd out(D, torus.num_points());
  for (int p = 0; p < torus.num_points(); ++p) {
    for (int r = 0; r < D; ++r) {
      cd s(0);
      for (int c = 0; c < D; ++c) s += mg(r * D + c, p) * vg(c, p);
      out(r, p) = s;
    }
  }
  return torus.from_grid(out);
}

}  // namespace

Connection::Connection(TorusModel torus, std::vector<MatrixXcd> gamma, MatrixXcd a)
    : torus_(std::move(torus)), gamma_(std::move(gamma)), a_(std::move(a)) {
  const int D = torus_.dim();
  const int K = torus_.num_modes();
  if (static_cast<int>(gamma_.size()) != D) throw DimensionError("Connection: need one Gamma per direction");
  for (const auto& g : gamma_)
    if (g.rows() != D * D || g.cols() != K) throw DimensionError("Connection: Gamma field has wrong shape");
  if (a_.rows() != D || a_.cols() != K) throw DimensionError("Connection: a field has wrong shape");
  const MatrixXd& om = torus_.model().omega();
  const MatrixXd& j = torus_.model().j();
  unitary_ = true;
  zero_dir_.assign(D, true);
  for (int b = 0; b < D; ++b) {
    for (int m = 0; m < K; ++m) {
      const int mm = torus_.negated(m);
      const MatrixXcd g = as_matrix(gamma_[b], m, D);
      const MatrixXcd gm = as_matrix(gamma_[b], mm, D);
      const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
      if ((g - gm.conjugate()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DomainError("Connection: Gamma is not real-valued");
      if ((g.transpose() * om + om * g).cwiseAbs().maxCoeff() > 1e-11 * scale)
        throw DomainError("Connection: Gamma is not sp(V, Omega)-valued");
      if ((g * j - j * g).cwiseAbs().maxCoeff() > 1e-12 * scale) unitary_ = false;
      if (std::abs(a_(b, m) + std::conj(a_(b, mm))) > 1e-12 * std::max(1.0, std::abs(a_(b, m))))
        throw DomainError("Connection: a is not purely imaginary");
      if (g.cwiseAbs().maxCoeff() != 0.0 || a_(b, m) != cd(0)) zero_dir_[b] = false;
    }
  }
}

Connection Connection::flat(const TorusModel& torus) {
  const int D = torus.dim();
  return Connection(torus, std::vector<MatrixXcd>(D, MatrixXcd::Zero(D * D, torus.num_modes())),
                    MatrixXcd::Zero(D, torus.num_modes()));
}

Connection Connection::from_modes(const TorusModel& torus, const std::vector<GammaMode>& gamma_modes,
                                  const std::vector<AMode>& a_modes) {
  const int D = torus.dim();
  std::vector<MatrixXcd> gamma(D, MatrixXcd::Zero(D * D, torus.num_modes()));
  MatrixXcd a = MatrixXcd::Zero(D, torus.num_modes());
  for (const auto& gm : gamma_modes) {
    if (gm.direction < 0 || gm.direction >= D) throw DomainError("gamma mode: direction out of range");
    if (gm.cos_part.rows() != D || gm.cos_part.cols() != D || gm.sin_part.rows() != D || gm.sin_part.cols() != D)
      throw DimensionError("gamma mode: matrices must be 2n x 2n");
    for (int r = 0; r < D; ++r)
      for (int c = 0; c < D; ++c)
        add_trig_mode(torus, gamma[gm.direction], r * D + c, gm.k, gm.cos_part(r, c), gm.sin_part(r, c));
  }
  for (const auto& am : a_modes) {
    if (am.direction < 0 || am.direction >= D) throw DomainError("a mode: direction out of range");
    add_trig_mode(torus, a, am.direction, am.k, cd(0, am.cos_part), cd(0, am.sin_part));
  }
  return Connection(torus, std::move(gamma), std::move(a));
}

MatrixXcd Connection::gamma_at(int b, int m) const { return as_matrix(gamma_.at(b), m, torus_.dim()); }

double Connection::nabla_omega_residual() const {
  const MatrixXd& om = torus_.model().omega();
  double r = 0;
  for (int b = 0; b < torus_.dim(); ++b)
    for (int m = 0; m < torus_.num_modes(); ++m) {
      const MatrixXcd g = gamma_at(b, m);
      r = std::max(r, (g.transpose() * om + om * g).cwiseAbs().maxCoeff());
    }
  return r;
}

double Connection::nabla_j_residual() const {
  const MatrixXd& j = torus_.model().j();
  double r = 0;
  for (int b = 0; b < torus_.dim(); ++b)
    for (int m = 0; m < torus_.num_modes(); ++m) {
      const MatrixXcd g = gamma_at(b, m);
      r = std::max(r, (g * j - j * g).cwiseAbs().maxCoeff());
    }
  return r;
}

Connection random_connection(const TorusModel& torus, std::mt19937_64& rng, int kmax, double scale, bool unitary,
                             bool with_a) {
  const int D = torus.dim();
  const SymplecticModel<double>& model = torus.model();
  auto algebra = [&] {
    return unitary ? MatrixXd(random_u_algebra(model, rng, scale)) : MatrixXd(random_sp_algebra(model, rng, scale));
  };
  std::vector<MatrixXcd> gamma(D, MatrixXcd::Zero(D * D, torus.num_modes()));
  for (int b = 0; b < D; ++b) {
    for (int m = 0; m < torus.num_modes(); ++m) {
      if (torus.mode(m).cwiseAbs().maxCoeff() > kmax) continue;
      const int mm = torus.negated(m);
      if (mm < m) continue;
      if (mm == m) {
        store_matrix(gamma[b], m, algebra().cast<cd>());
      } else {
        const MatrixXcd c = (algebra().cast<cd>() + cd(0, 1) * algebra().cast<cd>()) / 2.0;
        store_matrix(gamma[b], m, c);
        store_matrix(gamma[b], mm, c.conjugate());
      }
    }
  }
  MatrixXcd a = MatrixXcd::Zero(D, torus.num_modes());
  if (with_a) a = cd(0, 1) * random_real_field(torus, D, kmax, scale, rng);
  return Connection(torus, std::move(gamma), std::move(a));
}

Connection random_u1_connection(const TorusModel& torus, std::mt19937_64& rng, int kmax, double scale) {
  const int D = torus.dim();
  const MatrixXd& j = torus.model().j();
  std::vector<MatrixXcd> gamma(D, MatrixXcd::Zero(D * D, torus.num_modes()));
  for (int b = 0; b < D; ++b) {
    const MatrixXcd g = random_real_field(torus, 1, kmax, scale, rng);
    for (int m = 0; m < torus.num_modes(); ++m) store_matrix(gamma[b], m, g(0, m) * j.cast<cd>());
  }
  MatrixXcd a = cd(0, 1) * random_real_field(torus, D, kmax, scale, rng);
  return Connection(torus, std::move(gamma), std::move(a));
}

MatrixXd dual_frame(const TorusModel& torus, const MatrixXd& frame) {
  const int D = torus.dim();
  if (frame.rows() != D || frame.cols() != D) throw DimensionError("dual_frame: frame must be 2n x 2n");
  const MatrixXd w = frame.transpose() * torus.model().omega() * frame;
  Eigen::FullPivLU<MatrixXd> lu(w);
  if (!lu.isInvertible() || std::abs(w.determinant()) < 1e-12) throw DomainError("dual_frame: degenerate frame");
  // e^j = -sum_k omega^{jk} e_k, omega^{..} = w^{-1}
  return -frame * w.inverse().transpose();
}

VectorField cov_deriv_vec(const Connection& conn, const VectorField& x, int b) {
  const TorusModel& torus = conn.torus();
  return {torus.derivative(x.coeffs, b) + matvec_field(torus, conn.gamma(b), x.coeffs)};
}

TorsionField torsion(const Connection& conn) {
  const int D = conn.torus().dim();
  MatrixXcd t = MatrixXcd::Zero(D * D * D, conn.torus().num_modes());
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        t.row((a * D + b) * D + c) = conn.gamma(a).row(c * D + b) - conn.gamma(b).row(c * D + a);
  return {t};
}

VectorField torsion_apply(const Connection& conn, const TorsionField& t, const VectorXd& u, const VectorXd& v) {
  const int D = conn.torus().dim();
  MatrixXcd out = MatrixXcd::Zero(D, conn.torus().num_modes());
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      const double w = u(a) * v(b);
      if (w == 0.0) continue;
      for (int c = 0; c < D; ++c) out.row(c) += w * t.coeffs.row((a * D + b) * D + c);
    }
  return {out};
}

VectorField tau_in_frame(const Connection& conn, const MatrixXd& frame) {
  const TorsionField t = torsion(conn);
  const MatrixXd dual = dual_frame(conn.torus(), frame);
  const int D = conn.torus().dim();
  MatrixXcd out = MatrixXcd::Zero(D, conn.torus().num_modes());
  for (int k = 0; k < D; ++k) out += torsion_apply(conn, t, frame.col(k), dual.col(k)).coeffs;
  return {out / 2.0};
}

VectorField tau(const Connection& conn) {
  const int D = conn.torus().dim();
  return tau_in_frame(conn, MatrixXd::Identity(D, D));
}

MatrixXcd torsion_trace(const Connection& conn) {
  const int D = conn.torus().dim();
  const TorsionField t = torsion(conn);
  MatrixXcd out = MatrixXcd::Zero(D, conn.torus().num_modes());
  for (int b = 0; b < D; ++b)
    for (int a = 0; a < D; ++a) out.row(b) += t.coeffs.row((a * D + b) * D + a);
  return out;
}

MatrixXcd omega_tau(const Connection& conn) {
  const MatrixXcd t = tau(conn).coeffs;
  return conn.torus().model().omega().transpose().cast<cd>() * t;
}

ScalarField divergence(const Connection& conn, const VectorField& x) {
  const TorusModel& torus = conn.torus();
  const int D = torus.dim();
  MatrixXcd out = MatrixXcd::Zero(1, torus.num_modes());
  MatrixXcd contracted = MatrixXcd::Zero(D, torus.num_modes());
  for (int a = 0; a < D; ++a) {
    out += torus.derivative(x.coeffs.row(a), a);
    // (Gamma_a)_{a c} as a covector field
    for (int c = 0; c < D; ++c) contracted.row(c) += conn.gamma(a).row(a * D + c);
  }
  const MatrixXcd cg = torus.to_grid(contracted);
  const MatrixXcd xg = torus.to_grid(x.coeffs);
  MatrixXcd prod = (cg.cwiseProduct(xg)).colwise().sum();
  return {out + torus.from_grid(prod)};
}

double lie_lemma_residual(const Connection& conn, const VectorField& x) {
  const TorusModel& torus = conn.torus();
  const int D = torus.dim();
  // omega^n is constant, so L_X omega^n = d(i_X omega^n) = (sum_a d_a X^a) omega^n.
  MatrixXcd lhs = MatrixXcd::Zero(1, torus.num_modes());
  for (int a = 0; a < D; ++a) lhs += torus.derivative(x.coeffs.row(a), a);
  const MatrixXcd wt = omega_tau(conn);  // covector omega(tau, .)
  // omega(X, tau) = -omega(tau, X)
  const MatrixXcd prod = -(torus.to_grid(wt).cwiseProduct(torus.to_grid(x.coeffs))).colwise().sum();
  const MatrixXcd rhs = divergence(conn, x).coeffs + torus.from_grid(prod);
  return grid_max_abs(torus, lhs - rhs);
}

TwoForm central_curvature(const Connection& conn) {
  const TorusModel& torus = conn.torus();
  const int D = torus.dim();
  const MatrixXd& j = torus.model().j();
  std::vector<MatrixXcd> gg(D);
  for (int b = 0; b < D; ++b) gg[b] = torus.to_grid(conn.gamma(b));
  MatrixXcd out = MatrixXcd::Zero(D * D, torus.num_modes());
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (a == b) continue;
      // d alpha: mu-part and xi-part
      const MatrixXcd dmu = torus.derivative(conn.a().row(b), a) - torus.derivative(conn.a().row(a), b);
      const MatrixXcd dxi = trace_c_field(torus, torus.derivative(conn.gamma(b), a) - torus.derivative(conn.gamma(a), b));
      // [alpha_a, alpha_b] = (-tr_C[Ga, Gb] / 2, [Ga, Gb]) pointwise
      MatrixXcd br(1, torus.num_points());
      for (int p = 0; p < torus.num_points(); ++p) {
        const MatrixXcd ga = gg[a].col(p).reshaped(D, D).transpose();
        const MatrixXcd gb = gg[b].col(p).reshaped(D, D).transpose();
        const MatrixXcd c = ga * gb - gb * ga;
        const cd tc = trace_c(c, j);
        br(0, p) = -tc / 2.0 + tc / 2.0;
      }
      // omega^alpha = -i (mu_F + tr_C(xi_F) / 2)
      out.row(a * D + b) = cd(0, -1) * (dmu + dxi / 2.0 + torus.from_grid(br));
    }
  return {out};
}

TwoForm eta_curvature(const Connection& conn) {
  const TorusModel& torus = conn.torus();
  const int D = torus.dim();
  std::vector<MatrixXcd> eta(D);
  for (int b = 0; b < D; ++b) eta[b] = 2.0 * conn.a().row(b) + trace_c_field(torus, conn.gamma(b));
  MatrixXcd out = MatrixXcd::Zero(D * D, torus.num_modes());
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      if (a != b) out.row(a * D + b) = torus.derivative(eta[b], a) - torus.derivative(eta[a], b);
  return {out};
}

Connection torsion_removal(const Connection& conn) {
  if (!conn.unitary_flag()) throw DomainError("torsion_removal: connection must preserve J");
  const TorusModel& torus = conn.torus();
  const int D = torus.dim();
  const int n = D / 2;
  const MatrixXcd om = torus.model().omega().cast<cd>();
  const MatrixXcd j = torus.model().j().cast<cd>();
  const MatrixXcd t = tau(conn).coeffs;
  std::vector<MatrixXcd> gamma = conn.gamma();
  for (int m = 0; m < torus.num_modes(); ++m) {
    const VectorXcd tv = t.col(m);
    if (tv.cwiseAbs().maxCoeff() == 0.0) continue;
    for (int a = 0; a < D; ++a) {
      const VectorXcd ea = VectorXcd::Unit(D, a);
      const MatrixXcd sym = ea * tv.transpose() + tv * ea.transpose();
      const MatrixXcd s = -(sym * om + j * sym * j.transpose() * om) / (2.0 * n);
      for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c) gamma[a](r * D + c, m) += s(r, c);
    }
  }
  return Connection(torus, std::move(gamma), conn.a());
}

// ---- spinors ---------------------------------------------------------------

SpinorConnection::SpinorConnection(const Connection& conn, const FockSpace<double>& space)
    : conn_(conn), space_(space) {
  const int D = conn_.torus().dim();
  const int F = space_.dim();
  const int K = conn_.torus().num_modes();
  std::vector<CMat<double>> basis_ops;
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) {
      MatrixXd e = MatrixXd::Zero(D, D);
      e(r, c) = 1;
      basis_ops.push_back(mpc_lie_operator(space_, cd(0), e).matrix);
    }
  rho_hat_.assign(D, MatrixXcd::Zero(F * F, K));
  rho_grid_.resize(D);
  for (int b = 0; b < D; ++b) {
    if (conn_.direction_is_zero(b)) continue;
    for (int m = 0; m < K; ++m) {
      CMat<double> op = conn_.a()(b, m) * CMat<double>::Identity(F, F);
      for (int rc = 0; rc < D * D; ++rc) {
        const cd g = conn_.gamma(b)(rc, m);
        if (g != cd(0)) op += g * basis_ops[rc];
      }
      rho_hat_[b].col(m) = op.reshaped();
    }
    rho_grid_[b] = conn_.torus().to_grid(rho_hat_[b]);
  }
}

SpinorField SpinorConnection::derivative(const SpinorField& psi, int b) const {
  detail::same_basis(*psi.basis, space_.basis());
  const TorusModel& torus = conn_.torus();
  MatrixXcd out = torus.derivative(psi.coeffs, b);
  if (conn_.direction_is_zero(b)) return {psi.basis, out};
  const int F = space_.dim();
  const MatrixXcd pg = torus.to_grid(psi.coeffs);
  MatrixXcd rg(F, torus.num_points());
  for (int p = 0; p < torus.num_points(); ++p) {
    Eigen::Map<const MatrixXcd> op(rho_grid_[b].col(p).data(), F, F);
    rg.col(p).noalias() = op * pg.col(p);
  }
  out += torus.from_grid(rg);
  return {psi.basis, out};
}

SpinorField SpinorConnection::along(const SpinorField& psi, const VectorXd& x) const {
  SpinorField out = SpinorField::zero(psi.basis, torus());
  for (int c = 0; c < x.size(); ++c)
    if (x(c) != 0.0) out.coeffs += x(c) * derivative(psi, c).coeffs;
  return out;
}

SpinorField SpinorConnection::along_field(const SpinorField& psi, const VectorField& x) const {
  SpinorField out = SpinorField::zero(psi.basis, torus());
  for (int c = 0; c < torus().dim(); ++c) {
    if (x.coeffs.row(c).cwiseAbs().maxCoeff() == 0.0) continue;
    out.coeffs += scalar_multiply(torus(), x.coeffs.row(c), derivative(psi, c)).coeffs;
  }
  return out;
}

double SpinorConnection::degree_off_block_mass() const {
  const int F = space_.dim();
  double r = 0;
  for (const auto& rh : rho_hat_)
    for (int m = 0; m < rh.cols(); ++m) {
      const CMat<double> op = rh.col(m).reshaped(F, F);
      r = std::max(r, off_shift_mass<double>(space_.basis(), op, 0));
    }
  return r;
}

SpinorField spinor_curvature(const SpinorConnection& nabla, const SpinorField& psi, int a, int b) {
  return nabla.derivative(nabla.derivative(psi, b), a) - nabla.derivative(nabla.derivative(psi, a), b);
}

SpinorField fiber_apply(const CMat<double>& op, const SpinorField& psi) { return {psi.basis, op * psi.coeffs}; }

SpinorField scalar_multiply(const TorusModel& torus, const MatrixXcd& f, const SpinorField& psi) {
  const MatrixXcd fg = torus.to_grid(f);
  MatrixXcd pg = torus.to_grid(psi.coeffs);
  for (int p = 0; p < torus.num_points(); ++p) pg.col(p) *= fg(0, p);
  return {psi.basis, torus.from_grid(pg)};
}

SpinorField operator+(const SpinorField& a, const SpinorField& b) { return {a.basis, a.coeffs + b.coeffs}; }
SpinorField operator-(const SpinorField& a, const SpinorField& b) { return {a.basis, a.coeffs - b.coeffs}; }
SpinorField operator*(std::complex<double> s, const SpinorField& a) { return {a.basis, s * a.coeffs}; }

SpinorField random_spinor(const TorusModel& torus, const FockBasisPtr& basis, std::mt19937_64& rng, int kmax,
                          int max_degree) {
  std::normal_distribution<double> nd(0.0, 1.0);
  SpinorField psi = SpinorField::zero(basis, torus);
  const int top = basis->dim_upto(max_degree);
  for (int m = 0; m < torus.num_modes(); ++m) {
    if (torus.mode(m).cwiseAbs().maxCoeff() > kmax) continue;
    for (int i = 0; i < top; ++i) psi.coeffs(i, m) = cd(nd(rng), nd(rng));
  }
  return psi;
}

}  // namespace sympspin
