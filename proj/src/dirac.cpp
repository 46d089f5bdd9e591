#include "sympspin/dirac.hpp"

#include <algorithm>
#include <cmath>

namespace sympspin {

namespace {

using cd = std::complex<double>;

CMat<double> c_op(const FockSpace<double>& s, const VectorXd& v) { return creation_op(s, v).matrix; }
CMat<double> a_op(const FockSpace<double>& s, const VectorXd& v) { return annihilation_op(s, v).matrix; }
CMat<double> cl_op(const FockSpace<double>& s, const VectorXd& v) { return clifford_op(s, v).matrix; }

FrameOperators frame_operators(const FockSpace<double>& s) {
  const int D = s.model().dim();
  FrameOperators ops;
  for (int i = 0; i < D; ++i) {
    const VectorXd e = VectorXd::Unit(D, i);
    ops.c.push_back(c_op(s, e));
    ops.a.push_back(a_op(s, e));
    ops.cl.push_back(cl_op(s, e));
    ops.clj.push_back(cl_op(s, s.model().j() * e));
  }
  return ops;
}

MatrixXd identity_frame(const DiracContext& ctx) {
  return MatrixXd::Identity(ctx.torus().dim(), ctx.torus().dim());
}

// nabla'_X (sign = -1) or nabla''_X (sign = +1): (nabla_X + sign i nabla_{JX}) / 2.
SpinorField half_nabla(const SpinorConnection& nb, const SpinorField& psi, const VectorXd& x, double sign) {
  const VectorXd jx = nb.torus().model().j() * x;
  return 0.5 * (nb.along(psi, x) + cd(0, sign) * nb.along(psi, jx));
}

}  // namespace

DiracContext::DiracContext(const Connection& conn, int max_degree)
    : conn_(conn),
      space_(conn.torus().model(), max_degree),
      space_up_(conn.torus().model(), max_degree + 1),
      nabla_(conn_, space_),
      nabla_up_(conn_, space_up_),
      ops_(frame_operators(space_)),
      ops_up_(frame_operators(space_up_)) {}

const FrameOperators& DiracContext::frame_ops_for(const FockBasis& basis) const {
  if (basis == space_.basis()) return ops_;
  if (basis == space_up_.basis()) return ops_up_;
  throw DimensionError("DiracContext: spinor field has an unexpected fiber basis");
}

const SpinorConnection& DiracContext::nabla_for(const FockBasis& basis) const {
  if (basis == space_.basis()) return nabla_;
  if (basis == space_up_.basis()) return nabla_up_;
  throw DimensionError("DiracContext: spinor field has an unexpected fiber basis");
}

const FockSpace<double>& DiracContext::space_for(const FockBasis& basis) const { return nabla_for(basis).space(); }

void DiracContext::require_unitary(const char* what) const {
  if (!conn_.unitary_flag()) throw DomainError(std::string(what) + ": connection must preserve J (unitary_flag)");
}

SpinorField promote(const DiracContext& ctx, const SpinorField& psi) {
  detail::same_basis(*psi.basis, ctx.space().basis());
  SpinorField up = SpinorField::zero(ctx.promoted_space().basis_ptr(), ctx.torus());
  up.coeffs.topRows(psi.coeffs.rows()) = psi.coeffs;
  return up;
}

SpinorField demote(const DiracContext& ctx, const SpinorField& psi) {
  detail::same_basis(*psi.basis, ctx.promoted_space().basis());
  return {ctx.basis(), psi.coeffs.topRows(ctx.space().dim())};
}

SpinorField dirac_D(const DiracContext& ctx, const SpinorField& psi, const MatrixXd& frame) {
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), frame);
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < frame.cols(); ++i)
    out.coeffs += cl_op(nb.space(), frame.col(i)) * nb.along(psi, dual.col(i)).coeffs;
  return out;
}

SpinorField dirac_D(const DiracContext& ctx, const SpinorField& psi) {
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const FrameOperators& ops = ctx.frame_ops_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), identity_frame(ctx));
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < dual.cols(); ++i) out.coeffs += ops.cl[i] * nb.along(psi, dual.col(i)).coeffs;
  return out;
}

SpinorField dirac_Dtilde(const DiracContext& ctx, const SpinorField& psi, const MatrixXd& frame) {
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), frame);
  const MatrixXd& j = ctx.torus().model().j();
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < frame.cols(); ++i)
    out.coeffs += cl_op(nb.space(), j * frame.col(i)) * nb.along(psi, dual.col(i)).coeffs;
  return out;
}

SpinorField dirac_Dtilde(const DiracContext& ctx, const SpinorField& psi) {
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const FrameOperators& ops = ctx.frame_ops_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), identity_frame(ctx));
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < dual.cols(); ++i) out.coeffs += ops.clj[i] * nb.along(psi, dual.col(i)).coeffs;
  return out;
}

SpinorField dirac_Dprime(const DiracContext& ctx, const SpinorField& psi, int form) {
  ctx.require_unitary("dirac_Dprime");
  if (form < 0 || form > 2) throw DomainError("dirac_Dprime: form must be 0, 1 or 2");
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const FrameOperators& ops = ctx.frame_ops_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), identity_frame(ctx));
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < dual.cols(); ++i) {
    const VectorXd ed = dual.col(i);
    if (form == 0) out.coeffs += ops.c[i] * nb.along(psi, ed).coeffs;
    else out.coeffs += (form == 1 ? ops.c[i] : ops.cl[i]) * half_nabla(nb, psi, ed, -1).coeffs;
  }
  return out;
}

SpinorField dirac_Dsecond(const DiracContext& ctx, const SpinorField& psi, int form) {
  ctx.require_unitary("dirac_Dsecond");
  if (form < 0 || form > 2) throw DomainError("dirac_Dsecond: form must be 0, 1 or 2");
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const FrameOperators& ops = ctx.frame_ops_for(*psi.basis);
  const MatrixXd dual = dual_frame(ctx.torus(), identity_frame(ctx));
  SpinorField out = SpinorField::zero(psi.basis, ctx.torus());
  for (int i = 0; i < dual.cols(); ++i) {
    const VectorXd ed = dual.col(i);
    if (form == 0) out.coeffs -= ops.a[i] * nb.along(psi, ed).coeffs;
    else if (form == 1) out.coeffs -= ops.a[i] * half_nabla(nb, psi, ed, +1).coeffs;
    else out.coeffs += ops.cl[i] * half_nabla(nb, psi, ed, +1).coeffs;
  }
  return out;
}

SpinorField P_op(const DiracContext& ctx, const SpinorField& psi) {
  ctx.require_unitary("P_op");
  const SpinorField up = promote(ctx, psi);
  const SpinorField a = dirac_Dprime(ctx, dirac_Dsecond(ctx, up));
  const SpinorField b = dirac_Dsecond(ctx, dirac_Dprime(ctx, up));
  return demote(ctx, cd(2) * (a - b));
}

SpinorField P_op_tilde(const DiracContext& ctx, const SpinorField& psi) {
  const SpinorField up = promote(ctx, psi);
  const SpinorField a = dirac_Dtilde(ctx, dirac_D(ctx, up));
  const SpinorField b = dirac_D(ctx, dirac_Dtilde(ctx, up));
  return demote(ctx, cd(0, 1) * (a - b));
}

std::complex<double> l2_inner(const DiracContext& ctx, const SpinorField& psi, const SpinorField& phi) {
  detail::same_basis(*psi.basis, *phi.basis);
  const FockSpace<double>& s = ctx.space_for(*psi.basis);
  const TorusModel& torus = ctx.torus();
  const MatrixXcd pg = torus.to_grid(psi.coeffs);
  const MatrixXcd qg = torus.to_grid(phi.coeffs);
  cd sum(0);
  for (int p = 0; p < torus.num_points(); ++p)
    for (int i = 0; i < s.dim(); ++i) sum += pg(i, p) * std::conj(qg(i, p)) * s.norms()(i);
  return sum * torus.volume() / double(torus.num_points());
}

double l2_norm(const DiracContext& ctx, const SpinorField& psi) {
  return std::sqrt(std::max(0.0, l2_inner(ctx, psi, psi).real()));
}

std::complex<double> l2_inner_oneform(const DiracContext& ctx, const SpinorOneForm& beta, const SpinorOneForm& gamma) {
  const int D = ctx.torus().dim();
  if (static_cast<int>(beta.size()) != D || static_cast<int>(gamma.size()) != D)
    throw DimensionError("l2_inner_oneform: need 2n components");
  const MatrixXd ginv = ctx.torus().model().metric().inverse();
  cd sum(0);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      if (ginv(a, b) != 0.0) sum += ginv(a, b) * l2_inner(ctx, beta[a], gamma[b]);
  return sum;
}

double adjoint_residual(const DiracContext& ctx, const SpinorField& psi, const SpinorField& phi) {
  ctx.require_unitary("adjoint_residual");
  const FockSpace<double>& s = ctx.space_for(*phi.basis);
  const TorusModel& torus = ctx.torus();
  const MatrixXcd t = tau(ctx.connection()).coeffs;
  SpinorField at = SpinorField::zero(phi.basis, torus);
  for (int c = 0; c < torus.dim(); ++c) {
    const SpinorField ac = fiber_apply(a_op(s, VectorXd::Unit(torus.dim(), c)), phi);
    at = at + scalar_multiply(torus, t.row(c), ac);
  }
  const cd lhs = l2_inner(ctx, dirac_Dprime(ctx, psi), phi);
  const cd rhs = l2_inner(ctx, psi, dirac_Dsecond(ctx, phi) + at);
  return std::abs(lhs - rhs) / std::max(1e-300, l2_norm(ctx, psi) * l2_norm(ctx, phi));
}

SpinorOneForm nabla(const DiracContext& ctx, const SpinorField& psi) {
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  SpinorOneForm out;
  for (int a = 0; a < ctx.torus().dim(); ++a) out.push_back(nb.derivative(psi, a));
  return out;
}

SpinorField nabla_star(const DiracContext& ctx, const SpinorOneForm& beta) {
  ctx.require_unitary("nabla_star");
  const TorusModel& torus = ctx.torus();
  const int D = torus.dim();
  if (static_cast<int>(beta.size()) != D) throw DimensionError("nabla_star: need 2n components");
  const SpinorConnection& nb = ctx.nabla_for(*beta[0].basis);
  const MatrixXd ginv = torus.model().metric().inverse();
  const MatrixXcd jt = torus.model().j().cast<cd>() * tau(ctx.connection()).coeffs;
  SpinorField out = SpinorField::zero(beta[0].basis, torus);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (ginv(a, b) == 0.0) continue;
      // (nabla_a beta)(e_b) = nabla_a (beta_b) - beta(nabla_a e_b), nabla_a e_b = sum_c (Gamma_a)_{cb} e_c
      SpinorField term = nb.derivative(beta[b], a);
      for (int c = 0; c < D; ++c)
        term = term - scalar_multiply(torus, ctx.connection().gamma(a).row(c * D + b), beta[c]);
      out = out - cd(ginv(a, b)) * term;
    }
  for (int c = 0; c < D; ++c) out = out + scalar_multiply(torus, jt.row(c), beta[c]);
  return out;
}

SpinorField laplacian(const DiracContext& ctx, const SpinorField& psi) {
  ctx.require_unitary("laplacian");
  const TorusModel& torus = ctx.torus();
  const int D = torus.dim();
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const MatrixXd ginv = torus.model().metric().inverse();
  std::vector<SpinorField> first;
  for (int c = 0; c < D; ++c) first.push_back(nb.derivative(psi, c));
  SpinorField out = SpinorField::zero(psi.basis, torus);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      if (ginv(a, b) == 0.0) continue;
      // nabla^2 psi(e_a, e_b) = nabla_a nabla_b psi - nabla_{nabla_a e_b} psi
      SpinorField hess = nb.derivative(first[b], a);
      for (int c = 0; c < D; ++c)
        hess = hess - scalar_multiply(torus, ctx.connection().gamma(a).row(c * D + b), first[c]);
      out = out - cd(ginv(a, b)) * hess;
    }
  const VectorField jt{torus.model().j().cast<cd>() * tau(ctx.connection()).coeffs};
  return out + nb.along_field(psi, jt);
}

WeitzenbockReport weitzenbock_residual(const DiracContext& ctx, const SpinorField& psi) {
  ctx.require_unitary("weitzenbock_residual");
  const TorusModel& torus = ctx.torus();
  const int D = torus.dim();
  const double hb = torus.model().hbar();
  const SpinorConnection& nb = ctx.nabla_for(*psi.basis);
  const FockSpace<double>& s = nb.space();
  const MatrixXd winv = torus.model().omega().inverse();
  const MatrixXd& j = torus.model().j();

  const SpinorField lhs = dirac_Dprime(ctx, dirac_Dsecond(ctx, psi)) - dirac_Dsecond(ctx, dirac_Dprime(ctx, psi));

  const VectorField jt{j.cast<cd>() * tau(ctx.connection()).coeffs};
  const SpinorField base = cd(-1.0 / (2 * hb)) * laplacian(ctx, psi) + cd(1.0 / (2 * hb)) * nb.along_field(psi, jt);

  // X_{ls} = R(e_l, e_s) psi - nabla_{T(e_l, e_s)} psi
  const TorsionField t = torsion(ctx.connection());
  std::vector<SpinorField> x(D * D, SpinorField::zero(psi.basis, torus));
  for (int l = 0; l < D; ++l)
    for (int r = l + 1; r < D; ++r) {
      const VectorField tl = torsion_apply(ctx.connection(), t, VectorXd::Unit(D, l), VectorXd::Unit(D, r));
      x[l * D + r] = spinor_curvature(nb, psi, l, r) - nb.along_field(psi, tl);
      x[r * D + l] = cd(-1) * x[l * D + r];
    }
  SpinorField ca = SpinorField::zero(psi.basis, torus);
  SpinorField clf = SpinorField::zero(psi.basis, torus);
  for (int k = 0; k < D; ++k)
    for (int r = 0; r < D; ++r) {
      SpinorField y = SpinorField::zero(psi.basis, torus);
      for (int l = 0; l < D; ++l)
        for (int q = 0; q < D; ++q) {
          const double w = winv(k, l) * winv(r, q);
          if (w != 0.0 && l != q) y.coeffs += w * x[l * D + q].coeffs;
        }
      const VectorXd ek = VectorXd::Unit(D, k), er = VectorXd::Unit(D, r);
      const CMat<double> m = c_op(s, ek) * a_op(s, er) - a_op(s, ek) * c_op(s, er);
      ca.coeffs += 0.5 * m * y.coeffs;
      clf.coeffs += cd(0, 0.5) * (cl_op(s, ek) * cl_op(s, j * er)) * y.coeffs;
    }
  const double pn = std::max(1e-300, l2_norm(ctx, psi));
  const double ln = l2_norm(ctx, lhs);
  const double scale = std::max(1e-300, ln);
  WeitzenbockReport rep;
  rep.residual = l2_norm(ctx, lhs - (base + ca)) / scale;
  rep.residual_negated = l2_norm(ctx, lhs - (base - ca)) / scale;
  rep.forms_agreement = l2_norm(ctx, ca - clf) / scale;
  rep.lhs_norm = ln / pn;
  rep.term_norm = l2_norm(ctx, ca) / pn;
  return rep;
}

std::pair<CMat<double>, CMat<double>> symbol_check(const DiracContext& ctx, const std::vector<int>& k, int degree) {
  const TorusModel& torus = ctx.torus();
  const int m = torus.mode_index(k);
  if (m < 0) throw DomainError("symbol_check: wave vector exceeds the Fourier cutoff");
  if (m == torus.zero_mode()) throw DomainError("symbol_check: k must be nonzero");
  const FockBasis& b = ctx.space().basis();
  if (degree < 0 || degree > b.max_degree()) throw DomainError("symbol_check: degree out of range");
  const int lo = b.degree_begin(degree), sz = b.degree_size(degree);
  CMat<double> blk(sz, sz);
  for (int i = 0; i < sz; ++i) {
    SpinorField psi = SpinorField::zero(ctx.basis(), torus);
    psi.coeffs(lo + i, m) = 1;
    const SpinorField out = P_op(ctx, psi);
    blk.col(i) = out.coeffs.block(lo, m, sz, 1);
  }
  const CMat<double> ref = CMat<double>::Identity(sz, sz) * (-torus.mode_norm2(m) / torus.model().hbar());
  return {blk, ref};
}

CMat<double> p_block(const DiracContext& ctx, int degree, int budget) {
  ctx.require_unitary("spectrum");
  const TorusModel& torus = ctx.torus();
  const FockBasis& b = ctx.space().basis();
  if (degree < 0 || degree > b.max_degree()) throw DomainError("spectrum: degree out of range");
  const int lo = b.degree_begin(degree), sz = b.degree_size(degree);
  const long dim = static_cast<long>(torus.num_modes()) * sz;
  if (dim > budget) throw BudgetError("spectrum: degree block of dimension " + std::to_string(dim) + " exceeds budget " +
                                      std::to_string(budget));
  CMat<double> out(dim, dim);
  for (int m = 0; m < torus.num_modes(); ++m)
    for (int i = 0; i < sz; ++i) {
      SpinorField psi = SpinorField::zero(ctx.basis(), torus);
      psi.coeffs(lo + i, m) = 1;
      const SpinorField r = P_op(ctx, psi);
      for (int q = 0; q < torus.num_modes(); ++q) out.block(static_cast<long>(q) * sz, static_cast<long>(m) * sz + i, sz, 1) = r.coeffs.block(lo, q, sz, 1);
    }
  return out;
}

std::vector<std::complex<double>> spectrum(const DiracContext& ctx, int degree, int budget) {
  const CMat<double> p = p_block(ctx, degree, budget);
  Eigen::ComplexEigenSolver<CMat<double>> es(p, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("spectrum: eigensolver failed");
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const cd& x, const cd& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return ev;
}

double p_degree_leakage(const DiracContext& ctx, std::mt19937_64& rng, int kmax) {
  const FockBasis& b = ctx.space().basis();
  double worst = 0;
  for (int d = 0; d <= b.max_degree(); ++d) {
    SpinorField psi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, b.max_degree());
    for (int i = 0; i < b.dim(); ++i)
      if (b.degree(i) != d) psi.coeffs.row(i).setZero();
    const SpinorField out = P_op(ctx, psi);
    double inside = 0, outside = 0;
    for (int i = 0; i < b.dim(); ++i) {
      const double v = out.coeffs.row(i).cwiseAbs().maxCoeff();
      (b.degree(i) == d ? inside : outside) = std::max(b.degree(i) == d ? inside : outside, v);
    }
    worst = std::max(worst, outside / std::max(1.0, inside));
  }
  return worst;
}

}  // namespace sympspin
