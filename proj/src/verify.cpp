#include "sympspin/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#ifndef SYMPSPIN_VERSION
#define SYMPSPIN_VERSION "0.0.0"
#endif

namespace sympspin {

namespace oracle {

namespace {

using cd = std::complex<double>;

double max_abs(const CMat<double>& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double cz_distance(const CZPair<double>& p, const CZPair<double>& q) {
  return std::max(max_abs(CMat<double>(p.C.complex_matrix() - q.C.complex_matrix())),
                  max_abs(CMat<double>(p.Z.complex_matrix() - q.Z.complex_matrix())));
}

double mpc_distance(const MpcElement<double>& a, const MpcElement<double>& b) {
  return std::max(cz_distance(a.cz, b.cz), std::abs(a.lambda - b.lambda) / std::max(1.0, std::abs(a.lambda)));
}

VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = scale * nd(rng);
  return v;
}

FockVector<double> random_fock(const FockSpace<double>& space, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  FockVector<double> f = FockVector<double>::zero(space.basis_ptr());
  for (int i = 0; i < space.dim(); ++i) f.coeffs(i) = cd(nd(rng), nd(rng)) / std::sqrt(space.norms()(i));
  return f;
}

CMat<double> commutator(const CMat<double>& a, const CMat<double>& b) { return a * b - b * a; }

// Columns acting on degrees <= d.
CMat<double> interior(const FockBasis& b, const CMat<double>& m, int d) {
  return d < 0 ? CMat<double>(m.rows(), 0) : CMat<double>(m.leftCols(b.dim_upto(d)));
}

CoherentCombo<double> random_combo(const SymplecticModel<double>& model, std::mt19937_64& rng, int terms) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CoherentCombo<double> c;
  for (int i = 0; i < terms; ++i) c.terms.push_back({cd(nd(rng), nd(rng)), random_vector(model.dim(), rng, 0.7)});
  return c;
}

}  // namespace

double cz_roundtrip(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const MatrixXd g = random_sp(model, rng, 0.5);
    r = std::max(r, max_abs(MatrixXd(cz_compose(model, cz_decompose(model, g)) - g)));
  }
  return r;
}

double cz_product_law(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const MatrixXd g1 = random_sp(model, rng, 0.5), g2 = random_sp(model, rng, 0.5);
    const CZPair<double> p = cz_product(model, cz_decompose(model, g1), cz_decompose(model, g2));
    r = std::max(r, cz_distance(p, cz_decompose(model, MatrixXd(g1 * g2))));
  }
  return r;
}

double cz_inverse_law(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const MatrixXd g = random_sp(model, rng, 0.5);
    r = std::max(r, cz_distance(cz_inverse(model, cz_decompose(model, g)), cz_decompose(model, MatrixXd(g.inverse()))));
  }
  return r;
}

double siegel_membership(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  double r = 0;
  auto score = [](const SiegelDiagnostics<double>& d) {
    return std::max({d.antilinear_residual, d.symmetry_residual, d.positive ? 0.0 : 1.0});
  };
  for (int i = 0; i < count; ++i) {
    r = std::max(r, score(siegel_check(model, random_siegel(model, rng, 0.95))));
    r = std::max(r, score(siegel_check(model, cz_decompose(model, random_sp(model, rng, 0.8)).Z)));
  }
  return r;
}

MpcGroupResiduals mpc_group(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  MpcGroupResiduals r;
  const MpcElement<double> one = mpc_identity(model);
  for (int i = 0; i < count; ++i) {
    const auto u1 = random_mpc(model, rng, 0.5), u2 = random_mpc(model, rng, 0.5), u3 = random_mpc(model, rng, 0.5);
    const auto left = mpc_mul(model, mpc_mul(model, u1, u2), u3);
    const auto right = mpc_mul(model, u1, mpc_mul(model, u2, u3));
    r.associativity = std::max(r.associativity, mpc_distance(left, right));
    r.eta_homomorphism = std::max(r.eta_homomorphism, std::abs(eta(mpc_mul(model, u1, u2)) - eta(u1) * eta(u2)));
    r.inverse = std::max(r.inverse, mpc_distance(mpc_mul(model, u1, mpc_inverse(model, u1)), one));
    const auto m1 = mpc_metaplectic_lift(model, random_sp(model, rng, 0.5));
    const auto m2 = mpc_metaplectic_lift(model, random_sp(model, rng, 0.5));
    r.metaplectic_closure = std::max({r.metaplectic_closure, std::abs(eta(m1) - 1.0), std::abs(eta(mpc_mul(model, m1, m2)) - 1.0),
                                      std::abs(eta(mpc_inverse(model, m1)) - 1.0)});
  }
  return r;
}

double muc_homomorphism(const FockSpace<double>& space, std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  const SymplecticModel<double>& model = space.model();
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const auto u1 = mpc_from_unitary(model, random_unitary(model, rng, 0.7), std::polar(1.0, ud(rng)));
    const auto u2 = mpc_from_unitary(model, random_unitary(model, rng, 0.7), std::polar(1.0, ud(rng)));
    const CMat<double> lhs = muc_operator(space, mpc_mul(model, u1, u2)).matrix;
    const CMat<double> rhs = muc_operator(space, u1).matrix * muc_operator(space, u2).matrix;
    r = std::max(r, max_abs(CMat<double>(lhs - rhs)) / std::max(1.0, max_abs(rhs)));
  }
  return r;
}

double lie_bracket_central_term(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const MatrixXd x1 = random_sp_algebra(model, rng, 0.5), x2 = random_sp_algebra(model, rng, 0.5);
    auto value = [&](double s) {
      const auto m1 = mpc_metaplectic_lift(model, MatrixXd((s * x1).exp()));
      const auto m2 = mpc_metaplectic_lift(model, MatrixXd((s * x2).exp()));
      const auto c = mpc_mul(model, mpc_mul(model, m1, m2), mpc_mul(model, mpc_inverse(model, m1), mpc_inverse(model, m2)));
      return std::log(c.lambda) / (s * s);
    };
    // Odd powers of s cancel in the symmetric mean; Richardson removes the s^2 term.
    auto even = [&](double s) { return (value(s) + value(-s)) / 2.0; };
    const double s = 1e-2;
    const cd est = (4.0 * even(s / 2) - even(s)) / 3.0;
    const cd ref = mpc_lie_bracket(model, MpcLieElement<double>{0, x1}, MpcLieElement<double>{0, x2}).mu;
    r = std::max(r, std::abs(est - ref) / std::max(1e-3, std::abs(ref)));
  }
  return r;
}

CcrResiduals ccr(const FockSpace<double>& space, std::mt19937_64& rng, int count) {
  const SymplecticModel<double>& model = space.model();
  const FockBasis& b = space.basis();
  const int d = b.max_degree() - 2;
  const double hb = model.hbar();
  const CMat<double> id = CMat<double>::Identity(b.dim(), b.dim());
  CcrResiduals r;
  for (int i = 0; i < count; ++i) {
    const VectorXd v = random_vector(model.dim(), rng), w = random_vector(model.dim(), rng);
    const CMat<double> cv = creation_op(space, v).matrix, cw = creation_op(space, w).matrix;
    const CMat<double> av = annihilation_op(space, v).matrix, aw = annihilation_op(space, w).matrix;
    const CMat<double> lv = clifford_op(space, v).matrix, lw = clifford_op(space, w).matrix;
    const cd hvw = hermitean_form(model, v, w) / (2.0 * hb);
    r.ccr = std::max({r.ccr, max_abs(interior(b, CMat<double>(commutator(av, cw) - hvw * id), d)),
                      max_abs(interior(b, commutator(av, aw), d)), max_abs(interior(b, commutator(cv, cw), d))});
    const cd om = cd(0, 1) * model.omega_form(v, w) / hb;
    r.clifford = std::max(r.clifford, max_abs(interior(b, CMat<double>(commutator(lv, lw) - om * id), d)));
    r.adjoint = std::max(r.adjoint, max_abs(CMat<double>(fock_adjoint(space, cv) - av)));
  }
  return r;
}

double lie_equivariance(const FockSpace<double>& space, std::mt19937_64& rng, int count) {
  const SymplecticModel<double>& model = space.model();
  const FockBasis& b = space.basis();
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const MatrixXd xi = random_sp_algebra(model, rng, 0.5);
    const VectorXd v = random_vector(model.dim(), rng);
    const CMat<double> rho = mpc_lie_operator(space, cd(0), xi).matrix;
    const CMat<double> lhs = commutator(rho, clifford_op(space, v).matrix);
    const VectorXd xv = xi * v;
    const CMat<double> rhs = clifford_op(space, xv).matrix;
    r = std::max(r, max_abs(interior(b, CMat<double>(lhs - rhs), b.max_degree() - 3)));
  }
  return r;
}

double lie_bracket_closure(const FockSpace<double>& space, std::mt19937_64& rng, int count, bool central_term) {
  const SymplecticModel<double>& model = space.model();
  const FockBasis& b = space.basis();
  std::normal_distribution<double> nd(0.0, 1.0);
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const auto x1 = make_mpc_lie(model, cd(0, nd(rng)), random_sp_algebra(model, rng, 0.5));
    const auto x2 = make_mpc_lie(model, cd(0, nd(rng)), random_sp_algebra(model, rng, 0.5));
    const CMat<double> lhs = commutator(mpc_lie_operator(space, x1).matrix, mpc_lie_operator(space, x2).matrix);
    MpcLieElement<double> br = mpc_lie_bracket(model, x1, x2);
    if (!central_term) br.mu = 0;
    const CMat<double> rhs = mpc_lie_operator(space, br).matrix;
    r = std::max(r, max_abs(interior(b, CMat<double>(lhs - rhs), b.max_degree() - 4)));
  }
  return r;
}

FiniteDifference lie_finite_difference(const FockSpace<double>& space, std::mt19937_64& rng, int count) {
  const SymplecticModel<double>& model = space.model();
  std::normal_distribution<double> nd(0.0, 1.0);
  FiniteDifference fd;
  for (int i = 0; i < count; ++i) {
    const MatrixXd xi = random_u_algebra(model, rng, 0.5);
    const cd mu(0, nd(rng));
    const FockVector<double> f = random_fock(space, rng);
    const CVec<double> exact = mpc_lie_act(space, MpcLieElement<double>{mu, xi}, f).coeffs;
    auto step = [&](double t) {
      const auto up = mpc_from_unitary(model, MatrixXd((t * xi).exp()), std::exp(t * mu));
      const auto dn = mpc_from_unitary(model, MatrixXd((-t * xi).exp()), std::exp(-t * mu));
      const CVec<double> d = (muc_apply(space, up, f).coeffs - muc_apply(space, dn, f).coeffs) / (2 * t);
      return (d - exact).cwiseAbs().maxCoeff() / std::max(1.0, exact.cwiseAbs().maxCoeff());
    };
    fd.error_coarse = std::max(fd.error_coarse, step(1e-3));
    fd.error_fine = std::max(fd.error_fine, step(1e-4));
  }
  return fd;
}

HeisenbergResiduals heisenberg(const SymplecticModel<double>& model, std::mt19937_64& rng, int count) {
  std::normal_distribution<double> nd(0.0, 1.0);
  HeisenbergResiduals r;
  for (int i = 0; i < count; ++i) {
    const auto psi = random_combo(model, rng, 4), phi = random_combo(model, rng, 3);
    const HeisenbergElement<double> h1{random_vector(model.dim(), rng, 0.7), nd(rng)};
    const HeisenbergElement<double> h2{random_vector(model.dim(), rng, 0.7), nd(rng)};
    const cd before = combo_inner(model, psi, phi);
    const cd after = combo_inner(model, uj_apply(model, h1, psi), uj_apply(model, h1, phi));
    const double scale = std::sqrt(std::abs(combo_inner(model, psi, psi)) * std::abs(combo_inner(model, phi, phi)));
    r.gram = std::max(r.gram, std::abs(after - before) / scale);
    const auto a = uj_apply(model, h1, uj_apply(model, h2, psi));
    const auto b = uj_apply(model, heisenberg_mul(model, h1, h2), psi);
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
      const double cs = std::max(std::abs(a.terms[t].coeff), 1e-300);
      r.group_law = std::max({r.group_law, std::abs(a.terms[t].coeff - b.terms[t].coeff) / cs,
                              (a.terms[t].center - b.terms[t].center).cwiseAbs().maxCoeff()});
    }
  }
  return r;
}

double kernel_composition(const SymplecticModel<double>& model, std::mt19937_64& rng, int pairs, int samples,
                          int quad_order) {
  double r = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto u1 = random_mpc(model, rng, 0.5), u2 = random_mpc(model, rng, 0.5);
    const NumericKernel k = kernel_compose_numeric(model, mpc_kernel(u1), mpc_kernel(u2), quad_order);
    const GaussianKernel<double> ref = mpc_kernel(mpc_mul(model, u1, u2));
    for (const auto& [z, w] : random_sample_pairs(model, rng, samples, 1.0)) {
      const cd want = kernel_eval(model, ref, z, w);
      r = std::max(r, std::abs(k(z, w) - want) / std::abs(want));
    }
  }
  return r;
}

double covariance(const SymplecticModel<double>& model, std::mt19937_64& rng, int count, int samples, int quad_order) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::normal_distribution<double> nd(0.0, 1.0);
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const auto u = random_mpc(model, rng, 0.5);
    VectorXd v = random_vector(model.dim(), rng);
    v *= ud(rng) / std::max(1e-12, v.norm());
    const HeisenbergElement<double> h{v, nd(rng)};
    const auto pts = random_sample_pairs(model, rng, samples, 1.0);
    r = std::max(r, conjugation_check(model, u, h, pts, quad_order).max_residual);
  }
  return r;
}

GaussianIntegralResiduals gaussian_integral(const SymplecticModel<double>& model, std::mt19937_64& rng, int count,
                                            double radius, int quad_order) {
  GaussianIntegralResiduals r;
  for (int i = 0; i < count; ++i) {
    const MatrixXd z1 = random_siegel(model, rng, radius), z2 = random_siegel(model, rng, radius);
    const GaussianIntegralReport rep = gaussian_integral_check(model, z1, z2, quad_order);
    r.literal = std::max(r.literal, rep.residual);
    r.swapped = std::max(r.swapped, rep.residual_swapped);
  }
  return r;
}

TraceIdentityResiduals trace_identity(const Connection& conn) {
  const MatrixXcd tr = torsion_trace(conn);
  const MatrixXcd wt = omega_tau(conn);  // omega(tau, .)
  return {grid_max_abs(conn.torus(), tr + wt), grid_max_abs(conn.torus(), tr - wt)};
}

double lie_lemma(const Connection& conn, std::mt19937_64& rng, int count) {
  const TorusModel& torus = conn.torus();
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const VectorField x{random_real_field(torus, torus.dim(), std::min(2, torus.cutoff()), 1.0, rng)};
    r = std::max(r, lie_lemma_residual(conn, x));
  }
  return r;
}

double tau_frame_independence(const Connection& conn, std::mt19937_64& rng) {
  const SymplecticModel<double>& model = conn.torus().model();
  const MatrixXd frame = random_unitary(model, rng, 1.0) * random_sp(model, rng, 0.3);
  return grid_max_abs(conn.torus(), tau_in_frame(conn, frame).coeffs - tau(conn).coeffs);
}

TorsionRemovalResiduals torsion_removal_check(const Connection& conn) {
  const Connection c2 = torsion_removal(conn);
  const Connection c3 = torsion_removal(c2);
  TorsionRemovalResiduals r;
  r.tau_after = grid_max_abs(conn.torus(), tau(c2).coeffs);
  r.nabla_omega = c2.nabla_omega_residual();
  r.nabla_j = c2.nabla_j_residual();
  for (int b = 0; b < conn.torus().dim(); ++b)
    r.idempotence = std::max(r.idempotence, grid_max_abs(conn.torus(), c3.gamma(b) - c2.gamma(b)));
  return r;
}

double curvature_factor(const Connection& conn) {
  return grid_max_abs(conn.torus(), eta_curvature(conn).coeffs - cd(0, 2) * central_curvature(conn).coeffs);
}

FlatDiracResiduals flat_dirac(const TorusModel& torus, int max_degree, bool exhaustive, std::mt19937_64* rng) {
  const DiracContext ctx(Connection::flat(torus), max_degree);
  const FockBasis& b = ctx.space().basis();
  const double hb = torus.model().hbar();
  std::mt19937_64 local(0);
  std::mt19937_64& gen = rng ? *rng : local;
  std::normal_distribution<double> nd(0.0, 1.0);
  FlatDiracResiduals r;
  auto score = [&](const SpinorField& psi, int i) {
    SpinorField out = P_op(ctx, psi);
    for (int m = 0; m < torus.num_modes(); ++m) out.coeffs.col(m) += (torus.mode_norm2(m) / hb) * psi.coeffs.col(m);
    r.eigen = std::max(r.eigen, out.coeffs.cwiseAbs().maxCoeff() / psi.coeffs.cwiseAbs().maxCoeff());
    for (int q = 0; q < b.dim(); ++q)
      if (b.degree(q) != b.degree(i)) r.off_block = std::max(r.off_block, out.coeffs.row(q).cwiseAbs().maxCoeff());
    ++r.fields;
  };
  for (int i = 0; i < b.dim(); ++i) {
    if (exhaustive) {
      for (int m = 0; m < torus.num_modes(); ++m) {
        SpinorField psi = SpinorField::zero(ctx.basis(), torus);
        psi.coeffs(i, m) = 1;
        score(psi, i);
      }
    } else {
      SpinorField psi = SpinorField::zero(ctx.basis(), torus);
      for (int m = 0; m < torus.num_modes(); ++m) psi.coeffs(i, m) = cd(nd(gen), nd(gen));
      score(psi, i);
    }
  }
  return r;
}

Connection single_mode_unitary(const TorusModel& torus, double amplitude) {
  const int D = torus.dim();
  GammaMode g;
  g.direction = 0;
  g.k.assign(D, 0);
  g.k[D - 1] = 1;
  g.cos_part = amplitude * torus.model().j();
  g.sin_part = MatrixXd::Zero(D, D);
  AMode a;
  a.direction = D - 1;
  a.k.assign(D, 0);
  a.k[0] = 1;
  a.sin_part = amplitude;
  return Connection::from_modes(torus, {g}, {a});
}

double adjoint_identity(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax) {
  const int N = ctx.space().max_degree();
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const SpinorField psi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, N);
    const SpinorField phi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, N);
    r = std::max(r, adjoint_residual(ctx, psi, phi));
  }
  return r;
}

WeitzenbockResiduals weitzenbock(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax) {
  const int N = ctx.space().max_degree();
  WeitzenbockResiduals r;
  for (int i = 0; i < count; ++i) {
    const SpinorField psi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, std::max(0, N - 2));
    const WeitzenbockReport rep = weitzenbock_residual(ctx, psi);
    r.literal = std::max(r.literal, rep.residual);
    r.negated = std::max(r.negated, rep.residual_negated);
    r.forms = std::max(r.forms, rep.forms_agreement);
  }
  return r;
}

double p_tilde_agreement(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const SpinorField psi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, ctx.space().max_degree());
    const SpinorField p = P_op(ctx, psi);
    r = std::max(r, l2_norm(ctx, p - P_op_tilde(ctx, psi)) / std::max(1e-300, l2_norm(ctx, p)));
  }
  return r;
}

double dirac_forms(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax) {
  double r = 0;
  for (int i = 0; i < count; ++i) {
    const SpinorField psi = random_spinor(ctx.torus(), ctx.basis(), rng, kmax, ctx.space().max_degree());
    const SpinorField d1 = dirac_Dprime(ctx, psi, 0), d2 = dirac_Dsecond(ctx, psi, 0);
    const double s1 = std::max(1e-300, l2_norm(ctx, d1)), s2 = std::max(1e-300, l2_norm(ctx, d2));
    for (int f = 1; f <= 2; ++f) {
      r = std::max(r, l2_norm(ctx, dirac_Dprime(ctx, psi, f) - d1) / s1);
      r = std::max(r, l2_norm(ctx, dirac_Dsecond(ctx, psi, f) - d2) / s2);
    }
  }
  return r;
}

}  // namespace oracle

// ---- suites -----------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

class SuiteRun {
 public:
  explicit SuiteRun(const ExperimentConfig& config) : config_(config), start_(Clock::now()) {}

  // Records a check; runtime is measured since the previous record.
  void add(const std::string& name, const std::string& anchor, double residual, double default_tol) {
    const auto now = Clock::now();
    CheckResult c;
    c.name = name;
    c.paper_anchor = anchor;
    c.max_residual = residual;
    c.tolerance = config_.tolerance(name, default_tol);
    c.pass = std::isfinite(residual) && residual < c.tolerance;
    c.runtime_ms = std::chrono::duration<double, std::milli>(now - start_).count();
    checks_.push_back(c);
    start_ = now;
  }
  // A check whose computation threw.
  void fail(const std::string& name, const std::string& anchor, double default_tol) {
    add(name, anchor, std::numeric_limits<double>::infinity(), default_tol);
  }
  void restart() { start_ = Clock::now(); }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  const ExperimentConfig& config_;
  Clock::time_point start_;
  std::vector<CheckResult> checks_;
};

void suite_cz(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const auto model = cfg.model();
  run.add("cz_roundtrip", "g = C(1 + Z) with C = (g - jgj)/2, Z = C^{-1}(g + jgj)/2", oracle::cz_roundtrip(model, rng, 200), 1e-10);
  run.add("cz_product", "C_12 = C_1 K C_2, Z_12 = C_2^{-1} K^{-1}(Z_1 - Z_{g_2^{-1}}) C_2, K = 1 - Z_1 Z_{g_2^{-1}}",
          oracle::cz_product_law(model, rng, 200), 1e-9);
  run.add("cz_inverse", "C_{g^{-1}} = C^*, Z_{g^{-1}} = -C Z C^{-1}", oracle::cz_inverse_law(model, rng, 200), 1e-9);
  run.add("siegel_membership", "Z antilinear, <v, Zw>_j symmetric, 1 - Z^2 > 0", oracle::siegel_membership(model, rng, 100), 1e-10);
}

void suite_mpc(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const auto model = cfg.model();
  const auto g = oracle::mpc_group(model, rng, 100);
  run.add("mpc_associativity", "lambda_12 = lambda_1 lambda_2 exp(-a(1 - Z_1 Z_{g_2^{-1}})/2)", g.associativity, 1e-9);
  run.add("eta_homomorphism", "eta = lambda^2 det C is a character", g.eta_homomorphism, 1e-9);
  run.add("metaplectic_closure", "ker eta is closed under products and inverses", g.metaplectic_closure, 1e-10);
  run.add("mpc_inverse", "lambda(U^{-1}) = exp(a(1 - Z^2)/2) / lambda", g.inverse, 1e-9);
  run.restart();
  const FockSpace<double> space(model, std::min(cfg.fock_N, 8));
  run.add("muc_homomorphism", "(U f)(z) = lambda f(k^{-1} z) on MU^c", oracle::muc_homomorphism(space, rng, 20), 1e-11);
  run.add("lie_bracket_central_term", "mu-component of [x_1, x_2] is -tr_C[xi_1, xi_2]/2",
          oracle::lie_bracket_central_term(model, rng, 10), 1e-7);
}

void suite_fock(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const auto model = cfg.model();
  const FockSpace<double> space(model, std::max(cfg.fock_N, 4));
  const auto c = oracle::ccr(space, rng, 20);
  run.add("ccr", "[a(v), c(w)] = <v, w>_j / 2hbar", c.ccr, 1e-13);
  run.add("clifford_relation", "[cl(v), cl(w)] = (i/hbar) Omega(v, w)", c.clifford, 1e-13);
  run.add("creation_adjoint", "c(v)^* = a(v)", c.adjoint, 1e-13);
  run.add("lie_equivariance", "[d rho(xi), cl(v)] = cl(xi v)", oracle::lie_equivariance(space, rng, 20), 1e-12);
  run.add("lie_bracket_closure", "[d rho(x_1), d rho(x_2)] = d rho([x_1, x_2])", oracle::lie_bracket_closure(space, rng, 20), 1e-12);
  const auto fd = oracle::lie_finite_difference(space, rng, 10);
  run.add("lie_finite_difference", "d/dt U(exp t x) f at t = 0 equals d rho(x) f", fd.error_fine, 1e-6);
  run.add("lie_finite_difference_order", "central difference error ratio for t = 1e-3, 1e-4 is ~100",
          std::abs(std::log10(fd.ratio()) - 2.0), 0.1);
  const auto h = oracle::heisenberg(model, rng, 50);
  run.add("heisenberg_gram", "(U_j(v,t) psi, U_j(v,t) phi) = (psi, phi)", h.gram, 1e-12);
  run.add("heisenberg_group_law", "U_j(h_1) U_j(h_2) = U_j(h_1 h_2)", h.group_law, 1e-12);
}

void suite_kernels(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const auto model = SymplecticModel<double>::standard(1, cfg.hbar);
  const int q = cfg.quad_order;
  run.add("kernel_composition", "h^{-1} int U_1(z, u) U_2(u, w) exp(-|u|^2/2hbar) du = (U_1 U_2)(z, w)",
          oracle::kernel_composition(model, rng, 5, 10, q), 1e-6);
  run.add("covariance", "U U_j(v, t) U^{-1} = U_j(g v, t)", oracle::covariance(model, rng, 5, 10, q), 1e-6);
  const auto gi = oracle::gaussian_integral(model, rng, 10, 0.8, q);
  run.add("gaussian_integral", "int exp(-(pi/2)(<z, Z_1 z> + <Z_2 z, z>) - pi|z|^2) dz = det(1 - Z_2 Z_1)^{-1/2}",
          gi.swapped, 1e-6);
}

void suite_geometry(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const TorusModel torus = cfg.torus();
  const Connection conn = cfg.connection();
  const Connection generic = random_connection(torus, rng, 1, 0.3, false, true);
  run.add("trace_identity", "omega(tau, Z) = Trace[Y -> T(Y, Z)]",
          std::max(oracle::trace_identity(conn).swapped, oracle::trace_identity(generic).swapped), 1e-11);
  run.add("tau_frame_independence", "tau = (1/2) sum_k T(e_k, e^k) is frame independent",
          oracle::tau_frame_independence(generic, rng), 1e-11);
  run.add("lie_lemma", "L_X omega^n = (div X + omega(X, tau)) omega^n",
          std::max(oracle::lie_lemma(conn, rng, 3), oracle::lie_lemma(generic, rng, 3)), 1e-11);
  const Connection unitary = conn.unitary_flag() ? conn : random_connection(torus, rng, 1, 0.3, true, true);
  const auto tr = oracle::torsion_removal_check(unitary);
  run.add("torsion_removal_tau", "tau = 0 after nabla^1 - (1/2n)(omega(tau,Y)X + omega(X,Y)tau + ...)", tr.tau_after, 1e-12);
  run.add("torsion_removal_compatible", "nabla omega = 0, nabla J = 0 after torsion removal",
          std::max(tr.nabla_omega, tr.nabla_j), 1e-12);
  run.add("torsion_removal_idempotent", "torsion removal applied twice equals once", tr.idempotence, 1e-12);
  run.add("central_curvature", "eta-curvature = 2i omega^alpha",
          std::max(oracle::curvature_factor(conn), oracle::curvature_factor(generic)), 1e-12);
}

void suite_dirac(const ExperimentConfig& cfg, SuiteRun& run, std::mt19937_64& rng) {
  const TorusModel torus = cfg.torus();
  const long fields = static_cast<long>(torus.num_modes()) * FockBasis(cfg.n, cfg.fock_N).dim();
  const auto flat = oracle::flat_dirac(torus, cfg.fock_N, fields <= 10000, &rng);
  run.add("flat_eigenvalues", "P e^{ik.x} z^alpha = -(g(k,k)/hbar) e^{ik.x} z^alpha on the flat torus", flat.eigen, 1e-10);
  run.add("flat_degree_blocks", "P preserves the fiber degree", flat.off_block, 1e-10);
  run.restart();
  const DiracContext ctx(cfg.connection(), cfg.fock_N);
  const int kmax = std::min(2, torus.cutoff());
  run.add("degree_leakage", "P is a direct sum over fiber degrees", p_degree_leakage(ctx, rng, kmax), 1e-10);
  run.add("adjoint_identity", "<D' psi, phi> = <psi, (D'' + A_J(tau)) phi>", oracle::adjoint_identity(ctx, rng, 5, kmax), 1e-10);
  const auto w = oracle::weitzenbock(ctx, rng, 3, kmax);
  run.add("weitzenbock", "[D', D''] = -(1/2hbar) nabla^* nabla + (1/2hbar) nabla_{J tau} - (1/2) sum omega^{kl} omega^{rs} (C_k A_r - A_k C_r)(R_{ls} - nabla_{T_ls})",
          w.negated, 1e-8);
  run.add("weitzenbock_forms", "curvature-torsion term: C/A form = (i/2) sum omega^{kl} omega^{rs} Cl(e_k) Cl(J e_r)(...)", w.forms, 1e-11);
  run.add("p_tilde", "P = 2[D', D''] = i[Dtilde, D]", oracle::p_tilde_agreement(ctx, rng, 3, kmax), 1e-10);
  run.add("dirac_forms", "D' and D'' agree in their three forms", oracle::dirac_forms(ctx, rng, 3, kmax), 1e-10);
}

using SuiteFn = void (*)(const ExperimentConfig&, SuiteRun&, std::mt19937_64&);

SuiteFn suite_fn(const std::string& name) {
  if (name == "cz") return suite_cz;
  if (name == "mpc") return suite_mpc;
  if (name == "fock") return suite_fock;
  if (name == "kernels") return suite_kernels;
  if (name == "geometry") return suite_geometry;
  if (name == "dirac") return suite_dirac;
  throw ConfigError("unknown suite '" + name + "'");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char ch : suite) mix(static_cast<unsigned char>(ch));
  return h;
}

std::vector<CheckResult> run_suite(const ExperimentConfig& config, const std::string& suite) {
  const SuiteFn fn = suite_fn(suite);
  std::mt19937_64 rng(suite_seed(config.seed, suite));
  SuiteRun run(config);
  try {
    fn(config, run, rng);
  } catch (const Error& e) {
    run.fail(suite + ".error", e.what(), 0.0);
  }
  return run.take();
}

Report run_verify(const ExperimentConfig& config, int threads) {
  const std::vector<std::string>& suites = config.suites;
  std::vector<std::vector<CheckResult>> results(suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < suites.size();) results[i] = run_suite(config, suites[i]);
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(suites.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Report r;
  r.version = SYMPSPIN_VERSION;
  r.seed = config.seed;
  for (auto& v : results) r.checks.insert(r.checks.end(), v.begin(), v.end());
  return r;
}

nlohmann::json report_to_json(const Report& report, bool with_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"paper_anchor", c.paper_anchor},
                      {"max_residual", std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json(nullptr)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"runtime_ms", with_timing ? c.runtime_ms : 0.0}});
  }
  return {{"environment", {{"version", report.version}, {"seed", report.seed}}},
          {"checks", checks},
          {"pass", report.all_pass()}};
}

std::vector<SpectrumRow> run_spectrum(const ExperimentConfig& config, const std::vector<int>& degrees, int budget) {
  std::vector<SpectrumRow> rows;
  if (degrees.empty()) return rows;
  const DiracContext ctx(config.connection(), config.fock_N);
  for (int d : degrees) {
    const auto ev = spectrum(ctx, d, budget);
    for (std::size_t i = 0; i < ev.size(); ++i) rows.push_back({d, static_cast<int>(i), ev[i]});
  }
  return rows;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "degree,index,re,im\n";
  for (const auto& r : rows)
    out += std::to_string(r.degree) + "," + std::to_string(r.index) + "," + format_double(r.value.real()) + "," +
           format_double(r.value.imag()) + "\n";
  return out;
}

}  // namespace sympspin
