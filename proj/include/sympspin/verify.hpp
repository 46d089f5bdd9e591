#pragma once

// Property oracles and the verification suites built on them.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sympspin/config.hpp"
#include "sympspin/dirac.hpp"
#include "sympspin/quadrature.hpp"

namespace sympspin {

namespace oracle {

// ---- cz --------------------------------------------------------------------
// max |cz_compose(cz_decompose(g)) - g| over random g.
double cz_roundtrip(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);
// max |cz_product(g1, g2) - cz_decompose(g1 g2)| over C and Z.
double cz_product_law(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);
// max |cz_inverse(g) - cz_decompose(g^{-1})|.
double cz_inverse_law(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);
// max over random Z of the Siegel diagnostics (symmetry defect, -min eig of 1 - Z^2) and of Z_g for random g.
double siegel_membership(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);

// ---- mpc -------------------------------------------------------------------
struct MpcGroupResiduals {
  double associativity = 0;  // lambda, C and Z of (u1 u2) u3 vs u1 (u2 u3)
  double eta_homomorphism = 0;  // |eta(u1 u2) - eta(u1) eta(u2)|
  double metaplectic_closure = 0;  // |eta - 1| on products and inverses of metaplectic lifts
  double inverse = 0;  // u u^{-1} = 1
};
MpcGroupResiduals mpc_group(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);
// MU^c: matrix of u1 u2 vs product of matrices on the truncated Fock space.
double muc_homomorphism(const FockSpace<double>& space, std::mt19937_64& rng, int count);
// Group commutator of metaplectic lifts of exp(s xi_i): log lambda / s^2 vs -tr_C[xi_1, xi_2] / 2, relative.
double lie_bracket_central_term(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);

// ---- fock ------------------------------------------------------------------
struct CcrResiduals {
  double ccr = 0;  // [a(v), c(w)] = <v, w>_j / 2hbar, [a, a] = [c, c] = 0
  double clifford = 0;  // [cl(v), cl(w)] = (i / hbar) Omega(v, w)
  double adjoint = 0;  // c(v)^* = a(v)
};
// Exact relations on degrees <= N - 1 (columns).
CcrResiduals ccr(const FockSpace<double>& space, std::mt19937_64& rng, int count);
// [d rho(xi), cl(v)] = cl(xi v) on degrees <= N - 3.
double lie_equivariance(const FockSpace<double>& space, std::mt19937_64& rng, int count);
// [d rho(x1), d rho(x2)] = d rho([x1, x2]) on degrees <= N - 4. Without the
// central term the bracket is taken as (0, [xi_1, xi_2]).
double lie_bracket_closure(const FockSpace<double>& space, std::mt19937_64& rng, int count, bool central_term = true);
struct FiniteDifference {
  double error_coarse = 0;  // t = 1e-3
  double error_fine = 0;  // t = 1e-4
  double ratio() const { return error_coarse / error_fine; }
};
// Central difference of muc_apply along exp(t (mu, xi)), xi in u(V, j), vs mpc_lie_act.
FiniteDifference lie_finite_difference(const FockSpace<double>& space, std::mt19937_64& rng, int count);
struct HeisenbergResiduals {
  double gram = 0;  // (U psi, U phi) vs (psi, phi), relative
  double group_law = 0;  // U(h1) U(h2) vs U(h1 h2), relative
};
HeisenbergResiduals heisenberg(const SymplecticModel<double>& model, std::mt19937_64& rng, int count);

// ---- kernels (n = 1) ---------------------------------------------------------
// Relative |numeric composition - kernel(u1 u2)| over pairs x samples.
double kernel_composition(const SymplecticModel<double>& model, std::mt19937_64& rng, int pairs, int samples,
                          int quad_order);
// conjugation_check over random (u, (v, t)), |v| <= 1.
double covariance(const SymplecticModel<double>& model, std::mt19937_64& rng, int count, int samples, int quad_order);
struct GaussianIntegralResiduals {
  double literal = 0;  // vs exp(-a(1 - Z1 Z2) / 2)
  double swapped = 0;  // vs exp(-a(1 - Z2 Z1) / 2)
};
GaussianIntegralResiduals gaussian_integral(const SymplecticModel<double>& model, std::mt19937_64& rng, int count,
                                            double radius, int quad_order);

// ---- geometry ----------------------------------------------------------------
struct TraceIdentityResiduals {
  double literal = 0;  // omega(Z, tau) = Trace[Y -> T(Y, Z)]
  double swapped = 0;  // omega(tau, Z) = Trace[Y -> T(Y, Z)]
};
TraceIdentityResiduals trace_identity(const Connection& conn);
double lie_lemma(const Connection& conn, std::mt19937_64& rng, int count);
// |tau in coordinate frame - tau in a J-rotated symplectic frame|.
double tau_frame_independence(const Connection& conn, std::mt19937_64& rng);
struct TorsionRemovalResiduals {
  double tau_after = 0;
  double nabla_omega = 0;
  double nabla_j = 0;
  double idempotence = 0;
};
TorsionRemovalResiduals torsion_removal_check(const Connection& conn);
// |eta_curvature - 2i central_curvature| on the grid.
double curvature_factor(const Connection& conn);

// ---- dirac ---------------------------------------------------------------------
struct FlatDiracResiduals {
  // max |P e_k z^alpha + (g(k, k) / hbar) e_k z^alpha| over all modes and degrees
  double eigen = 0;
  // max entry of P e_k z^alpha outside the degree of alpha
  double off_block = 0;
  int fields = 0;
};
// Exhaustive: every unit field e_k z^alpha. Otherwise one field per monomial
// carrying random weights on all modes.
FlatDiracResiduals flat_dirac(const TorusModel& torus, int max_degree, bool exhaustive = true,
                              std::mt19937_64* rng = nullptr);
// Single-mode torsionful unitary connection used by the adjoint check.
Connection single_mode_unitary(const TorusModel& torus, double amplitude);
double adjoint_identity(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax);
struct WeitzenbockResiduals {
  double literal = 0;
  double negated = 0;
  double forms = 0;
};
WeitzenbockResiduals weitzenbock(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax);
// |P - i[Dtilde, D]| / |P| on random fields.
double p_tilde_agreement(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax);
// The three forms of D' and of D'' agree.
double dirac_forms(const DiracContext& ctx, std::mt19937_64& rng, int count, int kmax);

}  // namespace oracle

struct CheckResult {
  std::string name;
  std::string paper_anchor;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  double runtime_ms = 0;
};

struct Report {
  std::vector<CheckResult> checks;
  std::string version;
  std::uint64_t seed = 0;
  bool all_pass() const;
};

// Seed of a suite's generator: FNV-1a of (seed, name).
std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite);

std::vector<CheckResult> run_suite(const ExperimentConfig& config, const std::string& suite);
// Suites run on up to `threads` threads; the report keeps suite order.
Report run_verify(const ExperimentConfig& config, int threads = 1);
nlohmann::json report_to_json(const Report& report, bool with_timing = true);

struct SpectrumRow {
  int degree = 0;
  int index = 0;
  std::complex<double> value;
};
std::vector<SpectrumRow> run_spectrum(const ExperimentConfig& config, const std::vector<int>& degrees,
                                      int budget = 2500);
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);

}  // namespace sympspin
