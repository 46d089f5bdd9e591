// Acceptance criteria: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --criterion N

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "sympspin/verify.hpp"

using namespace sympspin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  // Extra informational lines printed after the verdict.
  std::vector<std::string> notes;
};

std::string fmt(const char* name, double value, double limit) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s=%.3e (< %.1e)", name, value, limit);
  return buf;
}

void require(Outcome& o, const char* name, double value, double limit) {
  const bool ok = value < limit;  // NaN fails
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += ", ";
  o.detail += fmt(name, value, limit);
}

Outcome c1() {
  std::mt19937_64 rng(101);
  const auto model = SymplecticModel<double>::standard(2, 1.0);
  Outcome o;
  require(o, "roundtrip", oracle::cz_roundtrip(model, rng, 500), 1e-10);
  require(o, "product", oracle::cz_product_law(model, rng, 500), 1e-9);
  return o;
}

Outcome c2() {
  std::mt19937_64 rng(202);
  Outcome o;
  oracle::MpcGroupResiduals worst;
  for (int n : {1, 2}) {
    const auto g = oracle::mpc_group(SymplecticModel<double>::standard(n, 1.0), rng, 200);
    worst.associativity = std::max(worst.associativity, g.associativity);
    worst.eta_homomorphism = std::max(worst.eta_homomorphism, g.eta_homomorphism);
    worst.metaplectic_closure = std::max(worst.metaplectic_closure, g.metaplectic_closure);
  }
  require(o, "lambda-assoc", worst.associativity, 1e-9);
  require(o, "eta-hom", worst.eta_homomorphism, 1e-9);
  require(o, "metaplectic", worst.metaplectic_closure, 1e-10);
  return o;
}

Outcome c3() {
  std::mt19937_64 rng(303);
  const auto model = SymplecticModel<double>::standard(1, 1.0);
  Outcome o;
  require(o, "relative", oracle::kernel_composition(model, rng, 20, 20, 60), 1e-6);
  return o;
}

Outcome c4() {
  std::mt19937_64 rng(404);
  const auto model = SymplecticModel<double>::standard(1, 1.0);
  Outcome o;
  require(o, "conjugation", oracle::covariance(model, rng, 10, 10, 60), 1e-6);
  return o;
}

Outcome c5() {
  std::mt19937_64 rng(505);
  Outcome o;
  double ccr = 0, cl = 0;
  for (int n : {1, 2}) {
    const FockSpace<double> space(SymplecticModel<double>::standard(n, 1.0), 10);
    const auto r = oracle::ccr(space, rng, 20);
    ccr = std::max({ccr, r.ccr, r.adjoint});
    cl = std::max(cl, r.clifford);
  }
  require(o, "ccr", ccr, 1e-13);
  require(o, "clifford", cl, 1e-13);
  return o;
}

Outcome c6() {
  std::mt19937_64 rng(606);
  Outcome o;
  double eq = 0, br = 0, br0 = 0, fine = 0, ratio = 1e300;
  for (int n : {1, 2}) {
    const FockSpace<double> space(SymplecticModel<double>::standard(n, 1.0), 10);
    eq = std::max(eq, oracle::lie_equivariance(space, rng, 20));
    br = std::max(br, oracle::lie_bracket_closure(space, rng, 20));
    br0 = std::max(br0, oracle::lie_bracket_closure(space, rng, 20, false));
    const auto fd = oracle::lie_finite_difference(space, rng, 10);
    fine = std::max(fine, fd.error_fine);
    ratio = std::min(ratio, fd.ratio());
  }
  require(o, "equivariance", eq, 1e-12);
  require(o, "closure", br, 1e-12);
  require(o, "fd-error(t=1e-4)", fine, 1e-6);
  // second order: error ratio for a tenfold step reduction near 100
  require(o, "|log10(ratio)-2|", std::abs(std::log10(ratio) - 2.0), 0.15);
  char buf[160];
  std::snprintf(buf, sizeof buf, "note: closure with the bracket (0, [xi1, xi2]) (no central term): residual=%.3e", br0);
  o.notes.push_back(buf);
  return o;
}

Outcome c7() {
  std::mt19937_64 rng(707);
  const auto model = SymplecticModel<double>::standard(1, 1.0);
  Outcome o;
  const auto r = oracle::gaussian_integral(model, rng, 20, 0.8, 60);
  require(o, "vs exp(-a(1-Z1Z2)/2)", r.literal, 1e-6);
  char buf[160];
  std::snprintf(buf, sizeof buf, "note: same integrals vs exp(-a(1-Z2Z1)/2): residual=%.3e", r.swapped);
  o.notes.push_back(buf);
  return o;
}

Outcome c8() {
  const TorusModel torus(SymplecticModel<double>::standard(1, 1.0), 8);
  Outcome o;
  const auto r = oracle::flat_dirac(torus, 6, true);
  require(o, "eigenvalue", r.eigen, 1e-10);
  require(o, "off-block", r.off_block, 1e-10);
  o.notes.push_back("note: unit fields checked: " + std::to_string(r.fields));
  return o;
}

Outcome c9() {
  std::mt19937_64 rng(909);
  const TorusModel torus(SymplecticModel<double>::standard(1, 1.0), 4);
  const Connection conn = oracle::single_mode_unitary(torus, 0.4);
  const DiracContext ctx(conn, 6);
  Outcome o;
  const double tn = grid_max_abs(torus, tau(conn).coeffs);
  require(o, "adjoint", oracle::adjoint_identity(ctx, rng, 20, 2), 1e-10);
  if (!(tn > 1e-3)) {
    o.pass = false;
    o.detail += ", connection is torsion-free";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "note: max |tau| of the connection = %.3e", tn);
  o.notes.push_back(buf);
  return o;
}

Outcome c10() {
  std::mt19937_64 rng(1010);
  const TorusModel torus(SymplecticModel<double>::standard(1, 1.0), 6);
  const Connection conn = random_u1_connection(torus, rng, 1, 0.3);
  const DiracContext ctx(conn, 6);
  Outcome o;
  const auto w = oracle::weitzenbock(ctx, rng, 5, 2);
  require(o, "relative", w.literal, 1e-8);
  require(o, "forms", w.forms, 1e-11);
  char buf[160];
  std::snprintf(buf, sizeof buf, "note: with the curvature-torsion term negated: relative=%.3e", w.negated);
  o.notes.push_back(buf);
  return o;
}

Outcome c11() {
  std::mt19937_64 rng(1111);
  Outcome o;
  oracle::TorsionRemovalResiduals worst;
  const TorusModel t1(SymplecticModel<double>::standard(1, 1.0), 4);
  const TorusModel t2(SymplecticModel<double>::standard(2, 1.0), 2);
  std::vector<Connection> conns = {oracle::single_mode_unitary(t1, 0.4), random_connection(t1, rng, 1, 0.3, true, true),
                                   random_connection(t2, rng, 1, 0.3, true, true)};
  for (const auto& c : conns) {
    const auto r = oracle::torsion_removal_check(c);
    worst.tau_after = std::max(worst.tau_after, r.tau_after);
    worst.nabla_omega = std::max(worst.nabla_omega, r.nabla_omega);
    worst.nabla_j = std::max(worst.nabla_j, r.nabla_j);
    worst.idempotence = std::max(worst.idempotence, r.idempotence);
  }
  require(o, "tau", worst.tau_after, 1e-12);
  require(o, "nabla-omega", worst.nabla_omega, 1e-12);
  require(o, "nabla-J", worst.nabla_j, 1e-12);
  require(o, "idempotent", worst.idempotence, 1e-12);
  return o;
}

Outcome c12() {
  std::mt19937_64 rng(1212);
  Outcome o;
  double r = 0;
  const TorusModel t1(SymplecticModel<double>::standard(1, 1.0), 4);
  const TorusModel t2(SymplecticModel<double>::standard(2, 1.0), 2);
  for (int i = 0; i < 3; ++i) {
    r = std::max(r, oracle::curvature_factor(random_connection(t1, rng, 2, 0.4, false, true)));
    r = std::max(r, oracle::curvature_factor(random_connection(t1, rng, 2, 0.4, true, true)));
    r = std::max(r, oracle::curvature_factor(random_connection(t2, rng, 1, 0.4, false, true)));
  }
  require(o, "eta - 2i omega^alpha", r, 1e-12);
  return o;
}

Outcome c13() {
  std::mt19937_64 rng(1313);
  Outcome o;
  double gram = 0, law = 0;
  for (int n : {1, 2}) {
    const auto r = oracle::heisenberg(SymplecticModel<double>::standard(n, 0.8), rng, 100);
    gram = std::max(gram, r.gram);
    law = std::max(law, r.group_law);
  }
  require(o, "gram", gram, 1e-12);
  require(o, "group-law", law, 1e-12);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double runtime_limit_s;  // <= 0: none
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "CZ round-trip and product law on Sp(4,R)", 5, c1},
      {2, "Mp^c cocycle associativity, eta homomorphism, metaplectic closure", 10, c2},
      {3, "kernel of a product equals the composed kernels (n=1, order 60)", 60, c3},
      {4, "covariance U U_j(v,t) U^{-1} = U_j(gv,t)", 0, c4},
      {5, "CCR and Clifford relations, N=10", 0, c5},
      {6, "Lie-algebra representation: equivariance, closure, finite differences", 0, c6},
      {7, "Gaussian integral equals det(1 - Z1 Z2)^{-1/2}", 0, c7},
      {8, "flat torus: P e_k z^alpha = -|k|^2/hbar e_k z^alpha (N=6, M=8)", 30, c8},
      {9, "adjoint identity <D'psi,phi> = <psi,(D''+A(tau))phi>", 0, c9},
      {10, "Weitzenbock identity for [D',D'']", 0, c10},
      {11, "torsion removal", 0, c11},
      {12, "eta curvature equals 2i times the central curvature", 0, c12},
      {13, "Heisenberg action: Gram preservation and group law", 0, c13},
  };
  return list;
}

bool run_one(const Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.runtime_limit_s > 0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime=%.2fs (< %.0fs)", secs, c.runtime_limit_s);
    o.detail += std::string(o.detail.empty() ? "" : ", ") + buf;
    o.pass = o.pass && secs < c.runtime_limit_s;
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "runtime=%.2fs", secs);
    o.detail += std::string(o.detail.empty() ? "" : ", ") + buf;
  }
  std::printf("%s criterion %d: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
  for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  bool found = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    found = true;
    all = run_one(c) && all;
  }
  if (!found) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
