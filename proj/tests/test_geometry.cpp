#include "sympspin/connection.hpp"
#include "test_util.hpp"

using namespace sympspin;
using C = std::complex<double>;

namespace {

TorusModel small_torus(int n = 1, int M = 2) { return TorusModel(SymplecticModel<double>::standard(n), M); }

// Gamma_0 = cos(x^1) E_10: symmetric lower indices, in sp.
Connection torsion_free(const TorusModel& torus) {
  GammaMode g;
  g.direction = 0;
  g.k = {0, 1};
  g.cos_part = MatrixXd::Zero(2, 2);
  g.cos_part(1, 0) = 1.0;
  g.sin_part = MatrixXd::Zero(2, 2);
  return Connection::from_modes(torus, {g}, {});
}

}  // namespace

TEST_CASE("torus modes and grid") {
  const TorusModel torus = small_torus();
  CHECK(torus.num_modes() == 25);
  CHECK(torus.grid() == 7);
  CHECK(torus.volume() == doctest::Approx(4 * M_PI * M_PI));
  const int m = torus.mode_index({1, -2});
  CHECK(torus.mode(torus.negated(m)) == Eigen::Vector2i(-1, 2));
  CHECK(torus.mode_index({3, 0}) == -1);
  CHECK(torus.mode_norm2(m) == 5.0);
  CHECK_THROWS(TorusModel(SymplecticModel<double>::standard(1), 2, 5));
}

TEST_CASE("grid round trip and products") {
  const TorusModel torus = small_torus();
  std::mt19937_64 rng(1);
  const MatrixXcd f = random_real_field(torus, 1, 1, 1.0, rng);
  CHECK(testutil::max_abs(MatrixXcd(torus.from_grid(torus.to_grid(f)) - f)) < 1e-14);
  CHECK(grid_max_imag(torus, f) < 1e-14);
  // d/dx^0 cos(x^0) = -sin(x^0)
  MatrixXcd c = MatrixXcd::Zero(1, torus.num_modes()), s = c;
  add_trig_mode(torus, c, 0, {1, 0}, 1.0, 0.0);
  add_trig_mode(torus, s, 0, {1, 0}, 0.0, 1.0);
  CHECK(testutil::max_abs(MatrixXcd(torus.derivative(c, 0) + s)) < 1e-15);
  // cos^2 + sin^2 = 1
  const MatrixXcd one = field_product(torus, c, c) + field_product(torus, s, s);
  CHECK(std::abs(one(0, torus.zero_mode()) - C(1)) < 1e-14);
  CHECK(grid_max_abs(torus, MatrixXcd(one)) == doctest::Approx(1.0));
}

TEST_CASE("dual frame") {
  const TorusModel torus = small_torus();
  const MatrixXd e = MatrixXd::Identity(2, 2);
  const MatrixXd d = dual_frame(torus, e);
  CHECK(testutil::max_abs(MatrixXd(d.col(0) - Eigen::Vector2d(0, 1))) < 1e-15);
  CHECK(testutil::max_abs(MatrixXd(d.col(1) - Eigen::Vector2d(-1, 0))) < 1e-15);
  // omega(e_i, e^k) = delta_ik
  const TorusModel t2 = small_torus(2, 1);
  std::mt19937_64 rng(2);
  const MatrixXd f = random_sp(t2.model(), rng);
  const MatrixXd fd = dual_frame(t2, f);
  CHECK(testutil::max_abs(MatrixXd(f.transpose() * t2.model().omega() * fd - MatrixXd::Identity(4, 4))) < 1e-12);
}

TEST_CASE("torsion") {
  const TorusModel torus = small_torus();
  CHECK(testutil::max_abs(torsion(Connection::flat(torus)).coeffs) == 0.0);
  CHECK(testutil::max_abs(torsion(torsion_free(torus)).coeffs) == 0.0);
  std::mt19937_64 rng(3);
  const Connection conn = random_connection(torus, rng, 1, 0.3, false, true);
  const TorsionField t = torsion(conn);
  const VectorXd u = testutil::random_vector(2, rng), v = testutil::random_vector(2, rng);
  CHECK(testutil::max_abs(torsion_apply(conn, t, u, u).coeffs) < 1e-15);
  CHECK(testutil::max_abs(MatrixXcd(torsion_apply(conn, t, u, v).coeffs + torsion_apply(conn, t, v, u).coeffs)) <
        1e-15);
}

TEST_CASE("tau and the torsion trace") {
  const TorusModel torus = small_torus(2, 1);
  std::mt19937_64 rng(4);
  const Connection conn = random_connection(torus, rng, 1, 0.3, true, true);
  const MatrixXcd tr = torsion_trace(conn), ot = omega_tau(conn);
  CHECK(testutil::max_abs(ot) > 1e-3);
  // Holds as omega(tau, Z); the reversed pairing omega(Z, tau) differs by a sign.
  CHECK(testutil::max_abs(MatrixXcd(tr - ot)) < 1e-13);
  CHECK(testutil::max_abs(MatrixXcd(tr + ot)) > 1e-3);
  const MatrixXd frame = random_unitary(torus.model(), rng) * random_sp(torus.model(), rng, 0.3);
  CHECK(testutil::max_abs(MatrixXcd(tau_in_frame(conn, frame).coeffs - tau(conn).coeffs)) < 1e-12);
}

TEST_CASE("divergence and the Lie derivative of the volume") {
  const TorusModel torus = small_torus();
  VectorField x{MatrixXcd::Zero(2, torus.num_modes())};
  add_trig_mode(torus, x.coeffs, 0, {1, 0}, 0.0, 1.0);
  MatrixXcd expect = MatrixXcd::Zero(1, torus.num_modes());
  add_trig_mode(torus, expect, 0, {1, 0}, 1.0, 0.0);
  CHECK(testutil::max_abs(MatrixXcd(divergence(Connection::flat(torus), x).coeffs - expect)) < 1e-15);
  std::mt19937_64 rng(5);
  const Connection conn = random_connection(torus, rng, 1, 0.3, false, false);
  const VectorField y{random_real_field(torus, 2, 1, 1.0, rng)};
  CHECK(lie_lemma_residual(conn, y) < 1e-12);
}

TEST_CASE("central curvature") {
  const TorusModel torus = small_torus();
  AMode a;
  a.direction = 1;
  a.k = {1, 0};
  a.sin_part = 1.0;
  const Connection conn = Connection::from_modes(torus, {}, {a});
  const TwoForm w = central_curvature(conn);
  MatrixXcd c = MatrixXcd::Zero(1, torus.num_modes());
  add_trig_mode(torus, c, 0, {1, 0}, 1.0, 0.0);
  CHECK(testutil::max_abs(MatrixXcd(w.coeffs.row(1) - c)) < 1e-14);
  CHECK(testutil::max_abs(MatrixXcd(w.coeffs.row(2) + c)) < 1e-14);
  CHECK(testutil::max_abs(w.coeffs.row(0)) == 0.0);
  // Constant Gamma commuting with J contributes nothing.
  GammaMode g;
  g.direction = 0;
  g.k = {0, 0};
  g.cos_part = 0.5 * torus.model().j();
  g.sin_part = MatrixXd::Zero(2, 2);
  const Connection cg = Connection::from_modes(torus, {g}, {});
  CHECK(testutil::max_abs(central_curvature(cg).coeffs) < 1e-15);
}

TEST_CASE("torsion removal") {
  const TorusModel torus = small_torus(2, 1);
  std::mt19937_64 rng(6);
  const Connection conn = random_connection(torus, rng, 1, 0.3, true, true);
  CHECK(conn.nabla_j_residual() < 1e-14);
  CHECK(conn.nabla_omega_residual() < 1e-14);
  const Connection r = torsion_removal(conn);
  CHECK(testutil::max_abs(tau(r).coeffs) < 1e-13);
  CHECK(r.nabla_j_residual() < 1e-13);
  CHECK(r.nabla_omega_residual() < 1e-13);
  const Connection rr = torsion_removal(r);
  for (int b = 0; b < 4; ++b) CHECK(testutil::max_abs(MatrixXcd(rr.gamma(b) - r.gamma(b))) < 1e-13);
  const Connection flat = torsion_removal(Connection::flat(small_torus()));
  for (int b = 0; b < 2; ++b) CHECK(testutil::max_abs(flat.gamma(b)) == 0.0);
  CHECK_THROWS_AS(torsion_removal(torsion_free(small_torus())), DomainError);
}
