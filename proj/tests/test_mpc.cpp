#include "sympspin/mpc.hpp"
#include "test_util.hpp"

using namespace sympspin;
using testutil::max_abs;
using M = Eigen::MatrixXd;
using V = Eigen::VectorXd;
using C = std::complex<double>;

TEST_CASE("central and unitary elements multiply componentwise") {
  const auto model = SymplecticModel<double>::standard(2);
  const auto a = mpc_central(model, std::polar(1.0, 0.3)), b = mpc_central(model, std::polar(1.0, -1.1));
  CHECK(std::abs(mpc_mul(model, a, b).lambda - std::polar(1.0, -0.8)) < 1e-15);
  std::mt19937_64 rng(1);
  const M k1 = random_unitary(model, rng), k2 = random_unitary(model, rng);
  const C l1 = std::polar(1.0 / std::sqrt(std::abs(complex_view(model, k1).determinant())), 0.7);
  const C l2 = std::polar(1.0, 0.2);
  const auto u = mpc_mul(model, mpc_from_unitary(model, k1, l1), mpc_from_unitary(model, k2, l2));
  CHECK(std::abs(u.lambda - l1 * l2) < 1e-14);
  CHECK(max_abs(M(u.cz.C.underlying() - k1 * k2)) < 1e-13);
  CHECK_THROWS_AS(mpc_central(model, C(2.0)), DomainError);
}

TEST_CASE("inverse and eta") {
  const auto model = SymplecticModel<double>::standard(1, 0.5);
  const auto c = mpc_central(model, C(0, 1));
  CHECK(std::abs(eta(c) - C(-1)) < 1e-15);
  CHECK_FALSE(is_metaplectic(c));
  CHECK(is_metaplectic(mpc_identity(model)));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 4; ++t) {
    const auto u = random_mpc(model, rng);
    CHECK(mpc_constraint_residual(u) < 1e-12);
    const auto e = mpc_mul(model, u, mpc_inverse(model, u));
    CHECK(std::abs(e.lambda - C(1)) < 1e-11);
    CHECK(max_abs(e.cz.Z.complex_matrix()) < 1e-11);
    CHECK(std::abs(eta(mpc_inverse(model, u)) * eta(u) - C(1)) < 1e-11);
    const auto g = random_sp(model, rng);
    CHECK(is_metaplectic(mpc_metaplectic_lift(model, g)));
  }
}

TEST_CASE("MU^c action on Fock vectors") {
  const double hbar = 0.7;
  const auto model = SymplecticModel<double>::standard(1, hbar);
  const FockSpace<double> space(model, 5);
  const double t = 0.4;
  const M k = (t * model.j()).exp();
  const auto u = mpc_from_unitary(model, k, std::polar(1.0, -t / 2));
  // e^{tj} acts on zeta by e^{it}; (U z^m)(z) = lambda e^{-imt} z^m.
  for (int m = 0; m <= 5; ++m) {
    const auto f = FockVector<double>::monomial(space.basis_ptr(), {m});
    const auto g = muc_apply(space, u, f);
    CHECK(std::abs(g.coeffs(m) - std::polar(1.0, -t / 2 - m * t)) < 1e-14);
  }
  const FockSpace<double> space2(SymplecticModel<double>::standard(2), 4);
  std::mt19937_64 rng(3);
  const M k2 = random_unitary(space2.model(), rng);
  const auto u2 = mpc_from_unitary(space2.model(), k2,
                                   std::polar(1.0 / std::sqrt(std::abs(complex_view(space2.model(), k2).determinant())), 1.0));
  const CMat<double> op = muc_operator(space2, u2).matrix;
  CHECK(max_abs(CMat<double>(fock_adjoint(space2, op) * op - CMat<double>::Identity(space2.dim(), space2.dim()))) <
        1e-12);
  CHECK_THROWS_AS(muc_operator(space, random_mpc(model, rng)), DomainError);
}

TEST_CASE("Lie algebra elements and bracket") {
  const auto model = SymplecticModel<double>::standard(1);
  CHECK_THROWS_AS(make_mpc_lie(model, C(1, 0), M(M::Zero(2, 2))), DomainError);
  CHECK_THROWS_AS(make_mpc_lie(model, C(0, 1), M(M::Identity(2, 2))), DomainError);
  M h = M::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  M e = M::Zero(2, 2);
  e(0, 1) = 1;
  const auto x1 = make_mpc_lie(model, C(0, 0.3), h), x2 = make_mpc_lie(model, C(0, -0.2), e);
  const auto br = mpc_lie_bracket(model, x1, x2);
  CHECK(max_abs(M(br.xi - 2.0 * e)) == 0.0);
  CHECK(std::abs(half_eta_derivative(model, br)) < 1e-15);
  // The central element acts by mu.
  const FockSpace<double> space(model, 3);
  const CMat<double> op = mpc_lie_operator(space, C(0, 0.5), M(M::Zero(2, 2))).matrix;
  CHECK(max_abs(CMat<double>(op - C(0, 0.5) * CMat<double>::Identity(space.dim(), space.dim()))) == 0.0);
}

TEST_CASE("Lie action integrates the MU^c action") {
  const auto model = SymplecticModel<double>::standard(2);
  const FockSpace<double> space(model, 4);
  std::mt19937_64 rng(4);
  const M xi = random_u_algebra(model, rng);
  const C mu(0, -complex_trace(model, xi).imag() / 2);
  const CMat<double> gen = mpc_lie_operator(space, mu, xi).matrix;
  const double t = 0.7;
  const M k = (t * xi).exp();
  const auto u = mpc_from_unitary(model, k, std::exp(mu * t));
  CHECK(max_abs(CMat<double>(muc_operator(space, u).matrix - CMat<double>((t * gen).exp()))) < 1e-12);
}

TEST_CASE("Gaussian kernels") {
  const auto model = SymplecticModel<double>::standard(1);
  const GaussianKernel<double> id = mpc_kernel(mpc_identity(model));
  std::mt19937_64 rng(5);
  const V z = testutil::random_vector(2, rng), v = testutil::random_vector(2, rng);
  CHECK(std::abs(kernel_eval(model, id, z, v) - coherent_eval(model, v, z)) < 1e-14);
  const auto u = random_mpc(model, rng);
  CHECK(std::abs(kernel_eval(model, mpc_kernel(u), V(V::Zero(2)), V(V::Zero(2))) - u.lambda) < 1e-15);
  // MU^c kernel: lambda e_{k v}(... ) i.e. lambda exp(<k^{-1} z, v> / 2hbar).
  const M k = random_unitary(model, rng);
  const auto w = mpc_from_unitary(model, k, C(1));
  const V kz = k.inverse() * z;
  CHECK(std::abs(kernel_eval(model, mpc_kernel(w), z, v) - coherent_eval(model, v, kz)) < 1e-13);
}
