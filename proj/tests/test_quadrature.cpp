#include "sympspin/quadrature.hpp"
#include "test_util.hpp"

using namespace sympspin;
using M = Eigen::MatrixXd;
using V = Eigen::VectorXd;
using C = std::complex<double>;

TEST_CASE("Gauss-Hermite rule") {
  const GaussHermiteRule r = gauss_hermite(20);
  double w = 0, x2 = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    w += r.weights[i];
    x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(x2 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-14));
}

TEST_CASE("2d Gaussian quadrature") {
  // int exp(-x^2 - 2y^2 + x) = pi / sqrt(2) e^{1/4}
  const auto f = [](double x, double y) { return C(-x * x - 2 * y * y + x, 0.1 * y); };
  const C exact = M_PI / std::sqrt(2.0) * std::exp(C(0.25, 0)) * std::exp(C(-0.01 / 8, 0));
  CHECK(std::abs(gaussian_quadrature_2d(f, 40) - exact) < 1e-12);
  CHECK_THROWS_AS(gaussian_quadrature_2d([](double x, double) { return C(x * x, 0); }, 20), DomainError);
}

TEST_CASE("identity kernel reproduces") {
  const auto model = SymplecticModel<double>::standard(1);
  std::mt19937_64 rng(1);
  const auto u = random_mpc(model, rng, 0.4);
  const auto k = mpc_kernel(u);
  const auto num = kernel_compose_numeric(model, mpc_kernel(mpc_identity(model)), k, 60);
  for (const auto& [z, w] : random_sample_pairs(model, rng, 4)) {
    const C ref = kernel_eval(model, k, z, w);
    CHECK(std::abs(num(z, w) - ref) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("central kernels compose") {
  const auto model = SymplecticModel<double>::standard(1, 0.8);
  const auto a = mpc_central(model, std::polar(1.0, 0.4)), b = mpc_central(model, std::polar(1.0, 1.3));
  const auto num = kernel_compose_numeric(model, mpc_kernel(a), mpc_kernel(b), 60);
  const auto ab = mpc_kernel(mpc_mul(model, a, b));
  std::mt19937_64 rng(2);
  for (const auto& [z, w] : random_sample_pairs(model, rng, 3)) {
    const C ref = kernel_eval(model, ab, z, w);
    CHECK(std::abs(num(z, w) - ref) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("conjugation covariance") {
  const auto model = SymplecticModel<double>::standard(1);
  std::mt19937_64 rng(3);
  const auto samples = random_sample_pairs(model, rng, 3);
  const HeisenbergElement<double> h{V::Unit(2, 0) * 0.5, 0.2};
  CHECK(conjugation_check(model, mpc_central(model, std::polar(1.0, 2.0)), h, samples).max_residual < 1e-10);
  const M k = random_unitary(model, rng);
  CHECK(conjugation_check(model, mpc_from_unitary(model, k, C(1)), h, samples).max_residual < 1e-8);
  CHECK(conjugation_check(model, random_mpc(model, rng, 0.4), h, samples).max_residual < 1e-8);
}

TEST_CASE("Gaussian integrals with a vanishing factor") {
  const auto model = SymplecticModel<double>::standard(1);
  std::mt19937_64 rng(4);
  const M z = random_siegel(model, rng, 0.7), zero = M::Zero(2, 2);
  for (const auto& [a, b] : {std::pair{zero, zero}, std::pair{z, zero}, std::pair{zero, z}}) {
    const auto rep = gaussian_integral_check(model, a, b);
    CHECK(std::abs(rep.lhs - C(1)) < 1e-12);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.residual_swapped < 1e-12);
  }
}
