#include "test_util.hpp"

using namespace sympspin;
using testutil::max_abs;
using M = Eigen::MatrixXd;
using V = Eigen::VectorXd;

TEST_CASE("hermitean form in the standard model") {
  const auto model = SymplecticModel<double>::standard(1);
  const V e1 = V::Unit(2, 0), e2 = V::Unit(2, 1);
  CHECK(std::abs(hermitean_form(model, e1, e1) - std::complex<double>(1, 0)) < 1e-15);
  CHECK(std::abs(hermitean_form(model, e1, e2) - std::complex<double>(0, -1)) < 1e-15);
  CHECK(std::abs(model.coords(e2)(0) - std::complex<double>(0, 1)) < 1e-15);
}

TEST_CASE("hermitean form is positive and sesquilinear over j") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto model = testutil::skewed_model(2, 0.7, seed);
    std::mt19937_64 rng(seed + 10);
    for (int t = 0; t < 5; ++t) {
      const V v = testutil::random_vector(4, rng), w = testutil::random_vector(4, rng);
      CHECK(norm2(model, v) > 0);
      const auto vw = hermitean_form(model, v, w);
      CHECK(std::abs(hermitean_form(model, V(model.j() * v), w) - std::complex<double>(0, 1) * vw) < 1e-12);
      CHECK(std::abs(hermitean_form(model, w, v) - std::conj(vw)) < 1e-12);
      CHECK((model.from_coords(model.coords(v)) - v).norm() < 1e-12);
    }
  }
}

TEST_CASE("model construction rejects bad input") {
  const auto model = SymplecticModel<double>::standard(1);
  CHECK_THROWS_AS(hermitean_form(model, V(V::Zero(3)), V(V::Zero(2))), DimensionError);
  CHECK_THROWS_AS(SymplecticModel<double>(M::Identity(3, 3), M::Identity(3, 3)), DimensionError);
  CHECK_THROWS_AS(SymplecticModel<double>(model.omega(), model.j(), -1.0), DomainError);
  CHECK_THROWS_AS(SymplecticModel<double>(model.omega(), -model.j()), DomainError);
  CHECK_THROWS_AS(SymplecticModel<double>::standard(0), DomainError);
}

TEST_CASE("cz decomposition of unitary and identity maps") {
  const auto model = SymplecticModel<double>::standard(2);
  std::mt19937_64 rng(5);
  const M k = random_unitary(model, rng);
  const CZPair<double> p = cz_decompose(model, k);
  CHECK(max_abs(p.Z.underlying()) < 1e-13);
  CHECK(max_abs(M(p.C.underlying() - k)) < 1e-13);
  const CZPair<double> id = cz_decompose(model, M(M::Identity(4, 4)));
  CHECK(max_abs(M(id.C.underlying() - M::Identity(4, 4))) < 1e-15);
  CHECK(max_abs(M(cz_compose(model, cz_identity(model)) - M::Identity(4, 4))) < 1e-15);
}

TEST_CASE("cz round trip, product and inverse") {
  for (int n : {1, 2, 3}) {
    const auto model = testutil::skewed_model(n, 1.3, 7 + n);
    std::mt19937_64 rng(n);
    for (int t = 0; t < 4; ++t) {
      const M g1 = random_sp(model, rng, 0.4), g2 = random_sp(model, rng, 0.4);
      const auto p1 = cz_decompose(model, g1), p2 = cz_decompose(model, g2);
      CHECK(max_abs(M(cz_compose(model, p1) - g1)) < 1e-11);
      CHECK(image_residual(model, p1) < 1e-11);
      const auto p12 = cz_product(model, p1, p2);
      const auto q12 = cz_decompose(model, M(g1 * g2));
      CHECK(max_abs(CMat<double>(p12.C.complex_matrix() - q12.C.complex_matrix())) < 1e-10);
      CHECK(max_abs(CMat<double>(p12.Z.complex_matrix() - q12.Z.complex_matrix())) < 1e-10);
      const auto pi = cz_inverse(model, p1);
      const auto qi = cz_decompose(model, M(g1.inverse()));
      CHECK(max_abs(CMat<double>(pi.C.complex_matrix() - qi.C.complex_matrix())) < 1e-10);
      CHECK(max_abs(CMat<double>(pi.Z.complex_matrix() - qi.Z.complex_matrix())) < 1e-10);
      CHECK(max_abs(CMat<double>(inverse_z(p1) - qi.Z.complex_matrix())) < 1e-10);
    }
  }
}

TEST_CASE("cz product with a unitary factor keeps Z up to conjugation") {
  const auto model = SymplecticModel<double>::standard(1);
  std::mt19937_64 rng(3);
  const M g = random_sp(model, rng);
  const auto p = cz_decompose(model, g);
  const auto pk = cz_product(model, p, cz_identity(model));
  CHECK(max_abs(CMat<double>(pk.Z.complex_matrix() - p.Z.complex_matrix())) < 1e-14);
  CHECK(max_abs(CMat<double>(pk.C.complex_matrix() - p.C.complex_matrix())) < 1e-14);
}

TEST_CASE("non-symplectic input is rejected") {
  const auto model = SymplecticModel<double>::standard(1);
  M g = M::Identity(2, 2);
  g(0, 0) = 2;
  CHECK_THROWS_AS(cz_decompose(model, g), DomainError);
  CHECK_FALSE(sp_check(model, g));
  CHECK_THROWS_AS(cz_decompose(model, M(M::Identity(3, 3))), DimensionError);
  M nilpotent = M::Zero(2, 2);
  nilpotent(0, 1) = 1;
  CHECK_THROWS_AS(ComplexLinearView<double>(model, nilpotent), DomainError);
}

TEST_CASE("siegel domain membership") {
  const auto model = SymplecticModel<double>::standard(2);
  CHECK(siegel_check(model, M(M::Zero(4, 4))).ok());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    const auto p = cz_decompose(model, M(random_sp(model, rng, 0.6)));
    CHECK(siegel_check(model, p.Z).ok());
    CHECK(siegel_check(model, M(random_siegel(model, rng, 0.9))).ok());
  }
  CMat<double> s = CMat<double>::Identity(2, 2) * 1.2;
  CHECK_FALSE(siegel_check(model, M(real_from_antilinear(model, s))).ok());
  CMat<double> asym = CMat<double>::Zero(2, 2);
  asym(0, 1) = 0.3;
  CHECK_FALSE(siegel_check(model, M(real_from_antilinear(model, asym))).symmetric);
}

TEST_CASE("smooth log det") {
  const auto model = SymplecticModel<double>::standard(2);
  CHECK(std::abs(smooth_log_det(model, M(M::Identity(4, 4)))) < 1e-15);
  CHECK(std::abs(smooth_log_det(model, M(3.0 * M::Identity(4, 4))) - 2.0 * std::log(3.0)) < 1e-14);
  // Along exp(t xi) with xi j-linear, d/dt a = tr_C xi.
  std::mt19937_64 rng(4);
  const M xi = random_u_algebra(model, rng) + 0.2 * M::Identity(4, 4);
  const std::complex<double> a = smooth_log_det(model, M(xi.exp()));
  CHECK(std::abs(a - complex_trace(model, xi)) < 1e-12);
  CHECK_THROWS_AS(smooth_log_det_complex<double>(CMat<double>::Zero(2, 3)), DimensionError);
}

TEST_CASE("random samples and exponentials") {
  const auto model = SymplecticModel<double>::standard(2);
  CHECK(max_abs(M(random_sp(model, std::uint64_t(9)) - random_sp(model, std::uint64_t(9)))) == 0.0);
  CHECK(max_abs(M(M::Zero(4, 4).exp() - M::Identity(4, 4))) == 0.0);
  for (double t : {0.1, 1.0, 2.5}) CHECK(u_check(model, M((t * model.j()).exp())));
  std::mt19937_64 rng(8);
  CHECK(sp_algebra_residual(model, random_sp_algebra(model, rng)) < 1e-13);
  CHECK(linearity_residual(model, random_u_algebra(model, rng)) < 1e-14);
}

TEST_CASE("complex views round trip") {
  const auto model = testutil::skewed_model(2, 1.0, 21);
  std::mt19937_64 rng(2);
  const M x = random_sp_algebra(model, rng);
  const M lin = linear_part(model, x), anti = antilinear_part(model, x);
  CHECK(max_abs(M(lin + anti - x)) < 1e-14);
  CHECK(max_abs(M(real_from_complex(model, complex_view(model, x)) - lin)) < 1e-12);
  CHECK(max_abs(M(real_from_antilinear(model, antilinear_view(model, x)) - anti)) < 1e-12);
  const V v = testutil::random_vector(4, rng);
  CHECK((model.coords(V(anti * v)) - antilinear_view(model, x) * model.coords(v).conjugate()).norm() < 1e-12);
  CHECK((model.coords(V(lin * v)) - complex_view(model, x) * model.coords(v)).norm() < 1e-12);
}

TEST_CASE("long double instantiation") {
  using LD = long double;
  const auto model = SymplecticModel<LD>::standard(2, LD(0.5));
  std::mt19937_64 rng(1);
  const Mat<LD> g = random_sp(model, rng, LD(0.4));
  const auto p = cz_decompose(model, g);
  CHECK(static_cast<double>(detail::max_abs(Mat<LD>(cz_compose(model, p) - g))) < 1e-15);
  CHECK(siegel_check(model, p.Z).ok());
}
