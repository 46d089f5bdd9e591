#include "sympspin/quadrature.hpp"
#include "test_util.hpp"

using namespace sympspin;
using testutil::max_abs;
using V = Eigen::VectorXd;
using C = std::complex<double>;

TEST_CASE("basis ordering and ranges") {
  const FockBasis b(2, 3);
  CHECK(b.dim() == 10);
  CHECK(b.index(1) == MultiIndex{1, 0});
  CHECK(b.index(2) == MultiIndex{0, 1});
  CHECK(b.degree_begin(2) == 3);
  CHECK(b.degree_size(3) == 4);
  CHECK(b.dim_upto(1) == 3);
  CHECK(b.find({2, 2}) == -1);
  CHECK_THROWS_AS(FockBasis(0, 2), DomainError);
}

TEST_CASE("monomial norms") {
  const auto model = SymplecticModel<double>::standard(2, 0.7);
  CHECK(monomial_norm(model, {0, 0}) == 1.0);
  CHECK(monomial_norm(model, {1, 0}) == doctest::Approx(1.4));
  CHECK(monomial_norm(model, {3, 2}) == doctest::Approx(6.0 * 2.0 * std::pow(1.4, 5)));
  CHECK_THROWS_AS(monomial_norm(model, {-1, 0}), DomainError);
}

TEST_CASE("monomial norms match the Gaussian integral at n = 1") {
  // (f, g) = h^{-1} int f conj(g) exp(-|z|^2 / 2hbar) dz, h = 2 pi hbar.
  const double hbar = 0.8;
  const auto model = SymplecticModel<double>::standard(1, hbar);
  const GaussHermiteRule rule = gauss_hermite(40);
  const double s = std::sqrt(2.0 * hbar);
  for (int a = 0; a <= 6; ++a) {
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double x = s * rule.nodes[i], y = s * rule.nodes[k];
        sum += rule.weights[i] * rule.weights[k] * std::pow(x * x + y * y, a);
      }
    const double integral = sum * s * s / (2.0 * M_PI * hbar);
    CHECK(integral == doctest::Approx(monomial_norm(model, {a})).epsilon(1e-12));
  }
}

TEST_CASE("fock inner product is diagonal on monomials") {
  const FockSpace<double> space(SymplecticModel<double>::standard(2), 3);
  const auto f = FockVector<double>::monomial(space.basis_ptr(), {1, 1});
  const auto g = FockVector<double>::monomial(space.basis_ptr(), {2, 0});
  CHECK(std::abs(fock_inner(space, f, g)) == 0.0);
  CHECK(fock_inner(space, f, f).real() == doctest::Approx(4.0));
  const FockSpace<double> other(SymplecticModel<double>::standard(2), 2);
  CHECK_THROWS_AS(fock_inner(other, f, g), DimensionError);
  CHECK_THROWS_AS(FockVector<double>::monomial(other.basis_ptr(), {3, 0}), DimensionError);
}

TEST_CASE("ladder operators") {
  const double hbar = 0.6;
  const FockSpace<double> space(SymplecticModel<double>::standard(1, hbar), 4);
  const V e1 = V::Unit(2, 0);
  const V je1 = space.model().j() * e1;
  const auto vac = FockVector<double>::vacuum(space.basis_ptr());
  const auto cv = creation_op(space, e1)(vac);
  CHECK(std::abs(cv.coeffs(1) - C(1.0 / (2 * hbar))) < 1e-15);
  CHECK(max_abs(annihilation_op(space, e1)(vac).coeffs) == 0.0);
  CHECK(max_abs(CMat<double>(annihilation_op(space, je1).matrix - C(0, 1) * annihilation_op(space, e1).matrix)) <
        1e-15);
  CHECK(max_abs(CMat<double>(creation_op(space, je1).matrix + C(0, 1) * creation_op(space, e1).matrix)) < 1e-15);
  CHECK(off_shift_mass(space.basis(), creation_op(space, e1).matrix, 1) == 0.0);
  CHECK(off_shift_mass(space.basis(), annihilation_op(space, e1).matrix, -1) == 0.0);
  CHECK(*creation_op(space, e1).degree_shift == 1);
}

TEST_CASE("creation is adjoint to annihilation below the top degree") {
  const FockSpace<double> space(testutil::skewed_model(2, 1.1, 4), 4);
  std::mt19937_64 rng(1);
  const V v = testutil::random_vector(4, rng);
  const CMat<double> c = creation_op(space, v).matrix;
  const CMat<double> a = annihilation_op(space, v).matrix;
  const int m = space.basis().dim_upto(3);
  CHECK(max_abs(CMat<double>(fock_adjoint(space, c).topLeftCorner(m, m) - a.topLeftCorner(m, m))) < 1e-13);
}

TEST_CASE("heisenberg group law and Lie action") {
  const auto model = SymplecticModel<double>::standard(1);
  const HeisenbergElement<double> h1{V::Unit(2, 0), 0.5}, h2{V::Unit(2, 1), -0.25};
  const auto h12 = heisenberg_mul(model, h1, h2);
  CHECK(h12.t == doctest::Approx(0.5 - 0.25 - 0.5));
  const auto e = heisenberg_mul(model, h1, heisenberg_inverse(h1));
  CHECK(e.v.norm() == 0.0);
  CHECK(e.t == 0.0);
  CHECK(heisenberg_lie_bracket(model, h1, h2).t == doctest::Approx(-1.0));

  const FockSpace<double> space(model, 3);
  const auto vac = FockVector<double>::vacuum(space.basis_ptr());
  const HeisenbergElement<double> central{V::Zero(2), 2.0};
  CHECK(std::abs(heisenberg_lie_act(space, central, vac).coeffs(0) - C(0, -2.0)) < 1e-15);
  // [cl(v), cl(w)] = (i / hbar) Omega(v, w) on interior columns.
  const CMat<double> a = heisenberg_lie_op(space, h1).matrix, b = heisenberg_lie_op(space, h2).matrix;
  const CMat<double> comm = a * b - b * a;
  const int m = space.basis().dim_upto(1);
  CHECK(max_abs(CMat<double>(comm.topLeftCorner(m, m) - C(0, 1) * CMat<double>::Identity(m, m))) < 1e-14);
}

TEST_CASE("substitution and evaluation") {
  const FockSpace<double> space(SymplecticModel<double>::standard(2), 3);
  std::mt19937_64 rng(3);
  FockVector<double> f = FockVector<double>::zero(space.basis_ptr());
  for (int i = 0; i < space.dim(); ++i) f.coeffs(i) = C(std::normal_distribution<double>()(rng), 0.3 * i);
  CMat<double> l = CMat<double>::Random(2, 2);
  const V z = testutil::random_vector(4, rng);
  const FockVector<double> g{space.basis_ptr(), substitution_matrix<double>(space.basis(), l) * f.coeffs};
  const V lz = space.model().from_coords(CVec<double>(l * space.model().coords(z)));
  CHECK(std::abs(fock_eval(space, g, z) - fock_eval(space, f, lz)) < 1e-12);
}
