#include "sympspin/coherent.hpp"
#include "test_util.hpp"

using namespace sympspin;
using testutil::max_abs;
using V = Eigen::VectorXd;
using C = std::complex<double>;

TEST_CASE("coherent inner products") {
  const auto model = SymplecticModel<double>::standard(2, 0.5);
  const V zero = V::Zero(4);
  CHECK(std::abs(coherent_inner(model, zero, zero) - C(1)) == 0.0);
  std::mt19937_64 rng(1);
  const V v = testutil::random_vector(4, rng);
  CHECK(coherent_inner(model, v, v).real() == doctest::Approx(std::exp(norm2(model, v) / 1.0)));
  std::vector<V> centers;
  for (int i = 0; i < 5; ++i) centers.push_back(testutil::random_vector(4, rng, 0.7));
  const CMat<double> g = coherent_gram(model, centers);
  CHECK(max_abs(CMat<double>(g - g.adjoint())) < 1e-12 * max_abs(g));
  CHECK(detail::min_hermitean_eigenvalue<double>(g) > 0);
}

TEST_CASE("heisenberg action on coherent states") {
  const auto model = testutil::skewed_model(1, 1.2, 5);
  std::mt19937_64 rng(2);
  const CoherentCombo<double> psi{{{C(0.3, 1.0), testutil::random_vector(2, rng)}, {C(-1.0), testutil::random_vector(2, rng)}}};
  // Central elements act by exp(-i t / hbar).
  const auto central = uj_apply(model, HeisenbergElement<double>{V::Zero(2), 0.9}, psi);
  CHECK(std::abs(combo_inner(model, central, psi) - std::exp(C(0, -0.9 / 1.2)) * combo_inner(model, psi, psi)) < 1e-12);
  const HeisenbergElement<double> h1{testutil::random_vector(2, rng), 0.4}, h2{testutil::random_vector(2, rng), -1.1};
  const auto lhs = uj_apply(model, h1, uj_apply(model, h2, psi));
  const auto rhs = uj_apply(model, heisenberg_mul(model, h1, h2), psi);
  const V z = testutil::random_vector(2, rng);
  CHECK(std::abs(combo_eval(model, lhs, z) - combo_eval(model, rhs, z)) < 1e-12 * std::abs(combo_eval(model, rhs, z)));
  const auto u = uj_apply(model, h1, psi);
  CHECK(std::abs(combo_inner(model, u, u) - combo_inner(model, psi, psi)) < 1e-11 * combo_inner(model, psi, psi).real());
}

TEST_CASE("projection of coherent states") {
  const auto model = SymplecticModel<double>::standard(1);
  const FockSpace<double> small(model, 4);
  const CoherentCombo<double> vac{{{C(1), V::Zero(2)}}};
  const auto p = project_coherent(small, vac);
  CHECK(std::abs(p.coeffs(0) - C(1)) == 0.0);
  CHECK(max_abs(CVec<double>(p.coeffs.tail(small.dim() - 1))) == 0.0);
  const V v = V::Unit(2, 0) * 0.8, z = V::Unit(2, 1) * 0.5;
  const std::complex<double> exact = coherent_eval(model, v, z);
  double prev = 1e300;
  for (int N : {2, 4, 8, 16}) {
    const FockSpace<double> space(model, N);
    const double err = std::abs(fock_eval(space, project_coherent(space, CoherentCombo<double>{{{C(1), v}}}), z) - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-14);
}

TEST_CASE("berezin kernels of simple operators") {
  const auto model = SymplecticModel<double>::standard(1, 0.9);
  const FockSpace<double> space(model, 24);
  const V z = V::Unit(2, 0) * 0.4 + V::Unit(2, 1) * 0.3, w = V::Unit(2, 1) * -0.6;
  const FockOperator<double> id{space.basis_ptr(), CMat<double>::Identity(space.dim(), space.dim()), 0};
  CHECK(std::abs(berezin_kernel_eval(space, id, z, w) - coherent_eval(model, w, z)) < 1e-13);
  const FockOperator<double> zero{space.basis_ptr(), CMat<double>::Zero(space.dim(), space.dim()), 0};
  CHECK(std::abs(berezin_kernel_eval(space, zero, z, w)) == 0.0);
  const V v = V::Unit(2, 0);
  const C expect = hermitean_form(model, z, v) / (2 * 0.9) * coherent_eval(model, w, z);
  CHECK(std::abs(berezin_kernel_eval(space, creation_op(space, v), z, w) - expect) < 1e-12);
}
