#pragma once

#include <random>

#include <doctest.h>

#include "sympspin/symplinalg.hpp"

namespace testutil {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

inline Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = scale * nd(rng);
  return v;
}

// Standard Omega with the compatible structure j' = g j g^{-1}, g symplectic.
inline sympspin::SymplecticModel<double> skewed_model(int n, double hbar, std::uint64_t seed) {
  const auto base = sympspin::SymplecticModel<double>::standard(n, hbar);
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd g = sympspin::random_sp(base, rng, 0.4);
  return sympspin::SymplecticModel<double>(base.omega(), g * base.j() * g.inverse(), hbar);
}

}  // namespace testutil
