#include "sympspin/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sympspin {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Orthonormal Hermite functions psi_{m-1}(x), psi_m(x) by the stable recurrence.
std::pair<double, double> hermite_functions(int m, double x) {
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < m; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

GaussHermiteRule build_rule(int m) {
  // Golub-Welsch start, Newton polish on psi_m.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);
  GaussHermiteRule r;
  for (int i = 0; i < m; ++i) {
    double x = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const auto [pm1, p] = hermite_functions(m, x);
      const double dp = -x * p + std::sqrt(2.0 * m) * pm1;
      if (dp == 0.0) break;
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // w_i = 1 / sum_k p_k(x_i)^2 = exp(-x^2) / (m psi_{m-1}(x)^2)
    const double pm1 = hermite_functions(m, x).first;
    const double scaled = 1.0 / (m * pm1 * pm1);
    r.nodes.push_back(x);
    r.scaled_weights.push_back(scaled);
    r.weights.push_back(scaled * std::exp(-x * x));
  }
  return r;
}

struct Quadratic {
  Eigen::Vector2d center;
  Eigen::Matrix2d map;  // x = center + map y
  double jacobian = 1;  // |det map|
};

// Fit Re logf(x) = -x^T R x + b^T x + c exactly from seven evaluations.
Quadratic fit_weight(const LogIntegrand& logf) {
  auto f = [&](double a, double b) { return logf(a, b).real(); };
  const double c = f(0, 0);
  const double fp1 = f(1, 0), fm1 = f(-1, 0);
  const double fp2 = f(0, 1), fm2 = f(0, -1);
  const double f12 = f(1, 1);
  Eigen::Vector2d b((fp1 - fm1) / 2, (fp2 - fm2) / 2);
  Eigen::Matrix2d r;
  r(0, 0) = -(fp1 + fm1 - 2 * c) / 2;
  r(1, 1) = -(fp2 + fm2 - 2 * c) / 2;
  r(0, 1) = r(1, 0) = -(f12 - c - b(0) - b(1) + r(0, 0) + r(1, 1)) / 2;
  Eigen::LLT<Eigen::Matrix2d> llt(r);
  if (llt.info() != Eigen::Success || !(r.determinant() > 0) || !(r(0, 0) > 0))
    throw DomainError("gaussian quadrature: integrand is not a decaying Gaussian");
  Quadratic q;
  q.center = r.ldlt().solve(b) / 2;
  // R = L L^T, x = center + L^{-T} y
  const Eigen::Matrix2d l = llt.matrixL();
  q.map = l.transpose().inverse();
  q.jacobian = std::abs(q.map.determinant());
  return q;
}

const GaussHermiteRule& cached_rule(int m) {
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build_rule(m)).first;
  return it->second;
}

cd integrate(const LogIntegrand& logf, const Quadratic& q, int m) {
  const GaussHermiteRule& r = cached_rule(m);
  cd s(0);
  for (int i = 0; i < m; ++i) {
    cd row(0);
    for (int k = 0; k < m; ++k) {
      const Eigen::Vector2d x = q.center + q.map * Eigen::Vector2d(r.nodes[i], r.nodes[k]);
      row += r.scaled_weights[k] * std::exp(logf(x(0), x(1)));
    }
    s += r.scaled_weights[i] * row;
  }
  return s * q.jacobian;
}

void require_n1(const SymplecticModel<double>& model, const char* what) {
  if (model.n() != 1) throw DimensionError(std::string(what) + ": only n = 1 is supported");
}

// Kernel exponent in complex coordinates at n = 1.
cd exponent1(const GaussianKernel<double>& k, cd z, cd v, double hbar) {
  const cd a = k.A(0, 0), b = k.B(0, 0), c = k.Cq(0, 0);
  return (2.0 * a * z * std::conj(v) - std::conj(b) * z * z - c * std::conj(v) * std::conj(v)) / (4.0 * hbar);
}

cd coord1(const SymplecticModel<double>& model, const Vec<double>& x) { return model.coords(x)(0); }

}  // namespace

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw DomainError("gauss_hermite: order must be positive");
  return cached_rule(order);
}

std::complex<double> gaussian_quadrature_2d(const LogIntegrand& logf, int order) {
  return integrate(logf, fit_weight(logf), order);
}

QuadratureResult gaussian_quadrature_2d(const LogIntegrand& logf, int order, bool with_delta) {
  const Quadratic q = fit_weight(logf);
  QuadratureResult r{integrate(logf, q, order), 0.0};
  if (with_delta) r.delta = std::abs(integrate(logf, q, 2 * order) - r.value);
  return r;
}

NumericKernel::NumericKernel(SymplecticModel<double> model, GaussianKernel<double> k1, GaussianKernel<double> k2,
                             int order)
    : model_(std::move(model)), k1_(std::move(k1)), k2_(std::move(k2)), order_(order) {
  require_n1(model_, "kernel_compose_numeric");
  if (order_ < 40) throw DomainError("kernel_compose_numeric: quad_order must be >= 40");
}

QuadratureResult NumericKernel::evaluate(const Vec<double>& z, const Vec<double>& w, bool with_delta) const {
  const double hb = model_.hbar();
  const cd zc = coord1(model_, z), wc = coord1(model_, w);
  const cd lam = k1_.lambda * k2_.lambda;
  // Frame coordinates (x, y) give zeta = x + i y and Lebesgue measure dx dy.
  LogIntegrand logf = [&](double x, double y) {
    const cd u(x, y);
    return exponent1(k1_, zc, u, hb) + exponent1(k2_, u, wc, hb) - std::norm(u) / (2.0 * hb);
  };
  QuadratureResult r = gaussian_quadrature_2d(logf, order_, with_delta);
  const double h = 2.0 * kPi * hb;
  r.value *= lam / h;
  r.delta *= std::abs(lam) / h;
  return r;
}

std::complex<double> NumericKernel::operator()(const Vec<double>& z, const Vec<double>& w) const {
  return evaluate(z, w, false).value;
}

NumericKernel kernel_compose_numeric(const SymplecticModel<double>& model, const GaussianKernel<double>& k1,
                                     const GaussianKernel<double>& k2, int quad_order) {
  return NumericKernel(model, k1, k2, quad_order);
}

ConjugationReport conjugation_check(const SymplecticModel<double>& model, const MpcElement<double>& u,
                                    const HeisenbergElement<double>& h,
                                    const std::vector<std::pair<Vec<double>, Vec<double>>>& samples, int quad_order,
                                    bool with_delta) {
  require_n1(model, "conjugation_check");
  const double hb = model.hbar();
  const GaussianKernel<double> ku = mpc_kernel(u);
  const GaussianKernel<double> kinv = mpc_kernel(mpc_inverse(model, u));
  const Vec<double> gv = cz_compose(model, u.cz) * h.v;
  const cd vc = coord1(model, h.v);
  const double v2 = std::norm(vc);
  const HeisenbergElement<double> hg{gv, h.t};
  ConjugationReport rep;
  for (const auto& [z, w] : samples) {
    const cd zc = coord1(model, z), wc = coord1(model, w);
    // (U_j(v,t) f)(u) = exp(-i t/hbar + <u, v>/2hbar - |v|^2/4hbar) f(u - v), f = U^{-1} e_w.
    LogIntegrand logf = [&](double x, double y) {
      const cd uu(x, y);
      const cd shift = cd(-v2 / (4.0 * hb), -h.t / hb) + uu * std::conj(vc) / (2.0 * hb);
      return exponent1(ku, zc, uu, hb) + shift + exponent1(kinv, uu - vc, wc, hb) - std::norm(uu) / (2.0 * hb);
    };
    QuadratureResult q = gaussian_quadrature_2d(logf, quad_order, with_delta);
    const double hh = 2.0 * kPi * hb;
    const cd lam = ku.lambda * kinv.lambda;
    const cd lhs = q.value * lam / hh;
    const cd rhs = uj_scalar(model, hg, w) * coherent_eval(model, Vec<double>(gv + w), z);
    rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs) / std::abs(rhs));
    rep.max_delta = std::max(rep.max_delta, q.delta * std::abs(lam) / hh / std::abs(rhs));
    ++rep.samples;
  }
  return rep;
}

GaussianIntegralReport gaussian_integral_check(const SymplecticModel<double>& model, const Mat<double>& z1,
                                               const Mat<double>& z2, int quad_order, bool with_delta) {
  require_n1(model, "gaussian_integral_check");
  const CMat<double> s1 = AntiLinearView<double>(model, z1).complex_matrix();
  const CMat<double> s2 = AntiLinearView<double>(model, z2).complex_matrix();
  const double n1 = s1.norm(), n2 = s2.norm();
  if (!(n1 < 1.0) || !(n2 < 1.0)) throw DomainError("gaussian_integral_check: divergent integrand (|Z| >= 1)");
  const cd a1 = s1(0, 0), a2 = s2(0, 0);
  // <z, Z1 z> = conj(S1) zeta^2, <Z2 z, z> = S2 conj(zeta)^2
  LogIntegrand logf = [&](double x, double y) {
    const cd z(x, y);
    return -(kPi / 2.0) * (std::conj(a1) * z * z + a2 * std::conj(z) * std::conj(z)) - kPi * std::norm(z);
  };
  const QuadratureResult q = gaussian_quadrature_2d(logf, quad_order, with_delta);
  GaussianIntegralReport r;
  r.lhs = q.value;
  r.delta = q.delta;
  const CMat<double> one = CMat<double>::Identity(1, 1);
  r.rhs = std::exp(-smooth_log_det_complex<double>(CMat<double>(one - s1 * s2.conjugate())) / 2.0);
  r.rhs_swapped = std::exp(-smooth_log_det_complex<double>(CMat<double>(one - s2 * s1.conjugate())) / 2.0);
  r.residual = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  r.residual_swapped = std::abs(r.lhs - r.rhs_swapped) / std::abs(r.rhs_swapped);
  return r;
}

std::vector<std::pair<Vec<double>, Vec<double>>> random_sample_pairs(const SymplecticModel<double>& model,
                                                                     std::mt19937_64& rng, int count, double radius) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  auto pick = [&] {
    Vec<double> v(model.dim());
    do {
      for (int i = 0; i < model.dim(); ++i) v(i) = radius * ud(rng);
    } while (std::sqrt(norm2(model, v)) > radius);
    return v;
  };
  std::vector<std::pair<Vec<double>, Vec<double>>> out;
  for (int i = 0; i < count; ++i) {
    Vec<double> z = pick();
    Vec<double> w = pick();
    out.emplace_back(std::move(z), std::move(w));
  }
  return out;
}

}  // namespace sympspin
