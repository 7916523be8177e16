#include "kda/kernels.hpp"

#include <cmath>
#include <sstream>

namespace kda {

KernelSpec::KernelSpec(HomoPoly k) : v_(k) {
  if (k.degree < 1) throw Error("KernelSpec: polynomial degree must be >= 1");
}
KernelSpec::KernelSpec(InhomoPoly k) : v_(k) {
  if (k.degree < 1) throw Error("KernelSpec: polynomial degree must be >= 1");
}
KernelSpec::KernelSpec(GaussianKernel k) : v_(k) {
  if (!(k.omega > 0.0)) throw Error("KernelSpec: bandwidth must be positive");
}

std::string KernelSpec::name() const {
  std::ostringstream os;
  if (const auto* h = std::get_if<HomoPoly>(&v_)) {
    os << "homo:" << h->degree;
  } else if (const auto* i = std::get_if<InhomoPoly>(&v_)) {
    os << "inhomo:" << i->degree;
  } else {
    os << "gauss:" << std::get<GaussianKernel>(v_).omega;
  }
  return os.str();
}

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

} // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  if (x.size() != u.size()) throw Error("kernel_eval: dimension mismatch");
  if (const auto* h = std::get_if<HomoPoly>(&spec.variant()))
    return ipow(x.dot(u), h->degree);
  if (const auto* i = std::get_if<InhomoPoly>(&spec.variant()))
    return ipow(1.0 + x.dot(u), i->degree);
  const double omega = std::get<GaussianKernel>(spec.variant()).omega;
  return std::exp(-(x - u).squaredNorm() / (2.0 * omega * omega));
}

double hermite_he(int m, double x) {
  if (m < 0) throw Error("hermite_he: order must be >= 0");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_tilde(const MultiIndex& j, double omega, const Eigen::VectorXd& x) {
  if (!(omega > 0.0)) throw Error("hermite_tilde: bandwidth must be positive");
  if (x.size() != j.dimension()) throw Error("hermite_tilde: dimension mismatch");
  const Eigen::VectorXd xw = x / omega;
  double he_prod = 1.0;
  for (int k = 0; k < j.dimension(); ++k) he_prod *= hermite_he(j[k], xw[k]);

  const double expo = -0.5 * xw.squaredNorm();
  if (j.degree() <= 15) {
    double fact = 1.0;
    for (int k = 0; k < j.dimension(); ++k)
      for (int i = 2; i <= j[k]; ++i) fact *= i;
    return std::exp(expo) * he_prod / (fact * ipow(omega, j.degree()));
  }
  double log_fact = 0.0;
  for (int k = 0; k < j.dimension(); ++k) log_fact += std::lgamma(j[k] + 1.0);
  return he_prod * std::exp(expo - log_fact - j.degree() * std::log(omega));
}

double gaussian_truncated(double omega, int truncation, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& u) {
  if (truncation < 0) throw Error("gaussian_truncated: truncation degree must be >= 0");
  if (x.size() != u.size()) throw Error("gaussian_truncated: dimension mismatch");
  const int p = static_cast<int>(x.size());
  double acc = 0.0;
  for (int m = 0; m <= truncation; ++m) {
    for (const auto& j : enumerate_indices(p, DegreeSpec::exact(m)))
      acc += hermite_tilde(j, omega, x) * monomial_eval(u, j);
  }
  return acc;
}

} // namespace kda
