#ifndef KDA_KERNELS_HPP
#define KDA_KERNELS_HPP

#include <string>
#include <variant>

#include <Eigen/Core>

#include "kda/multiindex.hpp"

namespace kda {

struct HomoPoly {
  int degree; // >= 1
};
struct InhomoPoly {
  int degree; // >= 1
};
struct GaussianKernel {
  double omega; // bandwidth > 0
};

class KernelSpec {
public:
  KernelSpec(HomoPoly k);
  KernelSpec(InhomoPoly k);
  KernelSpec(GaussianKernel k);

  const std::variant<HomoPoly, InhomoPoly, GaussianKernel>& variant() const { return v_; }
  bool is_polynomial() const { return !std::holds_alternative<GaussianKernel>(v_); }
  std::string name() const; // "homo:d", "inhomo:d", "gauss:omega"

private:
  std::variant<HomoPoly, InhomoPoly, GaussianKernel> v_;
};

/// K(x, u): (x'u)^d, (1 + x'u)^d, or exp(-|x-u|^2 / (2 omega^2)).
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& u);

/// Probabilist's Hermite polynomial He_m(x) by the three-term recurrence
/// He_{m+1} = x He_m - m He_{m-1}. Accurate well past m = 30 is not promised;
/// double precision degrades for large m and |x|.
double hermite_he(int m, double x);

/// Scaled Hermite basis term: with x_w = x/omega,
///   (1 / (j! omega^{|j|})) exp(-|x_w|^2 / 2) prod_k He_{j_k}((x_w)_k).
/// The j! omega^{|j|} prefactor moves to log space for |j| > 15.
double hermite_tilde(const MultiIndex& j, double omega, const Eigen::VectorXd& x);

/// Truncation of the Gaussian kernel's Hermite representation:
/// sum over |j| = 0..N of hermite_tilde(j, omega, x) * u^j. Asymmetric in
/// x and u by construction.
double gaussian_truncated(double omega, int truncation, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& u);

} // namespace kda

#endif
