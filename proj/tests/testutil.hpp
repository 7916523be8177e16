#ifndef KDA_TESTUTIL_HPP
#define KDA_TESTUTIL_HPP

#include <random>

#include <Eigen/Dense>

namespace testutil {

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = normal(rng);
  return m;
}

/// A A^T + shift I: symmetric positive definite.
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n, double shift = 0.1) {
  Eigen::MatrixXd a = random_matrix(rng, n, n);
  Eigen::MatrixXd m = a * a.transpose();
  m.diagonal().array() += shift;
  return m;
}

inline double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd ac = a.array() - a.mean();
  Eigen::VectorXd bc = b.array() - b.mean();
  return ac.dot(bc) / (ac.norm() * bc.norm());
}

inline double cosine_abs(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

inline Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

} // namespace testutil

#endif
