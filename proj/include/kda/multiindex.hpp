#ifndef KDA_MULTIINDEX_HPP
#define KDA_MULTIINDEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kda/common.hpp"

namespace kda {

/// Exponent tuple j = (j_1, ..., j_p) of a monomial x^j = x_1^{j_1} ... x_p^{j_p}.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  int dimension() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int k) const { return exps_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& exponents() const { return exps_; }

  /// Componentwise sum, used for E[X^{i+j}] lookups.
  MultiIndex operator+(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }
  bool operator!=(const MultiIndex& other) const { return !(*this == other); }

  /// Human-readable monomial, e.g. "x1^2*x2" ("1" for the zero index).
  std::string monomial_string() const;

private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& j) const;
};

/// Degree selector for index enumeration: all |j| == d, or all 1 <= |j| <= d.
struct DegreeSpec {
  enum class Kind { Exact, Range };
  Kind kind = Kind::Exact;
  int degree = 0;

  static DegreeSpec exact(int d) { return {Kind::Exact, d}; }
  static DegreeSpec range(int d) { return {Kind::Range, d}; }
};

/// Ordered set of multi-indices over a fixed dimension. Ordering is graded by
/// total degree ascending, lexicographically descending within each degree,
/// and is the shared coordinate system for moment vectors, covariance
/// matrices, and discriminant coefficients.
class IndexSet {
public:
  IndexSet() = default;
  IndexSet(int dimension, DegreeSpec spec, std::vector<MultiIndex> indices);

  int dimension() const { return dimension_; }
  DegreeSpec spec() const { return spec_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& operator[](int i) const { return indices_[static_cast<std::size_t>(i)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  int max_degree() const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

private:
  int dimension_ = 0;
  DegreeSpec spec_{};
  std::vector<MultiIndex> indices_;
};

/// All multi-indices of the given spec in canonical order.
/// Exact degree d yields C(d+p-1, d) indices; range 1..d yields C(p+d, d) - 1.
IndexSet enumerate_indices(int p, DegreeSpec spec);

/// d! / j! for |j| == d, exact integer arithmetic. Refuses d > 20 rather than
/// overflowing; throws on degree mismatch.
std::int64_t multinomial(int d, const MultiIndex& j);

/// x^j with 0^0 == 1. Throws on length mismatch.
double monomial_eval(const Eigen::VectorXd& x, const MultiIndex& j);

} // namespace kda

#endif
