#include "kda/multiindex.hpp"

#include <numeric>
#include <sstream>

namespace kda {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw Error("MultiIndex: negative exponent");
  }
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dimension() != other.dimension())
    throw Error("MultiIndex: dimension mismatch in +");
  std::vector<int> sum(exps_.size());
  for (std::size_t k = 0; k < exps_.size(); ++k) sum[k] = exps_[k] + other.exps_[k];
  return MultiIndex(std::move(sum));
}

std::string MultiIndex::monomial_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < exps_.size(); ++k) {
    if (exps_[k] == 0) continue;
    if (!first) os << "*";
    os << "x" << (k + 1);
    if (exps_[k] > 1) os << "^" << exps_[k];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& j) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (int e : j.exponents()) {
    h ^= static_cast<std::size_t>(e);
    h *= 0x100000001b3ull;
  }
  return h;
}

IndexSet::IndexSet(int dimension, DegreeSpec spec, std::vector<MultiIndex> indices)
    : dimension_(dimension), spec_(spec), indices_(std::move(indices)) {}

int IndexSet::max_degree() const {
  int m = 0;
  for (const auto& j : indices_) m = std::max(m, j.degree());
  return m;
}

namespace {

// Appends all p-tuples summing to d in lexicographically descending order.
void emit_exact(int p, int d, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (p == 1) {
    prefix.push_back(d);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int j = d; j >= 0; --j) {
    prefix.push_back(j);
    emit_exact(p - 1, d - j, prefix, out);
    prefix.pop_back();
  }
}

} // namespace

IndexSet enumerate_indices(int p, DegreeSpec spec) {
  if (p < 1) throw Error("enumerate_indices: dimension must be >= 1");
  if (spec.degree < 0) throw Error("enumerate_indices: degree must be >= 0");
  if (spec.kind == DegreeSpec::Kind::Range && spec.degree < 1)
    throw Error("enumerate_indices: range spec requires degree >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(p));
  if (spec.kind == DegreeSpec::Kind::Exact) {
    emit_exact(p, spec.degree, prefix, out);
  } else {
    for (int m = 1; m <= spec.degree; ++m) emit_exact(p, m, prefix, out);
  }
  return IndexSet(p, spec, std::move(out));
}

namespace {

// C(n, k) by stepwise exact multiplication; every intermediate value is an
// integer because r after i steps equals C(n - k + i, i).
std::int64_t binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

} // namespace

std::int64_t multinomial(int d, const MultiIndex& j) {
  if (j.degree() != d)
    throw Error("multinomial: |j| = " + std::to_string(j.degree()) +
                " does not match degree " + std::to_string(d));
  if (d > 20)
    throw Error("multinomial: exact integer arithmetic supported only for degree <= 20");
  std::int64_t r = 1;
  int partial = 0;
  for (int k = 0; k < j.dimension(); ++k) {
    partial += j[k];
    r *= binomial_exact(partial, j[k]);
  }
  return r;
}

double monomial_eval(const Eigen::VectorXd& x, const MultiIndex& j) {
  if (x.size() != j.dimension())
    throw Error("monomial_eval: vector length does not match index dimension");
  double v = 1.0;
  for (int k = 0; k < j.dimension(); ++k) {
    for (int e = 0; e < j[k]; ++e) v *= x[k];
  }
  return v;
}

} // namespace kda
