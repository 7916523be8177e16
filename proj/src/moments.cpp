#include "kda/moments.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <boost/math/special_functions/erf.hpp>

namespace kda {

ClassSpec::ClassSpec(DiagonalGaussian g, double prior) : dist_(std::move(g)), prior_(prior) {
  const auto& d = std::get<DiagonalGaussian>(dist_);
  if (d.mean.size() == 0 || d.mean.size() != d.variance.size())
    throw Error("ClassSpec: mean/variance size mismatch");
  if ((d.variance.array() <= 0.0).any())
    throw Error("ClassSpec: variances must be positive");
  if (!(prior > 0.0 && prior < 1.0)) throw Error("ClassSpec: prior must be in (0,1)");
}

ClassSpec::ClassSpec(FullGaussian g, double prior) : dist_(std::move(g)), prior_(prior) {
  const auto& f = std::get<FullGaussian>(dist_);
  if (f.mean.size() == 0 || f.covariance.rows() != f.mean.size() ||
      f.covariance.cols() != f.mean.size())
    throw Error("ClassSpec: covariance shape mismatch");
  double scale = std::max(1.0, f.covariance.cwiseAbs().maxCoeff());
  if ((f.covariance - f.covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error("ClassSpec: covariance must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(f.covariance);
  if (llt.info() != Eigen::Success)
    throw Error("ClassSpec: covariance must be positive definite");
  if (!(prior > 0.0 && prior < 1.0)) throw Error("ClassSpec: prior must be in (0,1)");
}

ClassSpec::ClassSpec(Empirical e, double prior) : dist_(std::move(e)), prior_(prior) {
  const auto& s = std::get<Empirical>(dist_);
  if (s.points.rows() == 0 || s.points.cols() == 0)
    throw Error("ClassSpec: empirical sample must be nonempty");
  if (!(prior > 0.0 && prior < 1.0)) throw Error("ClassSpec: prior must be in (0,1)");
}

int ClassSpec::dimension() const {
  if (const auto* d = std::get_if<DiagonalGaussian>(&dist_)) return static_cast<int>(d->mean.size());
  if (const auto* f = std::get_if<FullGaussian>(&dist_)) return static_cast<int>(f->mean.size());
  return static_cast<int>(std::get<Empirical>(dist_).points.cols());
}

TwoClassProblem::TwoClassProblem(ClassSpec class1, ClassSpec class2)
    : class1_(std::move(class1)), class2_(std::move(class2)) {
  if (class1_.dimension() != class2_.dimension())
    throw Error("TwoClassProblem: class dimensions differ");
  if (std::abs(class1_.prior() + class2_.prior() - 1.0) > 1e-12)
    throw Error("TwoClassProblem: priors must sum to 1");
}

double gaussian_raw_moment_1d(double mu, double sigma2, int k) {
  if (k < 0) throw Error("gaussian_raw_moment_1d: negative order");
  double prev = 1.0; // m_0
  if (k == 0) return prev;
  double cur = mu; // m_1
  for (int m = 2; m <= k; ++m) {
    double next = mu * cur + (m - 1) * sigma2 * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

constexpr int kMaxTableDegree = 40;

void check_degree_cap(int max_degree) {
  if (max_degree < 0) throw Error("MomentTable: negative degree");
  if (max_degree > kMaxTableDegree)
    throw Error("MomentTable: moment degree " + std::to_string(max_degree) +
                " exceeds the double-precision cap of 40");
}

std::vector<MultiIndex> all_indices_up_to(int p, int max_degree) {
  std::vector<MultiIndex> out;
  for (int m = 0; m <= max_degree; ++m) {
    IndexSet s = enumerate_indices(p, DegreeSpec::exact(m));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

constexpr int kHaltonPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                   23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t n, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % static_cast<std::uint64_t>(base));
    n /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

double inverse_normal_cdf(double u) {
  u = std::min(std::max(u, 1e-15), 1.0 - 1e-15);
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
}

} // namespace

MomentTable MomentTable::compute(const ClassSpec& cls, int max_degree, McOptions mc) {
  check_degree_cap(max_degree);
  MomentTable table;
  table.dimension_ = cls.dimension();
  table.max_degree_ = max_degree;
  const int p = table.dimension_;
  std::vector<MultiIndex> idx = all_indices_up_to(p, max_degree);

  if (const auto* d = std::get_if<DiagonalGaussian>(&cls.dist())) {
    // one 1-d moment array per coordinate, then products
    std::vector<std::vector<double>> m1(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      m1[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(max_degree) + 1);
      for (int o = 0; o <= max_degree; ++o)
        m1[static_cast<std::size_t>(k)][static_cast<std::size_t>(o)] =
            gaussian_raw_moment_1d(d->mean[k], d->variance[k], o);
    }
    for (const auto& j : idx) {
      double v = 1.0;
      for (int k = 0; k < p; ++k) v *= m1[static_cast<std::size_t>(k)][static_cast<std::size_t>(j[k])];
      table.values_[j] = {v, 0.0};
    }
  } else if (const auto* e = std::get_if<Empirical>(&cls.dist())) {
    const auto& pts = e->points;
    const double n = static_cast<double>(pts.rows());
    for (const auto& j : idx) {
      double acc = 0.0;
      for (Eigen::Index r = 0; r < pts.rows(); ++r)
        acc += monomial_eval(pts.row(r).transpose(), j);
      table.values_[j] = {acc / n, 0.0};
    }
  } else {
    const auto& f = std::get<FullGaussian>(cls.dist());
    if (p > 16)
      throw Error("MomentTable: FullGaussian QMC supports dimension <= 16");
    Eigen::LLT<Eigen::MatrixXd> llt(f.covariance);
    Eigen::MatrixXd chol = llt.matrixL();
    std::mt19937_64 rng(mc.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int nb = mc.batches, npts = mc.points_per_batch;
    // batch means per index; Cranley-Patterson shift per batch
    Eigen::MatrixXd batch_means(nb, static_cast<Eigen::Index>(idx.size()));
    Eigen::VectorXd z(p), x(p);
    for (int b = 0; b < nb; ++b) {
      Eigen::VectorXd shift(p);
      for (int k = 0; k < p; ++k) shift[k] = unif(rng);
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(idx.size()));
      for (int i = 0; i < npts; ++i) {
        const auto n_halton = static_cast<std::uint64_t>(b) * npts + i + 1;
        for (int k = 0; k < p; ++k) {
          double u = radical_inverse(n_halton, kHaltonPrimes[k]) + shift[k];
          u -= std::floor(u);
          z[k] = inverse_normal_cdf(u);
        }
        x = f.mean + chol * z;
        for (std::size_t t = 0; t < idx.size(); ++t)
          acc[static_cast<Eigen::Index>(t)] += monomial_eval(x, idx[t]);
      }
      batch_means.row(b) = acc.transpose() / npts;
    }
    for (std::size_t t = 0; t < idx.size(); ++t) {
      Eigen::VectorXd col = batch_means.col(static_cast<Eigen::Index>(t));
      double mean = col.mean();
      double var = (col.array() - mean).square().sum() / (nb - 1);
      table.values_[idx[t]] = {mean, std::sqrt(var / nb)};
    }
    // the zero index is exact regardless of estimation noise
    table.values_[idx[0]] = {1.0, 0.0};
  }
  return table;
}

double MomentTable::at(const MultiIndex& j) const {
  auto it = values_.find(j);
  if (it == values_.end())
    throw Error("MomentTable: index " + j.monomial_string() + " of degree " +
                std::to_string(j.degree()) + " not tabulated (max degree " +
                std::to_string(max_degree_) + ")");
  return it->second.value;
}

double MomentTable::std_error(const MultiIndex& j) const {
  auto it = values_.find(j);
  if (it == values_.end()) throw Error("MomentTable: index not tabulated");
  return it->second.std_error;
}

double raw_moment(const ClassSpec& cls, const MultiIndex& j, McOptions mc) {
  if (cls.dimension() != j.dimension())
    throw Error("raw_moment: index dimension does not match class dimension");
  if (const auto* d = std::get_if<DiagonalGaussian>(&cls.dist())) {
    double v = 1.0;
    for (int k = 0; k < j.dimension(); ++k)
      v *= gaussian_raw_moment_1d(d->mean[k], d->variance[k], j[k]);
    return v;
  }
  if (const auto* e = std::get_if<Empirical>(&cls.dist())) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < e->points.rows(); ++r)
      acc += monomial_eval(e->points.row(r).transpose(), j);
    return acc / static_cast<double>(e->points.rows());
  }
  return raw_moment_mc(std::get<FullGaussian>(cls.dist()), j, mc).value;
}

EstimatedMoment raw_moment_mc(const FullGaussian& g, const MultiIndex& j, McOptions mc) {
  ClassSpec cls(g, 0.5);
  MomentTable t = MomentTable::compute(cls, j.degree(), mc);
  return {t.at(j), t.std_error(j)};
}

DeltaVector delta_from_tables(const MomentTable& t1, const MomentTable& t2, const IndexSet& idx) {
  Eigen::VectorXd d(idx.size());
  for (int i = 0; i < idx.size(); ++i) d[i] = t1.at(idx[i]) - t2.at(idx[i]);
  return {idx, std::move(d)};
}

PooledCovariance pooled_from_tables(const MomentTable& t1, const MomentTable& t2,
                                    double prior1, const IndexSet& idx) {
  const int n = idx.size();
  Eigen::MatrixXd w(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      MultiIndex sum = idx[a] + idx[b];
      double cov1 = t1.at(sum) - t1.at(idx[a]) * t1.at(idx[b]);
      double cov2 = t2.at(sum) - t2.at(idx[a]) * t2.at(idx[b]);
      w(a, b) = w(b, a) = prior1 * cov1 + (1.0 - prior1) * cov2;
    }
  }
  return {idx, std::move(w)};
}

DeltaVector delta_vector(const TwoClassProblem& problem, const IndexSet& idx) {
  const int d = idx.max_degree();
  MomentTable t1 = MomentTable::compute(problem.class1(), d);
  MomentTable t2 = MomentTable::compute(problem.class2(), d);
  return delta_from_tables(t1, t2, idx);
}

PooledCovariance pooled_covariance(const TwoClassProblem& problem, const IndexSet& idx) {
  const int d = 2 * idx.max_degree();
  MomentTable t1 = MomentTable::compute(problem.class1(), d);
  MomentTable t2 = MomentTable::compute(problem.class2(), d);
  return pooled_from_tables(t1, t2, problem.class1().prior(), idx);
}

} // namespace kda
