#include "wmark/pca.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmark {
namespace {

constexpr const char* kModelMagic = "wmark-pca-model";

double off_diagonal_sq(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return s;
}

void require_columns(const PcaModel& model, const Eigen::MatrixXd& m, const char* what) {
  if (static_cast<std::size_t>(m.cols()) != model.dims()) {
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(m.cols()) +
                                " columns, model expects " + std::to_string(model.dims()));
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps) {
  if (symmetric.rows() != symmetric.cols()) {
    throw std::invalid_argument("jacobi_eigen needs a square matrix");
  }
  const Eigen::Index n = symmetric.rows();
  Eigen::MatrixXd a = symmetric;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.squaredNorm();
  const double eps = std::numeric_limits<double>::epsilon();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_sq(a) <= eps * eps * scale) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q); t is the smaller root of t^2 + 2 t theta - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  return SymmetricEigen{a.diagonal(), std::move(v), sweep};
}

Eigen::MatrixXd covariance(const FeatureMatrix& x, const Eigen::VectorXd& mean) {
  const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  return (centered.transpose() * centered) / static_cast<double>(x.rows());
}

PcaModel fit_pca(const FeatureMatrix& x) {
  if (x.cols() == 0) throw std::invalid_argument("feature matrix has no columns");
  if (x.rows() < x.cols()) {
    throw std::invalid_argument("PCA needs at least as many rows as columns (" +
                                std::to_string(x.rows()) + " < " + std::to_string(x.cols()) +
                                ")");
  }
  if (!x.allFinite()) throw std::invalid_argument("feature matrix contains NaN or Inf");

  const Eigen::Index m = x.cols();
  const Eigen::VectorXd mean = x.colwise().mean().transpose();
  const SymmetricEigen eig = jacobi_eigen(covariance(x, mean));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return eig.values[l] > eig.values[r];
  });

  PcaModel model{mean, Eigen::MatrixXd(m, m), Eigen::VectorXd(m)};
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd axis = eig.vectors.col(order[static_cast<std::size_t>(i)]);
    Eigen::Index pivot = 0;
    for (Eigen::Index k = 1; k < m; ++k) {
      if (std::abs(axis[k]) > std::abs(axis[pivot])) pivot = k;
    }
    if (axis[pivot] < 0.0) axis = -axis;
    model.eigvecs.col(i) = axis;
    model.eigvals[i] = eig.values[order[static_cast<std::size_t>(i)]];
  }
  return model;
}

ScoreMatrix project(const PcaModel& model, const FeatureMatrix& x) {
  require_columns(model, x, "feature matrix");
  return (x.rowwise() - model.mean.transpose()) * model.eigvecs;
}

FeatureMatrix inverse_project(const PcaModel& model, const ScoreMatrix& y) {
  require_columns(model, y, "score matrix");
  return (y * model.eigvecs.transpose()).rowwise() + model.mean.transpose();
}

void save_model(std::ostream& os, const PcaModel& model) {
  const auto m = static_cast<Eigen::Index>(model.dims());
  os << kModelMagic << ' ' << m << '\n' << std::setprecision(17);
  os << "mean";
  for (Eigen::Index i = 0; i < m; ++i) os << ' ' << model.mean[i];
  os << "\neigvecs";
  for (Eigen::Index c = 0; c < m; ++c)
    for (Eigen::Index r = 0; r < m; ++r) os << ' ' << model.eigvecs(r, c);
  os << "\neigvals";
  for (Eigen::Index i = 0; i < m; ++i) os << ' ' << model.eigvals[i];
  os << '\n';
}

PcaModel load_model(std::istream& is) {
  std::string magic;
  Eigen::Index m = 0;
  if (!(is >> magic >> m) || magic != kModelMagic || m <= 0) {
    throw std::invalid_argument("not a PCA model file");
  }
  auto read_section = [&](const char* name, Eigen::Index count) {
    std::string tag;
    if (!(is >> tag) || tag != name) {
      throw std::invalid_argument(std::string("PCA model: expected section '") + name + "'");
    }
    std::vector<double> values(static_cast<std::size_t>(count));
    for (auto& v : values) {
      if (!(is >> v)) throw std::invalid_argument(std::string("PCA model: truncated ") + name);
    }
    return values;
  };
  PcaModel model;
  const auto mean = read_section("mean", m);
  const auto vecs = read_section("eigvecs", m * m);
  const auto vals = read_section("eigvals", m);
  model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), m);
  model.eigvecs = Eigen::Map<const Eigen::MatrixXd>(vecs.data(), m, m);
  model.eigvals = Eigen::Map<const Eigen::VectorXd>(vals.data(), m);
  return model;
}

}  // namespace wmark
