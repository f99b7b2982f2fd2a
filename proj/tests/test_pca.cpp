#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "wmark/pca.hpp"
#include "wmark/synthetic.hpp"
#include "wmark/watermark.hpp"

using namespace wmark;

namespace {

FeatureMatrix random_features(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  // Correlated columns with very different scales, like DCT band data.
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd mix(cols, cols);
  for (Eigen::Index i = 0; i < cols; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) mix(i, j) = n(rng) * std::pow(0.5, static_cast<double>(j));
  FeatureMatrix x(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) x(r, c) = 40.0 * n(rng);
  x = x * mix;
  x.rowwise() += Eigen::RowVectorXd::LinSpaced(cols, 100.0, -20.0);
  return x;
}

// Direct 1/N sample covariance, written independently of wmark::covariance.
Eigen::MatrixXd direct_covariance(const Eigen::MatrixXd& y) {
  const Eigen::Index n = y.rows();
  const Eigen::Index m = y.cols();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < n; ++k) mean += y.row(k).transpose();
  mean /= static_cast<double>(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd d = y.row(k).transpose() - mean;
    c += d * d.transpose();
  }
  return c / static_cast<double>(n);
}

}  // namespace

TEST_CASE("fit: mean of two points") {
  FeatureMatrix x(2, 2);
  x << 0, 0, 2, 2;
  const PcaModel m = fit_pca(x);
  CHECK(m.mean[0] == doctest::Approx(1.0));
  CHECK(m.mean[1] == doctest::Approx(1.0));
}

TEST_CASE("fit: perfectly correlated pair gives the diagonal axis") {
  // Covariance by hand: [[5,5],[5,5]] -> eigenpairs 10 along (1,1)/sqrt2, 0 along (1,-1)/sqrt2.
  FeatureMatrix x(4, 2);
  x << 1, 1, -1, -1, 3, 3, -3, -3;
  const PcaModel m = fit_pca(x);
  CHECK(m.eigvals[0] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(m.eigvals[1]) < 1e-12);
  CHECK(m.eigvecs(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m.eigvecs(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fit: independent columns with variances 9 and 1") {
  FeatureMatrix x(4, 2);
  x << 3, 1, 3, -1, -3, 1, -3, -1;
  const PcaModel m = fit_pca(x);
  CHECK(m.eigvals[0] == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(m.eigvals[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((m.eigvecs - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fit rejects too few rows and non-finite input") {
  CHECK_THROWS_AS(fit_pca(FeatureMatrix::Zero(3, 6)), std::invalid_argument);
  FeatureMatrix x = FeatureMatrix::Ones(10, 2);
  x(3, 1) = std::nan("");
  CHECK_THROWS_AS(fit_pca(x), std::invalid_argument);
  x(3, 1) = INFINITY;
  CHECK_THROWS_AS(fit_pca(x), std::invalid_argument);
}

TEST_CASE("Jacobi agrees with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const FeatureMatrix x = random_features(rng, 200, 6);
    const PcaModel model = fit_pca(x);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(direct_covariance(x));
    for (Eigen::Index i = 0; i < 6; ++i) {
      // Eigen sorts ascending.
      const double expected = ref.eigenvalues()[5 - i];
      CHECK(std::abs(model.eigvals[i] - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
      const double alignment = std::abs(model.eigvecs.col(i).dot(ref.eigenvectors().col(5 - i)));
      CHECK(alignment == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("PcaModel invariants on random and image-derived data") {
  std::mt19937_64 rng(17);
  std::vector<FeatureMatrix> inputs;
  for (int i = 0; i < 20; ++i) inputs.push_back(random_features(rng, 300, 6));
  inputs.push_back(build_features(synthetic::natural_scene(256, 256, 3), BandSelector::zigzag_prefix(6)));

  for (const FeatureMatrix& x : inputs) {
    const PcaModel m = fit_pca(x);
    const Eigen::Index dims = x.cols();
    const Eigen::MatrixXd cx = covariance(x, m.mean);

    CHECK((m.eigvecs.transpose() * m.eigvecs - Eigen::MatrixXd::Identity(dims, dims)).cwiseAbs().maxCoeff() < 1e-9);
    for (Eigen::Index i = 0; i + 1 < dims; ++i) CHECK(m.eigvals[i] >= m.eigvals[i + 1]);
    CHECK(m.eigvals[dims - 1] >= -1e-12);
    for (Eigen::Index i = 0; i < dims; ++i) {
      const Eigen::VectorXd residual = cx * m.eigvecs.col(i) - m.eigvals[i] * m.eigvecs.col(i);
      CHECK(residual.norm() <= 1e-8 * std::max(1.0, m.eigvals[0]));
      // Sign convention: largest-magnitude entry is positive.
      Eigen::Index pivot = 0;
      m.eigvecs.col(i).cwiseAbs().maxCoeff(&pivot);
      CHECK(m.eigvecs(pivot, i) > 0.0);
    }
    CHECK(std::abs(cx.trace() - m.eigvals.sum()) <= 1e-8 * cx.trace());

    const ScoreMatrix y = project(m, x);
    const Eigen::MatrixXd cy = direct_covariance(y);
    for (Eigen::Index i = 0; i < dims; ++i) {
      CHECK(std::abs(y.col(i).mean()) < 1e-9 * std::max(1.0, std::sqrt(m.eigvals[0])));
      CHECK(std::abs(cy(i, i) - m.eigvals[i]) <= 1e-8 * std::max(1.0, m.eigvals[i]));
      for (Eigen::Index j = 0; j < dims; ++j) {
        if (i != j) CHECK(std::abs(cy(i, j)) < 1e-8 * std::max(1.0, m.eigvals[0]));
      }
    }

    const double centered_energy = (x.rowwise() - m.mean.transpose()).squaredNorm();
    CHECK(std::abs(centered_energy - y.squaredNorm()) <= 1e-6 * centered_energy);
    CHECK((inverse_project(m, y) - x).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("project and inverse_project edge cases") {
  std::mt19937_64 rng(23);
  const FeatureMatrix x = random_features(rng, 50, 6);
  const PcaModel m = fit_pca(x);

  const FeatureMatrix at_mean = m.mean.transpose().replicate(7, 1);
  CHECK(project(m, at_mean).cwiseAbs().maxCoeff() < 1e-10);

  const FeatureMatrix from_zero = inverse_project(m, ScoreMatrix::Zero(4, 6));
  for (Eigen::Index r = 0; r < 4; ++r) CHECK((from_zero.row(r) - m.mean.transpose()).norm() < 1e-12);

  PcaModel scalar{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1)};
  FeatureMatrix column(3, 1);
  column << 4, -2, 7.5;
  CHECK(project(scalar, column) == column);

  // Moving PC1 of one row by delta moves that reconstructed row by delta * a1.
  ScoreMatrix y = project(m, x);
  const double delta = 12.5;
  y(3, 0) += delta;
  const FeatureMatrix moved = inverse_project(m, y);
  const Eigen::RowVectorXd shift = moved.row(3) - x.row(3);
  CHECK((shift - delta * m.eigvecs.col(0).transpose()).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(project(m, FeatureMatrix::Zero(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(inverse_project(m, ScoreMatrix::Zero(3, 7)), std::invalid_argument);
}

TEST_CASE("fit is bit-deterministic") {
  std::mt19937_64 rng(31);
  const FeatureMatrix x = random_features(rng, 400, 6);
  const PcaModel a = fit_pca(x);
  const PcaModel b = fit_pca(x);
  CHECK(a.mean == b.mean);
  CHECK(a.eigvecs == b.eigvecs);
  CHECK(a.eigvals == b.eigvals);
}

TEST_CASE("model save/load roundtrip is exact") {
  std::mt19937_64 rng(41);
  const PcaModel m = fit_pca(random_features(rng, 100, 6));
  std::stringstream ss;
  save_model(ss, m);
  const PcaModel back = load_model(ss);
  CHECK(back.mean == m.mean);
  CHECK(back.eigvecs == m.eigvecs);
  CHECK(back.eigvals == m.eigvals);

  std::istringstream bad("wmark-pca-model 2\nmean 1 2\neigvecs 1 0 0\n");
  CHECK_THROWS_AS(load_model(bad), std::invalid_argument);
  std::istringstream junk("hello");
  CHECK_THROWS_AS(load_model(junk), std::invalid_argument);
}
