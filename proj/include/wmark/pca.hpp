#pragma once

// Principal component analysis of per-block feature vectors.
//
// Rows are observations (one per image block), columns are band coefficients.
// Scores are computed row-wise as y_k = A^T (x_k - mean), so column 0 of a
// ScoreMatrix is the first principal component.

#include <cstddef>
#include <iosfwd>

#include <Eigen/Dense>

namespace wmark {

/// N x M matrix of band coefficients, one row per block.
using FeatureMatrix = Eigen::MatrixXd;

/// N x M matrix of principal-component scores; column 0 is PC1.
using ScoreMatrix = Eigen::MatrixXd;

struct PcaModel {
  Eigen::VectorXd mean;     ///< M-vector
  Eigen::MatrixXd eigvecs;  ///< M x M, column i is the i-th principal axis
  Eigen::VectorXd eigvals;  ///< M-vector, descending

  std::size_t dims() const { return static_cast<std::size_t>(mean.size()); }
};

/// Eigen-decomposition of a symmetric matrix.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  ///< column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi rotation solver. Output is unsorted and sign-unnormalized.
/// Throws std::invalid_argument for non-square input.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps = 64);

/// Covariance with 1/N normalization around the supplied mean.
Eigen::MatrixXd covariance(const FeatureMatrix& x, const Eigen::VectorXd& mean);

/// Fits mean, covariance eigenvectors and eigenvalues.
///
/// Eigenpairs are ordered by descending eigenvalue (ties keep solver order)
/// and each eigenvector is flipped so that its largest-magnitude entry is
/// positive; among equal magnitudes the first entry wins. Throws
/// std::invalid_argument when rows < cols or when the input holds NaN/Inf.
PcaModel fit_pca(const FeatureMatrix& x);

/// Row-wise centered projection onto the principal axes.
ScoreMatrix project(const PcaModel& model, const FeatureMatrix& x);

/// Exact inverse of project.
FeatureMatrix inverse_project(const PcaModel& model, const ScoreMatrix& y);

/// Textual model listing: mean, eigenvectors (column-major), eigenvalues.
void save_model(std::ostream& os, const PcaModel& model);
PcaModel load_model(std::istream& is);

}  // namespace wmark
