#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace photonrc {

/// One data point's reservoir output.
struct FeatureColumn {
  Eigen::VectorXd values;
  bool empty = false;  // all samples were rejected
};

using FeatureEvaluator = std::function<FeatureColumn(std::size_t index, double x)>;

/// O_ij = <F_i(x_j)>, features in rows, data points in columns. When
/// `has_bias` is set the last row is the constant 1.
struct DesignMatrix {
  Eigen::MatrixXd values;
  bool has_bias = true;
  std::vector<bool> flagged;  // per column: empty feature condition

  Eigen::Index feature_count() const { return values.rows() - (has_bias ? 1 : 0); }
  Eigen::Index point_count() const { return values.cols(); }
  /// Rows without the bias.
  Eigen::MatrixXd features() const { return values.topRows(feature_count()); }
  DesignMatrix select_columns(std::span<const std::size_t> columns) const;
};

/// Columns are evaluated on `threads` workers; the evaluator must be safe to
/// call concurrently. Column order never depends on scheduling.
DesignMatrix design_matrix(const FeatureEvaluator& evaluate, std::span<const double> xs,
                           bool bias = true, std::size_t threads = 1);

/// Appends the bias entry when needed.
Eigen::VectorXd with_bias(const Eigen::VectorXd& features);

struct ReadoutWeights {
  Eigen::MatrixXd weights;  // outputs x rows of the design matrix
  double rcond = 0.0;
  Eigen::Index rank = 0;    // singular directions retained
};

/// W = Y O^+ with singular values below rcond * sigma_max discarded.
/// Labels are outputs x points. Throws on an all-zero design matrix.
ReadoutWeights train(const DesignMatrix& design, const Eigen::MatrixXd& labels, double rcond);

/// As train() but keeps exactly the leading `rank` singular directions.
ReadoutWeights train_truncated(const DesignMatrix& design, const Eigen::MatrixXd& labels,
                               Eigen::Index rank);

Eigen::VectorXd predict(const ReadoutWeights& readout, const Eigen::VectorXd& column);
Eigen::MatrixXd predict(const ReadoutWeights& readout, const DesignMatrix& design);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(const Eigen::VectorXd& scores);

struct RankReport {
  std::vector<double> singular_values;  // of O O^T, descending, sum 1
  std::size_t conditioned_rank = 0;
  double threshold = 0.0;               // k / n_samp
};

/// Normalised spectrum of the Gram matrix of the feature rows (bias excluded)
/// and the number of values above k / n_samp.
RankReport conditioned_rank(const DesignMatrix& design, double n_samp, double k = 3.0);

/// Numerical rank of the feature rows: singular values above tol * sigma_max.
Eigen::Index numerical_rank(const DesignMatrix& design, double tol = 1e-10);

struct Spectrum {
  std::vector<double> frequencies;  // cycles per unit x, DC and mirrors excluded
  std::vector<double> magnitudes;   // |X_k| / N
  double dc = 0.0;
  std::size_t n_omega = 0;
};

inline constexpr double kSpectrumFloor = 1e-6;

/// DFT of samples on a uniform grid x_j = x_0 + j dx. Components count toward
/// n_omega when above floor * max(|DC|, max |X_k|). Throws std::invalid_argument
/// on a non-uniform grid.
Spectrum fourier_spectrum(std::span<const double> xs, std::span<const double> values,
                          double floor = kSpectrumFloor);

/// Distinct frequencies present in any of the spectra, relative to the largest
/// magnitude over the whole set.
std::vector<double> spectrum_support(std::span<const Spectrum> spectra,
                                     double floor = kSpectrumFloor);

/// Highest frequency in spectrum_support, 0 when none.
double max_frequency(std::span<const Spectrum> spectra, double floor = kSpectrumFloor);

double mean_squared_error(std::span<const double> predictions, std::span<const double> labels);

struct ClassificationReport {
  double accuracy = 0.0;
  double mcc = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][prediction]
};

/// Multiclass Matthews correlation from a confusion matrix; 0 when undefined.
double matthews(const std::vector<std::vector<std::size_t>>& confusion);

ClassificationReport classification_metrics(std::span<const std::size_t> predictions,
                                            std::span<const std::size_t> labels,
                                            std::size_t classes);

/// Most frequent label (lowest on ties).
std::size_t majority_class(std::span<const std::size_t> labels, std::size_t classes);

/// Mean-centred principal components, eigenvalues descending. Each component's
/// largest-magnitude entry is positive.
struct Pca {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;  // dim x n_components
  Eigen::VectorXd eigenvalues; // of the sample covariance (n - 1 denominator)

  /// Rows are samples.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& samples) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& projected) const;
};

/// Samples are rows. Throws when n_components exceeds min(dim, samples).
Pca fit_pca(const Eigen::MatrixXd& samples, std::size_t n_components);

}  // namespace photonrc
