#include "photonrc/learning.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <unsupported/Eigen/FFT>

namespace photonrc {

DesignMatrix DesignMatrix::select_columns(std::span<const std::size_t> columns) const {
  DesignMatrix out;
  out.has_bias = has_bias;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(columns.size()));
  out.flagged.reserve(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] >= static_cast<std::size_t>(values.cols())) {
      throw std::out_of_range("DesignMatrix::select_columns: column out of range");
    }
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(static_cast<Eigen::Index>(columns[j]));
    out.flagged.push_back(flagged.empty() ? false : flagged[columns[j]]);
  }
  return out;
}

DesignMatrix design_matrix(const FeatureEvaluator& evaluate, std::span<const double> xs, bool bias,
                           std::size_t threads) {
  if (xs.empty()) throw std::invalid_argument("design_matrix: no data points");
  std::vector<FeatureColumn> columns(xs.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, xs.size());
  if (workers == 1) {
    for (std::size_t j = 0; j < xs.size(); ++j) columns[j] = evaluate(j, xs[j]);
  } else {
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j = w; j < xs.size(); j += workers) columns[j] = evaluate(j, xs[j]);
        } catch (...) {
          std::lock_guard guard(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  const Eigen::Index features = columns.front().values.size();
  DesignMatrix out;
  out.has_bias = bias;
  out.values = Eigen::MatrixXd::Zero(features + (bias ? 1 : 0), static_cast<Eigen::Index>(xs.size()));
  out.flagged.resize(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto& c = columns[j];
    if (c.values.size() != features) {
      throw std::invalid_argument("design_matrix: inconsistent feature count");
    }
    if (!c.values.allFinite()) throw std::invalid_argument("design_matrix: non-finite feature");
    out.values.col(static_cast<Eigen::Index>(j)).head(features) = c.values;
    if (bias) out.values(features, static_cast<Eigen::Index>(j)) = 1.0;
    out.flagged[j] = c.empty;
  }
  return out;
}

Eigen::VectorXd with_bias(const Eigen::VectorXd& features) {
  Eigen::VectorXd out(features.size() + 1);
  out << features, 1.0;
  return out;
}

namespace {

using Svd = Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::ColPivHouseholderQRPreconditioner>;

Svd decompose(const Eigen::MatrixXd& m) { return Svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV); }

ReadoutWeights solve(const Svd& svd, const Eigen::MatrixXd& labels, Eigen::Index keep, double rcond) {
  const auto& s = svd.singularValues();
  Eigen::MatrixXd inverse = Eigen::MatrixXd::Zero(svd.matrixV().rows(), svd.matrixU().rows());
  for (Eigen::Index i = 0; i < keep; ++i) {
    inverse += svd.matrixV().col(i) * (1.0 / s(i)) * svd.matrixU().col(i).transpose();
  }
  return {labels * inverse, rcond, keep};
}

void check_training(const DesignMatrix& design, const Eigen::MatrixXd& labels) {
  if (labels.cols() != design.point_count()) {
    throw std::invalid_argument("train: label count does not match the design matrix");
  }
  if (design.values.size() == 0 || design.values.isZero(0.0)) {
    throw std::invalid_argument("train: design matrix is all zero");
  }
}

}  // namespace

ReadoutWeights train(const DesignMatrix& design, const Eigen::MatrixXd& labels, double rcond) {
  check_training(design, labels);
  if (!(rcond >= 0.0)) throw std::invalid_argument("train: rcond must be non-negative");
  const Svd svd = decompose(design.values);
  const auto& s = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < s.size() && s(keep) > rcond * s(0)) ++keep;
  return solve(svd, labels, keep, rcond);
}

ReadoutWeights train_truncated(const DesignMatrix& design, const Eigen::MatrixXd& labels,
                               Eigen::Index rank) {
  check_training(design, labels);
  if (rank < 0) throw std::invalid_argument("train_truncated: negative rank");
  const Svd svd = decompose(design.values);
  const auto& s = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < std::min(rank, s.size()) && s(keep) > 0.0) ++keep;
  return solve(svd, labels, keep, 0.0);
}

Eigen::VectorXd predict(const ReadoutWeights& readout, const Eigen::VectorXd& column) {
  if (column.size() != readout.weights.cols()) {
    throw std::invalid_argument("predict: feature dimension does not match the weights");
  }
  return readout.weights * column;
}

Eigen::MatrixXd predict(const ReadoutWeights& readout, const DesignMatrix& design) {
  if (design.values.rows() != readout.weights.cols()) {
    throw std::invalid_argument("predict: feature dimension does not match the weights");
  }
  return readout.weights * design.values;
}

std::size_t argmax(const Eigen::VectorXd& scores) {
  if (scores.size() == 0) throw std::invalid_argument("argmax: empty scores");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores(i) > scores(best)) best = i;
  }
  return static_cast<std::size_t>(best);
}

RankReport conditioned_rank(const DesignMatrix& design, double n_samp, double k) {
  if (!(n_samp >= 1.0)) throw std::invalid_argument("conditioned_rank: n_samp must be >= 1");
  if (!(k > 0.0)) throw std::invalid_argument("conditioned_rank: k must be positive");
  RankReport report;
  report.threshold = k / n_samp;
  const Eigen::MatrixXd features = design.features();
  if (features.size() == 0) return report;
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(features).singularValues();
  const double total = s.squaredNorm();
  report.singular_values.resize(static_cast<std::size_t>(s.size()), 0.0);
  if (total == 0.0) return report;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double v = s(i) * s(i) / total;
    report.singular_values[static_cast<std::size_t>(i)] = v;
    if (v > report.threshold) ++report.conditioned_rank;
  }
  return report;
}

Eigen::Index numerical_rank(const DesignMatrix& design, double tol) {
  const Eigen::MatrixXd features = design.features();
  if (features.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(features).singularValues();
  if (s(0) == 0.0) return 0;
  return static_cast<Eigen::Index>((s.array() > tol * s(0)).count());
}

Spectrum fourier_spectrum(std::span<const double> xs, std::span<const double> values, double floor) {
  if (xs.size() != values.size()) throw std::invalid_argument("fourier_spectrum: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("fourier_spectrum: need at least two samples");
  const std::size_t n = xs.size();
  const double dx = xs[1] - xs[0];
  if (!(dx > 0.0)) throw std::invalid_argument("fourier_spectrum: grid must be increasing");
  const double span = dx * static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double expected = xs[0] + static_cast<double>(j) * dx;
    if (std::abs(xs[j] - expected) > 1e-9 * std::max(1.0, span)) {
      throw std::invalid_argument("fourier_spectrum: grid is not uniform");
    }
  }

  std::vector<double> input(values.begin(), values.end());
  std::vector<std::complex<double>> bins;
  Eigen::FFT<double> fft;
  fft.fwd(bins, input);

  Spectrum out;
  const double scale = 1.0 / static_cast<double>(n);
  out.dc = std::abs(bins[0]) * scale;
  double peak = out.dc;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    out.frequencies.push_back(static_cast<double>(k) / span);
    out.magnitudes.push_back(std::abs(bins[k]) * scale);
    peak = std::max(peak, out.magnitudes.back());
  }
  const double threshold = floor * peak;
  for (double m : out.magnitudes) {
    if (m > threshold) ++out.n_omega;
  }
  return out;
}

std::vector<double> spectrum_support(std::span<const Spectrum> spectra, double floor) {
  double peak = 0.0;
  for (const auto& s : spectra) {
    peak = std::max(peak, s.dc);
    for (double m : s.magnitudes) peak = std::max(peak, m);
  }
  const double threshold = floor * peak;
  std::vector<double> support;
  for (const auto& s : spectra) {
    for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
      if (s.magnitudes[k] > threshold) support.push_back(s.frequencies[k]);
    }
  }
  std::sort(support.begin(), support.end());
  const auto same = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
  support.erase(std::unique(support.begin(), support.end(), same), support.end());
  return support;
}

double max_frequency(std::span<const Spectrum> spectra, double floor) {
  const auto support = spectrum_support(spectra, floor);
  return support.empty() ? 0.0 : support.back();
}

double mean_squared_error(std::span<const double> predictions, std::span<const double> labels) {
  if (predictions.size() != labels.size()) throw std::invalid_argument("mean_squared_error: length mismatch");
  if (predictions.empty()) throw std::invalid_argument("mean_squared_error: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double d = predictions[i] - labels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(labels.size());
}

double matthews(const std::vector<std::vector<std::size_t>>& confusion) {
  const std::size_t k = confusion.size();
  std::vector<double> truth(k, 0.0);
  std::vector<double> predicted(k, 0.0);
  double correct = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (confusion[i].size() != k) throw std::invalid_argument("matthews: confusion matrix is not square");
    for (std::size_t j = 0; j < k; ++j) {
      const auto c = static_cast<double>(confusion[i][j]);
      truth[i] += c;
      predicted[j] += c;
      total += c;
      if (i == j) correct += c;
    }
  }
  double cross = 0.0;
  double pred_sq = 0.0;
  double truth_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    cross += predicted[i] * truth[i];
    pred_sq += predicted[i] * predicted[i];
    truth_sq += truth[i] * truth[i];
  }
  const double denom = (total * total - pred_sq) * (total * total - truth_sq);
  if (denom <= 0.0) return 0.0;
  return (correct * total - cross) / std::sqrt(denom);
}

ClassificationReport classification_metrics(std::span<const std::size_t> predictions,
                                            std::span<const std::size_t> labels,
                                            std::size_t classes) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("classification_metrics: length mismatch");
  }
  if (labels.empty()) throw std::invalid_argument("classification_metrics: empty input");
  ClassificationReport report;
  report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= classes || predictions[i] >= classes) {
      throw std::out_of_range("classification_metrics: class index out of range");
    }
    ++report.confusion[labels[i]][predictions[i]];
    if (labels[i] == predictions[i]) ++hits;
  }
  report.accuracy = static_cast<double>(hits) / static_cast<double>(labels.size());
  report.mcc = matthews(report.confusion);
  return report;
}

std::size_t majority_class(std::span<const std::size_t> labels, std::size_t classes) {
  if (labels.empty()) throw std::invalid_argument("majority_class: empty input");
  std::vector<std::size_t> counts(classes, 0);
  for (auto l : labels) {
    if (l >= classes) throw std::out_of_range("majority_class: class index out of range");
    ++counts[l];
  }
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Eigen::MatrixXd Pca::transform(const Eigen::MatrixXd& samples) const {
  if (samples.cols() != mean.size()) throw std::invalid_argument("Pca::transform: dimension mismatch");
  return (samples.rowwise() - mean.transpose()) * components;
}

Eigen::MatrixXd Pca::inverse_transform(const Eigen::MatrixXd& projected) const {
  if (projected.cols() != components.cols()) {
    throw std::invalid_argument("Pca::inverse_transform: dimension mismatch");
  }
  return (projected * components.transpose()).rowwise() + mean.transpose();
}

Pca fit_pca(const Eigen::MatrixXd& samples, std::size_t n_components) {
  const auto n = static_cast<std::size_t>(samples.rows());
  const auto dim = static_cast<std::size_t>(samples.cols());
  if (n < 2) throw std::invalid_argument("fit_pca: need at least two samples");
  if (n_components == 0 || n_components > std::min(dim, n)) {
    throw std::invalid_argument("fit_pca: n_components must lie in [1, min(dim, samples)]");
  }
  Pca pca;
  pca.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centred = samples.rowwise() - pca.mean.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullV);
  const auto k = static_cast<Eigen::Index>(n_components);
  pca.components = svd.matrixV().leftCols(k);
  pca.eigenvalues = Eigen::VectorXd::Zero(k);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (i < s.size()) pca.eigenvalues(i) = s(i) * s(i) / static_cast<double>(n - 1);
    Eigen::Index big = 0;
    pca.components.col(i).cwiseAbs().maxCoeff(&big);
    if (pca.components(big, i) < 0.0) pca.components.col(i) *= -1.0;
  }
  return pca;
}

}  // namespace photonrc
