#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

namespace photonrc::harness {

/// Samples as rows. Loaded images are grayscale scaled to [0, 1].
struct ImageDataset {
  Eigen::MatrixXd images;
  std::vector<std::size_t> labels;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 1;

  std::size_t size() const { return labels.size(); }
  std::size_t class_count() const;
};

/// Binary layout, little endian:
///   images: u32 count, u32 height, u32 width, u32 channels, then count*h*w*c bytes
///   labels: u32 count, then count bytes
/// Throws std::runtime_error on missing files or malformed records.
ImageDataset load_dataset(const std::filesystem::path& images, const std::filesystem::path& labels,
                          std::size_t max_records = 0);

void save_dataset(const ImageDataset& data, const std::filesystem::path& images,
                  const std::filesystem::path& labels);

/// Two isotropic Gaussian clusters at +-separation/2 along the first axis.
ImageDataset gaussian_blobs(std::size_t per_class, std::size_t dim, double separation,
                            double spread, std::uint64_t seed);

}  // namespace photonrc::harness
