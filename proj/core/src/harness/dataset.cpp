#include "photonrc/harness/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "photonrc/rng.hpp"
#include "photonrc/types.hpp"

namespace photonrc::harness {

std::size_t ImageDataset::class_count() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

namespace {

std::uint32_t read_u32(std::istream& in, const std::string& what) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw std::runtime_error(what + ": truncated header");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file " + path.string());
  return in;
}

}  // namespace

ImageDataset load_dataset(const std::filesystem::path& images, const std::filesystem::path& labels,
                          std::size_t max_records) {
  auto img = open(images);
  const std::string img_name = images.string();
  const std::uint32_t count = read_u32(img, img_name);
  ImageDataset data;
  data.height = read_u32(img, img_name);
  data.width = read_u32(img, img_name);
  data.channels = read_u32(img, img_name);
  const std::size_t pixels = data.height * data.width * data.channels;
  if (count == 0 || pixels == 0) throw std::runtime_error(img_name + ": empty image records");

  auto lab = open(labels);
  const std::uint32_t label_count = read_u32(lab, labels.string());
  if (label_count != count) {
    throw std::runtime_error("dataset: " + std::to_string(count) + " images but " +
                             std::to_string(label_count) + " labels");
  }
  const std::size_t keep = max_records == 0 ? count : std::min<std::size_t>(count, max_records);
  data.images.resize(static_cast<Eigen::Index>(keep), static_cast<Eigen::Index>(pixels));
  std::vector<unsigned char> row(pixels);
  for (std::size_t i = 0; i < keep; ++i) {
    if (!img.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(pixels))) {
      throw std::runtime_error(img_name + ": record " + std::to_string(i) + " is truncated");
    }
    for (std::size_t p = 0; p < pixels; ++p) {
      data.images(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = row[p] / 255.0;
    }
  }
  data.labels.resize(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const int c = lab.get();
    if (c == std::char_traits<char>::eof()) {
      throw std::runtime_error(labels.string() + ": label " + std::to_string(i) + " is missing");
    }
    data.labels[i] = static_cast<std::size_t>(c);
  }
  return data;
}

void save_dataset(const ImageDataset& data, const std::filesystem::path& images,
                  const std::filesystem::path& labels) {
  const auto pixels = static_cast<std::size_t>(data.images.cols());
  if (pixels != data.height * data.width * data.channels) {
    throw std::invalid_argument("save_dataset: image shape does not match the pixel count");
  }
  std::ofstream img(images, std::ios::binary);
  std::ofstream lab(labels, std::ios::binary);
  if (!img || !lab) throw std::runtime_error("save_dataset: cannot open output files");
  write_u32(img, static_cast<std::uint32_t>(data.size()));
  write_u32(img, static_cast<std::uint32_t>(data.height));
  write_u32(img, static_cast<std::uint32_t>(data.width));
  write_u32(img, static_cast<std::uint32_t>(data.channels));
  for (Eigen::Index i = 0; i < data.images.rows(); ++i) {
    for (Eigen::Index p = 0; p < data.images.cols(); ++p) {
      const double v = std::clamp(data.images(i, p), 0.0, 1.0);
      img.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
  write_u32(lab, static_cast<std::uint32_t>(data.size()));
  for (auto l : data.labels) {
    if (l > 255) throw std::invalid_argument("save_dataset: label does not fit in a byte");
    lab.put(static_cast<char>(static_cast<unsigned char>(l)));
  }
}

ImageDataset gaussian_blobs(std::size_t per_class, std::size_t dim, double separation, double spread,
                            std::uint64_t seed) {
  if (dim == 0 || per_class == 0) throw std::invalid_argument("gaussian_blobs: empty shape");
  Rng rng(seed);
  const auto normal = [&rng] {
    const double u = 1.0 - rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  };
  ImageDataset data;
  data.height = 1;
  data.width = dim;
  data.images.resize(static_cast<Eigen::Index>(2 * per_class), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const std::size_t label = i % 2;
    data.labels.push_back(label);
    for (std::size_t d = 0; d < dim; ++d) {
      double v = spread * normal();
      if (d == 0) v += (label == 0 ? -0.5 : 0.5) * separation;
      data.images(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = v;
    }
  }
  return data;
}

}  // namespace photonrc::harness
