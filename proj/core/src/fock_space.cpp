#include "photonrc/fock_space.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace photonrc {

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("Occupation: negative photon count");
  }
}

Occupation::Occupation(std::initializer_list<int> counts)
    : Occupation(std::vector<int>(counts)) {}

Occupation Occupation::vacuum(std::size_t modes) { return Occupation(std::vector<int>(modes, 0)); }

int Occupation::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

std::string Occupation::label() const {
  std::string out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  return out;
}

std::uint64_t dimension(std::size_t modes, std::size_t photons) {
  if (modes == 0) throw std::domain_error("dimension: mode count must be at least 1");
  // C(n, k) with n = photons + modes - 1, k = min(photons, modes - 1).
  const std::uint64_t n = photons + modes - 1;
  const std::uint64_t k = std::min<std::uint64_t>(photons, modes - 1);
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t product = 0;
    if (__builtin_mul_overflow(result, n - i, &product)) {
      throw std::overflow_error("dimension: binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
    }
    result = product / (i + 1);
  }
  return result;
}

namespace {

void enumerate_into(std::vector<int>& prefix, std::size_t mode, std::size_t modes, int remaining,
                    std::vector<Occupation>& out) {
  if (mode + 1 == modes) {
    prefix[mode] = remaining;
    out.emplace_back(prefix);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    prefix[mode] = c;
    enumerate_into(prefix, mode + 1, modes, remaining - c, out);
  }
}

}  // namespace

std::vector<Occupation> enumerate_occupations(std::size_t modes, std::size_t photons) {
  const std::uint64_t size = dimension(modes, photons);
  std::vector<Occupation> out;
  out.reserve(size);
  std::vector<int> prefix(modes, 0);
  enumerate_into(prefix, 0, modes, static_cast<int>(photons), out);
  return out;
}

std::vector<Occupation> enumerate_up_to(std::size_t modes, std::size_t max_photons) {
  std::vector<Occupation> out;
  for (std::size_t n = 0; n <= max_photons; ++n) {
    auto sector = enumerate_occupations(modes, n);
    out.insert(out.end(), std::make_move_iterator(sector.begin()),
               std::make_move_iterator(sector.end()));
  }
  return out;
}

Occupation collapse_polarisation(const Occupation& modes) {
  if (modes.size() % 2 != 0) {
    throw std::invalid_argument("collapse_polarisation: odd number of modes");
  }
  std::vector<int> ports(modes.size() / 2);
  for (std::size_t p = 0; p < ports.size(); ++p) ports[p] = modes[2 * p] + modes[2 * p + 1];
  return Occupation(std::move(ports));
}

FockBasis::FockBasis(std::size_t modes, std::size_t photons)
    : modes_(modes), photons_(photons), states_(enumerate_occupations(modes, photons)) {}

std::size_t FockBasis::index_of(const Occupation& occ) const {
  if (occ.size() != modes_ || occ.total() != static_cast<int>(photons_)) {
    throw std::invalid_argument("FockBasis::index_of: occupation " + occ.label() +
                                " is not in this basis");
  }
  // Count the occupations that precede occ: at each mode, every larger count
  // with the same prefix comes first.
  std::size_t index = 0;
  int remaining = static_cast<int>(photons_);
  for (std::size_t mode = 0; mode + 1 < modes_; ++mode) {
    for (int c = remaining; c > occ[mode]; --c) {
      index += dimension(modes_ - mode - 1, static_cast<std::size_t>(remaining - c));
    }
    remaining -= occ[mode];
  }
  return index;
}

}  // namespace photonrc
