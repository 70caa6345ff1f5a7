#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace photonrc {

/// Photon counts per mode. The Fock basis label.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts);
  Occupation(std::initializer_list<int> counts);

  /// All-zero occupation over `modes` modes.
  static Occupation vacuum(std::size_t modes);

  std::size_t size() const { return counts_.size(); }
  int operator[](std::size_t mode) const { return counts_[mode]; }
  const std::vector<int>& counts() const { return counts_; }
  int total() const;

  /// Comma separated counts, e.g. "1,0,2".
  std::string label() const;

  auto operator<=>(const Occupation&) const = default;
  bool operator==(const Occupation&) const = default;

 private:
  std::vector<int> counts_;
};

/// binomial(photons + modes - 1, photons). Throws std::overflow_error if the
/// value does not fit in 64 bits and std::domain_error for modes == 0.
std::uint64_t dimension(std::size_t modes, std::size_t photons);

/// Every occupation of `modes` modes by `photons` photons, lexicographically
/// descending: (2,0), (1,1), (0,2).
std::vector<Occupation> enumerate_occupations(std::size_t modes, std::size_t photons);

/// All occupations with total <= max_photons: sectors ascending, each sector
/// in enumerate_occupations order. This is the post-selected feature basis.
std::vector<Occupation> enumerate_up_to(std::size_t modes, std::size_t max_photons);

/// Sums the H and V entries of each port. Input length must be even.
Occupation collapse_polarisation(const Occupation& modes);

/// Fixed-photon-number basis with O(modes) ranking.
class FockBasis {
 public:
  FockBasis(std::size_t modes, std::size_t photons);

  std::size_t mode_count() const { return modes_; }
  std::size_t photon_count() const { return photons_; }
  std::size_t size() const { return states_.size(); }

  const Occupation& occupation_at(std::size_t index) const { return states_.at(index); }
  std::size_t index_of(const Occupation& occ) const;

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  std::size_t modes_;
  std::size_t photons_;
  std::vector<Occupation> states_;
};

}  // namespace photonrc
