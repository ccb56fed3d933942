#pragma once

// Balls into bins: k balls thrown independently and uniformly into n bins.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "planardeg/errors.hpp"
#include "planardeg/random.hpp"

namespace planardeg {

/// Bin chosen by each ball, 1-indexed.
struct LocationVector {
  std::uint32_t n_bins = 1;
  std::vector<std::uint32_t> entries;

  std::size_t balls() const noexcept { return entries.size(); }

  void validate() const {
    if (n_bins < 1) throw ValidationError("location vector needs n_bins >= 1");
    for (auto e : entries) {
      if (e < 1 || e > n_bins) throw ValidationError("location entry outside [1, n_bins]");
    }
  }
};

/// loads[j - 1] is the number of balls in bin j.
struct LoadVector {
  std::vector<std::uint32_t> loads;

  std::size_t n_bins() const noexcept { return loads.size(); }
  std::uint64_t total() const noexcept {
    std::uint64_t s = 0;
    for (auto l : loads) s += l;
    return s;
  }
  std::uint32_t operator[](std::uint32_t bin) const { return loads.at(bin - 1); }
};

template <std::uniform_random_bit_generator Gen>
LocationVector sample_locations(std::uint32_t n_bins, std::uint64_t k, Gen& gen) {
  if (n_bins < 1) throw DomainError("sample_locations requires n_bins >= 1");
  LocationVector loc{n_bins, {}};
  loc.entries.resize(k);
  for (auto& e : loc.entries) e = uniform_label(gen, n_bins);
  return loc;
}

inline LoadVector loads(const LocationVector& loc) {
  loc.validate();
  LoadVector lv;
  lv.loads.assign(loc.n_bins, 0);
  for (auto e : loc.entries) ++lv.loads[e - 1];
  return lv;
}

inline std::uint32_t max_load(const LoadVector& lv) {
  if (lv.loads.empty()) return 0;
  return *std::max_element(lv.loads.begin(), lv.loads.end());
}

/// Maximum load over bins 1..t.
inline std::uint32_t max_load_prefix(const LoadVector& lv, std::uint32_t t) {
  if (t < 1 || t > lv.n_bins()) throw DomainError("max_load_prefix requires 1 <= t <= n_bins");
  return *std::max_element(lv.loads.begin(), lv.loads.begin() + t);
}

/// mu(l) = n * C(k, l) * (1/n)^l * (1 - 1/n)^(k - l), the expected number of
/// bins holding exactly l balls. Evaluated in log space.
inline double expected_bins_with_load(std::uint64_t l, std::uint64_t n_bins, std::uint64_t k) {
  if (n_bins < 1) throw DomainError("expected_bins_with_load requires n_bins >= 1");
  if (l > k) throw DomainError("expected_bins_with_load requires l <= k");
  if (n_bins == 1) return l == k ? 1.0 : 0.0;
  const double n = static_cast<double>(n_bins);
  const double kk = static_cast<double>(k);
  const double ll = static_cast<double>(l);
  const double log_binom = std::lgamma(kk + 1.0) - std::lgamma(ll + 1.0) - std::lgamma(kk - ll + 1.0);
  const double log_mu = std::log(n) + log_binom - ll * std::log(n) + (kk - ll) * std::log1p(-1.0 / n);
  return std::exp(log_mu);
}

}  // namespace planardeg
