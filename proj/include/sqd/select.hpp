#pragma once

#include <vector>

#include "sqd/basis.hpp"

namespace sqd {

// Basis configurations plus every single-excitation partner of each of them
// (Hamming distance exactly 2), deduplicated and sorted. With a positive
// screen threshold, a partner outside the basis is kept only when some basis
// configuration couples to it above the threshold; the default keeps all
// singles unconditionally.
std::vector<Configuration> extend_basis(const SubspaceBasis& basis,
                                        const FragmentHamiltonian& h,
                                        int max_distance = 2,
                                        double screen_threshold = 0.0);

struct TrimRule {
  enum class Kind { top_percent, threshold };
  Kind kind = Kind::top_percent;
  double value = 100.0;  // percent in (0, 100], or epsilon >= 0

  static TrimRule top_percent(double k) {
    return {Kind::top_percent, k};
  }
  static TrimRule threshold(double epsilon) {
    return {Kind::threshold, epsilon};
  }
};

// Top-k-percent mode returns exactly ceil(k/100 * size) configurations of
// largest |v|, ties broken by the configuration order; threshold mode returns
// every configuration with |v| strictly above epsilon. The result is sorted.
std::vector<Configuration> trim_by_amplitude(const SubspaceBasis& basis,
                                             const std::vector<double>& v,
                                             const TrimRule& rule);

}  // namespace sqd
