#include "sqd/select.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqd/slater.hpp"

namespace sqd {

std::vector<Configuration> extend_basis(const SubspaceBasis& basis,
                                        const FragmentHamiltonian& h,
                                        int max_distance,
                                        double screen_threshold) {
  if (max_distance != 2)
    throw std::invalid_argument(
        "extend_basis: only Hamming-distance-2 extension is supported");
  std::vector<Configuration> out = basis.configs();
  for (const Configuration& c : basis.configs()) {
    for (const auto& [partner, exc] : enumerate_singles(c, basis.spec())) {
      if (screen_threshold > 0.0 && !basis.find(partner).has_value() &&
          std::abs(coupling_element(c, partner, h)) <= screen_threshold)
        continue;
      out.push_back(partner);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Configuration> trim_by_amplitude(const SubspaceBasis& basis,
                                             const std::vector<double>& v,
                                             const TrimRule& rule) {
  if (v.size() != basis.size())
    throw std::invalid_argument("trim_by_amplitude: vector/basis mismatch");
  std::vector<Configuration> out;

  if (rule.kind == TrimRule::Kind::threshold) {
    if (rule.value < 0)
      throw std::invalid_argument("trim_by_amplitude: negative threshold");
    for (std::size_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) > rule.value) out.push_back(basis.configs()[i]);
    return out;  // basis order is already sorted
  }

  const double k = rule.value;
  if (!(k > 0.0) || k > 100.0)
    throw std::invalid_argument("trim_by_amplitude: percent outside (0, 100]");
  const std::size_t keep = static_cast<std::size_t>(
      std::ceil(k / 100.0 * static_cast<double>(basis.size())));

  std::vector<std::size_t> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // |amplitude| descending; equal magnitudes fall back to the configuration
  // order so trims are reproducible.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = std::abs(v[a]), vb = std::abs(v[b]);
    if (va != vb) return va > vb;
    return a < b;
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  out.reserve(keep);
  for (std::size_t i : order) out.push_back(basis.configs()[i]);
  return out;
}

}  // namespace sqd
