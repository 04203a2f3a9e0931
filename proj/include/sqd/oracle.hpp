#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sqd/bits.hpp"
#include "sqd/fcidump.hpp"

namespace sqd {

struct DenseSpectrumResult {
  double ground_energy = 0.0;
  // Amplitudes over the full enumeration order of the configuration space.
  std::vector<double> ground_vector;
  std::size_t dimension = 0;
};

inline constexpr std::size_t kDefaultDenseCap = 10'000;
inline constexpr std::size_t kDefaultIterativeCap = 1'000'000;

// Brute-force full CI: the ground truth for everything else. Up to dense_cap
// the Hamiltonian is assembled entrywise from the Slater-Condon rules and
// diagonalized directly; up to iterative_cap a matrix-free Lanczos with full
// reorthogonalization finds the lowest eigenpair. Throws CapExceeded beyond
// that.
DenseSpectrumResult fci_solve(const FragmentHamiltonian& h,
                              std::size_t dense_cap = kDefaultDenseCap,
                              std::size_t iterative_cap = kDefaultIterativeCap);

// <y|H|c> for every reachable y, computed by explicit second-quantized
// operator application on the combined occupation vector with full sign
// tracking. Deliberately independent of the Slater-Condon code path: its one
// job is to catch sign-rule bugs there.
std::map<Configuration, double> operator_apply_reference(
    const Configuration& c, const FragmentHamiltonian& h);

}  // namespace sqd
