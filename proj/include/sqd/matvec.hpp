#pragma once

#include <vector>

#include "sqd/basis.hpp"
#include "sqd/fcidump.hpp"

namespace sqd {

struct ApplyOptions {
  // 0 picks the OpenMP default; any positive value is used as-is.
  int threads = 0;
  // Row-gather kernel: each output element is accumulated in a fixed order,
  // so the result is bitwise reproducible for any thread count. When false, a
  // symmetric scatter kernel computes each off-diagonal element once and
  // reduces per-thread accumulators in thread order; that is deterministic
  // for a fixed thread count but not across thread counts.
  bool deterministic = true;
};

// w = P H P v over the basis, matrix-free: diagonal term, same-spin singles
// and doubles from the link tables, opposite-spin doubles composed from the
// per-spin single links. H must be the Hamiltonian the basis was built with.
std::vector<double> apply_hamiltonian(const SubspaceBasis& basis,
                                      const FragmentHamiltonian& h,
                                      const std::vector<double>& v,
                                      const ApplyOptions& opts = {});

void apply_hamiltonian(const SubspaceBasis& basis,
                       const FragmentHamiltonian& h, const double* v,
                       double* w, const ApplyOptions& opts = {});

}  // namespace sqd
