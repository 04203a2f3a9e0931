#pragma once

#include <cstdint>
#include <vector>

#include "sqd/basis.hpp"
#include "sqd/fcidump.hpp"
#include "sqd/matvec.hpp"

namespace sqd {

struct SolverOptions {
  double tolerance = 1e-8;     // residual norm ||Hv - Ev||, Hartree
  int max_iterations = 400;    // subspace expansions before giving up
  int max_subspace = 24;       // Krylov dimension at restart
  int restart_vectors = 4;     // Ritz vectors kept through a restart
  std::size_t dense_cutoff = 512;  // at or below: direct dense solve
  double level_shift_guard = 1e-8;  // preconditioner |H_xx - E| floor
  int threads = 0;
  bool deterministic = true;
};

struct GroundStateResult {
  double energy = 0.0;
  std::vector<double> vector;
  double residual_norm = 0.0;
  int iterations = 0;
  std::uint64_t matvec_count = 0;
  bool converged = false;
  double build_seconds = 0.0;   // filled by callers that time basis builds
  double solve_seconds = 0.0;
  double matvec_seconds = 0.0;
};

// Lowest eigenpair of the projected Hamiltonian. Davidson iteration with
// diagonal preconditioning; the initial guess is the unit vector on the
// configuration of lowest diagonal element. Small bases are solved densely.
// Never throws on stagnation: a non-converged run returns the best iterate
// with `converged == false`.
GroundStateResult solve_ground_state(const SubspaceBasis& basis,
                                     const FragmentHamiltonian& h,
                                     const SolverOptions& opts = {});

}  // namespace sqd
