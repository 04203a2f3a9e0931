#pragma once

#include "sqd/bits.hpp"
#include "sqd/fcidump.hpp"

namespace sqd {

// <c|H|c> by the Slater-Condon diagonal rule:
//   e_core + sum_{p in occ} h[p][p]
//          + 1/2 sum_{p,q in occ} [(pp|qq) - delta_{spin} (pq|qp)]
// with the sums over occupied spin orbitals.
double diagonal_element(const Configuration& c, const FragmentHamiltonian& h);

// <x|H|y> for any pair with matching particle numbers. Zero beyond a double
// excitation. Throws SpecMismatch when the per-spin electron counts differ.
double coupling_element(const Configuration& x, const Configuration& y,
                        const FragmentHamiltonian& h);

// Same-spin single excitation element between strings that differ exactly at
// {from, to}, given the other-spin occupation. `occ_same` is the source
// string. Exposed for the matvec kernel.
double single_excitation_element(SpinBits occ_same, SpinBits occ_other,
                                 int from, int to,
                                 const FragmentHamiltonian& h);

// Phase of the same-spin double excitation taking `bits` to
// bits \ {f1,f2} u {t1,t2}, with the operator ordering fixed to match
// coupling_element. Preconditions: f1 < f2 occupied, t1 < t2 empty.
int double_phase(SpinBits bits, int f1, int f2, int t1, int t2);

}  // namespace sqd
