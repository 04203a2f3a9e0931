#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqd/bits.hpp"

namespace sqd {

// Active-space Hamiltonian of one fragment: core energy, one-electron
// integrals h[p][q] and two-electron integrals (pq|rs) in chemists' notation
// with 8-fold permutational symmetry (real orbitals). Storage is dense over
// canonical index quadruples, trading a few MB for O(1) lookup in the matvec
// hot loop. Immutable in spirit: filled once by a parser or generator, then
// shared read-only across threads.
class FragmentHamiltonian {
 public:
  explicit FragmentHamiltonian(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  int orbitals() const { return spec_.orbitals; }

  double e_core() const { return e_core_; }
  void set_e_core(double v) { e_core_ = v; }

  double h1(int p, int q) const {
    return h_[static_cast<std::size_t>(p) * static_cast<std::size_t>(m_) +
              static_cast<std::size_t>(q)];
  }
  void set_h1(int p, int q, double v);

  // (pq|rs), chemists' notation.
  double eri(int p, int q, int r, int s) const {
    return eri_[eri_index(p, q, r, s)];
  }
  void set_eri(int p, int q, int r, int s, double v);

  std::size_t nonzero_h1_count() const;
  std::size_t nonzero_eri_count() const;

  static std::size_t pair_index(int p, int q) {
    const auto a = static_cast<std::size_t>(p > q ? p : q);
    const auto b = static_cast<std::size_t>(p > q ? q : p);
    return a * (a + 1) / 2 + b;
  }
  std::size_t eri_index(int p, int q, int r, int s) const {
    const std::size_t pq = pair_index(p, q);
    const std::size_t rs = pair_index(r, s);
    const std::size_t hi = pq > rs ? pq : rs;
    const std::size_t lo = pq > rs ? rs : pq;
    return hi * (hi + 1) / 2 + lo;
  }

  const std::vector<double>& eri_storage() const { return eri_; }

 private:
  SystemSpec spec_;
  int m_;
  double e_core_ = 0.0;
  std::vector<double> h_;    // full M x M, kept symmetric by set_h1
  std::vector<double> eri_;  // canonical 8-fold storage
};

// Reads a Molpro-style FCIDUMP: namelist header with NORB, NELEC, MS2
// (ORBSYM/ISYM tolerated and ignored), then lines "value i j k l" with
// 1-based indices. "value i j k l" stores (ij|kl), "value i j 0 0" stores
// h[i][j], "value 0 0 0 0" stores the core energy. Duplicate entries
// overwrite with a warning; missing entries default to zero. The electron
// counts come out as n_alpha = (NELEC+MS2)/2, n_beta = (NELEC-MS2)/2.
//
// Throws ParseError (with the offending line number) or SpecError.
FragmentHamiltonian parse_fcidump(std::istream& in,
                                  std::vector<std::string>* warnings = nullptr);
FragmentHamiltonian parse_fcidump_file(
    const std::string& path, std::vector<std::string>* warnings = nullptr);

// Writes the canonical nonzero entries with 17 significant digits.
void write_fcidump(std::ostream& out, const FragmentHamiltonian& h);

}  // namespace sqd
