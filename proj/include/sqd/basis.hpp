#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sqd/bits.hpp"
#include "sqd/fcidump.hpp"

namespace sqd {

// One stored single excitation between two spin strings that both occur in
// the basis. `f_part` is the string-internal part of the matrix element
// (one-electron integral plus same-spin Coulomb/exchange sums); the
// other-spin Coulomb sum is added at apply time.
struct SingleLink {
  std::uint32_t target;  // index into the unique-string table
  std::uint8_t from;     // occupied in the source string
  std::uint8_t to;       // empty in the source string
  std::int8_t phase;
  double f_part;
};

// One stored same-spin double excitation with its full matrix element. These
// cannot be composed from basis-closed single links (the composition path may
// pass through strings absent from the basis), so they are tabulated at build
// time alongside the singles.
struct DoubleLink {
  std::uint32_t target;
  std::uint8_t from_lo, from_hi;  // annihilated pair, ascending
  std::uint8_t to_lo, to_hi;      // created pair, ascending
  std::int8_t phase;
  double value;
};

// Flat CSR-style table: entries of string i live in
// [offsets[i], offsets[i+1]).
template <class Entry>
struct LinkTable {
  std::vector<std::size_t> offsets;
  std::vector<Entry> entries;

  std::span<const Entry> row(std::size_t i) const {
    return {entries.data() + offsets[i], entries.data() + offsets[i + 1]};
  }
};

// Sorted, deduplicated configuration set with the excitation-mapping helper
// tables that make the projected Hamiltonian applicable without generating
// configurations or materializing matrix elements. Immutable after build;
// shareable across threads.
class SubspaceBasis {
 public:
  // Sorts, deduplicates, indexes, and tabulates links. Throws EmptyBasis on
  // an empty input and SpecMismatch when any configuration does not carry the
  // Hamiltonian's particle numbers. Deterministic for a given input set.
  static SubspaceBasis build(std::vector<Configuration> configs,
                             const FragmentHamiltonian& h);

  std::size_t size() const { return configs_.size(); }
  const std::vector<Configuration>& configs() const { return configs_; }
  const SystemSpec& spec() const { return spec_; }

  // Exact inverse of configs(): position of c, if present.
  std::optional<std::size_t> find(const Configuration& c) const;

  // Row -> unique-string indices.
  std::uint32_t row_alpha(std::size_t row) const { return row_alpha_[row]; }
  std::uint32_t row_beta(std::size_t row) const { return row_beta_[row]; }

  std::size_t alpha_string_count() const { return alpha_strings_.size(); }
  std::size_t beta_string_count() const { return beta_strings_.size(); }
  SpinBits alpha_string(std::size_t i) const { return alpha_strings_[i]; }
  SpinBits beta_string(std::size_t i) const { return beta_strings_[i]; }

  // Rows are sorted by (alpha index, beta index); the rows sharing alpha
  // index ia form the contiguous block [alpha_block_begin(ia),
  // alpha_block_end(ia)) and are ascending in beta index.
  std::size_t alpha_block_begin(std::size_t ia) const {
    return alpha_offsets_[ia];
  }
  std::size_t alpha_block_end(std::size_t ia) const {
    return alpha_offsets_[ia + 1];
  }

  // Row of (ia, ib), if that pairing is present. Binary search within the
  // alpha block.
  std::optional<std::size_t> find_row(std::uint32_t ia,
                                      std::uint32_t ib) const;

  const LinkTable<SingleLink>& alpha_singles() const { return alpha_singles_; }
  const LinkTable<SingleLink>& beta_singles() const { return beta_singles_; }
  const LinkTable<DoubleLink>& alpha_doubles() const { return alpha_doubles_; }
  const LinkTable<DoubleLink>& beta_doubles() const { return beta_doubles_; }

  // Precomputed <x|H|x>, also the Davidson preconditioner.
  const std::vector<double>& diagonal() const { return diagonal_; }

  const std::vector<std::uint32_t>& row_beta_indices() const {
    return row_beta_;
  }

 private:
  SystemSpec spec_;
  std::vector<Configuration> configs_;
  std::vector<SpinBits> alpha_strings_, beta_strings_;
  std::vector<std::uint32_t> row_alpha_, row_beta_;
  std::vector<std::size_t> alpha_offsets_;
  LinkTable<SingleLink> alpha_singles_, beta_singles_;
  LinkTable<DoubleLink> alpha_doubles_, beta_doubles_;
  std::vector<double> diagonal_;
};

// Snapshot of (configuration, coefficient) pairs, one per line, 17
// significant digits; the carryover checkpoint format.
void write_snapshot(std::ostream& out, const SubspaceBasis& basis,
                    std::span<const double> coefficients);
std::pair<std::vector<Configuration>, std::vector<double>> read_snapshot(
    std::istream& in, const SystemSpec& spec);

}  // namespace sqd
