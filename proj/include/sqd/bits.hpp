#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace sqd {

// Occupation pattern of one spin species: bit p = occupation of spatial
// orbital p. A single machine word caps the orbital count at 64, which covers
// every system this engine routes (M <= 45) with branch-free popcount/XOR.
using SpinBits = std::uint64_t;

using uint128 = unsigned __int128;

enum class Spin : std::uint8_t { alpha = 0, beta = 1 };

struct SystemSpec {
  int orbitals = 0;  // spatial orbital count M, 1 <= M <= 64
  int n_alpha = 0;
  int n_beta = 0;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

// Throws SpecError if the counts are out of range.
void validate(const SystemSpec& spec);

// A Slater determinant: one occupation string per spin species. The defaulted
// comparison is the total order used everywhere for sorting, deduplication
// and tie-breaking: lexicographic on (alpha, beta) as unsigned integers.
struct Configuration {
  SpinBits alpha = 0;
  SpinBits beta = 0;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// One single excitation within one spin string.
struct Excitation {
  Spin spin = Spin::alpha;
  std::uint8_t from_orb = 0;  // occupied in the source string
  std::uint8_t to_orb = 0;    // empty in the source string
  int phase = 1;              // (-1)^(occupied orbitals strictly between)
};

int popcount(SpinBits bits);
int hamming(const Configuration& x, const Configuration& y);

// True when the configuration has the spec's electron counts and no bits at
// or above orbital M.
bool valid_for(const Configuration& c, const SystemSpec& spec);

// Sign picked up by moving one electron between from_orb and to_orb of
// `bits`: (-1)^(number of set bits strictly between the two positions).
int single_phase(SpinBits bits, int from_orb, int to_orb);

// Applies a single excitation to one spin string. Precondition: from_orb
// occupied, to_orb empty.
SpinBits apply_single(SpinBits bits, int from_orb, int to_orb);

// --- combinatorics ---------------------------------------------------------

// C(n, k) in exact 128-bit arithmetic; n <= 64 keeps every intermediate well
// inside the range.
uint128 binomial(int n, int k);

// C(M, n_alpha) * C(M, n_beta), exact.
uint128 fci_dimension(const SystemSpec& spec);

std::string to_decimal_string(uint128 v);
// "2.06e+19"-style rendering with `significant` digits.
std::string to_scientific_string(uint128 v, int significant = 3);
double to_double(uint128 v);

// --- enumeration -----------------------------------------------------------

// All single excitations of c (both spins), each with its fermionic phase.
// Count: n_alpha*(M - n_alpha) + n_beta*(M - n_beta).
std::vector<std::pair<Configuration, Excitation>> enumerate_singles(
    const Configuration& c, const SystemSpec& spec);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Every valid configuration in ascending order. Throws CapExceeded when the
// FCI dimension is larger than `cap`.
std::vector<Configuration> enumerate_all_configurations(
    const SystemSpec& spec, std::uint64_t cap = kDefaultEnumerationCap);

// --- text form ---------------------------------------------------------------

// M characters of '0'/'1', leftmost character = orbital 0.
std::string format_spin_string(SpinBits bits, int orbitals);
SpinBits parse_spin_string(const std::string& text, int orbitals);

// "<alpha_bits> <beta_bits>"
std::string format_configuration(const Configuration& c, int orbitals);
Configuration parse_configuration(const std::string& text, int orbitals);

}  // namespace sqd
