#include "sqd/bits.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "sqd/errors.hpp"

namespace sqd {

namespace {

SpinBits lowest_bits(int n) {
  return n >= 64 ? ~SpinBits{0} : ((SpinBits{1} << n) - 1);
}

// Gosper's hack: next bit pattern with the same popcount.
SpinBits next_combination(SpinBits v) {
  SpinBits t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

void validate(const SystemSpec& spec) {
  if (spec.orbitals < 1 || spec.orbitals > 64)
    throw SpecError("orbital count must be in [1, 64], got " +
                    std::to_string(spec.orbitals));
  if (spec.n_alpha < 0 || spec.n_beta < 0 || spec.n_alpha > spec.orbitals ||
      spec.n_beta > spec.orbitals)
    throw SpecError("electron counts must be in [0, M]");
}

int popcount(SpinBits bits) { return std::popcount(bits); }

int hamming(const Configuration& x, const Configuration& y) {
  return std::popcount(x.alpha ^ y.alpha) + std::popcount(x.beta ^ y.beta);
}

bool valid_for(const Configuration& c, const SystemSpec& spec) {
  const SpinBits mask = lowest_bits(spec.orbitals);
  return (c.alpha & ~mask) == 0 && (c.beta & ~mask) == 0 &&
         std::popcount(c.alpha) == spec.n_alpha &&
         std::popcount(c.beta) == spec.n_beta;
}

int single_phase(SpinBits bits, int from_orb, int to_orb) {
  const int lo = std::min(from_orb, to_orb);
  const int hi = std::max(from_orb, to_orb);
  const SpinBits between = (lowest_bits(hi) & ~lowest_bits(lo + 1));
  return (std::popcount(bits & between) & 1) ? -1 : 1;
}

SpinBits apply_single(SpinBits bits, int from_orb, int to_orb) {
  return (bits & ~(SpinBits{1} << from_orb)) | (SpinBits{1} << to_orb);
}

uint128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  uint128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<uint128>(n - k + i) / static_cast<uint128>(i);
  }
  return r;
}

uint128 fci_dimension(const SystemSpec& spec) {
  validate(spec);
  return binomial(spec.orbitals, spec.n_alpha) *
         binomial(spec.orbitals, spec.n_beta);
}

std::string to_decimal_string(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_scientific_string(uint128 v, int significant) {
  std::string digits = to_decimal_string(v);
  int exponent = static_cast<int>(digits.size()) - 1;
  // Round the decimal digit string to `significant` digits.
  std::string mant = digits.substr(0, static_cast<std::size_t>(significant));
  if (static_cast<int>(digits.size()) > significant &&
      digits[static_cast<std::size_t>(significant)] >= '5') {
    int i = static_cast<int>(mant.size()) - 1;
    while (i >= 0 && mant[static_cast<std::size_t>(i)] == '9')
      mant[static_cast<std::size_t>(i--)] = '0';
    if (i < 0) {
      mant.insert(mant.begin(), '1');
      mant.pop_back();
      ++exponent;
    } else {
      ++mant[static_cast<std::size_t>(i)];
    }
  }
  while (static_cast<int>(mant.size()) < significant) mant.push_back('0');
  std::string out;
  out += mant[0];
  if (significant > 1) {
    out += '.';
    out += mant.substr(1);
  }
  out += "e+" + std::to_string(exponent);
  return out;
}

double to_double(uint128 v) {
  return static_cast<double>(v);
}

std::vector<std::pair<Configuration, Excitation>> enumerate_singles(
    const Configuration& c, const SystemSpec& spec) {
  std::vector<std::pair<Configuration, Excitation>> out;
  const SpinBits mask = lowest_bits(spec.orbitals);
  for (Spin spin : {Spin::alpha, Spin::beta}) {
    const SpinBits bits = spin == Spin::alpha ? c.alpha : c.beta;
    SpinBits occ = bits;
    while (occ) {
      const int p = std::countr_zero(occ);
      occ &= occ - 1;
      SpinBits empty = mask & ~bits;
      while (empty) {
        const int q = std::countr_zero(empty);
        empty &= empty - 1;
        Excitation e;
        e.spin = spin;
        e.from_orb = static_cast<std::uint8_t>(p);
        e.to_orb = static_cast<std::uint8_t>(q);
        e.phase = single_phase(bits, p, q);
        Configuration next = c;
        (spin == Spin::alpha ? next.alpha : next.beta) =
            apply_single(bits, p, q);
        out.emplace_back(next, e);
      }
    }
  }
  return out;
}

std::vector<Configuration> enumerate_all_configurations(const SystemSpec& spec,
                                                        std::uint64_t cap) {
  const uint128 dim = fci_dimension(spec);
  if (dim > cap)
    throw CapExceeded("FCI dimension " + to_decimal_string(dim) +
                      " exceeds enumeration cap " + std::to_string(cap));
  std::vector<SpinBits> alpha_strings, beta_strings;
  auto strings_of = [&](int n) {
    std::vector<SpinBits> out;
    if (n == 0) {
      out.push_back(0);
      return out;
    }
    const SpinBits last = lowest_bits(n) << (spec.orbitals - n);
    SpinBits s = lowest_bits(n);
    while (true) {
      out.push_back(s);
      if (s == last) break;
      s = next_combination(s);
    }
    return out;
  };
  alpha_strings = strings_of(spec.n_alpha);
  beta_strings = strings_of(spec.n_beta);
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (SpinBits a : alpha_strings)
    for (SpinBits b : beta_strings) out.push_back({a, b});
  return out;
}

std::string format_spin_string(SpinBits bits, int orbitals) {
  std::string out(static_cast<std::size_t>(orbitals), '0');
  for (int p = 0; p < orbitals; ++p)
    if (bits >> p & 1) out[static_cast<std::size_t>(p)] = '1';
  return out;
}

SpinBits parse_spin_string(const std::string& text, int orbitals) {
  if (static_cast<int>(text.size()) != orbitals)
    throw LengthMismatch("occupation string \"" + text + "\" has length " +
                         std::to_string(text.size()) + ", expected " +
                         std::to_string(orbitals));
  SpinBits bits = 0;
  for (int p = 0; p < orbitals; ++p) {
    const char c = text[static_cast<std::size_t>(p)];
    if (c == '1')
      bits |= SpinBits{1} << p;
    else if (c != '0')
      throw ParseError("occupation string \"" + text +
                       "\" contains a character other than 0/1");
  }
  return bits;
}

std::string format_configuration(const Configuration& c, int orbitals) {
  return format_spin_string(c.alpha, orbitals) + " " +
         format_spin_string(c.beta, orbitals);
}

Configuration parse_configuration(const std::string& text, int orbitals) {
  std::istringstream in(text);
  std::string a, b;
  if (!(in >> a >> b))
    throw ParseError("configuration \"" + text +
                     "\" is not \"<alpha_bits> <beta_bits>\"");
  return {parse_spin_string(a, orbitals), parse_spin_string(b, orbitals)};
}

}  // namespace sqd
