#include "sqd/basis.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <istream>
#include <ostream>

#include "sqd/errors.hpp"
#include "sqd/slater.hpp"

namespace sqd {

namespace {

std::vector<SpinBits> unique_strings(const std::vector<Configuration>& configs,
                                     Spin spin) {
  std::vector<SpinBits> out;
  out.reserve(configs.size());
  for (const Configuration& c : configs)
    out.push_back(spin == Spin::alpha ? c.alpha : c.beta);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t index_of(const std::vector<SpinBits>& strings, SpinBits s) {
  return static_cast<std::uint32_t>(
      std::lower_bound(strings.begin(), strings.end(), s) - strings.begin());
}

// Singles over the unique-string set: for each string, every single
// excitation whose target is also a unique string of the basis.
LinkTable<SingleLink> build_singles(const std::vector<SpinBits>& strings,
                                    int orbitals,
                                    const FragmentHamiltonian& h) {
  LinkTable<SingleLink> table;
  table.offsets.assign(strings.size() + 1, 0);
  const SpinBits mask =
      orbitals >= 64 ? ~SpinBits{0} : ((SpinBits{1} << orbitals) - 1);
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const SpinBits bits = strings[i];
    SpinBits occ = bits;
    while (occ) {
      const int p = std::countr_zero(occ);
      occ &= occ - 1;
      SpinBits empty = mask & ~bits;
      while (empty) {
        const int q = std::countr_zero(empty);
        empty &= empty - 1;
        const SpinBits t = apply_single(bits, p, q);
        const auto it = std::lower_bound(strings.begin(), strings.end(), t);
        if (it == strings.end() || *it != t) continue;
        SingleLink link;
        link.target = static_cast<std::uint32_t>(it - strings.begin());
        link.from = static_cast<std::uint8_t>(p);
        link.to = static_cast<std::uint8_t>(q);
        link.phase = static_cast<std::int8_t>(single_phase(bits, p, q));
        // String-internal part; the other-spin Coulomb sum is applied later.
        double f = h.h1(q, p);
        SpinBits rest = bits & ~(SpinBits{1} << p);
        while (rest) {
          const int r = std::countr_zero(rest);
          rest &= rest - 1;
          f += h.eri(q, p, r, r) - h.eri(q, r, r, p);
        }
        link.f_part = f;
        table.entries.push_back(link);
      }
    }
    std::sort(table.entries.begin() +
                  static_cast<std::ptrdiff_t>(table.offsets[i]),
              table.entries.end(),
              [](const SingleLink& a, const SingleLink& b) {
                return a.target < b.target;
              });
    table.offsets[i + 1] = table.entries.size();
  }
  return table;
}

LinkTable<DoubleLink> build_doubles(const std::vector<SpinBits>& strings,
                                    int orbitals,
                                    const FragmentHamiltonian& h) {
  LinkTable<DoubleLink> table;
  table.offsets.assign(strings.size() + 1, 0);
  const SpinBits mask =
      orbitals >= 64 ? ~SpinBits{0} : ((SpinBits{1} << orbitals) - 1);
  int occ[64], emp[64];
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const SpinBits bits = strings[i];
    int nocc = 0, nemp = 0;
    for (SpinBits b = bits; b; b &= b - 1) occ[nocc++] = std::countr_zero(b);
    for (SpinBits b = mask & ~bits; b; b &= b - 1)
      emp[nemp++] = std::countr_zero(b);
    for (int a = 0; a < nocc; ++a)
      for (int b = a + 1; b < nocc; ++b)
        for (int c = 0; c < nemp; ++c)
          for (int d = c + 1; d < nemp; ++d) {
            const int f1 = occ[a], f2 = occ[b], t1 = emp[c], t2 = emp[d];
            const SpinBits t = (bits & ~(SpinBits{1} << f1) &
                                ~(SpinBits{1} << f2)) |
                               (SpinBits{1} << t1) | (SpinBits{1} << t2);
            const auto it = std::lower_bound(strings.begin(), strings.end(), t);
            if (it == strings.end() || *it != t) continue;
            DoubleLink link;
            link.target = static_cast<std::uint32_t>(it - strings.begin());
            link.from_lo = static_cast<std::uint8_t>(f1);
            link.from_hi = static_cast<std::uint8_t>(f2);
            link.to_lo = static_cast<std::uint8_t>(t1);
            link.to_hi = static_cast<std::uint8_t>(t2);
            link.phase =
                static_cast<std::int8_t>(double_phase(bits, f1, f2, t1, t2));
            link.value = link.phase * (h.eri(t1, f1, t2, f2) -
                                       h.eri(t1, f2, t2, f1));
            table.entries.push_back(link);
          }
    std::sort(table.entries.begin() +
                  static_cast<std::ptrdiff_t>(table.offsets[i]),
              table.entries.end(),
              [](const DoubleLink& a, const DoubleLink& b) {
                return a.target < b.target;
              });
    table.offsets[i + 1] = table.entries.size();
  }
  return table;
}

}  // namespace

SubspaceBasis SubspaceBasis::build(std::vector<Configuration> configs,
                                   const FragmentHamiltonian& h) {
  if (configs.empty()) throw EmptyBasis("cannot build an empty subspace basis");
  const SystemSpec& spec = h.spec();
  for (const Configuration& c : configs)
    if (!valid_for(c, spec))
      throw SpecMismatch("configuration " +
                         format_configuration(c, spec.orbitals) +
                         " does not match the Hamiltonian particle numbers");

  std::sort(configs.begin(), configs.end());
  configs.erase(std::unique(configs.begin(), configs.end()), configs.end());

  SubspaceBasis basis;
  basis.spec_ = spec;
  basis.configs_ = std::move(configs);
  basis.alpha_strings_ = unique_strings(basis.configs_, Spin::alpha);
  basis.beta_strings_ = unique_strings(basis.configs_, Spin::beta);

  const std::size_t n = basis.configs_.size();
  basis.row_alpha_.resize(n);
  basis.row_beta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    basis.row_alpha_[i] = index_of(basis.alpha_strings_, basis.configs_[i].alpha);
    basis.row_beta_[i] = index_of(basis.beta_strings_, basis.configs_[i].beta);
  }

  // configs_ is sorted by (alpha, beta), and string indices are
  // order-isomorphic to the strings, so rows are grouped by alpha index.
  basis.alpha_offsets_.assign(basis.alpha_strings_.size() + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    ++basis.alpha_offsets_[basis.row_alpha_[i] + 1];
  for (std::size_t i = 0; i < basis.alpha_strings_.size(); ++i)
    basis.alpha_offsets_[i + 1] += basis.alpha_offsets_[i];

  basis.alpha_singles_ =
      build_singles(basis.alpha_strings_, spec.orbitals, h);
  basis.beta_singles_ = build_singles(basis.beta_strings_, spec.orbitals, h);
  basis.alpha_doubles_ =
      build_doubles(basis.alpha_strings_, spec.orbitals, h);
  basis.beta_doubles_ = build_doubles(basis.beta_strings_, spec.orbitals, h);

  basis.diagonal_.resize(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
    basis.diagonal_[static_cast<std::size_t>(i)] =
        diagonal_element(basis.configs_[static_cast<std::size_t>(i)], h);

  return basis;
}

std::optional<std::size_t> SubspaceBasis::find(const Configuration& c) const {
  const auto it = std::lower_bound(configs_.begin(), configs_.end(), c);
  if (it == configs_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - configs_.begin());
}

std::optional<std::size_t> SubspaceBasis::find_row(std::uint32_t ia,
                                                   std::uint32_t ib) const {
  const auto begin = row_beta_.begin() +
                     static_cast<std::ptrdiff_t>(alpha_offsets_[ia]);
  const auto end = row_beta_.begin() +
                   static_cast<std::ptrdiff_t>(alpha_offsets_[ia + 1]);
  const auto it = std::lower_bound(begin, end, ib);
  if (it == end || *it != ib) return std::nullopt;
  return static_cast<std::size_t>(it - row_beta_.begin());
}

void write_snapshot(std::ostream& out, const SubspaceBasis& basis,
                    std::span<const double> coefficients) {
  char buf[64];
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << format_configuration(basis.configs()[i], basis.spec().orbitals);
    std::snprintf(buf, sizeof buf, " %.16e\n", coefficients[i]);
    out << buf;
  }
}

std::pair<std::vector<Configuration>, std::vector<double>> read_snapshot(
    std::istream& in, const SystemSpec& spec) {
  std::vector<Configuration> configs;
  std::vector<double> coeffs;
  std::string a, b;
  double v;
  while (in >> a >> b >> v) {
    configs.push_back({parse_spin_string(a, spec.orbitals),
                       parse_spin_string(b, spec.orbitals)});
    coeffs.push_back(v);
  }
  return {std::move(configs), std::move(coeffs)};
}

}  // namespace sqd
