#include "sqd/slater.hpp"

#include <bit>

#include "sqd/errors.hpp"

namespace sqd {

namespace {

int occupied_list(SpinBits bits, int* out) {
  int n = 0;
  while (bits) {
    out[n++] = std::countr_zero(bits);
    bits &= bits - 1;
  }
  return n;
}

int parity_below(SpinBits bits, int orb) {
  const SpinBits below = (SpinBits{1} << orb) - 1;
  return (std::popcount(bits & below) & 1) ? -1 : 1;
}

}  // namespace

double diagonal_element(const Configuration& c, const FragmentHamiltonian& h) {
  int occ_a[64], occ_b[64];
  const int na = occupied_list(c.alpha, occ_a);
  const int nb = occupied_list(c.beta, occ_b);

  double e = h.e_core();
  for (int i = 0; i < na; ++i) e += h.h1(occ_a[i], occ_a[i]);
  for (int i = 0; i < nb; ++i) e += h.h1(occ_b[i], occ_b[i]);

  // Same-spin pairs: Coulomb minus exchange.
  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j) {
      const int p = occ_a[i], q = occ_a[j];
      e += h.eri(p, p, q, q) - h.eri(p, q, q, p);
    }
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      const int p = occ_b[i], q = occ_b[j];
      e += h.eri(p, p, q, q) - h.eri(p, q, q, p);
    }
  // Opposite-spin pairs: Coulomb only.
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      e += h.eri(occ_a[i], occ_a[i], occ_b[j], occ_b[j]);
  return e;
}

double single_excitation_element(SpinBits occ_same, SpinBits occ_other,
                                 int from, int to,
                                 const FragmentHamiltonian& h) {
  double e = h.h1(to, from);
  SpinBits rest = occ_same & ~(SpinBits{1} << from);
  while (rest) {
    const int r = std::countr_zero(rest);
    rest &= rest - 1;
    e += h.eri(to, from, r, r) - h.eri(to, r, r, from);
  }
  SpinBits other = occ_other;
  while (other) {
    const int r = std::countr_zero(other);
    other &= other - 1;
    e += h.eri(to, from, r, r);
  }
  return single_phase(occ_same, from, to) * e;
}

int double_phase(SpinBits bits, int f1, int f2, int t1, int t2) {
  // Sign of a+_{t1} a+_{t2} a_{f2} a_{f1} applied to the string.
  int sign = 1;
  SpinBits s = bits;
  sign *= parity_below(s, f1);
  s &= ~(SpinBits{1} << f1);
  sign *= parity_below(s, f2);
  s &= ~(SpinBits{1} << f2);
  sign *= parity_below(s, t2);
  s |= SpinBits{1} << t2;
  sign *= parity_below(s, t1);
  s |= SpinBits{1} << t1;
  return sign;
}

namespace {

// Same-spin double excitation between strings differing at exactly two
// positions per side.
double same_spin_double(SpinBits from_bits, SpinBits to_bits,
                        const FragmentHamiltonian& h) {
  SpinBits lost = from_bits & ~to_bits;
  SpinBits gained = to_bits & ~from_bits;
  const int f1 = std::countr_zero(lost);
  lost &= lost - 1;
  const int f2 = std::countr_zero(lost);
  const int t1 = std::countr_zero(gained);
  gained &= gained - 1;
  const int t2 = std::countr_zero(gained);
  const int phase = double_phase(from_bits, f1, f2, t1, t2);
  return phase * (h.eri(t1, f1, t2, f2) - h.eri(t1, f2, t2, f1));
}

}  // namespace

double coupling_element(const Configuration& x, const Configuration& y,
                        const FragmentHamiltonian& h) {
  if (std::popcount(x.alpha) != std::popcount(y.alpha) ||
      std::popcount(x.beta) != std::popcount(y.beta))
    throw SpecMismatch("coupling_element: configurations have different "
                       "per-spin electron counts");

  const int da = std::popcount(x.alpha ^ y.alpha);
  const int db = std::popcount(x.beta ^ y.beta);
  const int d = da + db;
  if (d == 0) return diagonal_element(x, h);
  if (d > 4) return 0.0;

  if (d == 2) {
    // Single excitation in one spin sector.
    const bool in_alpha = da == 2;
    const SpinBits xs = in_alpha ? x.alpha : x.beta;
    const SpinBits ys = in_alpha ? y.alpha : y.beta;
    const SpinBits other = in_alpha ? y.beta : y.alpha;
    const int from = std::countr_zero(ys & ~xs);
    const int to = std::countr_zero(xs & ~ys);
    return single_excitation_element(ys, other, from, to, h);
  }

  if (da == 4) return same_spin_double(y.alpha, x.alpha, h);
  if (db == 4) return same_spin_double(y.beta, x.beta, h);

  // da == db == 2: one single per spin.
  const int fa = std::countr_zero(y.alpha & ~x.alpha);
  const int ta = std::countr_zero(x.alpha & ~y.alpha);
  const int fb = std::countr_zero(y.beta & ~x.beta);
  const int tb = std::countr_zero(x.beta & ~y.beta);
  const int phase =
      single_phase(y.alpha, fa, ta) * single_phase(y.beta, fb, tb);
  return phase * h.eri(ta, fa, tb, fb);
}

}  // namespace sqd
