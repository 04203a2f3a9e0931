#include "sqd/matvec.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqd {

namespace {

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

// Other-spin Coulomb sum of a single excitation: sum_{r occ} (to,from|rr).
inline double coulomb_sum(const FragmentHamiltonian& h, SpinBits other_occ,
                          int to, int from) {
  double g = 0.0;
  while (other_occ) {
    const int r = std::countr_zero(other_occ);
    other_occ &= other_occ - 1;
    g += h.eri(to, from, r, r);
  }
  return g;
}

// Position of ib within [lo, hi) of the beta-index array, advancing lo past
// the probe so that ascending probes reuse the previous position.
inline const std::uint32_t* bounded_find(const std::uint32_t* lo,
                                         const std::uint32_t* hi,
                                         std::uint32_t ib) {
  const std::uint32_t* it = std::lower_bound(lo, hi, ib);
  return (it != hi && *it == ib) ? it : nullptr;
}

}  // namespace

void apply_hamiltonian(const SubspaceBasis& basis,
                       const FragmentHamiltonian& h, const double* v,
                       double* w, const ApplyOptions& opts) {
  const std::size_t n = basis.size();
  const int nthreads = resolve_threads(opts.threads);
  const std::uint32_t* row_beta = basis.row_beta_indices().data();
  const std::vector<double>& diag = basis.diagonal();

  if (opts.deterministic) {
    // Row-gather: thread t owns a contiguous slice of w and reads all of v.
    // Per-row accumulation order is fixed, so the output does not depend on
    // the thread count.
#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(n); ++row) {
      const std::size_t x = static_cast<std::size_t>(row);
      const std::uint32_t ia = basis.row_alpha(x);
      const std::uint32_t ib = basis.row_beta(x);
      const SpinBits abits = basis.alpha_string(ia);
      const SpinBits bbits = basis.beta_string(ib);

      double acc = diag[x] * v[x];

      // Same-spin alpha: neighbor (target, ib).
      for (const SingleLink& link : basis.alpha_singles().row(ia)) {
        const std::uint32_t* hit = bounded_find(
            row_beta + basis.alpha_block_begin(link.target),
            row_beta + basis.alpha_block_end(link.target), ib);
        if (!hit) continue;
        const std::size_t y = static_cast<std::size_t>(hit - row_beta);
        acc += link.phase *
               (link.f_part + coulomb_sum(h, bbits, link.to, link.from)) *
               v[y];
      }
      for (const DoubleLink& link : basis.alpha_doubles().row(ia)) {
        const std::uint32_t* hit = bounded_find(
            row_beta + basis.alpha_block_begin(link.target),
            row_beta + basis.alpha_block_end(link.target), ib);
        if (hit) acc += link.value * v[static_cast<std::size_t>(hit - row_beta)];
      }

      // Same-spin beta: neighbor (ia, target); the block is this row's own,
      // and link targets ascend, so the search window shrinks as we go.
      {
        const std::uint32_t* lo = row_beta + basis.alpha_block_begin(ia);
        const std::uint32_t* const hi = row_beta + basis.alpha_block_end(ia);
        for (const SingleLink& link : basis.beta_singles().row(ib)) {
          const std::uint32_t* hit = bounded_find(lo, hi, link.target);
          if (!hit) continue;
          lo = hit + 1;
          const std::size_t y = static_cast<std::size_t>(hit - row_beta);
          acc += link.phase *
                 (link.f_part + coulomb_sum(h, abits, link.to, link.from)) *
                 v[y];
        }
        lo = row_beta + basis.alpha_block_begin(ia);
        for (const DoubleLink& link : basis.beta_doubles().row(ib)) {
          const std::uint32_t* hit = bounded_find(lo, hi, link.target);
          if (!hit) continue;
          lo = hit + 1;
          acc += link.value * v[static_cast<std::size_t>(hit - row_beta)];
        }
      }

      // Opposite-spin doubles: alpha single x beta single.
      for (const SingleLink& sa : basis.alpha_singles().row(ia)) {
        const std::uint32_t* lo =
            row_beta + basis.alpha_block_begin(sa.target);
        const std::uint32_t* const hi =
            row_beta + basis.alpha_block_end(sa.target);
        const double ga = sa.phase;
        for (const SingleLink& sb : basis.beta_singles().row(ib)) {
          const std::uint32_t* hit = bounded_find(lo, hi, sb.target);
          if (!hit) continue;
          lo = hit + 1;
          acc += ga * sb.phase * h.eri(sa.to, sa.from, sb.to, sb.from) *
                 v[static_cast<std::size_t>(hit - row_beta)];
        }
      }

      w[x] = acc;
    }
    return;
  }

  // Symmetric scatter: every off-diagonal element is evaluated once, on the
  // side with the smaller string index, and pushed to both endpoints through
  // per-thread accumulators that are reduced in thread order.
  std::vector<std::vector<double>> partial(
      static_cast<std::size_t>(nthreads));

#pragma omp parallel num_threads(nthreads)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    std::vector<double>& wp = partial[static_cast<std::size_t>(tid)];
    wp.assign(n, 0.0);

#pragma omp for schedule(static)
    for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(n); ++row) {
      const std::size_t x = static_cast<std::size_t>(row);
      const std::uint32_t ia = basis.row_alpha(x);
      const std::uint32_t ib = basis.row_beta(x);
      const SpinBits abits = basis.alpha_string(ia);
      const SpinBits bbits = basis.beta_string(ib);

      wp[x] += diag[x] * v[x];

      for (const SingleLink& link : basis.alpha_singles().row(ia)) {
        if (link.target <= ia) continue;
        const std::uint32_t* hit = bounded_find(
            row_beta + basis.alpha_block_begin(link.target),
            row_beta + basis.alpha_block_end(link.target), ib);
        if (!hit) continue;
        const std::size_t y = static_cast<std::size_t>(hit - row_beta);
        const double e =
            link.phase *
            (link.f_part + coulomb_sum(h, bbits, link.to, link.from));
        wp[x] += e * v[y];
        wp[y] += e * v[x];
      }
      for (const DoubleLink& link : basis.alpha_doubles().row(ia)) {
        if (link.target <= ia) continue;
        const std::uint32_t* hit = bounded_find(
            row_beta + basis.alpha_block_begin(link.target),
            row_beta + basis.alpha_block_end(link.target), ib);
        if (!hit) continue;
        const std::size_t y = static_cast<std::size_t>(hit - row_beta);
        wp[x] += link.value * v[y];
        wp[y] += link.value * v[x];
      }

      {
        const std::uint32_t* lo = row_beta + basis.alpha_block_begin(ia);
        const std::uint32_t* const hi = row_beta + basis.alpha_block_end(ia);
        for (const SingleLink& link : basis.beta_singles().row(ib)) {
          if (link.target <= ib) continue;
          const std::uint32_t* hit = bounded_find(lo, hi, link.target);
          if (!hit) continue;
          lo = hit + 1;
          const std::size_t y = static_cast<std::size_t>(hit - row_beta);
          const double e =
              link.phase *
              (link.f_part + coulomb_sum(h, abits, link.to, link.from));
          wp[x] += e * v[y];
          wp[y] += e * v[x];
        }
        lo = row_beta + basis.alpha_block_begin(ia);
        for (const DoubleLink& link : basis.beta_doubles().row(ib)) {
          if (link.target <= ib) continue;
          const std::uint32_t* hit = bounded_find(lo, hi, link.target);
          if (!hit) continue;
          lo = hit + 1;
          const std::size_t y = static_cast<std::size_t>(hit - row_beta);
          wp[x] += link.value * v[y];
          wp[y] += link.value * v[x];
        }
      }

      for (const SingleLink& sa : basis.alpha_singles().row(ia)) {
        if (sa.target <= ia) continue;
        const std::uint32_t* lo =
            row_beta + basis.alpha_block_begin(sa.target);
        const std::uint32_t* const hi =
            row_beta + basis.alpha_block_end(sa.target);
        for (const SingleLink& sb : basis.beta_singles().row(ib)) {
          const std::uint32_t* hit = bounded_find(lo, hi, sb.target);
          if (!hit) continue;
          lo = hit + 1;
          const std::size_t y = static_cast<std::size_t>(hit - row_beta);
          const double e =
              sa.phase * sb.phase * h.eri(sa.to, sa.from, sb.to, sb.from);
          wp[x] += e * v[y];
          wp[y] += e * v[x];
        }
      }
    }
  }

  std::memset(w, 0, n * sizeof(double));
  for (const std::vector<double>& wp : partial)
    for (std::size_t i = 0; i < n; ++i) w[i] += wp[i];
}

std::vector<double> apply_hamiltonian(const SubspaceBasis& basis,
                                      const FragmentHamiltonian& h,
                                      const std::vector<double>& v,
                                      const ApplyOptions& opts) {
  if (v.size() != basis.size())
    throw std::invalid_argument("vector length does not match basis size");
  std::vector<double> w(v.size());
  apply_hamiltonian(basis, h, v.data(), w.data(), opts);
  return w;
}

}  // namespace sqd
