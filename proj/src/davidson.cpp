#include "sqd/davidson.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/Dense>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sqd/slater.hpp"

namespace sqd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

GroundStateResult solve_dense(const SubspaceBasis& basis,
                              const FragmentHamiltonian& h,
                              const SolverOptions& opts) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const int nthreads = resolve_threads(opts.threads);
  Eigen::MatrixXd m(n, n);
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double e = coupling_element(
          basis.configs()[static_cast<std::size_t>(i)],
          basis.configs()[static_cast<std::size_t>(j)], h);
      m(i, j) = e;
      m(j, i) = e;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  GroundStateResult out;
  out.energy = es.eigenvalues()(0);
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  out.vector.assign(v.data(), v.data() + n);
  out.residual_norm = (m * v - out.energy * v).norm();
  out.iterations = 1;
  out.converged = true;
  return out;
}

}  // namespace

GroundStateResult solve_ground_state(const SubspaceBasis& basis,
                                     const FragmentHamiltonian& h,
                                     const SolverOptions& opts) {
  const auto t_start = Clock::now();
  const std::size_t n = basis.size();

  if (n <= opts.dense_cutoff) {
    GroundStateResult out = solve_dense(basis, h, opts);
    out.solve_seconds = seconds_since(t_start);
    return out;
  }

  const ApplyOptions apply_opts{opts.threads, opts.deterministic};
  const std::vector<double>& diag = basis.diagonal();

  GroundStateResult out;
  double matvec_seconds = 0.0;
  auto matvec = [&](const std::vector<double>& x) {
    const auto t0 = Clock::now();
    std::vector<double> y(n);
    apply_hamiltonian(basis, h, x.data(), y.data(), apply_opts);
    ++out.matvec_count;
    matvec_seconds += seconds_since(t0);
    return y;
  };

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  // Initial guess: unit vector on the lowest-diagonal configuration.
  std::vector<std::vector<double>> vs, hvs;
  {
    const std::size_t seed_row = static_cast<std::size_t>(
        std::min_element(diag.begin(), diag.end()) - diag.begin());
    std::vector<double> v0(n, 0.0);
    v0[seed_row] = 1.0;
    vs.push_back(std::move(v0));
    hvs.push_back(matvec(vs.back()));
  }

  Eigen::MatrixXd rayleigh =
      Eigen::MatrixXd::Zero(opts.max_subspace, opts.max_subspace);
  rayleigh(0, 0) = dot(vs[0], hvs[0]);

  std::vector<double> ritz(n), residual(n);
  double theta = rayleigh(0, 0);
  std::size_t fill_cursor = 0;  // fallback expansion when directions collapse

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    const int k = static_cast<int>(vs.size());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        rayleigh.topLeftCorner(k, k));
    theta = es.eigenvalues()(0);
    const Eigen::VectorXd s = es.eigenvectors().col(0);

    std::fill(ritz.begin(), ritz.end(), 0.0);
    std::fill(residual.begin(), residual.end(), 0.0);
    for (int j = 0; j < k; ++j) {
      const double c = s(j);
      const std::vector<double>& vj = vs[static_cast<std::size_t>(j)];
      const std::vector<double>& hvj = hvs[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < n; ++i) {
        ritz[i] += c * vj[i];
        residual[i] += c * hvj[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) residual[i] -= theta * ritz[i];

    const double rnorm = std::sqrt(dot(residual, residual));
    out.energy = theta;
    out.vector = ritz;
    out.residual_norm = rnorm;
    out.iterations = iter;
    if (rnorm <= opts.tolerance) {
      out.converged = true;
      break;
    }

    // Thick restart once the subspace is full.
    if (k == opts.max_subspace) {
      const int keep = std::min(opts.restart_vectors, k);
      std::vector<std::vector<double>> nvs, nhvs;
      for (int r = 0; r < keep; ++r) {
        std::vector<double> vr(n, 0.0), hvr(n, 0.0);
        for (int j = 0; j < k; ++j) {
          const double c = es.eigenvectors()(j, r);
          const std::vector<double>& vj = vs[static_cast<std::size_t>(j)];
          const std::vector<double>& hvj = hvs[static_cast<std::size_t>(j)];
          for (std::size_t i = 0; i < n; ++i) {
            vr[i] += c * vj[i];
            hvr[i] += c * hvj[i];
          }
        }
        nvs.push_back(std::move(vr));
        nhvs.push_back(std::move(hvr));
      }
      vs = std::move(nvs);
      hvs = std::move(nhvs);
      rayleigh.setZero();
      for (std::size_t a = 0; a < vs.size(); ++a)
        rayleigh(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) =
            es.eigenvalues()(static_cast<Eigen::Index>(a));
    }

    // Diagonal preconditioner with a level-shift guard against blowup on
    // near-degenerate diagonals.
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
      double d = diag[i] - theta;
      if (std::abs(d) < opts.level_shift_guard)
        d = d < 0 ? -opts.level_shift_guard : opts.level_shift_guard;
      t[i] = residual[i] / d;
    }

    // Orthonormalize against the current subspace (twice, for stability).
    for (int pass = 0; pass < 2; ++pass)
      for (const std::vector<double>& vj : vs) {
        const double c = dot(vj, t);
        for (std::size_t i = 0; i < n; ++i) t[i] -= c * vj[i];
      }
    double tnorm = std::sqrt(dot(t, t));
    if (tnorm < 1e-10) {
      // Preconditioned residual collapsed onto the subspace; expand with the
      // next lowest-diagonal unit direction instead.
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      std::nth_element(order.begin(),
                       order.begin() + static_cast<std::ptrdiff_t>(fill_cursor),
                       order.end(), [&](std::size_t a, std::size_t b) {
                         return diag[a] < diag[b] ||
                                (diag[a] == diag[b] && a < b);
                       });
      std::fill(t.begin(), t.end(), 0.0);
      t[order[fill_cursor]] = 1.0;
      fill_cursor = (fill_cursor + 1) % n;
      for (int pass = 0; pass < 2; ++pass)
        for (const std::vector<double>& vj : vs) {
          const double c = dot(vj, t);
          for (std::size_t i = 0; i < n; ++i) t[i] -= c * vj[i];
        }
      tnorm = std::sqrt(dot(t, t));
      if (tnorm < 1e-10) break;  // subspace is (numerically) invariant
    }
    for (std::size_t i = 0; i < n; ++i) t[i] /= tnorm;

    vs.push_back(std::move(t));
    hvs.push_back(matvec(vs.back()));
    const int kk = static_cast<int>(vs.size()) - 1;
    for (int j = 0; j <= kk; ++j) {
      const double e = dot(vs[static_cast<std::size_t>(j)], hvs.back());
      rayleigh(j, kk) = e;
      rayleigh(kk, j) = e;
    }
  }

  // Normalize the reported vector.
  double norm = std::sqrt(dot(out.vector, out.vector));
  if (norm > 0)
    for (double& x : out.vector) x /= norm;
  out.matvec_seconds = matvec_seconds;
  out.solve_seconds = seconds_since(t_start);
  return out;
}

}  // namespace sqd
