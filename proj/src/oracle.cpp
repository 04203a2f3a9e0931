#include "sqd/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Dense>

#include "sqd/basis.hpp"
#include "sqd/errors.hpp"
#include "sqd/matvec.hpp"
#include "sqd/slater.hpp"

namespace sqd {

namespace {

// Occupation vector over 2M spin orbitals: alpha at positions [0, M),
// beta at [M, 2M). 128 bits cover the 64-orbital cap.
using OccWord = unsigned __int128;

int popcount128(OccWord v) {
  return std::popcount(static_cast<std::uint64_t>(v)) +
         std::popcount(static_cast<std::uint64_t>(v >> 64));
}

struct OccState {
  OccWord bits;
  int sign;

  bool occupied(int pos) const { return (bits >> pos) & 1; }
  // Annihilate/create with the Jordan-Wigner sign: parity of occupied
  // positions below `pos`.
  bool annihilate(int pos) {
    if (!occupied(pos)) return false;
    if (popcount128(bits & ((OccWord{1} << pos) - 1)) & 1) sign = -sign;
    bits &= ~(OccWord{1} << pos);
    return true;
  }
  bool create(int pos) {
    if (occupied(pos)) return false;
    if (popcount128(bits & ((OccWord{1} << pos) - 1)) & 1) sign = -sign;
    bits |= OccWord{1} << pos;
    return true;
  }
};

Configuration to_configuration(OccWord bits, int m) {
  const OccWord mask = (OccWord{1} << m) - 1;
  return {static_cast<SpinBits>(bits & mask),
          static_cast<SpinBits>((bits >> m) & mask)};
}

DenseSpectrumResult solve_dense_full(const std::vector<Configuration>& configs,
                                     const FragmentHamiltonian& h) {
  const auto n = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd m(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double e =
          coupling_element(configs[static_cast<std::size_t>(i)],
                           configs[static_cast<std::size_t>(j)], h);
      m(i, j) = e;
      m(j, i) = e;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  DenseSpectrumResult out;
  out.dimension = configs.size();
  out.ground_energy = es.eigenvalues()(0);
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  out.ground_vector.assign(v.data(), v.data() + n);
  return out;
}

// Lanczos with full reorthogonalization; ground state only.
DenseSpectrumResult solve_lanczos(const std::vector<Configuration>& configs,
                                  const FragmentHamiltonian& h) {
  constexpr int kMaxIterations = 300;
  constexpr double kResidualTol = 1e-10;

  const SubspaceBasis basis = SubspaceBasis::build(configs, h);
  const std::size_t n = basis.size();

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  std::vector<std::vector<double>> vs;
  {
    const auto& diag = basis.diagonal();
    std::vector<double> v0(n, 0.0);
    v0[static_cast<std::size_t>(
        std::min_element(diag.begin(), diag.end()) - diag.begin())] = 1.0;
    vs.push_back(std::move(v0));
  }

  std::vector<double> alphas, betas;
  DenseSpectrumResult out;
  out.dimension = n;

  for (int k = 0; k < kMaxIterations; ++k) {
    std::vector<double> w(n);
    apply_hamiltonian(basis, h, vs.back().data(), w.data(), {});
    const double a = dot(vs.back(), w);
    alphas.push_back(a);

    for (std::size_t i = 0; i < n; ++i) w[i] -= a * vs.back()[i];
    if (k > 0)
      for (std::size_t i = 0; i < n; ++i)
        w[i] -= betas.back() * vs[vs.size() - 2][i];
    for (int pass = 0; pass < 2; ++pass)
      for (const std::vector<double>& v : vs) {
        const double c = dot(v, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * v[i];
      }

    const double b = std::sqrt(dot(w, w));

    // Ritz pair of the tridiagonal section.
    const auto kk = static_cast<Eigen::Index>(alphas.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i) {
      t(i, i) = alphas[static_cast<std::size_t>(i)];
      if (i + 1 < kk) {
        t(i, i + 1) = betas[static_cast<std::size_t>(i)];
        t(i + 1, i) = betas[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double theta = es.eigenvalues()(0);
    const double residual = std::abs(b * es.eigenvectors()(kk - 1, 0));

    if (residual <= kResidualTol * std::max(1.0, std::abs(theta)) ||
        b < 1e-13 || k == kMaxIterations - 1) {
      if (residual > kResidualTol * std::max(1.0, std::abs(theta)) &&
          b >= 1e-13)
        throw Error("fci_solve: Lanczos did not converge within 300 iterations");
      out.ground_energy = theta;
      out.ground_vector.assign(n, 0.0);
      for (Eigen::Index j = 0; j < kk; ++j) {
        const double c = es.eigenvectors()(j, 0);
        const std::vector<double>& vj = vs[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < n; ++i) out.ground_vector[i] += c * vj[i];
      }
      double norm = std::sqrt(dot(out.ground_vector, out.ground_vector));
      for (double& x : out.ground_vector) x /= norm;
      return out;
    }

    betas.push_back(b);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
    vs.push_back(std::move(next));
  }
  throw Error("fci_solve: Lanczos did not converge");  // unreachable
}

}  // namespace

DenseSpectrumResult fci_solve(const FragmentHamiltonian& h,
                              std::size_t dense_cap,
                              std::size_t iterative_cap) {
  const uint128 dim = fci_dimension(h.spec());
  if (dim > iterative_cap)
    throw CapExceeded("fci_solve: dimension " + to_decimal_string(dim) +
                      " exceeds the iterative cap " +
                      std::to_string(iterative_cap));
  const std::vector<Configuration> configs = enumerate_all_configurations(
      h.spec(), static_cast<std::uint64_t>(iterative_cap));
  if (configs.size() <= dense_cap) return solve_dense_full(configs, h);
  return solve_lanczos(configs, h);
}

std::map<Configuration, double> operator_apply_reference(
    const Configuration& c, const FragmentHamiltonian& h) {
  const int m = h.orbitals();
  const OccWord start =
      static_cast<OccWord>(c.alpha) | (static_cast<OccWord>(c.beta) << m);
  std::map<Configuration, double> out;
  auto add = [&](OccWord bits, double amplitude) {
    if (amplitude == 0.0) return;
    out[to_configuration(bits, m)] += amplitude;
  };

  add(start, h.e_core());

  // One-body: sum_{pq,sigma} h_pq a+_p a_q.
  for (int spin = 0; spin < 2; ++spin) {
    const int off = spin * m;
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        const double t = h.h1(p, q);
        if (t == 0.0) continue;
        OccState s{start, 1};
        if (!s.annihilate(off + q)) continue;
        if (!s.create(off + p)) continue;
        add(s.bits, t * s.sign);
      }
  }

  // Two-body: 1/2 sum_{pqrs,sigma tau} (pq|rs) a+_p,sigma a+_r,tau
  // a_s,tau a_q,sigma — rightmost operator acts first.
  for (int sp = 0; sp < 2; ++sp)
    for (int tp = 0; tp < 2; ++tp) {
      const int so = sp * m, to = tp * m;
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) {
              const double g = h.eri(p, q, r, s);
              if (g == 0.0) continue;
              OccState st{start, 1};
              if (!st.annihilate(so + q)) continue;
              if (!st.annihilate(to + s)) continue;
              if (!st.create(to + r)) continue;
              if (!st.create(so + p)) continue;
              add(st.bits, 0.5 * g * st.sign);
            }
    }

  // Drop exact zeros produced by cancellation so the support is meaningful.
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace sqd
