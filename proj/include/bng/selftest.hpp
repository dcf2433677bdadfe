#pragma once
// The acceptance suite: eleven property criteria, each printed as a single
// PASS/FAIL line.  Deterministic under a fixed seed (the engine is seeded per
// criterion, so criteria are independently reproducible).  All tolerances are
// pinned here as literals; they are contracts, not tuning knobs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "bng/certificate.hpp"
#include "bng/certify.hpp"
#include "bng/decomp.hpp"
#include "bng/diagonal.hpp"
#include "bng/eig.hpp"
#include "bng/error.hpp"
#include "bng/length.hpp"
#include "bng/matrix.hpp"
#include "bng/model.hpp"
#include "bng/phase.hpp"
#include "bng/su2.hpp"
#include "bng/typeiii.hpp"

namespace bng::selftest {

// Deterministic random source: raw mt19937_64 bits only (the standard pins the
// engine's output exactly; distribution adapters are not portable).
class rng {
 public:
  explicit rng(std::uint64_t seed) : gen_(seed) {}
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool flip() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

inline cmatrix random_unitary(rng& r, std::size_t n) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cplx(r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rr = qr.matrixQR();
  for (std::size_t c = 0; c < n; ++c) {
    const cplx d = rr(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    if (std::abs(d) > 0.0) q.col(static_cast<Eigen::Index>(c)) *= std::conj(d) / std::abs(d);
  }
  return from_eigen(q);
}

// Converse-bound registry (criterion 7): every certificate produced anywhere
// in the suite is checked against ell(target) <= k * ell(base) + 1e-6.
struct cert_registry {
  std::size_t checked = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();

  void add(const certificate& cert) {
    const double lt = ell(cert.target);
    const double lb = ell(cert.base);
    const double excess = lt - static_cast<double>(cert.factors.size()) * lb;
    worst_excess = std::max(worst_excess, excess);
    ++checked;
  }
};

namespace detail_st {

// Brute-force length oracle: minimize the largest chord over a fixed grid of
// rotations.  Shares no code with the closed form it audits.
struct rotation_grid {
  std::vector<double> c, s;
  explicit rotation_grid(std::size_t n) : c(n), s(n) {
    for (std::size_t a = 0; a < n; ++a) {
      const double alpha = two_pi * static_cast<double>(a) / static_cast<double>(n);
      c[a] = std::cos(alpha);
      s[a] = std::sin(alpha);
    }
  }
};

inline double oracle_ell(const std::vector<double>& phases, const rotation_grid& grid) {
  const std::size_t d = phases.size();
  std::vector<double> cp(d), sp(d);
  for (std::size_t p = 0; p < d; ++p) {
    cp[p] = std::cos(phases[p]);
    sp[p] = std::sin(phases[p]);
  }
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < grid.c.size(); ++a) {
    const double ca = grid.c[a], sa = grid.s[a];
    double min_cos = 1.0;
    for (std::size_t p = 0; p < d; ++p)
      min_cos = std::min(min_cos, cp[p] * ca - sp[p] * sa);
    best_sq = std::min(best_sq, 2.0 - 2.0 * min_cos);
  }
  return std::sqrt(std::max(0.0, best_sq));
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// Arc-spread cluster values: roughly equally spaced across [-h, h] with
// bounded jitter, guaranteeing pairwise separation >= 0.4 * spacing.
inline std::vector<double> spread_clusters(rng& r, std::size_t k, double h) {
  std::vector<double> out(k);
  if (k == 1) {
    out[0] = r.uniform(-h, h);
    return out;
  }
  const double spacing = 2.0 * h / static_cast<double>(k - 1);
  for (std::size_t i = 0; i < k; ++i)
    out[i] = -h + spacing * static_cast<double>(i) + 0.3 * spacing * r.uniform(-1.0, 1.0);
  return out;
}

}  // namespace detail_st

// ---------------------------------------------------------------------------
// criterion 1: closed-form length vs grid-search oracle
inline bool crit_length_oracle(std::uint64_t seed, std::string& detail) {
  rng r(seed ^ 0x1001);
  const detail_st::rotation_grid grid(100000);
  double worst = 0.0;
  for (int run = 0; run < 500; ++run) {
    const std::size_t d = 2 + r.index(63);  // 2..64
    std::vector<double> phases(d);
    for (double& x : phases) x = r.uniform(-pi, pi);
    const double closed = ell(phases);
    const double brute = detail_st::oracle_ell(phases, grid);
    worst = std::max(worst, std::abs(closed - brute));
    if (worst > 1e-4) {
      detail = "grid oracle disagrees by " + detail_st::fmt(worst) + " > 1e-4";
      return false;
    }
  }
  const double e0 = ell(std::vector<double>{0.0});
  const double e1 = ell(std::vector<double>{0.0, pi});
  if (e0 != 0.0 || std::abs(e1 - std::sqrt(2.0)) > 1e-12) {
    detail = "fixed points off: ell{0} = " + detail_st::fmt(e0) + ", ell{0,pi} - sqrt2 = " +
             detail_st::fmt(e1 - std::sqrt(2.0));
    return false;
  }
  detail = "closed form vs 100000-rotation grid on 500 multisets, max |diff| " +
           detail_st::fmt(worst) + "; fixed points exact";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 2: greedy ordering keeps every prefix within max|alpha|, exactly
inline bool crit_greedy(std::uint64_t seed, std::string& detail) {
  rng r(seed ^ 0x1002);
  for (int run = 0; run < 1000; ++run) {
    const std::size_t n = 2 + r.index(99);  // 2..100
    std::vector<std::int64_t> units(n);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      units[i] = r.integer(-(std::int64_t{1} << 20), std::int64_t{1} << 20);
      sum += units[i];
    }
    units[n - 1] = -sum;
    std::vector<double> alphas(n);
    for (std::size_t i = 0; i < n; ++i)
      alphas[i] = static_cast<double>(units[i]) * 0x1p-20;  // exact

    std::vector<std::size_t> sigma;
    try {
      sigma = greedy_order(alphas);
    } catch (const error& e) {
      detail = std::string("greedy stalled or rejected exact zero-sum input: ") + e.what();
      return false;
    }
    std::int64_t max_abs = 0;
    for (std::int64_t u : units) max_abs = std::max(max_abs, std::abs(u));
    std::int64_t run_sum = 0;
    for (std::size_t step = 0; step < n; ++step) {
      run_sum += units[sigma[step]];
      if (std::abs(run_sum) > max_abs) {
        detail = "prefix " + std::to_string(step) + " exceeds max|alpha| (exact integers)";
        return false;
      }
    }
  }
  detail = "1000 zero-sum sequences (length <= 100): every prefix <= max|alpha| exactly, no stalls";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 3: decomposition partial products match the closed formulas
inline bool crit_decompositions(std::uint64_t seed, std::string& detail) {
  rng r(seed ^ 0x1003);
  double worst = 0.0;
  for (int run = 0; run < 500; ++run) {
    const std::size_t d = 1 + r.index(128);  // 1..128

    // Product decomposition on an exactly zero-sum grid input.
    {
      std::vector<std::int64_t> units(d, 0);
      std::int64_t sum = 0;
      for (std::size_t i = 0; i + 1 < d; ++i) {
        units[i] = r.integer(-3 * (std::int64_t{1} << 20), 3 * (std::int64_t{1} << 20));
        sum += units[i];
      }
      units[d - 1] = -sum;
      diagonal_unitary u;
      u.phases.resize(d);
      for (std::size_t i = 0; i < d; ++i)
        u.phases[i] = static_cast<double>(units[i]) * 0x1p-20;
      const factor_sequence fs = product_decomposition(u);

      std::vector<cplx> partial(d, cplx(1.0, 0.0));
      std::vector<double> prefix(d, 0.0);  // prefix[j] = s_j
      double acc = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        acc += u.phases[i];  // exact on the grid
        prefix[i] = acc;
      }
      for (std::size_t j = 0; j < fs.factors.size(); ++j) {
        for (std::size_t p = 0; p < d; ++p)
          partial[p] *= std::polar(1.0, fs.factors[j].phases[p]);
        // After factors 0..j: positions 0..j carry u.phases, position j+1
        // carries -s_j, the rest are 1.
        for (std::size_t p = 0; p < d; ++p) {
          double expected = 0.0;
          if (p <= j)
            expected = u.phases[p];
          else if (p == j + 1)
            expected = -prefix[j];
          worst = std::max(worst, std::abs(partial[p] - std::polar(1.0, expected)));
        }
      }
    }

    // Torus decomposition on an arbitrary input.
    {
      diagonal_unitary v;
      v.phases.resize(d);
      for (double& x : v.phases) x = r.uniform(-pi, pi);
      const factor_sequence fs = torus_decomposition(v);
      std::vector<cplx> partial(d, cplx(1.0, 0.0));
      for (std::size_t j = 0; j < fs.factors.size(); ++j) {
        for (std::size_t p = 0; p < d; ++p)
          partial[p] *= std::polar(1.0, fs.factors[j].phases[p]);
        // After factors 0..j: positions p <= j carry e^{i v_p}; later
        // positions repeat position j's value.
        for (std::size_t p = 0; p < d; ++p) {
          const cplx expected = (p <= j) ? std::polar(1.0, v.phases[p]) : partial[j];
          worst = std::max(worst, std::abs(partial[p] - expected));
        }
      }
    }
    if (worst > 1e-12) {
      detail = "partial-product deviation " + detail_st::fmt(worst) + " > 1e-12";
      return false;
    }
  }
  detail = "product/torus partial products match the closed formulas on 500 inputs (worst " +
           detail_st::fmt(worst) + ")";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 4: su2 chains — exact count, per-factor eigenphase, product
inline bool crit_su2(std::uint64_t seed, std::string& detail) {
  rng r(seed ^ 0x1004);
  double worst_phase = 0.0, worst_prod = 0.0;
  for (int run = 0; run < 200; ++run) {
    double theta = 0.0;
    do theta = r.uniform(-pi / 2.0, pi / 2.0); while (std::abs(theta) < 1e-3);
    for (std::size_t m : {2, 4, 6, 8}) {
      const double phi = r.uniform(-1.0, 1.0) * static_cast<double>(m) * std::abs(theta);
      const conjugate_chain chain = su2_chain(theta, phi, m);
      if (chain.conjugators.size() != m) {
        detail = "chain length " + std::to_string(chain.conjugators.size()) + " != m = " +
                 std::to_string(m);
        return false;
      }
      const cmatrix vd = su2_diag(theta);
      cmatrix product = cmatrix::identity(2);
      for (const cmatrix& g : chain.conjugators) {
        const cmatrix w = g.mul(vd).mul(g.adjoint());
        worst_phase = std::max(worst_phase, std::abs(su2_eigenphase(w) - std::abs(theta)));
        product = product.mul(w);
      }
      worst_prod = std::max(worst_prod, product.frobenius_distance(su2_diag(phi)));
      if (worst_phase > 1e-8 || worst_prod > 1e-8) {
        detail = "factor eigenphase off by " + detail_st::fmt(worst_phase) +
                 " or product off by " + detail_st::fmt(worst_prod) + " (tol 1e-8)";
        return false;
      }
    }
  }
  detail = "200 (theta, phi) x m in {2,4,6,8}: counts exact, factor eigenphases within " +
           detail_st::fmt(worst_phase) + ", products within " + detail_st::fmt(worst_prod);
  return true;
}

// ---------------------------------------------------------------------------
// criterion 5: block-parallel generation — counts independent of block count
inline bool crit_parallel_blocks(std::uint64_t seed, std::string& detail, cert_registry& reg) {
  rng r(seed ^ 0x1005);
  const clustered_model v{{pi / 2.0, -pi / 2.0}, {}};
  std::size_t runs = 0;
  for (std::size_t d : {8, 16, 32}) {
    for (std::size_t m : {2, 4}) {
      std::size_t counts[2] = {0, 0};
      std::size_t which = 0;
      for (std::size_t blocks : {std::size_t{1}, d / 4}) {
        factor_sequence fs;
        fs.kind = factor_kind::product;
        fs.dim = d;
        for (std::size_t k = 0; k < blocks; ++k) {
          diagonal_unitary f;
          f.phases.assign(d, 0.0);
          const double phi = r.uniform(-1.0, 1.0) * 1.8 * static_cast<double>(m);
          f.phases[2 * k] = phi;
          f.phases[2 * k + 1] = -phi;
          fs.factors.push_back(std::move(f));
        }
        auto [arranged, plan] = arrange_gap_blocks(v, 1.9, blocks, d);
        const certificate cert = infsim_generate(fs, arranged, plan, m);
        reg.add(cert);
        ++runs;
        if (cert.factors.size() > 4 * m) {
          detail = "certificate has " + std::to_string(cert.factors.size()) + " > 4m = " +
                   std::to_string(4 * m) + " factors";
          return false;
        }
        const report rep = verify(cert, 1e-6);
        if (!rep.pass || rep.product_residual > 1e-6) {
          detail = "verification failed at 1e-6 (product residual " +
                   detail_st::fmt(rep.product_residual) + ")";
          return false;
        }
        counts[which++] = cert.factors.size();
      }
      if (counts[0] != counts[1]) {
        detail = "factor count depends on block count: " + std::to_string(counts[0]) +
                 " (1 block) vs " + std::to_string(counts[1]) + " (D/4 blocks)";
        return false;
      }
    }
  }
  detail = std::to_string(runs) +
           " runs: <= 4m factors, counts identical for 1 vs D/4 blocks, residuals <= 1e-6";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 6: end-to-end certify constants (32m balanced, 128m split)
inline bool crit_certify_constants(std::uint64_t seed, std::string& detail, cert_registry& reg) {
  rng r(seed ^ 0x1006);
  std::size_t balanced_runs = 0, split_runs = 0;
  std::size_t worst_count = 0, worst_bound = 1;

  for (int run = 0; run < 100; ++run) {
    const std::size_t ku = 2 + r.index(3), kv = 2 + r.index(3);
    clustered_model u{detail_st::spread_clusters(r, ku, r.uniform(0.35, 1.1)), {}};
    clustered_model v{detail_st::spread_clusters(r, kv, r.uniform(0.35, 1.1)), {}};
    // Keep the round count inside the m <= 8 envelope the criterion fixes.
    while (ell(u.clusters) > 6.0 * ell(v.clusters))
      v.clusters = detail_st::spread_clusters(r, kv, r.uniform(0.35, 1.1));
    certificate cert;
    try {
      cert = certify_calkin(u, v, 36);
    } catch (const error& e) {
      detail = "calkin run " + std::to_string(run) + " failed: " + e.what();
      return false;
    }
    reg.add(cert);
    if (cert.m > 8) {
      detail = "calkin run needed m = " + std::to_string(cert.m) + " > 8";
      return false;
    }
    if (cert.pipeline != "balanced" || cert.factors.size() > 32 * cert.m) {
      detail = "calkin run " + std::to_string(run) + " left the balanced 32m envelope (" +
               cert.pipeline + ", " + std::to_string(cert.factors.size()) + " factors, m = " +
               std::to_string(cert.m) + ")";
      return false;
    }
    ++balanced_runs;
    if (cert.factors.size() * worst_bound > worst_count * 32 * cert.m) {
      worst_count = cert.factors.size();
      worst_bound = 32 * cert.m;
    }
  }

  // One-sided spectra: the balanced prefix check fails for every candidate
  // rotation, forcing the split pipeline and its 128m envelope.
  const clustered_model v_split{{pi / 2.0, -pi / 2.0}, {}};
  for (int run = 0; run < 8; ++run) {
    const double h = r.uniform(1.53, 1.57);
    const std::size_t d = 36;
    diagonal_unitary u;
    u.phases.assign(d, h);
    u.phases[d - 1] = -h;
    const std::size_t m = 2;
    certificate cert;
    try {
      cert = certify_diag(u, v_split, m);
    } catch (const error& e) {
      detail = std::string("split run failed: ") + e.what();
      return false;
    }
    reg.add(cert);
    if (cert.pipeline != "split") {
      detail = "one-sided spectrum unexpectedly took the '" + cert.pipeline + "' pipeline";
      return false;
    }
    if (cert.factors.size() > 128 * m) {
      detail = "split run produced " + std::to_string(cert.factors.size()) + " > 128m = " +
               std::to_string(128 * m) + " factors";
      return false;
    }
    ++split_runs;
  }

  detail = std::to_string(balanced_runs) + " calkin runs within 32m (worst " +
           std::to_string(worst_count) + "/" + std::to_string(worst_bound) + "); " +
           std::to_string(split_runs) + " one-sided runs took the split path within 128m";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 7: converse bound over every certificate the suite produced
inline bool crit_converse(const cert_registry& reg, std::string& detail) {
  if (reg.checked == 0) {
    detail = "no certificates were registered";
    return false;
  }
  if (!(reg.worst_excess <= 1e-6)) {
    detail = "ell(target) - k*ell(base) reached " + detail_st::fmt(reg.worst_excess) +
             " > 1e-6 over " + std::to_string(reg.checked) + " certificates";
    return false;
  }
  detail = "ell(target) <= k*ell(base) + 1e-6 on all " + std::to_string(reg.checked) +
           " certificates (worst excess " + detail_st::fmt(reg.worst_excess) + ")";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 8: commutator witness — 4x inequality and the exact worked example
inline bool crit_commutator_witness(std::uint64_t seed, std::string& detail) {
  rng r(seed ^ 0x1008);
  double worst_ratio = 0.0;
  for (int run = 0; run < 200; ++run) {
    const std::size_t k = 2 + r.index(4);  // 2..5 eigenspaces
    finite_spectrum_unitary u;
    for (std::size_t e = 0; e < k; ++e)
      u.eigenphases.emplace_back(r.uniform(-pi, pi), 1 + r.index(4));
    // Re-sample until non-scalar, then force multiplicity >= 2 on the
    // maximal-chord pair.
    bool scalar = ell(u.expanded_phases()) == 0.0;
    if (scalar) {
      u.eigenphases.clear();
      u.eigenphases.emplace_back(0.0, 2);
      u.eigenphases.emplace_back(pi / 2.0, 2);
    }
    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i + 1 < u.eigenphases.size(); ++i)
      for (std::size_t j = i + 1; j < u.eigenphases.size(); ++j) {
        const double c = chord(u.eigenphases[i].first, u.eigenphases[j].first);
        if (c > best) {
          best = c;
          bi = i;
          bj = j;
        }
      }
    u.eigenphases[bi].second = std::max<std::size_t>(u.eigenphases[bi].second, 2);
    u.eigenphases[bj].second = std::max<std::size_t>(u.eigenphases[bj].second, 2);
    while (u.dim() > 32) {
      bool trimmed = false;
      for (auto& [phase, mult] : u.eigenphases) {
        (void)phase;
        if (mult > 2 && u.dim() > 32) {
          --mult;
          trimmed = true;
        }
      }
      if (!trimmed) break;
    }
    if (run % 3 == 0) u.basis = random_unitary(r, u.dim());

    witness_result w;
    try {
      w = commutator_witness(u);
    } catch (const error& e) {
      detail = std::string("witness construction failed: ") + e.what();
      return false;
    }
    const cmatrix um = u.to_matrix();
    const cmatrix comm = um.mul(w.v).mul(um.adjoint()).mul(w.v.adjoint());
    const double lu = ell(u.expanded_phases());
    const double lc = ell(eigenphases(comm));
    if (!(lu <= 4.0 * lc + 1e-9)) {
      detail = "inequality violated: ell(u) = " + detail_st::fmt(lu) + " > 4*ell([u,v]) = " +
               detail_st::fmt(4.0 * lc);
      return false;
    }
    worst_ratio = std::max(worst_ratio, lu / lc);
  }

  // Worked example, in exact integer arithmetic end to end.
  finite_spectrum_unitary ux;
  ux.eigenphases = {{0.0, 2}, {pi, 2}};
  const witness_result wx = commutator_witness(ux);
  if (!(wx.v == cmatrix::permutation({1, 2, 0, 3}))) {
    detail = "worked example: witness is not the expected 3-cycle permutation";
    return false;
  }
  cmatrix u_exact(4);
  u_exact.at(0, 0) = 1.0;
  u_exact.at(1, 1) = 1.0;
  u_exact.at(2, 2) = -1.0;
  u_exact.at(3, 3) = -1.0;
  const cmatrix comm_exact =
      u_exact.mul(wx.v).mul(u_exact.adjoint()).mul(wx.v.adjoint());
  cmatrix expected(4);
  expected.at(0, 0) = -1.0;
  expected.at(1, 1) = 1.0;
  expected.at(2, 2) = -1.0;
  expected.at(3, 3) = 1.0;
  if (!(comm_exact == expected)) {
    detail = "worked example: [u,v] != diag(-1,1,-1,1) bitwise";
    return false;
  }
  detail = "200 witnesses: ell(u) <= 4*ell([u,v]) + 1e-9 (worst ratio " +
           detail_st::fmt(worst_ratio) + "); worked example reproduced exactly";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 9: doubled commutator — 4 factors, verified at 1e-8
inline bool crit_doubled(std::uint64_t seed, std::string& detail, cert_registry& reg) {
  rng r(seed ^ 0x1009);
  bool collapse_seen = false;
  for (int run = 0; run < 100; ++run) {
    const std::size_t n = 1 + r.index(8);
    cmatrix v0 = random_unitary(r, n);
    cmatrix w0 = random_unitary(r, n);
    if (run % 10 == 0) {
      // Commuting pair: two diagonals, so the commutator collapses to I.
      diagonal_unitary dv, dw;
      for (std::size_t i = 0; i < n; ++i) {
        dv.phases.push_back(r.uniform(-pi, pi));
        dw.phases.push_back(r.uniform(-pi, pi));
      }
      v0 = dv.to_matrix();
      w0 = dw.to_matrix();
      collapse_seen = true;
    }
    doubled_result res;
    try {
      res = doubled_commutator(v0, w0);
    } catch (const error& e) {
      detail = std::string("doubled_commutator failed: ") + e.what();
      return false;
    }
    reg.add(res.cert);
    if (res.cert.factors.size() != 4) {
      detail = "expected exactly 4 factors, got " + std::to_string(res.cert.factors.size());
      return false;
    }
    const report rep = verify(res.cert, 1e-8);
    if (!rep.pass) {
      detail = "verification at 1e-8 failed (product residual " +
               detail_st::fmt(rep.product_residual) + ")";
      return false;
    }
  }
  if (!collapse_seen) {
    detail = "collapse case was never exercised";
    return false;
  }
  detail = "100 pairs (n <= 8): exactly 4 factors, verified at 1e-8, collapse case included";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 10: ng_bound fixed points
inline bool crit_ng_bound(std::string& detail) {
  const std::size_t calkin2 = ng_bound_from_length(2.0, bound_mode::calkin);
  const std::size_t calkin1 = ng_bound_from_length(1.0, bound_mode::calkin);
  const std::size_t typeiii2 = ng_bound_from_length(2.0, bound_mode::typeiii);
  if (calkin2 != 32 || calkin1 != 64 || typeiii2 != 1024) {
    detail = "formula fixed points off: got " + std::to_string(calkin2) + ", " +
             std::to_string(calkin1) + ", " + std::to_string(typeiii2);
    return false;
  }
  // Model-level sanity: ell_ess{0, pi} = sqrt(2), so the bound is ceil(64/sqrt2).
  const clustered_model antipodal{{0.0, pi}, {}};
  if (ng_bound(antipodal, bound_mode::calkin) != 46 ||
      ng_bound(antipodal, bound_mode::typeiii) != 1449) {
    detail = "model-level bounds off for clusters {0, pi}";
    return false;
  }
  bool rejected = false;
  try {
    (void)ng_bound(clustered_model{{0.3}, {}}, bound_mode::calkin);
  } catch (const error& e) {
    rejected = e.code() == errc::precondition;
  }
  if (!rejected) {
    detail = "zero-length model was not rejected";
    return false;
  }
  detail = "calkin: 32 at length 2, 64 at length 1; typeiii: 1024 at length 2; "
           "model-level values and zero-length rejection check out";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 11: adversarial verifier suite
inline bool crit_tamper(std::uint64_t seed, std::string& detail, cert_registry& reg) {
  rng r(seed ^ 0x100b);

  // A small pool of honest certificates to deface.  Base squared must stay
  // non-scalar so sign flips move the product projectively.
  std::vector<certificate> pool;
  {
    const clustered_model v{{0.9, -0.9}, {}};
    for (int i = 0; i < 3; ++i) {
      diagonal_unitary u;
      const std::size_t d = 12;
      std::vector<double> c = detail_st::spread_clusters(r, 3, 0.5);
      for (std::size_t p = 0; p < d; ++p) u.phases.push_back(c[p % 3]);
      pool.push_back(certify_diag(u, v, 2));
      reg.add(pool.back());
    }
    for (int i = 0; i < 3; ++i) {
      const std::size_t n = 2 + r.index(3);
      doubled_result res = doubled_commutator(random_unitary(r, n), random_unitary(r, n));
      reg.add(res.cert);
      pool.push_back(std::move(res.cert));
    }
  }
  for (const certificate& cert : pool) {
    if (!verify(cert).pass) {
      detail = "honest pool certificate failed verification";
      return false;
    }
  }

  const double tol = verification_tol;
  std::size_t by_class[3] = {0, 0, 0};
  for (int run = 0; run < 100; ++run) {
    certificate cert = pool[r.index(pool.size())];
    const int klass = run % 3;
    if (klass == 0) {
      // Perturbed conjugator: the factor check must flag the exact factor.
      const std::size_t f = r.index(cert.factors.size());
      cmatrix& g = cert.factors[f].conjugator;
      const std::size_t row = r.index(g.dim()), col = r.index(g.dim());
      g.at(row, col) += cplx(5e-3, 0.0);
      const report rep = verify(cert, tol);
      if (rep.pass || !(rep.worst_factor_residual > tol) || rep.worst_factor_index != f) {
        detail = "perturbed conjugator not flagged as a factor failure at index " +
                 std::to_string(f);
        return false;
      }
    } else if (klass == 1) {
      // Flipped sign (or swapped unitary): factors stay legitimate
      // conjugates, only the product betrays the tampering.
      certificate honest = cert;
      const std::size_t f = r.index(cert.factors.size());
      if (run % 2 == 0)
        cert.factors[f].sign = -cert.factors[f].sign;
      else
        cert.factors[f].conjugator =
            cmatrix::permutation([&] {
              std::vector<std::size_t> d(cert.base.dim());
              for (std::size_t p = 0; p < d.size(); ++p) d[p] = p;
              for (std::size_t p = d.size(); p > 1; --p)
                std::swap(d[p - 1], d[r.index(p)]);
              return d;
            }());
      const report rep = verify(cert, tol);
      if (rep.pass || !(rep.product_residual > tol) || rep.worst_factor_residual > tol ||
          !rep.count_ok) {
        // A random permutation can in principle reproduce the product; retry
        // deterministically with the sign flip, which cannot.
        certificate flipped = honest;
        flipped.factors[f].sign = -flipped.factors[f].sign;
        const report rep2 = verify(flipped, tol);
        if (rep2.pass || !(rep2.product_residual > tol) || rep2.worst_factor_residual > tol) {
          detail = "sign flip not isolated as a product failure";
          return false;
        }
      }
    } else {
      // Inflated count: a cancelling pair keeps the product and factors
      // clean; only the count check may fire.
      cert.claimed_bound = cert.factors.size();
      const cmatrix g = cert.factors[0].conjugator;
      cert.factors.push_back({+1, g});
      cert.factors.push_back({-1, g});
      const report rep = verify(cert, tol);
      if (rep.pass || rep.count_ok || rep.worst_factor_residual > tol ||
          rep.product_residual > tol) {
        detail = "inflated count not isolated as a count failure";
        return false;
      }
    }
    ++by_class[static_cast<std::size_t>(klass)];
  }
  detail = "100 tampered certificates rejected with the correct class (" +
           std::to_string(by_class[0]) + " factor, " + std::to_string(by_class[1]) +
           " product, " + std::to_string(by_class[2]) + " count)";
  return true;
}

// ---------------------------------------------------------------------------

inline bool run_selftest(std::uint64_t seed, std::ostream& out) {
  cert_registry reg;
  struct line {
    bool pass;
    std::string detail;
  };
  std::vector<line> lines(12);

  lines[1].pass = crit_length_oracle(seed, lines[1].detail);
  lines[2].pass = crit_greedy(seed, lines[2].detail);
  lines[3].pass = crit_decompositions(seed, lines[3].detail);
  lines[4].pass = crit_su2(seed, lines[4].detail);
  lines[5].pass = crit_parallel_blocks(seed, lines[5].detail, reg);
  lines[6].pass = crit_certify_constants(seed, lines[6].detail, reg);
  lines[8].pass = crit_commutator_witness(seed, lines[8].detail);
  lines[9].pass = crit_doubled(seed, lines[9].detail, reg);
  lines[10].pass = crit_ng_bound(lines[10].detail);
  lines[11].pass = crit_tamper(seed, lines[11].detail, reg);
  lines[7].pass = crit_converse(reg, lines[7].detail);  // needs all certificates

  bool all = true;
  int passed = 0;
  for (int i = 1; i <= 11; ++i) {
    all = all && lines[static_cast<std::size_t>(i)].pass;
    passed += lines[static_cast<std::size_t>(i)].pass ? 1 : 0;
    out << "criterion " << i << ": "
        << (lines[static_cast<std::size_t>(i)].pass ? "PASS" : "FAIL") << " — "
        << lines[static_cast<std::size_t>(i)].detail << "\n";
  }
  out << "selftest: " << passed << "/11 criteria passed (seed " << seed << ")\n";
  return all;
}

}  // namespace bng::selftest
