#pragma once
// Certificate generation:
//  - arrange_gap_blocks: permute a materialization of the base model so that
//    2x2 blocks at positions J = {0, 2, 4, ...} host cluster pairs whose chord
//    meets the required gap, supply permitting.
//  - infsim_generate: realize a product of block-diagonal target factors with
//    pairwise-separated supports as at most 4m signed conjugates of the base:
//    2m positive rounds carry per-block SU(2) chains under one global
//    conjugator per round; 2m negative factors cancel the accumulated scalar
//    bookkeeping exactly (m pairs of base^-1 conjugated by nothing and by the
//    all-blocks flip).
//  - certify_diag: gate ell(u) <= m*ell_ess(v), then balanced pipeline
//    (angle_normalize -> product_decomposition -> even/odd block split ->
//    arrange -> infsim, claimed bound 32m) with a split_angles fallback into
//    two halves (claimed bound 128m).
//  - certify_calkin: minimal m with ell_ess(u) <= m*ell_ess(v), then
//    certify_diag on a canonical materialization.
//  - ng_bound: the closed-form normal generation function values.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bng/certificate.hpp"
#include "bng/decomp.hpp"
#include "bng/diagonal.hpp"
#include "bng/eig.hpp"
#include "bng/error.hpp"
#include "bng/length.hpp"
#include "bng/matrix.hpp"
#include "bng/model.hpp"
#include "bng/phase.hpp"
#include "bng/su2.hpp"

namespace bng {

struct block_plan {
  std::vector<std::size_t> starts;                   // block k occupies (starts[k], starts[k]+1)
  std::vector<std::pair<double, double>> gap_pairs;  // phases hosted by block k
  cmatrix host_perm;                                 // W with arranged = W * canonical * W*
  diagonal_unitary canonical;                        // materialize(v, N)
  std::size_t dim = 0;
};

namespace detail {

// Greedy supply check/pairing: supplies start at N per cluster; each step
// pairs the two qualifying clusters maximizing supply sum (tie: larger chord,
// then lexicographic pair).  Returns the chosen pairs or nothing if some block
// cannot be filled.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> pair_blocks(
    const std::vector<double>& clusters, std::size_t supply_each, double required_gap,
    std::size_t block_count) {
  std::vector<std::size_t> supply(clusters.size(), supply_each);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t b = 0; b < block_count; ++b) {
    std::size_t best_i = clusters.size(), best_j = clusters.size();
    std::size_t best_supply = 0;
    double best_chord = -1.0;
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        if (supply[i] == 0 || supply[j] == 0) continue;
        const double c = chord(clusters[i], clusters[j]);
        if (c < required_gap) continue;
        const std::size_t s = supply[i] + supply[j];
        if (s > best_supply || (s == best_supply && c > best_chord)) {
          best_supply = s;
          best_chord = c;
          best_i = i;
          best_j = j;
        }
      }
    if (best_i == clusters.size()) return std::nullopt;
    --supply[best_i];
    --supply[best_j];
    pairs.emplace_back(best_i, best_j);
  }
  return pairs;
}

}  // namespace detail

inline std::pair<diagonal_unitary, block_plan> arrange_gap_blocks(const clustered_model& v,
                                                                  double required_gap,
                                                                  std::size_t block_count,
                                                                  std::size_t dim) {
  v.validate();
  const std::size_t K = v.cluster_count();
  const std::size_t E = v.exceptional_dim();
  if (dim < E + K)
    fail_precondition("arrange_gap_blocks: dimension " + std::to_string(dim) +
                      " cannot host the model (needs at least " + std::to_string(E + K) + ")");
  if ((dim - E) % K != 0)
    fail_precondition("arrange_gap_blocks: dimension " + std::to_string(dim) +
                      " minus exceptional dimension " + std::to_string(E) +
                      " is not a multiple of the cluster count " + std::to_string(K) +
                      "; nearest admissible dimension is " +
                      std::to_string(E + K * ((dim - E + K - 1) / K)));
  const std::size_t N = (dim - E) / K;

  double max_chord = 0.0;
  for (std::size_t i = 0; i + 1 < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j)
      max_chord = std::max(max_chord, chord(v.clusters[i], v.clusters[j]));
  if (block_count > 0 && !(max_chord >= required_gap))
    fail_precondition("arrange_gap_blocks: bound infeasible: max cluster chord " +
                      std::to_string(max_chord) + " < required gap " +
                      std::to_string(required_gap));

  auto pairing = (block_count == 0)
                     ? std::optional<std::vector<std::pair<std::size_t, std::size_t>>>(
                           std::in_place)
                     : detail::pair_blocks(v.clusters, N, required_gap, block_count);
  if (2 * block_count > dim - E || !pairing) {
    // Estimate the smallest dimension at which the arrangement succeeds.
    std::size_t n_ok = N;
    for (std::size_t n = N + 1; n <= N + 2 * block_count + 2; ++n) {
      if (2 * block_count <= n * K &&
          detail::pair_blocks(v.clusters, n, required_gap, block_count)) {
        n_ok = n;
        break;
      }
    }
    fail_precondition("arrange_gap_blocks: dimension " + std::to_string(dim) +
                      " too small for " + std::to_string(block_count) +
                      " gap blocks; smallest sufficient dimension is about " +
                      std::to_string(E + K * n_ok));
  }

  // Canonical pair order: chord descending, then lexicographic.
  std::vector<std::pair<std::size_t, std::size_t>> pairs = *pairing;
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&v](const auto& a, const auto& b) {
                     const double ca = chord(v.clusters[a.first], v.clusters[a.second]);
                     const double cb = chord(v.clusters[b.first], v.clusters[b.second]);
                     if (ca != cb) return ca > cb;
                     return a < b;
                   });

  // Emit the arranged phase list as (cluster index or exceptional id) items.
  // Items: 0..K-1 = clusters, K + e = exceptional entry e.
  std::vector<std::size_t> consumed(K, 0);
  std::vector<std::size_t> items;
  items.reserve(dim);
  for (const auto& [i, j] : pairs) {
    items.push_back(i);
    items.push_back(j);
    ++consumed[i];
    ++consumed[j];
  }
  std::vector<std::size_t> skip = consumed;  // copies already used by blocks
  for (std::size_t rep = 0; rep < N; ++rep)
    for (std::size_t c = 0; c < K; ++c) {
      if (skip[c] > 0) {
        --skip[c];
        continue;
      }
      items.push_back(c);
    }
  for (std::size_t e = 0; e < v.exceptional.size(); ++e)
    for (std::size_t rep = 0; rep < v.exceptional[e].second; ++rep) items.push_back(K + e);
  if (items.size() != dim) fail_internal("arrange_gap_blocks: slot accounting is off");

  block_plan plan;
  plan.dim = dim;
  plan.canonical = materialize(v, N);
  diagonal_unitary arranged;
  arranged.phases.reserve(dim);
  for (std::size_t q = 0; q < dim; ++q) {
    const std::size_t it = items[q];
    arranged.phases.push_back(it < K ? v.clusters[it] : v.exceptional[it - K].first);
  }
  for (std::size_t k = 0; k < block_count; ++k) {
    plan.starts.push_back(2 * k);
    plan.gap_pairs.emplace_back(arranged.phases[2 * k], arranged.phases[2 * k + 1]);
  }

  // Host permutation: match each arranged slot to the earliest unused
  // canonical slot holding the same item.
  std::vector<std::vector<std::size_t>> canonical_slots(K + v.exceptional.size());
  {
    std::size_t p = 0;
    for (std::size_t rep = 0; rep < N; ++rep)
      for (std::size_t c = 0; c < K; ++c) canonical_slots[c].push_back(p++);
    for (std::size_t e = 0; e < v.exceptional.size(); ++e)
      for (std::size_t rep = 0; rep < v.exceptional[e].second; ++rep)
        canonical_slots[K + e].push_back(p++);
  }
  std::vector<std::size_t> next(K + v.exceptional.size(), 0);
  std::vector<std::size_t> dst(dim);
  for (std::size_t q = 0; q < dim; ++q) {
    const std::size_t it = items[q];
    dst[canonical_slots[it][next[it]++]] = q;
  }
  plan.host_perm = cmatrix::permutation(dst);
  return {std::move(arranged), std::move(plan)};
}

inline certificate infsim_generate(const factor_sequence& u_factors,
                                   const diagonal_unitary& v_arranged, const block_plan& plan,
                                   std::size_t m) {
  if (m == 0 || m % 2 != 0) fail_precondition("infsim_generate: m must be even and positive");
  if (u_factors.kind != factor_kind::product)
    fail_precondition("infsim_generate: factor sequence must be of product kind");
  const std::size_t dim = plan.dim;
  if (v_arranged.dim() != dim || u_factors.dim != dim || plan.canonical.dim() != dim)
    fail_precondition("infsim_generate: dimension mismatch");

  // Collect the non-identity blocks (position, angle); identity factors carry
  // no content and are skipped.
  std::vector<std::size_t> positions;
  std::vector<double> angles;
  for (const diagonal_unitary& f : u_factors.factors) {
    if (f.dim() != dim) fail_precondition("infsim_generate: factor dimension mismatch");
    const std::optional<product_block> blk = factor_block(f);
    if (!blk) continue;
    positions.push_back(blk->position);
    angles.push_back(blk->angle);
  }
  for (std::size_t a = 0; a + 1 < positions.size(); ++a)
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      const std::size_t lo = std::min(positions[a], positions[b]);
      const std::size_t hi = std::max(positions[a], positions[b]);
      if (hi - lo <= 1)
        fail_precondition("infsim_generate: factor supports at " + std::to_string(lo) +
                          " and " + std::to_string(hi) + " are not separated");
    }
  const std::size_t blocks = positions.size();

  certificate cert;
  cert.mode = "matrix";
  cert.base = plan.canonical;
  cert.target.phases.assign(dim, 0.0);
  cert.claimed_bound = 4 * m;
  cert.m = m;
  cert.pipeline = "balanced";
  for (std::size_t k = 0; k < blocks; ++k) {
    cert.target.phases[positions[k]] = angles[k];
    cert.target.phases[positions[k] + 1] = -angles[k];
  }
  if (blocks == 0) {
    const report r = verify(cert, verification_tol);
    if (!r.pass) fail_internal("infsim_generate: empty certificate failed verification");
    return cert;
  }

  if (blocks > plan.starts.size())
    fail_precondition("infsim_generate: plan provides " + std::to_string(plan.starts.size()) +
                      " blocks but " + std::to_string(blocks) + " are needed");

  // Paper inequality (e1): the block angle must fit m times the hosted chord.
  std::vector<double> thetas(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    const auto& [gp, gm] = plan.gap_pairs[k];
    const double block_chord = chord(gp, gm);
    if (!(std::abs(angles[k]) <= static_cast<double>(m) * block_chord))
      fail_precondition("infsim_generate: block " + std::to_string(k) + " angle |" +
                        std::to_string(std::abs(angles[k])) + "| exceeds m * chord = " +
                        std::to_string(static_cast<double>(m) * block_chord));
    thetas[k] = normalize_phase(gp - gm) / 2.0;
  }

  // Per-block SU(2) chains of uniform length 2m.
  std::vector<conjugate_chain> chains(blocks);
  for (std::size_t k = 0; k < blocks; ++k) chains[k] = su2_chain(thetas[k], angles[k], 2 * m);

  // Factor-space permutation: plan block k -> target support (positions[k],
  // positions[k]+1); leftovers ascend to leftovers.
  std::vector<std::size_t> wp_dst(dim, dim);
  std::vector<bool> target_used(dim, false);
  for (std::size_t k = 0; k < blocks; ++k) {
    wp_dst[plan.starts[k]] = positions[k];
    wp_dst[plan.starts[k] + 1] = positions[k] + 1;
    target_used[positions[k]] = target_used[positions[k] + 1] = true;
  }
  {
    std::size_t t = 0;
    for (std::size_t p = 0; p < dim; ++p) {
      if (wp_dst[p] != dim) continue;
      while (target_used[t]) ++t;
      wp_dst[p] = t;
      target_used[t] = true;
    }
  }
  const cmatrix w_p = cmatrix::permutation(wp_dst);
  const cmatrix& host = plan.host_perm;  // arranged = host * canonical * host*

  // 2m positive rounds: one global conjugator per round.
  for (std::size_t r = 0; r < 2 * m; ++r) {
    cmatrix g_round = cmatrix::identity(dim);
    for (std::size_t k = 0; k < blocks; ++k) {
      const cmatrix& h = chains[k].conjugators[r];
      const std::size_t j = plan.starts[k];
      g_round.at(j, j) = h.at(0, 0);
      g_round.at(j, j + 1) = h.at(0, 1);
      g_round.at(j + 1, j) = h.at(1, 0);
      g_round.at(j + 1, j + 1) = h.at(1, 1);
    }
    cert.factors.push_back({+1, w_p.mul(g_round).mul(host)});
  }
  // 2m negative factors in m pairs; their product cancels the scalar parts of
  // the positive rounds on the blocks and the 2m-th powers elsewhere exactly.
  cmatrix flip_all = cmatrix::identity(dim);
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t j = plan.starts[k];
    flip_all.at(j, j) = 0.0;
    flip_all.at(j + 1, j + 1) = 0.0;
    flip_all.at(j, j + 1) = 1.0;
    flip_all.at(j + 1, j) = -1.0;
  }
  for (std::size_t p = 0; p < m; ++p) {
    cert.factors.push_back({-1, w_p.mul(host)});
    cert.factors.push_back({-1, w_p.mul(flip_all).mul(host)});
  }

  const report r = verify(cert, verification_tol);
  if (!r.pass)
    fail_internal("infsim_generate: certificate failed verification (product residual " +
                  std::to_string(r.product_residual) + ", worst factor " +
                  std::to_string(r.worst_factor_residual) + ")");
  return cert;
}

namespace detail {

// Generate the signed factors realizing diag(balanced) as conjugates of the
// canonical materialization, where `ordered` = balanced composed with sigma is
// exactly zero-sum.  The product factors are split by support parity into two
// pairwise-separated parts, each arranged and generated at chain parameter
// m_tilde.  Returns nothing (with the reason in *why) if the gap arrangement
// is infeasible at this truncation.
inline std::optional<std::vector<signed_factor>> generate_for_ordered(
    const clustered_model& v, std::size_t dim, const std::vector<double>& ordered,
    const std::vector<std::size_t>& sigma, std::size_t m_tilde, double required_gap,
    std::string* why) {
  diagonal_unitary ordered_diag;
  ordered_diag.phases = ordered;
  const factor_sequence fs = product_decomposition(ordered_diag);

  factor_sequence part_even{factor_kind::product, dim, {}};
  factor_sequence part_odd{factor_kind::product, dim, {}};
  for (std::size_t j = 0; j < fs.factors.size(); ++j) {
    if (!factor_block(fs.factors[j])) continue;  // identity factor
    (j % 2 == 0 ? part_even : part_odd).factors.push_back(fs.factors[j]);
  }

  const cmatrix fold = cmatrix::permutation(sigma);  // fold ordered space back
  std::vector<signed_factor> out;
  for (const factor_sequence* part : {&part_even, &part_odd}) {
    if (part->factors.empty()) continue;
    std::pair<diagonal_unitary, block_plan> arrangement;
    try {
      arrangement = arrange_gap_blocks(v, required_gap, part->factors.size(), dim);
    } catch (const error& e) {
      if (e.code() == errc::precondition) {
        if (why) *why = e.what();
        return std::nullopt;
      }
      throw;
    }
    certificate part_cert =
        infsim_generate(*part, arrangement.first, arrangement.second, m_tilde);
    for (signed_factor& f : part_cert.factors)
      out.push_back({f.sign, fold.mul(f.conjugator)});
  }
  return out;
}

}  // namespace detail

inline certificate certify_diag(const diagonal_unitary& u, const clustered_model& v,
                                std::size_t m) {
  if (m == 0) fail_precondition("certify_diag: m must be positive");
  v.validate();
  const std::size_t dim = u.dim();
  if (dim == 0) fail_precondition("certify_diag: empty target");

  const double len_u = ell(u);
  const double len_v = ell_ess(v);
  if (!(len_u <= static_cast<double>(m) * len_v))
    fail_precondition("certify_diag: ell(u) = " + std::to_string(len_u) +
                      " exceeds m * ell_ess(v) = " +
                      std::to_string(static_cast<double>(m) * len_v));

  const std::size_t K = v.cluster_count();
  const std::size_t E = v.exceptional_dim();
  if (dim < E + K || (dim - E) % K != 0)
    fail_precondition("certify_diag: dimension " + std::to_string(dim) +
                      " incompatible with the base model; nearest admissible dimension is " +
                      std::to_string(E + K * std::max<std::size_t>(1, (dim > E ? (dim - E + K - 1) / K : 1))));
  const std::size_t N = (dim - E) / K;
  const diagonal_unitary v0 = materialize(v, N);

  certificate cert;
  cert.mode = "matrix";
  cert.base = v0;
  cert.target = u;
  cert.m = m;
  cert.claimed_bound = 32 * m;
  cert.pipeline = "balanced";

  // Shortcut: target already projectively equals the canonical base.
  if (proj_dist(u.to_matrix(), v0.to_matrix()) <= 1e-9) {
    cert.factors.push_back({+1, cmatrix::identity(dim)});
    const report r = verify(cert, verification_tol);
    if (!r.pass) fail_internal("certify_diag: shortcut certificate failed verification");
    return cert;
  }
  // Scalar target: the empty product.
  if (len_u == 0.0) {
    const report r = verify(cert, verification_tol);
    if (!r.pass) fail_internal("certify_diag: scalar certificate failed verification");
    return cert;
  }

  double max_cluster_chord = 0.0;
  for (std::size_t i = 0; i + 1 < K; ++i)
    for (std::size_t j = i + 1; j < K; ++j)
      max_cluster_chord = std::max(max_cluster_chord, chord(v.clusters[i], v.clusters[j]));

  std::string why_infeasible;

  // Balanced pipeline: one exactly balanced ordering, bound 32m.
  if (std::optional<normalization> norm = try_angle_normalize(u)) {
    const std::size_t m_tilde = 4 * m;
    const double required_gap =
        (norm->achieved / static_cast<double>(m_tilde)) * (1.0 + 1e-12);
    if (max_cluster_chord >= required_gap) {
      if (std::optional<std::vector<signed_factor>> factors = detail::generate_for_ordered(
              v, dim, norm->ordered, norm->sigma, m_tilde, required_gap, &why_infeasible)) {
        cert.factors = *std::move(factors);
        const report r = verify(cert, verification_tol);
        if (!r.pass)
          fail_internal("certify_diag: balanced certificate failed verification (product " +
                        std::to_string(r.product_residual) + ")");
        return cert;
      }
    }
  }

  // Split pipeline: center the spectrum, split each angle into two bounded
  // alternating parts, balance each half by a scalar shift, bound 128m.
  const double lambda = ell_opt_rotation(u.phases);
  std::vector<double> rotated(dim);
  for (std::size_t p = 0; p < dim; ++p) rotated[p] = normalize_phase(u.phases[p] + lambda);
  const auto [half1, half2] = split_angles(rotated);

  const std::size_t m_tilde = 8 * m;
  cert.pipeline = "split";
  cert.claimed_bound = 128 * m;
  cert.factors.clear();

  struct half_data {
    std::vector<double> balanced;
    std::vector<double> ordered;
    std::vector<std::size_t> sigma;
    double achieved = 0.0;
  };
  std::vector<half_data> halves;
  double max_prefix = 0.0;
  for (const std::vector<double>* half : {&half1, &half2}) {
    half_data h;
    std::int64_t mean_units = 0;
    const std::vector<std::int64_t> units = detail::zero_sum_units(*half, &mean_units);
    const detail::unit_greedy_result greedy = detail::greedy_order_units(units);
    h.sigma = greedy.sigma;
    h.achieved = static_cast<double>(greedy.max_abs_prefix) * phase_quantum;
    h.balanced.resize(dim);
    for (std::size_t p = 0; p < dim; ++p)
      h.balanced[p] = static_cast<double>(units[p]) * phase_quantum;
    h.ordered.resize(dim);
    for (std::size_t n = 0; n < dim; ++n) h.ordered[n] = h.balanced[h.sigma[n]];
    max_prefix = std::max(max_prefix, h.achieved);
    halves.push_back(std::move(h));
  }
  const double required_gap =
      (max_prefix / static_cast<double>(m_tilde)) * (1.0 + 1e-12);
  for (const half_data& h : halves) {
    std::optional<std::vector<signed_factor>> factors = detail::generate_for_ordered(
        v, dim, h.ordered, h.sigma, m_tilde, required_gap, &why_infeasible);
    if (!factors)
      fail_precondition("certify_diag: infeasible gap arrangement at this truncation (" +
                        why_infeasible + ")");
    for (signed_factor& f : *factors) cert.factors.push_back(std::move(f));
  }
  const report r = verify(cert, verification_tol);
  if (!r.pass)
    fail_internal("certify_diag: split certificate failed verification (product " +
                  std::to_string(r.product_residual) + ")");
  return cert;
}

inline certificate certify_calkin(const clustered_model& u, const clustered_model& v,
                                  std::size_t truncation = 64) {
  u.validate();
  v.validate();
  if (!u.cluster_only() || !v.cluster_only())
    fail_precondition("certify_calkin: models must be cluster-only (empty exceptional part)");
  if (truncation < 2) fail_precondition("certify_calkin: truncation must be at least 2");

  const double len_u = ell_ess(u);
  const double len_v = ell_ess(v);
  std::size_t m = 1;
  if (len_u > 0.0) {
    if (len_v == 0.0)
      fail_precondition("certify_calkin: base model is scalar (ell_ess = 0) but the target is not");
    while (!(len_u <= static_cast<double>(m) * len_v)) {
      ++m;
      if (m > 1000000) fail_internal("certify_calkin: m search did not terminate");
    }
  }

  const std::size_t ku = u.cluster_count();
  const std::size_t kv = v.cluster_count();
  const std::size_t l = std::lcm(ku, kv);
  const std::size_t dim = l * std::max<std::size_t>(1, (truncation + l - 1) / l);

  certificate cert = certify_diag(materialize(u, dim / ku), v, m);
  cert.mode = "calkin";
  cert.base_model = v;
  cert.target_model = u;
  return cert;
}

enum class bound_mode { calkin, typeiii };

// The normal generation function at a given length: ceil(64/len) in calkin
// mode (essential length), ceil(2048/len) in typeiii mode (full length).
inline std::size_t ng_bound_from_length(double len, bound_mode mode) {
  if (!(len > 0.0))
    fail_precondition("ng_bound: length is zero (projectively trivial element)");
  const double numerator = (mode == bound_mode::calkin) ? 64.0 : 2048.0;
  return static_cast<std::size_t>(std::ceil(numerator / len));
}

inline std::size_t ng_bound(const clustered_model& v, bound_mode mode) {
  v.validate();
  double len = 0.0;
  if (mode == bound_mode::calkin) {
    len = ell_ess(v);
  } else {
    std::vector<double> all = v.clusters;
    for (const auto& [p, mult] : v.exceptional) {
      (void)mult;
      all.push_back(p);
    }
    len = ell(all);
  }
  return ng_bound_from_length(len, mode);
}

}  // namespace bng
