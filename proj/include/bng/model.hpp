#pragma once
// Clustered spectral models: a nonempty set of cluster phases, each standing
// for an eigenvalue of infinite multiplicity, plus finitely many exceptional
// phases with explicit multiplicities.  materialize() produces the canonical
// finite-dimensional stand-in at scale N: clusters first, round-robin
// interleaved, then the exceptional phases in listed order.

#include <cstddef>
#include <utility>
#include <vector>

#include "bng/diagonal.hpp"
#include "bng/error.hpp"
#include "bng/phase.hpp"

namespace bng {

struct clustered_model {
  std::vector<double> clusters;                          // infinite multiplicity each
  std::vector<std::pair<double, std::size_t>> exceptional;  // (phase, multiplicity)

  void validate() const {
    if (clusters.empty()) fail_precondition("clustered_model: clusters must be nonempty");
    std::vector<double> all;
    for (double x : clusters) {
      if (!std::isfinite(x)) fail_precondition("clustered_model: non-finite cluster phase");
      all.push_back(normalize_phase(x));
    }
    for (const auto& [x, mult] : exceptional) {
      if (!std::isfinite(x)) fail_precondition("clustered_model: non-finite exceptional phase");
      if (mult == 0) fail_precondition("clustered_model: exceptional multiplicity must be positive");
      all.push_back(normalize_phase(x));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (all[i] == all[j])
          fail_precondition("clustered_model: phases must be pairwise distinct");
  }

  std::size_t cluster_count() const { return clusters.size(); }

  std::size_t exceptional_dim() const {
    std::size_t e = 0;
    for (const auto& [x, mult] : exceptional) { (void)x; e += mult; }
    return e;
  }

  bool cluster_only() const { return exceptional.empty(); }
};

// Canonical finite stand-in at scale N: N copies of each cluster phase laid
// out round-robin (c0 c1 ... cK-1 c0 c1 ...), then exceptional phases with
// their multiplicities, in listed order.
inline diagonal_unitary materialize(const clustered_model& model, std::size_t N) {
  model.validate();
  if (N == 0) fail_precondition("materialize: N must be positive");
  diagonal_unitary out;
  out.phases.reserve(model.clusters.size() * N + model.exceptional_dim());
  for (std::size_t rep = 0; rep < N; ++rep)
    for (double c : model.clusters) out.phases.push_back(c);
  for (const auto& [x, mult] : model.exceptional)
    for (std::size_t rep = 0; rep < mult; ++rep) out.phases.push_back(x);
  return out;
}

}  // namespace bng
