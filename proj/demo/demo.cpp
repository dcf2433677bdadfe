// Walkthrough of the library surface:
//   1. measure spectral length of a diagonal unitary,
//   2. decompose a zero-sum phase vector into elementary factors,
//   3. build a product-of-conjugates certificate and verify it,
//   4. derive the norm-growth bound the certificate implies.

#include <cstdio>

#include <bng/bng.hpp>

int main() {
  using namespace bng;

  // A dimension-12 diagonal built from three phase clusters, repeated
  // four times each.
  const clustered_model target_model{{0.45, -0.2, -0.25}, {}};
  const diagonal_unitary u = materialize(target_model, 4);
  std::printf("target dimension        : %zu\n", u.dim());
  std::printf("spectral length ell(u)  : %.12f\n", ell(u.phases));

  // The base element we conjugate: two clusters at +-0.9.
  const clustered_model base_model{{0.9, -0.9}, {}};
  std::printf("base essential length   : %.12f\n", ell_ess(base_model));

  // Telescoping product decomposition of a zero-sum phase vector.
  const factor_sequence steps = product_decomposition(diagonal_unitary{{0.5, -0.25, -0.25}});
  std::printf("product decomposition   : %zu factors\n", steps.factors.size());

  // Certify that u is a bounded product of conjugates of the base.
  const certificate cert = certify_diag(u, base_model, 2);
  std::printf("certificate pipeline    : %s\n", cert.pipeline.c_str());
  std::printf("certificate factors     : %zu (claimed <= %zu)\n", cert.factors.size(),
              cert.claimed_bound);

  const report rep = verify(cert);
  std::printf("verification            : %s (product residual %.3e)\n",
              rep.pass ? "PASS" : "FAIL", rep.product_residual);

  // The same data expressed as a norm-growth bound for the model.
  std::printf("norm-growth bound       : %zu\n", ng_bound(target_model, bound_mode::calkin));

  return rep.pass ? 0 : 1;
}
