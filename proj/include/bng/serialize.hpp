#pragma once
// JSON serialization for every public value type.  Schemas:
//   DiagonalUnitary        {"phases": [x, ...]}
//   ClusteredModel         {"clusters": [x, ...], "exceptional": [[phase, mult], ...]}
//   UnitaryMatrix          {"dim": D, "re": [[...]], "im": [[...]]}
//   FactorSequence         {"kind": "product"|"torus", "factors": [DiagonalUnitary, ...]}
//   Certificate            {"mode", "base", "target", "claimed_bound", "factors":
//                           [{"sign": +-1, "conjugator": UnitaryMatrix}, ...],
//                           "meta": {"m", "pipeline"[, "dim"]}}
//                          base/target are DiagonalUnitary in matrix mode and
//                          ClusteredModel in calkin mode (dimension in meta.dim;
//                          the diagonals are reconstructed by materialization).
//   Report                 {"pass", "product_residual",
//                           "worst_factor": {"index", "residual"}, "count_ok"}
//   FiniteSpectrumUnitary  {"eigenphases": [[phase, mult], ...],
//                           "basis": UnitaryMatrix | "canonical"}
// Parse failures raise io errors naming the offending field.  Emitted floats
// use the shortest representation that re-parses to the same value.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bng/certificate.hpp"
#include "bng/decomp.hpp"
#include "bng/diagonal.hpp"
#include "bng/error.hpp"
#include "bng/matrix.hpp"
#include "bng/model.hpp"
#include "bng/typeiii.hpp"

namespace bng::io {

using json = nlohmann::json;

inline json parse(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail_io("malformed JSON while reading " + what);
  return j;
}

namespace detail {

inline const json& field(const json& j, const char* name, const char* owner) {
  if (!j.is_object()) fail_io(std::string(owner) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end())
    fail_io(std::string(owner) + ": missing field \"" + name + "\"");
  return *it;
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail_io(where + ": expected a number");
  return j.get<double>();
}

inline std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail_io(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& x : j) out.push_back(number(x, where));
  return out;
}

}  // namespace detail

// --- DiagonalUnitary ---------------------------------------------------------

inline json to_json(const diagonal_unitary& u) {
  return json{{"phases", u.phases}};
}

inline diagonal_unitary diagonal_from_json(const json& j) {
  diagonal_unitary u;
  u.phases = detail::number_list(detail::field(j, "phases", "DiagonalUnitary"),
                                 "DiagonalUnitary.phases");
  for (double x : u.phases)
    if (!std::isfinite(x)) fail_io("DiagonalUnitary.phases: non-finite entry");
  return u;
}

// --- ClusteredModel ----------------------------------------------------------

inline json to_json(const clustered_model& m) {
  json ex = json::array();
  for (const auto& [phase, mult] : m.exceptional) ex.push_back(json::array({phase, mult}));
  return json{{"clusters", m.clusters}, {"exceptional", std::move(ex)}};
}

inline clustered_model model_from_json(const json& j) {
  clustered_model m;
  m.clusters = detail::number_list(detail::field(j, "clusters", "ClusteredModel"),
                                   "ClusteredModel.clusters");
  if (j.is_object() && j.contains("exceptional")) {
    const json& ex = j.at("exceptional");
    if (!ex.is_array()) fail_io("ClusteredModel.exceptional: expected an array of pairs");
    for (const json& e : ex) {
      if (!e.is_array() || e.size() != 2)
        fail_io("ClusteredModel.exceptional: each entry must be [phase, mult]");
      const double phase = detail::number(e[0], "ClusteredModel.exceptional phase");
      if (!e[1].is_number_integer() || e[1].get<std::int64_t>() <= 0)
        fail_io("ClusteredModel.exceptional: multiplicity must be a positive integer");
      m.exceptional.emplace_back(phase, e[1].get<std::size_t>());
    }
  }
  m.validate();
  return m;
}

inline bool looks_like_model(const json& j) {
  return j.is_object() && j.contains("clusters");
}

// --- UnitaryMatrix -----------------------------------------------------------

inline json to_json(const cmatrix& m) {
  const std::size_t d = m.dim();
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < d; ++r) {
    json re_row = json::array(), im_row = json::array();
    for (std::size_t c = 0; c < d; ++c) {
      re_row.push_back(m.at(r, c).real());
      im_row.push_back(m.at(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline cmatrix matrix_from_json(const json& j) {
  const json& jd = detail::field(j, "dim", "UnitaryMatrix");
  if (!jd.is_number_integer() || jd.get<std::int64_t>() <= 0)
    fail_io("UnitaryMatrix.dim: expected a positive integer");
  const auto d = jd.get<std::size_t>();
  const json& re = detail::field(j, "re", "UnitaryMatrix");
  const json& im = detail::field(j, "im", "UnitaryMatrix");
  if (!re.is_array() || re.size() != d) fail_io("UnitaryMatrix.re: expected dim rows");
  if (!im.is_array() || im.size() != d) fail_io("UnitaryMatrix.im: expected dim rows");
  cmatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::vector<double> rr = detail::number_list(re[r], "UnitaryMatrix.re row");
    const std::vector<double> ri = detail::number_list(im[r], "UnitaryMatrix.im row");
    if (rr.size() != d || ri.size() != d)
      fail_io("UnitaryMatrix: row length != dim at row " + std::to_string(r));
    for (std::size_t c = 0; c < d; ++c) m.at(r, c) = cplx(rr[c], ri[c]);
  }
  return m;
}

// --- FactorSequence ----------------------------------------------------------

inline json to_json(const factor_sequence& fs) {
  json factors = json::array();
  for (const diagonal_unitary& f : fs.factors) factors.push_back(to_json(f));
  return json{{"kind", fs.kind == factor_kind::product ? "product" : "torus"},
              {"factors", std::move(factors)}};
}

inline factor_sequence factors_from_json(const json& j) {
  factor_sequence fs;
  const json& kind = detail::field(j, "kind", "FactorSequence");
  if (!kind.is_string()) fail_io("FactorSequence.kind: expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "product")
    fs.kind = factor_kind::product;
  else if (k == "torus")
    fs.kind = factor_kind::torus;
  else
    fail_io("FactorSequence.kind: expected \"product\" or \"torus\", got \"" + k + "\"");
  const json& factors = detail::field(j, "factors", "FactorSequence");
  if (!factors.is_array()) fail_io("FactorSequence.factors: expected an array");
  for (const json& f : factors) fs.factors.push_back(diagonal_from_json(f));
  fs.dim = fs.factors.empty() ? 0 : fs.factors.front().dim();
  for (const diagonal_unitary& f : fs.factors)
    if (f.dim() != fs.dim) fail_io("FactorSequence.factors: inconsistent dimensions");
  return fs;
}

// --- Certificate -------------------------------------------------------------

inline json to_json(const certificate& cert) {
  json factors = json::array();
  for (const signed_factor& f : cert.factors)
    factors.push_back(json{{"sign", f.sign}, {"conjugator", to_json(f.conjugator)}});
  json meta{{"m", cert.m}, {"pipeline", cert.pipeline}};
  json base, target;
  if (cert.mode == "calkin") {
    if (!cert.base_model || !cert.target_model)
      fail_internal("certificate: calkin mode without attached models");
    base = to_json(*cert.base_model);
    target = to_json(*cert.target_model);
    meta["dim"] = cert.base.dim();
  } else {
    base = to_json(cert.base);
    target = to_json(cert.target);
  }
  return json{{"mode", cert.mode},          {"base", std::move(base)},
              {"target", std::move(target)}, {"claimed_bound", cert.claimed_bound},
              {"factors", std::move(factors)}, {"meta", std::move(meta)}};
}

inline certificate certificate_from_json(const json& j) {
  certificate cert;
  const json& mode = detail::field(j, "mode", "Certificate");
  if (!mode.is_string()) fail_io("Certificate.mode: expected a string");
  cert.mode = mode.get<std::string>();
  if (cert.mode != "matrix" && cert.mode != "calkin")
    fail_io("Certificate.mode: expected \"matrix\" or \"calkin\", got \"" + cert.mode + "\"");

  const json& meta = detail::field(j, "meta", "Certificate");
  const json& jm = detail::field(meta, "m", "Certificate.meta");
  if (!jm.is_number_integer() || jm.get<std::int64_t>() < 0)
    fail_io("Certificate.meta.m: expected a non-negative integer");
  cert.m = jm.get<std::size_t>();
  const json& jp = detail::field(meta, "pipeline", "Certificate.meta");
  if (!jp.is_string()) fail_io("Certificate.meta.pipeline: expected a string");
  cert.pipeline = jp.get<std::string>();

  if (cert.mode == "calkin") {
    cert.base_model = model_from_json(detail::field(j, "base", "Certificate"));
    cert.target_model = model_from_json(detail::field(j, "target", "Certificate"));
    const json& jdim = detail::field(meta, "dim", "Certificate.meta");
    if (!jdim.is_number_integer() || jdim.get<std::int64_t>() <= 0)
      fail_io("Certificate.meta.dim: expected a positive integer");
    const auto dim = jdim.get<std::size_t>();
    if (!cert.base_model->cluster_only() || !cert.target_model->cluster_only())
      fail_io("Certificate: calkin mode requires cluster-only models");
    const std::size_t kb = cert.base_model->cluster_count();
    const std::size_t kt = cert.target_model->cluster_count();
    if (dim % kb != 0 || dim % kt != 0)
      fail_io("Certificate.meta.dim: not a common multiple of the model cluster counts");
    cert.base = materialize(*cert.base_model, dim / kb);
    cert.target = materialize(*cert.target_model, dim / kt);
  } else {
    cert.base = diagonal_from_json(detail::field(j, "base", "Certificate"));
    cert.target = diagonal_from_json(detail::field(j, "target", "Certificate"));
  }

  const json& jc = detail::field(j, "claimed_bound", "Certificate");
  if (!jc.is_number_integer() || jc.get<std::int64_t>() < 0)
    fail_io("Certificate.claimed_bound: expected a non-negative integer");
  cert.claimed_bound = jc.get<std::size_t>();

  const json& factors = detail::field(j, "factors", "Certificate");
  if (!factors.is_array()) fail_io("Certificate.factors: expected an array");
  for (const json& f : factors) {
    const json& js = detail::field(f, "sign", "Certificate.factors entry");
    if (!js.is_number_integer() ||
        (js.get<std::int64_t>() != 1 && js.get<std::int64_t>() != -1))
      fail_io("Certificate.factors entry: sign must be +1 or -1");
    signed_factor sf;
    sf.sign = static_cast<int>(js.get<std::int64_t>());
    sf.conjugator = matrix_from_json(detail::field(f, "conjugator", "Certificate.factors entry"));
    cert.factors.push_back(std::move(sf));
  }
  return cert;
}

// --- Report ------------------------------------------------------------------

inline json to_json(const report& r) {
  return json{{"pass", r.pass},
              {"product_residual", r.product_residual},
              {"worst_factor",
               json{{"index", r.worst_factor_index}, {"residual", r.worst_factor_residual}}},
              {"count_ok", r.count_ok}};
}

// --- FiniteSpectrumUnitary ---------------------------------------------------

inline json to_json(const finite_spectrum_unitary& u) {
  json eig = json::array();
  for (const auto& [phase, mult] : u.eigenphases) eig.push_back(json::array({phase, mult}));
  json basis = u.basis ? to_json(*u.basis) : json("canonical");
  return json{{"eigenphases", std::move(eig)}, {"basis", std::move(basis)}};
}

inline finite_spectrum_unitary spectrum_from_json(const json& j) {
  finite_spectrum_unitary u;
  const json& eig = detail::field(j, "eigenphases", "FiniteSpectrumUnitary");
  if (!eig.is_array()) fail_io("FiniteSpectrumUnitary.eigenphases: expected an array of pairs");
  for (const json& e : eig) {
    if (!e.is_array() || e.size() != 2)
      fail_io("FiniteSpectrumUnitary.eigenphases: each entry must be [phase, mult]");
    const double phase = detail::number(e[0], "FiniteSpectrumUnitary eigenphase");
    if (!e[1].is_number_integer() || e[1].get<std::int64_t>() <= 0)
      fail_io("FiniteSpectrumUnitary.eigenphases: multiplicity must be a positive integer");
    u.eigenphases.emplace_back(phase, e[1].get<std::size_t>());
  }
  if (j.contains("basis") && !(j.at("basis").is_string() &&
                               j.at("basis").get<std::string>() == "canonical"))
    u.basis = matrix_from_json(j.at("basis"));
  u.validate();
  return u;
}

}  // namespace bng::io
