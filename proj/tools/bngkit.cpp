// bngkit: JSON-in/JSON-out front end for the library.
//
// Exit codes: 0 success, 1 precondition violated ("the math says no"),
// 2 verification failure or broken internal invariant ("the certificate is
// wrong"), 3 I/O or parse error (message names the offending field).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <bng/bng.hpp>

namespace {

using bng::io::json;

std::string read_payload(const std::string& arg, const std::string& flag) {
  if (arg.empty()) bng::fail_io(flag + ": empty argument");
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (arg.front() == '{' || arg.front() == '[') return arg;  // inline JSON
  std::ifstream in(arg);
  if (!in) bng::fail_io(flag + ": cannot read file '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_arg(const std::string& arg, const std::string& flag) {
  return bng::io::parse(read_payload(arg, flag), flag);
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) bng::fail_io("--out: cannot write file '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double env_tolerance() {
  const char* raw = std::getenv("BNGKIT_TOL");
  if (raw == nullptr) return bng::verification_tol;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0))
    bng::fail_io("BNGKIT_TOL: not a positive number: '" + std::string(raw) + "'");
  return v;
}

std::vector<double> parse_angles(const std::string& arg, const std::string& flag) {
  const json j = parse_arg(arg, flag);
  if (j.is_array()) return bng::io::detail::number_list(j, flag);
  if (j.is_object() && j.contains("phases"))
    return bng::io::detail::number_list(j.at("phases"), flag + ".phases");
  bng::fail_io(flag + ": expected an array of angles or an object with \"phases\"");
}

bng::diagonal_unitary parse_diagonal(const std::string& arg, const std::string& flag) {
  return bng::diagonal_unitary{parse_angles(arg, flag)};
}

int run(int argc, char** argv) {
  CLI::App app{"operator factorization toolkit"};
  app.require_subcommand(1);

  // length
  std::string in_length;
  CLI::App* c_length = app.add_subcommand("length", "projective length of a spectrum or model");
  c_length->add_option("--input", in_length, "DiagonalUnitary or ClusteredModel JSON")
      ->required();
  c_length->callback([&] {
    const json j = parse_arg(in_length, "--input");
    if (bng::io::looks_like_model(j))
      std::cout << fmt(bng::ell_ess(bng::io::model_from_json(j))) << "\n";
    else
      std::cout << fmt(bng::ell(parse_diagonal(in_length, "--input"))) << "\n";
  });

  // dist
  std::string in_du, in_dv, metric = "proj";
  CLI::App* c_dist = app.add_subcommand("dist", "distance between two diagonal unitaries");
  c_dist->add_option("--u", in_du, "DiagonalUnitary JSON")->required();
  c_dist->add_option("--v", in_dv, "DiagonalUnitary JSON")->required();
  c_dist->add_option("--metric", metric, "proj (default) or hs")
      ->check(CLI::IsMember({"proj", "hs"}));
  c_dist->callback([&] {
    const bng::diagonal_unitary u = parse_diagonal(in_du, "--u");
    const bng::diagonal_unitary v = parse_diagonal(in_dv, "--v");
    if (metric == "hs")
      std::cout << fmt(bng::hs_dist(u, v)) << "\n";
    else
      std::cout << fmt(bng::proj_dist(u.to_matrix(), v.to_matrix())) << "\n";
  });

  // decompose
  std::string in_dec, kind = "product", out_dec = "-";
  CLI::App* c_dec = app.add_subcommand("decompose", "factor a diagonal unitary");
  c_dec->add_option("--input", in_dec, "DiagonalUnitary JSON")->required();
  c_dec->add_option("--kind", kind, "product or torus")
      ->check(CLI::IsMember({"product", "torus"}));
  c_dec->add_option("--out", out_dec, "output path, - for stdout");
  c_dec->callback([&] {
    const bng::diagonal_unitary u = parse_diagonal(in_dec, "--input");
    const bng::factor_sequence fs =
        kind == "torus" ? bng::torus_decomposition(u) : bng::product_decomposition(u);
    write_out(out_dec, bng::io::to_json(fs).dump(2));
  });

  // order
  std::string in_order;
  CLI::App* c_order = app.add_subcommand("order", "greedy zero-sum balancing order");
  c_order->add_option("--input", in_order, "array of angles or {\"phases\": [...]}")
      ->required();
  c_order->callback([&] {
    const std::vector<std::size_t> sigma = bng::greedy_order(parse_angles(in_order, "--input"));
    json j = json::array();
    for (std::size_t s : sigma) j.push_back(s);
    std::cout << j.dump() << "\n";
  });

  // split
  std::string in_split;
  CLI::App* c_split = app.add_subcommand("split", "split angles into two recombining halves");
  c_split->add_option("--input", in_split, "array of angles or {\"phases\": [...]}")
      ->required();
  c_split->callback([&] {
    const auto [first, second] = bng::split_angles(parse_angles(in_split, "--input"));
    json j;
    j["first"] = first;
    j["second"] = second;
    std::cout << j.dump(2) << "\n";
  });

  // su2
  double theta = 0.0, phi = 0.0;
  std::size_t chain_m = 2;
  std::string out_su2 = "-";
  CLI::App* c_su2 = app.add_subcommand("su2", "conjugate chain hitting a target rotation");
  c_su2->add_option("--theta", theta, "base rotation angle")->required();
  c_su2->add_option("--phi", phi, "target angle, |phi| <= m|theta|")->required();
  c_su2->add_option("--m", chain_m, "chain length (even)")->required();
  c_su2->add_option("--out", out_su2, "output path, - for stdout");
  c_su2->callback([&] {
    const bng::conjugate_chain chain = bng::su2_chain(theta, phi, chain_m);
    json j;
    j["base_angle"] = chain.base_angle;
    j["conjugators"] = json::array();
    for (const bng::cmatrix& g : chain.conjugators)
      j["conjugators"].push_back(bng::io::to_json(g));
    write_out(out_su2, j.dump(2));
  });

  // certify
  std::string in_cu, in_cv, mode = "matrix", out_cert = "-";
  std::size_t cert_m = 0, truncation = 64;
  CLI::App* c_cert = app.add_subcommand("certify", "produce a conjugation certificate");
  c_cert->add_option("--u", in_cu, "target: DiagonalUnitary (matrix) or ClusteredModel (calkin)")
      ->required();
  c_cert->add_option("--v", in_cv, "base ClusteredModel JSON")->required();
  c_cert->add_option("--mode", mode, "matrix or calkin")
      ->check(CLI::IsMember({"matrix", "calkin"}));
  c_cert->add_option("--m", cert_m, "round count (matrix mode)");
  c_cert->add_option("--truncation", truncation, "truncation dimension (calkin mode)");
  c_cert->add_option("--out", out_cert, "output path, - for stdout");
  c_cert->callback([&] {
    bng::certificate cert;
    if (mode == "calkin") {
      cert = bng::certify_calkin(bng::io::model_from_json(parse_arg(in_cu, "--u")),
                                 bng::io::model_from_json(parse_arg(in_cv, "--v")), truncation);
    } else {
      if (cert_m == 0)
        bng::fail_precondition("certify: --m (round count >= 1) is required in matrix mode");
      cert = bng::certify_diag(parse_diagonal(in_cu, "--u"),
                               bng::io::model_from_json(parse_arg(in_cv, "--v")), cert_m);
    }
    write_out(out_cert, bng::io::to_json(cert).dump(2));
  });

  // verify
  std::string in_cert;
  double tol = 0.0;  // 0 = use env/default
  CLI::App* c_ver = app.add_subcommand("verify", "check a certificate");
  c_ver->add_option("--cert", in_cert, "Certificate JSON")->required();
  c_ver->add_option("--tolerance", tol, "override verification tolerance");
  c_ver->callback([&] {
    const bng::certificate cert =
        bng::io::certificate_from_json(parse_arg(in_cert, "--cert"));
    const double use_tol = tol > 0.0 ? tol : env_tolerance();
    const bng::report rep = bng::verify(cert, use_tol);
    std::cout << bng::io::to_json(rep).dump(2) << "\n";
    if (!rep.pass) bng::fail_verification(
        "certificate rejected: worst factor " + std::to_string(rep.worst_factor_index) +
        " residual " + fmt(rep.worst_factor_residual) + ", product residual " +
        fmt(rep.product_residual) + (rep.count_ok ? "" : ", factor count exceeds claimed bound"));
  });

  // commutator-witness
  std::string in_cw, out_cw = "-";
  CLI::App* c_cw = app.add_subcommand("commutator-witness",
                                      "permutation witness for the commutator inequality");
  c_cw->add_option("--input", in_cw, "FiniteSpectrumUnitary JSON")->required();
  c_cw->add_option("--out", out_cw, "output path, - for stdout");
  c_cw->callback([&] {
    const bng::finite_spectrum_unitary u =
        bng::io::spectrum_from_json(parse_arg(in_cw, "--input"));
    const bng::witness_result w = bng::commutator_witness(u);
    json j;
    j["witness"] = bng::io::to_json(w.v);
    j["ratio"] = w.ratio;
    write_out(out_cw, j.dump(2));
  });

  // doubled-commutator
  std::string in_v0, in_w0, out_dc = "-";
  CLI::App* c_dc = app.add_subcommand("doubled-commutator",
                                      "doubled commutator with its 4-factor certificate");
  c_dc->add_option("--v0", in_v0, "UnitaryMatrix JSON")->required();
  c_dc->add_option("--w0", in_w0, "UnitaryMatrix JSON")->required();
  c_dc->add_option("--out", out_dc, "output path, - for stdout");
  c_dc->callback([&] {
    const bng::cmatrix v0 = bng::io::matrix_from_json(parse_arg(in_v0, "--v0"));
    const bng::cmatrix w0 = bng::io::matrix_from_json(parse_arg(in_w0, "--w0"));
    const bng::doubled_result res = bng::doubled_commutator(v0, w0);
    json j;
    j["doubled"] = bng::io::to_json(res.doubled);
    j["certificate"] = bng::io::to_json(res.cert);
    write_out(out_dc, j.dump(2));
  });

  // bound
  std::string in_bound, bmode = "calkin";
  CLI::App* c_bound = app.add_subcommand("bound", "generation-degree bound from length");
  c_bound->add_option("--input", in_bound, "ClusteredModel or FiniteSpectrumUnitary JSON")
      ->required();
  c_bound->add_option("--mode", bmode, "calkin or typeiii")
      ->check(CLI::IsMember({"calkin", "typeiii"}));
  c_bound->callback([&] {
    const json j = parse_arg(in_bound, "--input");
    const bng::bound_mode m =
        bmode == "typeiii" ? bng::bound_mode::typeiii : bng::bound_mode::calkin;
    std::size_t value = 0;
    if (j.is_object() && j.contains("eigenphases")) {
      if (m != bng::bound_mode::typeiii)
        bng::fail_precondition("bound: finite-spectrum input requires --mode typeiii");
      value = bng::ng_bound_typeiii(bng::io::spectrum_from_json(j));
    } else {
      value = bng::ng_bound(bng::io::model_from_json(j), m);
    }
    std::cout << value << "\n";
  });

  // selftest
  std::uint64_t seed = 1;
  CLI::App* c_self = app.add_subcommand("selftest", "run the acceptance property suite");
  c_self->add_option("--seed", seed, "rng seed (default 1)");
  c_self->callback([&] {
    if (!bng::selftest::run_selftest(seed, std::cout))
      bng::fail_verification("selftest: at least one criterion failed");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bng::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case bng::errc::precondition: return 1;
      case bng::errc::verification: return 2;
      case bng::errc::io: return 3;
      case bng::errc::internal: return 2;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
