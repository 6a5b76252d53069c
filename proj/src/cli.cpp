#include "opnormlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "opnormlab/cocycle.hpp"
#include "opnormlab/counterexample.hpp"
#include "opnormlab/json_io.hpp"
#include "opnormlab/linalg.hpp"
#include "opnormlab/random.hpp"
#include "opnormlab/sdp.hpp"
#include "opnormlab/superop.hpp"
#include "opnormlab/tensornorm.hpp"

namespace opnormlab::cli {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json coords_to_json(const cocycle::Coords& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::size_t draw_dim(Rng& rng, std::size_t cap) {
  return 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(cap));
}

tensornorm::TensorElement random_element(Rng& rng, std::size_t dim_cap,
                                         std::size_t pair_cap) {
  const std::size_t n1 = draw_dim(rng, dim_cap), n2 = draw_dim(rng, dim_cap);
  const std::size_t m1 = draw_dim(rng, dim_cap), m2 = draw_dim(rng, dim_cap);
  const std::size_t k = draw_dim(rng, pair_cap);
  std::vector<tensornorm::TensorElement::Pair> pairs;
  pairs.reserve(k);
  for (std::size_t t = 0; t < k; ++t)
    pairs.emplace_back(random_matrix(rng, n1, n2), random_matrix(rng, m1, m2));
  return tensornorm::TensorElement(std::move(pairs));
}

superop::Superoperator random_superop(Rng& rng, std::size_t n, std::size_t m,
                                      std::size_t k) {
  std::vector<superop::Superoperator::Pair> pairs;
  pairs.reserve(k);
  for (std::size_t t = 0; t < k; ++t)
    pairs.emplace_back(random_matrix(rng, n, n), random_matrix(rng, m, m));
  return superop::Superoperator(std::move(pairs));
}

struct CommandResult {
  json payload;
  CheckTally checks;
  std::string csv;
};

CommandResult run_gap(const RunConfig& cfg) {
  const auto rows = counterexample::gap_experiment(cfg.nmax, cfg.d);
  CommandResult res;
  json jrows = json::array();
  std::ostringstream csv;
  csv << "n,h_upper,min_flipped,ratio\n";
  for (const auto& row : rows) {
    const double root = std::sqrt(static_cast<double>(row.n));
    const bool ok = row.h_upper == 1.0 && std::abs(row.min_flipped - root) <= 1e-9 &&
                    row.certificate.consistent;
    jrows.push_back({{"n", row.n},
                     {"h_upper", row.h_upper},
                     {"min_flipped", row.min_flipped},
                     {"ratio", row.ratio},
                     {"certificate",
                      {{"lower", row.certificate.lower},
                       {"upper", row.certificate.upper},
                       {"consistent", row.certificate.consistent}}},
                     {"ok", ok}});
    csv << row.n << ',' << fmt(row.h_upper) << ',' << fmt(row.min_flipped) << ','
        << fmt(row.ratio) << '\n';
    ++(ok ? res.checks.pass : res.checks.fail);
  }
  res.payload = json{{"nmax", cfg.nmax}, {"d", cfg.d}, {"rows", std::move(jrows)}};
  res.csv = csv.str();
  return res;
}

const char* verdict_name(superop::InterpolationVerdict v) {
  switch (v) {
    case superop::InterpolationVerdict::holds: return "holds";
    case superop::InterpolationVerdict::inconclusive: return "inconclusive";
    default: return "failed";
  }
}

CommandResult run_interp(const RunConfig& cfg) {
  CommandResult res;
  const Rng root = Rng(cfg.seed).child("interp");
  json maps = json::array();
  std::ostringstream csv;
  csv << "idx,s2,lower1,lower_inf,verdict,restarts,escalated\n";
  std::size_t escalated_count = 0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Rng gen = root.child("map-" + std::to_string(i));
    const superop::Superoperator phi =
        random_superop(gen, cfg.dim_left, cfg.dim_right, cfg.pair_count);
    superop::SeesawOptions opt;
    opt.restarts = cfg.restarts;
    opt.seed = root.child("seesaw-" + std::to_string(i)).seed();
    superop::InterpolationReport rep = superop::interpolation_check(phi, opt);
    bool escalated = false;
    if (rep.verdict == superop::InterpolationVerdict::inconclusive) {
      escalated = true;
      ++escalated_count;
      opt.restarts = superop::kInterpolationRestartCap;
      rep = superop::interpolation_check(phi, opt);
    }
    const bool ok = rep.verdict == superop::InterpolationVerdict::holds;
    maps.push_back({{"idx", i},
                    {"s2", rep.s2},
                    {"lower1", rep.lower1},
                    {"lower_inf", rep.lower_inf},
                    {"rt_bound_holds", rep.rt_bound_holds},
                    {"verdict", verdict_name(rep.verdict)},
                    {"restarts", rep.restarts},
                    {"escalated", escalated}});
    csv << i << ',' << fmt(rep.s2) << ',' << fmt(rep.lower1) << ',' << fmt(rep.lower_inf)
        << ',' << verdict_name(rep.verdict) << ',' << rep.restarts << ','
        << (escalated ? 1 : 0) << '\n';
    ++(ok ? res.checks.pass : res.checks.fail);
  }
  res.payload = json{{"dims", {cfg.dim_left, cfg.dim_right}},
                     {"pairs", cfg.pair_count},
                     {"count", cfg.count},
                     {"restarts", cfg.restarts},
                     {"maps", std::move(maps)},
                     {"inconclusive_initial", escalated_count},
                     {"inconclusive_rate",
                      cfg.count ? static_cast<double>(escalated_count) /
                                      static_cast<double>(cfg.count)
                                : 0.0}};
  res.csv = csv.str();
  return res;
}

CommandResult run_diamond(const RunConfig& cfg) {
  superop::Superoperator phi = superop::identity_map(1);
  json reference;
  if (cfg.map == "transpose") {
    phi = superop::transpose_map(cfg.dim);
    reference = static_cast<double>(cfg.dim);
  } else if (cfg.map == "identity") {
    phi = superop::identity_map(cfg.dim);
    reference = 1.0;
  } else if (cfg.map == "random") {
    Rng gen = Rng(cfg.seed).child("diamond").child("map");
    phi = random_superop(gen, cfg.dim, cfg.dim, cfg.pair_count);
  } else {
    throw UsageError("unknown --map (expected transpose, identity, or random)");
  }
  const superop::DiamondResult r = superop::diamond_norm_certified(phi);
  bool ok = r.status == sdp::SdpStatus::optimal;
  if (ok && reference.is_number())
    ok = std::abs(r.value - reference.get<double>()) <= 1e-4;
  CommandResult res;
  res.payload = json{{"map", cfg.map},       {"d", cfg.dim},
                     {"value", r.value},     {"gap", r.sdp_gap},
                     {"iterations", r.iterations},
                     {"status", sdp::status_name(r.status)},
                     {"reference", reference}};
  std::ostringstream csv;
  csv << "d,value,gap,iterations,status\n";
  csv << cfg.dim << ',' << fmt(r.value) << ',' << fmt(r.sdp_gap) << ',' << r.iterations
      << ',' << sdp::status_name(r.status) << '\n';
  res.csv = csv.str();
  ++(ok ? res.checks.pass : res.checks.fail);
  return res;
}

json certificate_json(const tensornorm::Theorem1Report& c) {
  return json{{"lower", c.lower}, {"upper", c.upper}, {"consistent", c.consistent}};
}

CommandResult run_theorem1(const RunConfig& cfg) {
  CommandResult res;
  std::ostringstream csv;
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw UsageError("cannot open --input file: " + cfg.input);
    json j;
    in >> j;
    const tensornorm::TensorElement u = json_io::element_from_json(j);
    const tensornorm::Theorem1Report cert = tensornorm::theorem1_certificate(u);
    res.payload = json{{"source", cfg.input}, {"certificate", certificate_json(cert)}};
    csv << "lower,upper,consistent\n"
        << fmt(cert.lower) << ',' << fmt(cert.upper) << ',' << (cert.consistent ? 1 : 0)
        << '\n';
    ++(cert.consistent ? res.checks.pass : res.checks.fail);
    res.csv = csv.str();
    return res;
  }

  const Rng root = Rng(cfg.seed).child("theorem1");
  json cases = json::array();
  csv << "idx,lower,upper,consistent\n";
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Rng gen = root.child("elem-" + std::to_string(i));
    const tensornorm::TensorElement u = random_element(gen, 4, 5);
    const tensornorm::Theorem1Report cert = tensornorm::theorem1_certificate(u);
    cases.push_back({{"idx", i},
                     {"dims", {u.left_rows(), u.left_cols(), u.right_rows(), u.right_cols()}},
                     {"pairs", u.pair_count()},
                     {"certificate", certificate_json(cert)}});
    csv << i << ',' << fmt(cert.lower) << ',' << fmt(cert.upper) << ','
        << (cert.consistent ? 1 : 0) << '\n';
    ++(cert.consistent ? res.checks.pass : res.checks.fail);
  }

  // The y_n family: certified lower bound sqrt(n) against Haagerup upper 1.
  json yn_rows = json::array();
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto fam = counterexample::shift_family(n, 1);
    const auto xn = counterexample::build_xn(fam);
    const auto yn = counterexample::build_yn(fam);
    const double h = tensornorm::haagerup_upper(xn);
    const tensornorm::Theorem1Report cert = tensornorm::theorem1_certificate(yn);
    const bool ok = cert.consistent &&
                    cert.lower >= std::sqrt(static_cast<double>(n)) - 1e-9 &&
                    cert.lower > h;
    yn_rows.push_back({{"n", n},
                       {"h_upper", h},
                       {"certificate", certificate_json(cert)},
                       {"exceeds_haagerup", cert.lower > h},
                       {"ok", ok}});
    ++(ok ? res.checks.pass : res.checks.fail);
  }
  res.payload = json{{"count", cfg.count},
                     {"dims_cap", 4},
                     {"pairs_cap", 5},
                     {"cases", std::move(cases)},
                     {"yn_rows", std::move(yn_rows)}};
  res.csv = csv.str();
  return res;
}

CommandResult run_cocycle(const RunConfig& cfg) {
  if (cfg.algebra != "truncpoly")
    throw UsageError("unknown --algebra (only truncpoly is shipped)");
  if (cfg.degree < 2) throw UsageError("--degree must be at least 2");

  const cocycle::TruncatedPoly tp = cocycle::truncated_poly(cfg.degree);
  const cocycle::FinAlgebra ta = cocycle::tensor_algebra(tp.algebra, tp.algebra);
  const cocycle::FinModule tm = cocycle::tensor_module(tp.module, tp.module);
  const cocycle::Cochain2 f = cocycle::wedge_cocycle(tp.algebra, tp.algebra, tp.module,
                                                     tp.module, tp.derivation,
                                                     tp.derivation);

  const double leibniz = cocycle::leibniz_residual(tp.algebra, tp.module, tp.derivation);
  const double coc_res = cocycle::cocycle_residual(f, ta, tm);
  const double anti_res = cocycle::antisymmetry_residual(f);
  const bool coc_ok = coc_res <= 1e-10;
  const bool anti_ok = anti_res <= 1e-12;

  const Rng root = Rng(cfg.seed).child("cocycle");
  const auto witness = cocycle::nonvanishing_witness(tp.algebra, tp.algebra, tp.derivation,
                                                     tp.derivation, f,
                                                     root.child("witness").seed());
  const bool witness_ok =
      witness && witness->value_norm > 1e-8 && witness->identity_residual <= 1e-10;

  const cocycle::PolarizationReport polar =
      cocycle::polarization_check(tp.algebra, root.child("polarization").seed(), 1000);
  const cocycle::SpanReport spans = cocycle::power_span_check(tp.algebra);
  const bool span_ok = spans.pair_equal && spans.quartic_equal;

  double cob_max = 0.0;
  for (std::size_t k = 0; k < 20; ++k) {
    Rng gen = root.child("psi-" + std::to_string(k));
    const ComplexMatrix psi = random_matrix(gen, tm.dim(), ta.dim());
    cob_max = std::max(cob_max, cocycle::coboundary_symmetry_residual(psi, ta, tm));
  }
  const bool cob_ok = cob_max <= 1e-12;

  CommandResult res;
  json jw;
  if (witness)
    jw = json{{"a", coords_to_json(witness->a)},
              {"b", coords_to_json(witness->b)},
              {"value", coords_to_json(witness->value)},
              {"value_norm", witness->value_norm},
              {"identity_residual", witness->identity_residual}};
  res.payload = json{
      {"algebra", cfg.algebra},
      {"degree", cfg.degree},
      {"cocycle", coc_ok},
      {"antisymmetric", anti_ok},
      {"witness", std::move(jw)},
      {"polarization", polar.ok},
      {"spans",
       {{"dim", spans.dim},
        {"rank_pair_products", spans.rank_pair_products},
        {"rank_squares", spans.rank_squares},
        {"rank_quad_products", spans.rank_quad_products},
        {"rank_square_pairs", spans.rank_square_pairs},
        {"rank_fourth_powers", spans.rank_fourth_powers},
        {"pair_equal", spans.pair_equal},
        {"quartic_equal", spans.quartic_equal}}},
      {"coboundary_symmetric", cob_ok},
      {"residuals",
       {{"leibniz", leibniz},
        {"cocycle", coc_res},
        {"antisymmetry", anti_res},
        {"coboundary_max", cob_max},
        {"polarization_pair", polar.max_pair_residual},
        {"polarization_quartic", polar.max_quartic_residual}}}};
  for (const bool ok : {coc_ok, anti_ok, witness_ok, polar.ok, span_ok, cob_ok})
    ++(ok ? res.checks.pass : res.checks.fail);
  return res;
}

CommandResult run_sdp_selftest(const RunConfig& cfg) {
  CommandResult res;
  json instances = json::array();
  std::ostringstream csv;
  csv << "name,status,value,reference,abs_error,relative_gap,iterations,ok\n";
  const Rng root = Rng(cfg.seed).child("sdp-selftest");

  const auto record = [&](const std::string& name, const sdp::SdpSolution& sol,
                          double value, json reference, bool ok, json details = {}) {
    const double abs_error =
        reference.is_number() ? std::abs(value - reference.get<double>()) : 0.0;
    json row = {{"name", name},
                {"status", sdp::status_name(sol.status)},
                {"value", value},
                {"reference", reference},
                {"abs_error", abs_error},
                {"relative_gap", sol.relative_gap},
                {"iterations", sol.iterations},
                {"ok", ok}};
    if (!details.is_null() && !details.empty()) row["details"] = details;
    instances.push_back(std::move(row));
    csv << name << ',' << sdp::status_name(sol.status) << ',' << fmt(value) << ','
        << (reference.is_number() ? fmt(reference.get<double>()) : std::string())
        << ',' << fmt(abs_error) << ',' << fmt(sol.relative_gap) << ',' << sol.iterations
        << ',' << (ok ? 1 : 0) << '\n';
    ++(ok ? res.checks.pass : res.checks.fail);
  };

  for (std::size_t d : {2, 3}) {
    const sdp::SdpSolution sol = sdp::solve(sdp::make_trace_problem(d));
    const double value = -sol.primal_value;
    record("trace-" + std::to_string(d), sol, value, 1.0,
           sol.status == sdp::SdpStatus::optimal && std::abs(value - 1.0) <= 1e-6 &&
               sol.relative_gap <= 1e-7);
  }

  {
    ComplexMatrix a(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    const sdp::SdpSolution sol = sdp::solve(sdp::make_spectral_norm_problem(a));
    const double value = -sol.primal_value;
    record("spectral-diag-3-4", sol, value, 4.0,
           sol.status == sdp::SdpStatus::optimal && std::abs(value - 4.0) <= 1e-6);
  }

  {
    Rng gen = root.child("spectral-random");
    const ComplexMatrix a = random_matrix(gen, 4, 4);
    const double ref = linalg::spectral_norm(a);
    const sdp::SdpSolution sol = sdp::solve(sdp::make_spectral_norm_problem(a));
    const double value = -sol.primal_value;
    record("spectral-random-4x4", sol, value, ref,
           sol.status == sdp::SdpStatus::optimal && std::abs(value - ref) <= 1e-6);
  }

  {
    Rng gen = root.child("scaling");
    const ComplexMatrix a = random_matrix(gen, 3, 3);
    const sdp::SdpSolution base = sdp::solve(sdp::make_spectral_norm_problem(a));
    for (const double s : {2.0, 10.0}) {
      ComplexMatrix sa = a;
      sa *= s;
      const sdp::SdpSolution sol = sdp::solve(sdp::make_spectral_norm_problem(sa));
      const double value = -sol.primal_value;
      const double ref = -s * base.primal_value;
      record("scaling-" + fmt(s), sol, value, ref,
             sol.status == sdp::SdpStatus::optimal &&
                 std::abs(value - ref) <= 1e-6 * (1.0 + std::abs(ref)));
    }
  }

  {
    Rng gen = root.child("duality");
    const ComplexMatrix a = random_matrix(gen, 3, 2);
    const sdp::SdpSolution sol = sdp::solve(sdp::make_spectral_norm_problem(a));
    double lambda_min = 0.0;
    for (const ComplexMatrix& x : sol.primal_blocks) {
      const auto eig = linalg::hermitian_eig(x.hermitized());
      lambda_min = std::min(lambda_min, eig.eigenvalues.front());
    }
    const bool ok = sol.status == sdp::SdpStatus::optimal &&
                    sol.dual_value <= sol.primal_value + 1e-6 && lambda_min >= -1e-9;
    record("duality-and-psd", sol, sol.primal_value - sol.dual_value, json(), ok,
           json{{"lambda_min", lambda_min}});
  }

  {
    // X00 = 2 contradicts tr X = 1 on the PSD cone.
    sdp::SdpProblem p({2});
    p.set_objective({ComplexMatrix::identity(2)});
    ComplexMatrix e00(2, 2);
    e00(0, 0) = 1.0;
    p.add_constraint({e00}, 2.0);
    p.add_constraint({ComplexMatrix::identity(2)}, 1.0);
    const sdp::SdpSolution sol = sdp::solve(p);
    record("infeasible-detect", sol, sol.primal_value, json(),
           sol.status != sdp::SdpStatus::optimal);
  }

  {
    // tr X = 1 stated twice: solvable, but the dependency must be flagged.
    sdp::SdpProblem p({2});
    ComplexMatrix c(2, 2);
    c(0, 0) = -1.0;
    p.set_objective({c});
    p.add_constraint({ComplexMatrix::identity(2)}, 1.0);
    ComplexMatrix two = ComplexMatrix::identity(2);
    two *= 2.0;
    p.add_constraint({two}, 2.0);
    const sdp::SdpSolution sol = sdp::solve(p);
    const double value = -sol.primal_value;
    record("dependent-flag", sol, value, 1.0,
           sol.status == sdp::SdpStatus::optimal && sol.constraints_dependent &&
               std::abs(value - 1.0) <= 1e-6,
           json{{"constraints_dependent", sol.constraints_dependent}});
  }

  {
    Rng gen = root.child("roundtrip");
    const ComplexMatrix a = random_matrix(gen, 2, 3);
    const sdp::SdpProblem p = sdp::make_spectral_norm_problem(a);
    const sdp::SdpProblem q = json_io::problem_from_json(json_io::problem_to_json(p));
    const sdp::SdpSolution sp = sdp::solve(p);
    const sdp::SdpSolution sq = sdp::solve(q);
    record("json-roundtrip", sq, sq.primal_value, sp.primal_value,
           sq.status == sdp::SdpStatus::optimal &&
               std::abs(sp.primal_value - sq.primal_value) <= 1e-12);
  }

  {
    const superop::DiamondResult r =
        superop::diamond_norm_certified(superop::transpose_map(2));
    sdp::SdpSolution shim;
    shim.status = r.status;
    shim.relative_gap = r.sdp_gap;
    shim.iterations = r.iterations;
    record("diamond-transpose-2", shim, r.value, 2.0,
           r.status == sdp::SdpStatus::optimal && std::abs(r.value - 2.0) <= 1e-4);
  }

  res.payload = json{{"instances", std::move(instances)}};
  res.csv = csv.str();
  return res;
}

CommandResult run_all(const RunConfig& cfg) {
  CommandResult res;
  json payload;

  RunConfig sub = cfg;
  sub.out.clear();
  sub.format = "json";

  sub.command = "gap";
  sub.nmax = 6;
  sub.d = 1;
  CommandResult gap = run_gap(sub);

  sub = cfg;
  sub.command = "interp";
  sub.count = 10;
  sub.dim_left = sub.dim_right = 3;
  sub.pair_count = 3;
  sub.restarts = 16;
  CommandResult interp = run_interp(sub);

  sub = cfg;
  sub.command = "diamond";
  sub.map = "transpose";
  sub.dim = 2;
  CommandResult diamond = run_diamond(sub);

  sub = cfg;
  sub.command = "theorem1";
  sub.count = 50;
  sub.input.clear();
  CommandResult theorem1 = run_theorem1(sub);

  sub = cfg;
  sub.command = "cocycle";
  sub.algebra = "truncpoly";
  sub.degree = 4;
  CommandResult coc = run_cocycle(sub);

  sub = cfg;
  sub.command = "sdp-selftest";
  CommandResult selftest = run_sdp_selftest(sub);

  payload["gap"] = std::move(gap.payload);
  payload["interp"] = std::move(interp.payload);
  payload["diamond"] = std::move(diamond.payload);
  payload["theorem1"] = std::move(theorem1.payload);
  payload["cocycle"] = std::move(coc.payload);
  payload["sdp_selftest"] = std::move(selftest.payload);
  for (const CommandResult* r : {&gap, &interp, &diamond, &theorem1, &coc, &selftest}) {
    res.checks.pass += r->checks.pass;
    res.checks.fail += r->checks.fail;
    res.checks.inconclusive += r->checks.inconclusive;
  }
  res.payload = std::move(payload);
  return res;
}

json config_echo(const RunConfig& cfg) {
  return json{{"command", cfg.command},
              {"seed", cfg.seed},
              {"out", cfg.out},
              {"format", cfg.format},
              {"nmax", cfg.nmax},
              {"d", cfg.d},
              {"dims", {cfg.dim_left, cfg.dim_right}},
              {"pairs", cfg.pair_count},
              {"count", cfg.count},
              {"restarts", cfg.restarts},
              {"map", cfg.map},
              {"dim", cfg.dim},
              {"input", cfg.input},
              {"algebra", cfg.algebra},
              {"degree", cfg.degree}};
}

}  // namespace

Report run(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv")
    throw UsageError("--format must be json or csv");
  const bool csv_capable = config.command == "gap" || config.command == "interp" ||
                           config.command == "diamond" || config.command == "theorem1" ||
                           config.command == "sdp-selftest";
  if (config.format == "csv" && !csv_capable)
    throw UsageError("--format csv is not available for " +
                     (config.command.empty() ? std::string("<none>") : config.command));

  const auto t0 = std::chrono::steady_clock::now();
  CommandResult r;
  if (config.command == "gap")
    r = run_gap(config);
  else if (config.command == "interp")
    r = run_interp(config);
  else if (config.command == "diamond")
    r = run_diamond(config);
  else if (config.command == "theorem1")
    r = run_theorem1(config);
  else if (config.command == "cocycle")
    r = run_cocycle(config);
  else if (config.command == "sdp-selftest")
    r = run_sdp_selftest(config);
  else if (config.command == "all")
    r = run_all(config);
  else
    throw UsageError("unknown command: " + config.command);
  const auto t1 = std::chrono::steady_clock::now();

  Report rep;
  rep.checks = r.checks;
  rep.csv = std::move(r.csv);
  rep.body = json{
      {"artifact_version", kVersion},
      {"command", config.command},
      {"config", config_echo(config)},
      {"checks",
       {{"pass", r.checks.pass},
        {"fail", r.checks.fail},
        {"inconclusive", r.checks.inconclusive}}},
      {"payload", std::move(r.payload)},
      {"wall_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
  return rep;
}

void write_output(const Report& report, const RunConfig& config) {
  const std::string text =
      config.format == "csv" ? report.csv : report.body.dump(2) + "\n";
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(config.out);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write output file: " + config.out);
    f << text;
  }
  fs::rename(tmp, target);
}

int run_and_write(const RunConfig& config) {
  try {
    const Report rep = run(config);
    write_output(rep, config);
    return rep.checks.fail == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const SizeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ShapeError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    Report rep;
    rep.body = json{{"artifact_version", kVersion},
                    {"command", config.command},
                    {"config", config_echo(config)},
                    {"checks", {{"pass", 0}, {"fail", 1}, {"inconclusive", 0}}},
                    {"payload", {{"error", {{"type", "numerical"}, {"message", e.what()}}}}},
                    {"wall_ms", 0}};
    rep.checks.fail = 1;
    RunConfig jc = config;
    jc.format = "json";
    try {
      write_output(rep, jc);
    } catch (...) {
      std::cerr << "numerical error: " << e.what() << "\n";
    }
    return 1;
  }
}

}  // namespace opnormlab::cli
