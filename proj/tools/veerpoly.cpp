#include "veerpoly/batch.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace veerpoly;

namespace {

int default_jobs() {
  if (const char* env = std::getenv("VEERPOLY_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring VEERPOLY_JOBS=" << env << "\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json cusp_bases_json(const Analysis& a) {
  json out = json::array();
  for (std::size_t c = 0; c < a.cusps.size(); ++c) {
    const auto& cu = a.cusps[c];
    out.push_back({{"cusp", "c" + std::to_string(c)},
                   {"a_in_H_M", cu.image_free[0]},
                   {"b_in_H_M", cu.image_free[1]}});
  }
  return out;
}

struct ComputeArgs {
  std::string sig;
  bool taut = false, alex = false, hat = false, all = false, eo = false, verify = false;
};

int cmd_compute(const ComputeArgs& args) {
  TautSig sig = parse_taut_sig(args.sig);
  Analysis a = analyze(sig.table, sig.angles);
  bool any = args.taut || args.alex || args.hat || args.eo;
  PolyRequest req;
  req.taut = args.all || args.taut || !any;
  req.alex = args.all || args.alex || !any;
  req.hat = args.all || args.hat || !any;
  PolyReport rep = compute_polynomials(a, req);

  json j;
  j["sig"] = sig.text();
  j["b1"] = rep.b1;
  j["homology"] = torsion_string(rep.torsion, rep.b1);
  j["cusps"] = rep.cusps;
  j["edge_orientable"] = rep.edge_orientable;
  j["edge_orientable_fab"] = rep.edge_orientable_fab;
  j["sigma"] = rep.sigma ? json(*rep.sigma) : json(nullptr);
  j["cover_cusps"] = rep.cover_cusps ? json(*rep.cover_cusps) : json(nullptr);
  if (req.taut) j["theta"] = poly_to_json(*rep.theta);
  if (req.alex) j["delta"] = poly_to_json(*rep.delta);
  if (req.hat) j["delta_hat"] = rep.delta_hat ? poly_to_json(*rep.delta_hat) : json(nullptr);
  if (args.verify) {
    if (!rep.theta || !rep.delta) throw DomainError("--verify needs both theta and delta");
    RunRecord rr;
    rr.attach(verify_identities(rep));
    j["verify"] = {{"twisted", rr.verify->twisted ? json(*rr.verify->twisted) : json(nullptr)},
                   {"hat_product", rr.verify->hat_product ? json(*rr.verify->hat_product) : json(nullptr)},
                   {"even_torsion", rr.verify->even_torsion ? json(*rr.verify->even_torsion) : json(nullptr)},
                   {"pass", rr.verify->pass}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_fill(const std::string& sig_text, const std::string& slopes) {
  TautSig sig = parse_taut_sig(sig_text);
  Analysis a = analyze(sig.table, sig.angles);
  FillingSpec spec = FillingSpec::parse(slopes, static_cast<int>(a.cusps.size()));
  FilledHomology fh = filled_homology(a.h1, a.cusps, spec);
  if (fh.s == 0) throw DomainError("filled manifold has b1 = 0; no polynomial specialisation is defined");
  PolyReport rep = compute_polynomials(a, PolyRequest{true, false, false});
  auto sigma_N = vN_edge_orientable(a.eo, a.h1, fh);
  LaurentPoly spec_theta = specialise_under_filling(*rep.theta, fh);
  FilledPrediction pred = predict_filled_alexander(*rep.theta, fh, sigma_N, a.h1.rank);

  json j;
  j["sig"] = sig.text();
  j["slopes"] = spec.to_string();
  j["cusp_bases"] = cusp_bases_json(a);
  j["b1_M"] = a.h1.rank;
  j["b1_N"] = fh.s;
  j["homology_N"] = torsion_string(fh.torsion, fh.s);
  j["boundary_empty"] = fh.boundary_empty;
  j["i_star"] = fh.i_star;
  json cores = json::array();
  for (int c = 0; c < fh.k(); ++c)
    cores.push_back({{"cusp", "c" + std::to_string(fh.filled[c])},
                     {"class", fh.core_classes[c]},
                     {"trivial", static_cast<bool>(fh.core_trivial[c])}});
  j["core_classes"] = cores;
  j["sigma_N"] = sigma_N ? json(*sigma_N) : json(nullptr);
  j["slope_criterion"] = slope_criterion(a.eo, fh);
  j["specialised_taut_polynomial"] = poly_to_json(spec_theta);
  j["case"] = case_label(pred.which);
  j["delta_N"] = pred.delta_N ? poly_to_json(*pred.delta_N) : json(nullptr);
  j["equality_condition"] = pred.equality_condition;
  j["diagnostics"] = pred.diagnostics;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct BatchArgs {
  std::string census;
  int jobs = 1;
  std::string out;
  bool verify = false;
  bool eo_only = false;
  bool no_timing = false;
  long limit = -1;
  long stride = 1;
};

int cmd_batch(const BatchArgs& args) {
  std::vector<CensusEntry> entries = load_census(args.census);
  if (args.stride > 1 || args.limit >= 0) {
    std::vector<CensusEntry> kept;
    for (std::size_t i = 0; i < entries.size(); i += static_cast<std::size_t>(std::max(1L, args.stride))) {
      if (args.limit >= 0 && static_cast<long>(kept.size()) >= args.limit) break;
      kept.push_back(entries[i]);
    }
    entries.swap(kept);
  }
  RunOptions opt;
  opt.polynomials = !args.eo_only;
  opt.verify = args.verify;
  opt.timing = !args.no_timing;

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw ParseError("cannot write " + args.out);
    os = &file;
  }
  bool internal = false;
  BatchSummary sum = run_batch(entries, opt, args.jobs, [&](const RunRecord& r) {
    if (r.error && r.error_kind == 2) internal = true;
    *os << to_json(r).dump() << "\n";
  });
  os->flush();
  (args.out.empty() ? std::cerr : std::cout) << sum.to_json().dump(2) << "\n";
  return internal || sum.identity_fail > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taut, Alexander and double-cover polynomials of veering triangulations"};
  app.require_subcommand(1);

  ComputeArgs cargs;
  auto* compute = app.add_subcommand("compute", "polynomial invariants of one census signature");
  compute->add_option("sig", cargs.sig, "isosig_taut-angle-digits")->required();
  compute->add_flag("--taut", cargs.taut, "taut polynomial");
  compute->add_flag("--alex", cargs.alex, "Alexander polynomial");
  compute->add_flag("--hat", cargs.hat, "double-cover polynomial (when not edge-orientable)");
  compute->add_flag("--all", cargs.all, "all three polynomials");
  compute->add_flag("--edge-orientability", cargs.eo, "edge-orientability data only");
  compute->add_flag("--verify", cargs.verify, "check the identities relating the polynomials");

  std::string fill_sig, slopes;
  auto* fill = app.add_subcommand("fill", "Dehn filling homology and predicted Alexander polynomial");
  fill->add_option("sig", fill_sig, "isosig_taut-angle-digits")->required();
  fill->add_option("--slopes", slopes, "comma-separated c<i>:<x>/<y> in the cusp bases");

  BatchArgs bargs;
  bargs.jobs = default_jobs();
  auto* batch = app.add_subcommand("batch", "run a census file, one JSON record per line");
  batch->add_option("census", bargs.census, "census file")->required();
  batch->add_option("--jobs,-j", bargs.jobs, "worker threads (default VEERPOLY_JOBS or core count)");
  batch->add_option("--out,-o", bargs.out, "JSONL output path (default stdout)");
  batch->add_flag("--verify", bargs.verify, "check identities per entry");
  batch->add_flag("--eo-only", bargs.eo_only, "skip polynomials; edge-orientability and cover cusps only");
  batch->add_flag("--no-timing", bargs.no_timing, "write 0 for per-record timings");
  batch->add_option("--limit", bargs.limit, "process at most this many entries");
  batch->add_option("--stride", bargs.stride, "take every n-th entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*compute) return cmd_compute(cargs);
    if (*fill) return cmd_fill(fill_sig, slopes);
    if (*batch) return cmd_batch(bargs);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "unsupported input: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
