// qbc: rate regions and capacity bounds for broadcast channels with
// cooperating decoders. Subcommand front end over the header-only library.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qbc/codesim.hpp"
#include "qbc/json_io.hpp"
#include "qbc/region.hpp"
#include "qbc/relay.hpp"

using namespace qbc;

namespace {

int default_workers() {
  if (const char* env = std::getenv("QBC_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

json ensemble_to_json(const InputEnsemble& ens) {
  json states = json::array();
  for (const auto& row : ens.states) {
    json r = json::array();
    for (const auto& v : row) r.push_back(matrix_to_json(v));
    states.push_back(r);
  }
  json pmf = json::array();
  for (Eigen::Index a = 0; a < ens.pmf.rows(); ++a) {
    json r = json::array();
    for (Eigen::Index b = 0; b < ens.pmf.cols(); ++b) r.push_back(ens.pmf(a, b));
    pmf.push_back(r);
  }
  return json{{"card0", ens.card0}, {"card1", ens.card1}, {"pmf", pmf}, {"states", states}};
}

json region_to_json(const RateRegion& r, const json& config) {
  json hull = json::array();
  for (const auto& p : r.hull) hull.push_back({p[0], p[1]});
  json points = json::array();
  for (const auto& pt : r.points) {
    json jp{{"x", pt.x},   {"y", pt.y},     {"b0", pt.b0},
            {"b1", pt.b1}, {"bsum", pt.bsum}};
    if (pt.ens) jp["ensemble"] = ensemble_to_json(*pt.ens);
    if (pt.state.size() > 0) {
      jp["state"] = matrix_to_json(pt.state);
      jp["state_dims"] = pt.state_dims;
      jp["i1"] = pt.i1;
      jp["i2"] = pt.i2;
    }
    points.push_back(jp);
  }
  return json{{"schema", kSchemaVersion},
              {"type", "region"},
              {"kind", r.kind},
              {"conferencing", r.conferencing},
              {"hull", hull},
              {"points", points},
              {"diagnostics", r.notes},
              {"seed", r.seed},
              {"config", config}};
}

json report_to_json(const SimReport& rep, const json& config) {
  return json{{"schema", kSchemaVersion},
              {"type", "sim_report"},
              {"n", rep.n},
              {"trials", rep.trials},
              {"r0", rep.r0},
              {"r1", rep.r1},
              {"c12", rep.c12},
              {"e1", rep.e1},
              {"e2", rep.e2},
              {"e3", rep.e3},
              {"e4", rep.e4},
              {"errors", rep.errors},
              {"empirical_error", rep.empirical_error},
              {"decoder", rep.decoder},
              {"seed", rep.seed},
              {"config", config}};
}

struct GridSpec {
  double lo = 0, hi = 0;
  int count = 1;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.count) != 3 || g.count < 1 ||
      g.hi < g.lo)
    throw CLI::ValidationError("--grid", "expected a:b:n with b >= a, n >= 1");
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rate regions and capacity bounds for broadcast channels "
               "with cooperating decoders"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  int workers = default_workers();
  app.add_option("--workers", workers, "worker threads (env QBC_WORKERS)");

  // channel info
  auto* info = app.add_subcommand("channel", "channel artifact utilities");
  info->require_subcommand(1);
  auto* info_cmd = info->add_subcommand("info", "print channel flags and diagnostics");
  std::string info_path;
  info_cmd->add_option("file", info_path, "channel JSON file")->required();

  // region <kind>
  auto* region_cmd = app.add_subcommand("region", "achievable-rate regions");
  region_cmd->require_subcommand(1);
  std::string reg_channel, reg_out = "region.json", reg_csv;
  double c12 = 0, cq12 = 0;
  std::uint64_t reg_seed = 11;
  RegionOptions ropts;
  auto add_region_flags = [&](CLI::App* sub, bool quantum) {
    sub->add_option("--channel", reg_channel, "broadcast channel JSON")->required();
    if (quantum)
      sub->add_option("--cq12", cq12, "entanglement conferencing rate (qubits/use)");
    else
      sub->add_option("--c12", c12, "classical conferencing rate (bits/use)");
    sub->add_option("--seed", reg_seed, "optimizer seed");
    sub->add_option("--weights", ropts.weights, "scalarization weight count");
    sub->add_option("--restarts", ropts.restarts, "multistart count per weight");
    sub->add_option("--iters", ropts.nm_iters, "optimizer iterations");
    sub->add_option("--card0", ropts.card0, "auxiliary cardinality (0 = auto)");
    sub->add_option("--card1", ropts.card1, "satellite cardinality (0 = auto)");
    sub->add_option("--t-dim", ropts.t_dim, "outer-bound auxiliary dimension cap");
    sub->add_option("--out", reg_out, "output JSON artifact");
    sub->add_option("--csv", reg_csv, "hull CSV for plotting");
  };
  auto* reg_classical = region_cmd->add_subcommand("classical", "conferencing region");
  add_region_flags(reg_classical, false);
  auto* reg_inner = region_cmd->add_subcommand("quantum-inner", "inner quantum region");
  add_region_flags(reg_inner, true);
  auto* reg_outer =
      region_cmd->add_subcommand("quantum-outer", "single-letter outer bound");
  add_region_flags(reg_outer, true);

  // relay bounds
  auto* relay_cmd = app.add_subcommand("relay", "primitive relay bounds");
  relay_cmd->require_subcommand(1);
  auto* bounds_cmd = relay_cmd->add_subcommand("bounds", "cutset / decode-forward / EoF");
  std::string rel_channel, rel_out = "relay.json", rel_csv, rel_grid;
  double rel_cq12 = 0;
  std::uint64_t rel_seed = 17;
  bool no_eof = false;
  RelayOptions lopts;
  bounds_cmd->add_option("--channel", rel_channel, "broadcast channel JSON")->required();
  bounds_cmd->add_option("--cq12", rel_cq12, "entanglement conferencing rate");
  bounds_cmd->add_option("--grid", rel_grid, "CQ12 grid a:b:n (overrides --cq12)");
  bounds_cmd->add_option("--seed", rel_seed, "optimizer seed");
  bounds_cmd->add_option("--restarts", lopts.restarts, "multistart count");
  bounds_cmd->add_option("--iters", lopts.nm_iters, "optimizer iterations");
  bounds_cmd->add_flag("--no-eof", no_eof, "skip the entanglement-formation bound");
  bounds_cmd->add_option("--out", rel_out, "output JSON artifact");
  bounds_cmd->add_option("--csv", rel_csv, "bound-curve CSV for plotting");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo coding simulation");
  std::string sim_channel, sim_out = "sim.json", sim_csv, decoder = "ml";
  std::vector<int> sim_n = {8};
  double sim_r0 = 0.25, sim_r1 = 0.25, sim_c12 = 0.25;
  int trials = 1000;
  std::uint64_t sim_seed = 1;
  sim_cmd->add_option("--channel", sim_channel, "classical broadcast channel JSON")
      ->required();
  sim_cmd->add_option("--n", sim_n, "blocklength(s); several give a sweep");
  sim_cmd->add_option("--r0", sim_r0, "common-message rate");
  sim_cmd->add_option("--r1", sim_r1, "private-message rate");
  sim_cmd->add_option("--c12", sim_c12, "conferencing rate (bin rate)");
  sim_cmd->add_option("--trials", trials, "Monte-Carlo trials per blocklength");
  sim_cmd->add_option("--seed", sim_seed, "codebook and noise seed");
  sim_cmd->add_option("--decoder", decoder, "ml or jt")
      ->check(CLI::IsMember({"ml", "jt"}));
  double corr = 0.85;
  sim_cmd->add_option("--corr", corr,
                      "P(x1 = x0) of the superposition distribution, rest uniform")
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--out", sim_out, "output JSON artifact");
  sim_cmd->add_option("--csv", sim_csv, "(n, error) CSV for plotting");

  // convert
  auto* conv_cmd = app.add_subcommand("convert", "conferencing rate conversions");
  double conv_c12 = -1, conv_cq12 = -1;
  conv_cmd->add_option("--c12", conv_c12, "classical rate -> CQ12 via teleportation");
  conv_cmd->add_option("--cq12", conv_cq12, "entanglement rate -> C12 via super-dense");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*info_cmd) {
      auto bc = broadcast_from_json(load_json(info_path));
      std::cout << "kind: " << bc.kind << "\n";
      std::cout << "input dim: " << bc.in_dim() << "  outputs: " << bc.d1() << " x "
                << bc.d2() << "\n";
      std::cout << "classical: " << (bc.is_classical ? "yes" : "no")
                << "  hadamard: " << (bc.is_hadamard ? "yes" : "no") << "\n";
      Matrix mixed = Matrix::Identity(bc.in_dim(), bc.in_dim());
      mixed /= double(bc.in_dim());
      std::cout << "H(B1) at maximally mixed input: "
                << entropy_raw(apply_raw(bc.marginal1, mixed)) << "\n";
      std::cout << "H(B2) at maximally mixed input: "
                << entropy_raw(apply_raw(bc.marginal2, mixed)) << "\n";
      DegradedOptions dop;
      dop.workers = workers;
      auto chk = check_degraded(bc, dop);
      std::cout << "degradability residual: " << chk.residual
                << (chk.found ? "  (certificate found)"
                              : chk.searched ? "  (none found; not a proof of absence)"
                                             : "") << "\n";
      return 0;
    }

    if (*reg_classical || *reg_inner || *reg_outer) {
      auto bc = broadcast_from_json(load_json(reg_channel));
      ropts.workers = workers;
      ropts.seed = reg_seed;
      std::string kind = *reg_classical ? "classical"
                         : *reg_inner   ? "quantum-inner"
                                        : "quantum-outer";
      json config{{"command", "region " + kind},
                  {"channel", reg_channel},
                  {"conferencing", *reg_classical ? c12 : cq12},
                  {"seed", reg_seed},
                  {"weights", ropts.weights},
                  {"restarts", ropts.restarts},
                  {"iters", ropts.nm_iters},
                  {"card0", ropts.card0},
                  {"card1", ropts.card1},
                  {"t_dim", ropts.t_dim},
                  {"workers", workers}};
      RateRegion region;
      if (*reg_classical) {
        region = classical_region(bc, c12, ropts);
        if (bc.is_hadamard) region.notes.push_back("capacity (single-letter)");
      } else if (*reg_inner) {
        region = quantum_inner_region(bc, cq12, ropts);
      } else {
        auto inner = quantum_inner_region(bc, cq12, ropts);
        region = quantum_outer_region_single_letter(bc, cq12, ropts, &inner);
      }
      save_json(region_to_json(region, config), reg_out);
      if (!reg_csv.empty())
        save_hull_csv(region.hull, reg_csv, *reg_classical ? "r0,r1" : "q1,q2");
      std::cout << kind << " region: " << region.hull.size() << " hull vertices, "
                << "conferencing " << region.conferencing << ", written to " << reg_out
                << "\n";
      for (const auto& note : region.notes) std::cout << "note: " << note << "\n";
      return 0;
    }

    if (*bounds_cmd) {
      auto bc = broadcast_from_json(load_json(rel_channel));
      lopts.workers = workers;
      lopts.seed = rel_seed;
      std::vector<double> grid;
      if (!rel_grid.empty()) {
        auto g = parse_grid(rel_grid);
        for (int i = 0; i < g.count; ++i)
          grid.push_back(g.count == 1 ? g.lo
                                      : g.lo + (g.hi - g.lo) * i / double(g.count - 1));
      } else {
        grid.push_back(rel_cq12);
      }
      json config{{"command", "relay bounds"}, {"channel", rel_channel},
                  {"grid", grid},              {"seed", rel_seed},
                  {"restarts", lopts.restarts}, {"iters", lopts.nm_iters},
                  {"no_eof", no_eof},          {"workers", workers}};
      auto dfs = decode_forward_grid(bc, grid, lopts);
      json points = json::array();
      std::string csv = "cq12,cutset,decode_forward,eof_lower\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto cs = cutset(bc, grid[i], lopts, &dfs[i]);
        json jp{{"cq12", grid[i]},
                {"decode_forward", dfs[i].value},
                {"cutset", cs.value}};
        for (const auto& n : cs.notes) jp["cutset_notes"].push_back(n);
        double eofv = std::numeric_limits<double>::quiet_NaN();
        if (!no_eof) {
          auto ef = eof_lower(bc, grid[i], lopts);
          jp["eof_lower"] = ef.value;
          jp["eof_feasible"] = ef.feasible;
          eofv = ef.value;
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", grid[i], cs.value,
                      dfs[i].value, eofv);
        csv += buf;
        points.push_back(jp);
        std::cout << "cq12 " << grid[i] << ": decode-forward " << dfs[i].value
                  << ", cutset " << cs.value;
        if (!no_eof) std::cout << ", eof-lower " << eofv;
        std::cout << "\n";
      }
      json out{{"schema", kSchemaVersion},
               {"type", "relay_bounds"},
               {"points", points},
               {"seed", rel_seed},
               {"config", config}};
      save_json(out, rel_out);
      if (!rel_csv.empty()) {
        std::ofstream f(rel_csv);
        if (!f) throw io_error("cannot open for write: " + rel_csv);
        f << csv;
      }
      return 0;
    }

    if (*sim_cmd) {
      auto bc = broadcast_from_json(load_json(sim_channel));
      if (!bc.is_classical)
        throw std::invalid_argument("simulate requires a classical channel artifact");
      // input distribution: uniform cloud, satellite sticking to the cloud
      // symbol with probability corr (uniform over the rest otherwise)
      const int nx = static_cast<int>(bc.kernel.rows());
      Eigen::MatrixXd pmf(nx, nx);
      for (int a = 0; a < nx; ++a)
        for (int b = 0; b < nx; ++b)
          pmf(a, b) = (a == b ? corr : nx > 1 ? (1.0 - corr) / (nx - 1) : 1.0) / nx;
      json config{{"command", "simulate"},   {"channel", sim_channel},
                  {"corr", corr},
                  {"n", sim_n},              {"r0", sim_r0},
                  {"r1", sim_r1},            {"c12", sim_c12},
                  {"trials", trials},        {"seed", sim_seed},
                  {"decoder", decoder},      {"workers", workers}};
      json reports = json::array();
      std::string csv = "n,error\n";
      for (int n : sim_n) {
        auto cb = build_codebook(pmf, n, sim_r0, sim_r1, sim_c12, sim_seed);
        auto rep = simulate_classical(bc, cb, trials, decoder, sim_seed, workers);
        reports.push_back(report_to_json(rep, config));
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d,%.12g\n", n, rep.empirical_error);
        csv += buf;
        std::cout << "n " << n << ": error " << rep.empirical_error << " (e2 " << rep.e2
                  << ", e3 " << rep.e3 << ", e4 " << rep.e4 << ")\n";
      }
      json out{{"schema", kSchemaVersion},
               {"type", "sim_sweep"},
               {"reports", reports},
               {"seed", sim_seed},
               {"config", config}};
      save_json(out, sim_out);
      if (!sim_csv.empty()) {
        std::ofstream f(sim_csv);
        if (!f) throw io_error("cannot open for write: " + sim_csv);
        f << csv;
      }
      return 0;
    }

    if (*conv_cmd) {
      if (conv_c12 < 0 && conv_cq12 < 0)
        throw CLI::ValidationError("convert", "provide --c12 or --cq12");
      if (conv_c12 >= 0)
        std::cout << "CQ12 = " << teleport_convert(conv_c12) << "\n";
      if (conv_cq12 >= 0)
        std::cout << "C12 = " << superdense_convert(conv_cq12) << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  } catch (const guard_error& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 1;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
