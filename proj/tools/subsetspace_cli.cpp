// Command-line front end: invariant suites with JSON reports, the concrete
// retractions as JSON filters, path construction, and collision-flow runs
// with CSV traces.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subsetspace/harness.hpp"

using namespace subsetspace;

namespace {

nlohmann::json read_json_stdin() {
  std::stringstream buf;
  buf << std::cin.rdbuf();
  return nlohmann::json::parse(buf.str());
}

void write_output(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open output file: " + out);
  f << j.dump(2) << "\n";
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  f >> j;
  if (j.contains("dim")) cfg.dim = j["dim"].get<int>();
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("p")) cfg.p = p_from_json(j["p"]);
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<long>();
  if (j.contains("box")) cfg.box = j["box"].get<double>();
  if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
  if (j.contains("sphere_samples")) {
    cfg.selector = SelectorConfig(j["sphere_samples"].get<int>(), cfg.selector.seed);
  }
  if (j.contains("selector_seed")) cfg.selector.seed = j["selector_seed"].get<uint64_t>();
  if (j.contains("eps_coll")) cfg.flow.eps_coll = j["eps_coll"].get<double>();
  if (j.contains("theta")) cfg.flow.theta = j["theta"].get<double>();
  if (j.contains("max_steps")) cfg.flow.max_steps = j["max_steps"].get<long>();
  if (j.contains("merge_factor")) cfg.flow.merge_factor = j["merge_factor"].get<double>();
  if (j.contains("timing")) cfg.include_timing = j["timing"].get<bool>();
}

void dump_ratio_csv(const std::string& path, const RatioEstimate& est) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open csv file: " + path);
  f << "pair_id,d_H_in,d_H_out,ratio,bound,stratum\n";
  f.precision(17);
  for (const RatioRow& r : est.rows) {
    f << r.pair_id << "," << r.d_in << "," << r.d_out << "," << r.ratio << ","
      << r.bound << "," << stratum_name(r.stratum) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite subset spaces X(n): retractions, flows, quasigeodesics"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_file, out_file, csv_file;

  // verify ------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run a registered invariant suite");
  std::string suite;
  verify_cmd->add_option("suite", suite, "suite name (or 'list')")->required();
  verify_cmd->add_option("--config", config_file, "RunConfig JSON file");
  verify_cmd->add_option("--out", out_file, "report output file (default stdout)");
  verify_cmd->add_option("--ratios-csv", csv_file,
                         "dump per-pair ratio rows for estimator suites");
  verify_cmd->add_option("--samples", cfg.samples);
  verify_cmd->add_option("--seed", cfg.seed);
  verify_cmd->add_option("--n", cfg.n);
  verify_cmd->add_option("--dim", cfg.dim);
  std::string p_str;
  verify_cmd->add_option("--p", p_str, "norm exponent (number or 'inf')");
  verify_cmd->add_flag("--timing", cfg.include_timing, "include runtime_ms");

  // retract -----------------------------------------------------------------
  auto* retract_cmd =
      app.add_subcommand("retract", "apply a retraction to an FSet read from stdin");
  std::string kind;
  retract_cmd->add_option("kind", kind, "r2 | r3 | rn2 | selector | flow")->required();
  double tau = 7.0;
  retract_cmd->add_option("--tau", tau, "cluster threshold parameter (> 6)");
  int sphere_samples = 4096;
  retract_cmd->add_option("--sphere-samples", sphere_samples);
  uint64_t selector_seed = SelectorConfig{}.seed;
  retract_cmd->add_option("--selector-seed", selector_seed);
  FlowConfig fc;
  retract_cmd->add_option("--eps-coll", fc.eps_coll);
  retract_cmd->add_option("--theta", fc.theta);
  retract_cmd->add_option("--max-steps", fc.max_steps);
  retract_cmd->add_option("--merge-factor", fc.merge_factor);
  retract_cmd->add_option("--out", out_file);

  // path --------------------------------------------------------------------
  auto* path_cmd = app.add_subcommand(
      "path", "build a path between two FSets ([x, y] JSON array on stdin)");
  std::string path_kind;
  path_cmd->add_option("kind", path_kind, "quasigeodesic | geodesic")->required();
  path_cmd->add_option("--out", out_file, "path JSON output file");
  int length_grid = 1024;
  path_cmd->add_option("--length-grid", length_grid);

  // flow --------------------------------------------------------------------
  auto* flow_cmd = app.add_subcommand("flow", "collision flow runs");
  auto* flow_run = flow_cmd->add_subcommand("run", "integrate to first collision");
  int fn = 3, fdim = 2;
  std::string fp = "2";
  uint64_t fseed = 0;
  bool from_stdin = false;
  std::string trace_file;
  flow_run->add_option("--n", fn);
  flow_run->add_option("--dim", fdim);
  flow_run->add_option("--p", fp, "norm exponent (number or 'inf')");
  flow_run->add_option("--eps-coll", fc.eps_coll);
  flow_run->add_option("--theta", fc.theta);
  flow_run->add_option("--max-steps", fc.max_steps);
  flow_run->add_option("--seed", fseed, "sample a random instance with this seed");
  flow_run->add_flag("--stdin", from_stdin, "read the FSet from stdin instead");
  flow_run->add_option("--trace", trace_file, "CSV trace (t, delta, coordinates)");
  flow_run->add_option("--out", out_file);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_cmd) {
      if (suite == "list") {
        for (const std::string& s : suite_names()) std::cout << s << "\n";
        return 0;
      }
      if (!config_file.empty()) apply_config_file(cfg, config_file);
      if (!p_str.empty()) {
        cfg.p = (p_str == "inf") ? std::numeric_limits<double>::infinity()
                                 : std::stod(p_str);
      }
      Report report = verify(suite, cfg);
      if (!csv_file.empty()) {
        static const std::map<std::string, std::string> suite_map = {
            {"r2-lipschitz", "r2"},
            {"r3-lipschitz", "r3"},
            {"rn2-retraction", "rn2"},
            {"selector", "selector"}};
        if (suite == "flow-holder") {
          dump_ratio_csv(csv_file, estimate_holder(cfg, true));
        } else if (auto it = suite_map.find(suite); it != suite_map.end()) {
          RunConfig c = cfg;
          if (suite == "r2-lipschitz") c.n = 2;
          if (suite == "r3-lipschitz") c.n = 3;
          dump_ratio_csv(csv_file, estimate_lipschitz(it->second, c, true));
        } else {
          throw std::invalid_argument("--ratios-csv not supported for suite " + suite);
        }
      }
      write_output(report.to_json(), out_file);
      return report.all_pass() ? 0 : 1;
    }

    if (*retract_cmd) {
      FSet x = fset_from_json(read_json_stdin());
      SelectorConfig sel(sphere_samples, selector_seed);
      FSet out = [&] {
        if (kind == "r2") return r2(x);
        if (kind == "r3") return r3(x);
        if (kind == "rn2") return rn2(x, tau, sel);
        if (kind == "selector") return selector_retraction(x, sel);
        if (kind == "flow") return holder_retraction(x, fc);
        throw std::invalid_argument("unknown retraction kind: " + kind);
      }();
      write_output(fset_to_json(out), out_file);
      return 0;
    }

    if (*path_cmd) {
      nlohmann::json j = read_json_stdin();
      if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("path: expected a JSON array [x, y]");
      }
      FSet x = fset_from_json(j[0]);
      FSet y = fset_from_json(j[1]);
      QuasiPath g = (path_kind == "quasigeodesic") ? quasigeodesic(x, y)
                    : (path_kind == "geodesic")
                        ? geodesic_in_larger(x, y)
                        : throw std::invalid_argument("unknown path kind: " +
                                                      path_kind);
      nlohmann::json out = path_to_json(g);
      out["endpoint_distance"] = hausdorff(x, y);
      out["length"] = path_length(g, length_grid);
      write_output(out, out_file);
      return 0;
    }

    if (*flow_run) {
      const double p = (fp == "inf") ? std::numeric_limits<double>::infinity()
                                     : std::stod(fp);
      FSet x = [&] {
        if (from_stdin) return fset_from_json(read_json_stdin());
        RunConfig rc;
        rc.n = fn;
        rc.dim = fdim;
        rc.p = p;
        rc.seed = fseed;
        for (int shift = 0; shift < 64; ++shift) {
          FSet cand = sample_fset(rc, Stratum::generic, shift);
          if (static_cast<int>(cand.size()) == fn) return cand;
        }
        throw std::runtime_error("flow run: failed to sample a full-cardinality set");
      }();
      fc.record_trajectory = !trace_file.empty();
      FlowResult r = integrate_to_collision(x, fc);
      if (!trace_file.empty()) {
        std::ofstream f(trace_file);
        if (!f) throw std::runtime_error("cannot open trace file: " + trace_file);
        f << "t,delta";
        for (size_t i = 0; i < x.size(); ++i) {
          for (int c = 0; c < x.spec().dim; ++c) {
            f << ",u" << i << "_" << c;
          }
        }
        f << "\n";
        f.precision(17);
        for (size_t row = 0; row < r.snapshots.size(); ++row) {
          f << r.trace[row].t << "," << r.trace[row].delta;
          for (const Point& q : r.snapshots[row].second) {
            for (double c : q) f << "," << c;
          }
          f << "\n";
        }
      }
      nlohmann::json out;
      out["input"] = fset_to_json(x);
      out["T"] = r.T;
      out["steps"] = r.steps;
      out["retract"] = fset_to_json(r.retract);
      nlohmann::json term = nlohmann::json::array();
      for (const Point& q : r.terminal) term.push_back(q);
      out["terminal"] = term;
      auto [lo, hi] = collision_time_bounds(x);
      out["time_bounds"] = {lo, hi};
      write_output(out, out_file);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
