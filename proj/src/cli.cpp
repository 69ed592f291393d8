#include "vfbns/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vfbns/config.hpp"
#include "vfbns/experiments.hpp"
#include "vfbns/fitting.hpp"
#include "vfbns/io.hpp"

namespace vfbns {

namespace {

void print_verdicts(std::ostream& out, const std::vector<Verdict>& vs, const std::string& prefix = "") {
  for (const auto& v : vs) {
    char buf[256];
    char thr[32] = "";
    // interval relations carry their bounds
    if (v.relation.rfind("in ", 0) != 0) std::snprintf(thr, sizeof thr, " %.6g", v.threshold);
    std::snprintf(buf, sizeof buf, "%s %s%s measured=%.6g %s%s%s", v.pass ? "PASS" : "FAIL", prefix.c_str(),
                  v.name.c_str(), v.measured, v.relation.c_str(), thr, v.gating ? "" : " (info)");
    out << buf << "\n";
  }
}

Config read_config(const std::string& path) {
  if (path.empty()) return Config{};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("--config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_unchecked(ss.str());
}

int analyze(const std::string& dir, std::ostream& out) {
  namespace fs = std::filesystem;
  const auto records = read_records_csv(fs::path(dir) / "run.csv");
  std::string text = "#";
  for (const auto& c : DiagnosticsRecord::csv_columns()) text += " " + c;
  text += "\n";
  std::vector<double> t, e;
  for (const auto& r : records) {
    for (double v : r.csv_values()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g ", v);
      text += buf;
    }
    text.back() = '\n';
    t.push_back(r.t);
    e.push_back(r.E);
  }
  const fs::path dat = fs::path(dir) / "run.dat";
  std::ofstream f(dat);
  if (!f) throw IoError(dat.string() + ": cannot open for writing");
  f << text;
  out << "wrote " << dat.string() << " (" << records.size() << " rows)\n";
  if (!t.empty()) {
    try {
      const DecayFit fit = decay_fit(t, e, 1.0, t.back());
      out << "E decay slope " << fit.fit.slope << " (residual " << fit.fit.residual << ", "
          << fit.excluded << " nonpositive samples excluded)\n";
    } catch (const std::invalid_argument& ex) {
      out << "E decay slope unavailable: " << ex.what() << "\n";
    }
  }
  return kExitPass;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vacuum free-boundary Navier-Stokes simulator"};
  app.require_subcommand(1);
  std::string config_path, out_dir, eps_text, mesh_text;
  bool overwrite = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--overwrite", overwrite, "replace existing outputs");
  };
  CLI::App* run = app.add_subcommand("run", "single simulation");
  add_common(run);
  CLI::App* seps = app.add_subcommand("sweep-eps", "epsilon sweep");
  add_common(seps);
  seps->add_option("--eps", eps_text, "comma-separated decreasing epsilons");
  CLI::App* smesh = app.add_subcommand("sweep-mesh", "mesh refinement");
  add_common(smesh);
  smesh->add_option("--mesh", mesh_text, "comma-separated doubling N values");
  CLI::App* an = app.add_subcommand("analyze", "write gnuplot columns for a finished run");
  an->add_option("--out", out_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (an->parsed()) return analyze(out_dir, out);

    Config cfg;
    try {
      cfg = read_config(config_path);
      if (run->parsed()) cfg.experiment = ExperimentKind::run;
      if (seps->parsed()) {
        cfg.experiment = ExperimentKind::sweep_eps;
        if (!eps_text.empty()) cfg.eps_list = parse_double_list("--eps", eps_text);
      }
      if (smesh->parsed()) {
        cfg.experiment = ExperimentKind::sweep_mesh;
        if (!mesh_text.empty()) cfg.mesh_list = parse_int_list("--mesh", mesh_text);
      }
      if (!out_dir.empty()) cfg.output = out_dir;
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << "\n";
      return kExitUsage;
    }

    if (cfg.experiment == ExperimentKind::run) {
      const RunReport r = run_single(cfg);
      write_outputs(r, cfg.output, overwrite);
      print_verdicts(out, r.verdicts);
      if (r.aborted) {
        err << "aborted: " << r.abort_reason << "\n";
        return kExitAbort;
      }
      return r.all_pass() ? kExitPass : kExitFail;
    }
    const SweepReport s = cfg.experiment == ExperimentKind::sweep_eps
                              ? epsilon_sweep(cfg, cfg.eps_list)
                              : mesh_refinement(cfg, cfg.mesh_list);
    write_outputs(s, cfg.output, overwrite);
    for (const auto& f : s.fits) {
      if (f.valid) out << "fit " << f.metric << " slope=" << f.fit.slope << " residual=" << f.fit.residual << "\n";
    }
    for (std::size_t k = 0; k < s.orders.size(); ++k) out << "order[" << k << "]=" << s.orders[k] << "\n";
    print_verdicts(out, s.verdicts);
    if (s.degraded) {
      err << "sweep degraded: a member run aborted\n";
      return kExitAbort;
    }
    return s.all_pass() ? kExitPass : kExitFail;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitAbort;
  }
}

}  // namespace vfbns
