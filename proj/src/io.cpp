#include "vfbns/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vfbns {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Non-finite numbers become null.
nlohmann::json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_file(const fs::path& path, const std::string& content, bool overwrite) {
  std::error_code ec;
  if (!overwrite && fs::exists(path, ec)) {
    throw IoError(path.string() + ": exists (pass --overwrite to replace)");
  }
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError(path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << content;
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

void add(Manifest& m, const fs::path& path) {
  std::error_code ec;
  const auto bytes = fs::file_size(path, ec);
  if (ec) throw IoError(path.string() + ": " + ec.message());
  m.entries.push_back({fs::relative(path, m.root).generic_string(), bytes});
}

void finish_manifest(Manifest& m, bool overwrite) {
  std::string text;
  for (const auto& e : m.entries) text += e.path + " " + std::to_string(e.bytes) + "\n";
  const fs::path p = m.root / "manifest.txt";
  write_file(p, text, overwrite);
}

nlohmann::json verdicts_json(const std::vector<Verdict>& vs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : vs) {
    a.push_back({{"name", v.name},
                 {"measured", jnum(v.measured)},
                 {"threshold", jnum(v.threshold)},
                 {"relation", v.relation},
                 {"pass", v.pass},
                 {"gating", v.gating}});
  }
  return a;
}

void write_run_files(Manifest& m, const RunReport& r, const fs::path& dir, bool overwrite) {
  const std::pair<const char*, std::string> files[] = {
      {"run.csv", records_csv(r.records)},
      {"monitors.csv", monitors_csv(r.records)},
      {"summary.json", to_json(r).dump(2) + "\n"},
      {"config.cfg", serialize_config(r.config)},
  };
  for (const auto& [name, content] : files) {
    write_file(dir / name, content, overwrite);
    add(m, dir / name);
  }
}

std::string axis_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string records_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out;
  const auto& cols = DiagnosticsRecord::csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
  out += "\n";
  for (const auto& r : records) {
    const auto vals = r.csv_values();
    for (std::size_t k = 0; k < vals.size(); ++k) out += (k ? "," : "") + num(vals[k]);
    out += "\n";
  }
  return out;
}

std::string monitors_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = "t,group_velocity,group_acceleration,etax_l2,v_l2,max_abs_v\n";
  for (const auto& r : records) {
    out += num(r.t) + "," + num(r.group_velocity) + "," + num(r.group_acceleration) + "," +
           num(r.etax_l2) + "," + num(r.v_l2) + "," + num(r.max_abs_v) + "\n";
  }
  return out;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["experiment"] = "run";
  j["gamma"] = r.config.params.gamma;
  j["epsilon"] = r.config.params.epsilon;
  j["N"] = r.config.params.N;
  j["t_end"] = r.config.params.t_end;
  j["integrator"] = to_string(r.config.integrator);
  j["family"] = to_string(r.config.kind);
  j["delta"] = r.config.delta;
  if (r.config.mass > 0.0) {
    j["physical_l_bar"] = domain_length(r.config.params.gamma, r.config.params.g, r.config.mass);
  }
  j["D0"] = jnum(r.D0);
  j["E0"] = jnum(r.E0);
  j["qbar"] = jnum(r.qbar);
  j["dissipated"] = jnum(r.dissipated);
  j["v_l2l2"] = jnum(r.v_l2l2);
  j["min_etax"] = jnum(r.min_etax);
  j["max_etax"] = jnum(r.max_etax);
  j["max_abs_v"] = jnum(r.max_abs_v);
  j["max_energy_increase"] = jnum(r.max_energy_increase);
  j["steps"] = r.steps;
  j["wall_seconds"] = r.wall_seconds;
  j["aborted"] = r.aborted;
  if (r.aborted) {
    j["abort_reason"] = r.abort_reason;
    j["abort_time"] = r.abort_time;
  }
  j["samples"] = r.records.size();
  const auto& c = r.compatibility;
  j["compatibility"] = {{"residual_h1_at_0", jnum(c.residual_h1_at_0)},
                        {"residual_h1x_at_1", jnum(c.residual_h1x_at_1)},
                        {"residual_v0_at_0", jnum(c.residual_v0_at_0)},
                        {"residual_v0x_at_1", jnum(c.residual_v0x_at_1)},
                        {"excluded_nodes", c.excluded_nodes},
                        {"tolerance", c.tolerance}};
  j["verdicts"] = verdicts_json(r.verdicts);
  j["pass"] = r.all_pass();
  return j;
}

nlohmann::json to_json(const SweepReport& s) {
  nlohmann::json j;
  j["experiment"] = to_string(s.experiment);
  j["axis"] = s.axis;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : s.points) {
    pts.push_back({{"axis", p.axis},
                   {"sup_etax_l2", jnum(p.sup_etax_l2)},
                   {"v_l2l2", jnum(p.v_l2l2)},
                   {"gamma_dev", jnum(p.gamma_dev)},
                   {"el_tilde_0", jnum(p.el_tilde_0)},
                   {"el_tilde_sup", jnum(p.el_tilde_sup)},
                   {"completed", p.completed}});
  }
  j["points"] = pts;
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : s.fits) {
    fits.push_back({{"metric", f.metric},
                    {"valid", f.valid},
                    {"slope", f.valid ? jnum(f.fit.slope) : nlohmann::json(nullptr)},
                    {"residual", f.valid ? jnum(f.fit.residual) : nlohmann::json(nullptr)}});
  }
  j["fits"] = fits;
  if (s.experiment == ExperimentKind::sweep_mesh) {
    nlohmann::json d = nlohmann::json::array(), o = nlohmann::json::array();
    for (double x : s.differences) d.push_back(jnum(x));
    for (double x : s.orders) o.push_back(jnum(x));
    j["differences"] = d;
    j["orders"] = o;
    j["exact"] = s.exact;
  }
  j["degraded"] = s.degraded;
  j["verdicts"] = verdicts_json(s.verdicts);
  j["pass"] = s.all_pass();
  return j;
}

Manifest write_outputs(const RunReport& report, const fs::path& dir, bool overwrite) {
  Manifest m;
  m.root = dir;
  write_run_files(m, report, dir, overwrite);
  finish_manifest(m, overwrite);
  return m;
}

Manifest write_outputs(const SweepReport& report, const fs::path& dir, bool overwrite) {
  const fs::path base = dir / (report.experiment == ExperimentKind::sweep_mesh ? "sweep-mesh" : "sweep-eps");
  Manifest m;
  m.root = base;
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    write_run_files(m, report.runs[k], base / axis_label(report.points[k].axis), overwrite);
  }
  write_file(base / "summary.json", to_json(report).dump(2) + "\n", overwrite);
  add(m, base / "summary.json");
  finish_manifest(m, overwrite);
  return m;
}

std::vector<DiagnosticsRecord> read_records_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::string line;
  std::getline(in, line);
  std::string expected;
  const auto& cols = DiagnosticsRecord::csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) expected += (k ? "," : "") + cols[k];
  if (line != expected) throw IoError(path.string() + ": unexpected header");
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != cols.size()) throw IoError(path.string() + ": malformed row");
    DiagnosticsRecord r;
    r.t = v[0]; r.E = v[1]; r.D = v[2]; r.EN = v[3]; r.EL = v[4]; r.EH = v[5];
    r.EL_tilde = v[6]; r.min_etax = v[7]; r.max_etax = v[8]; r.qbar = v[9];
    r.gamma_fb = v[10]; r.mass = v[11];
    out.push_back(r);
  }
  return out;
}

}  // namespace vfbns
