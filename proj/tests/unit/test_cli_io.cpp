#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vfbns/cli.hpp"
#include "vfbns/config.hpp"
#include "vfbns/io.hpp"

using namespace vfbns;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vfbns_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "vfbns");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

const char* kEquilibrium =
    "[model]\ngamma = 2.0\nepsilon = 1.0\n[grid]\nN = 16\n[time]\nt_end = 0.5\nsamples = 5\n"
    "[data]\nkind = equilibrium\n";

}  // namespace

TEST_CASE("parse config values and errors") {
  const Config c = parse_config("gamma = 2.0  # adiabatic\nepsilon = 0.5\nN = 100\n");
  CHECK(c.params.gamma == 2.0);
  CHECK(c.params.epsilon == 0.5);
  CHECK(c.params.N == 100);
  CHECK(error_of("gamma = 0.9\n").find("gamma") != std::string::npos);
  CHECK(error_of("epsilon = 0\n").find("epsilon") != std::string::npos);
  CHECK(error_of("frobnicate = 1\n").find("frobnicate") != std::string::npos);
  CHECK(error_of("[grid]\ngamma = 2\n").find("gamma") != std::string::npos);
  CHECK(error_of("N = ten\n").find("N") != std::string::npos);
  CHECK(error_of("experiment = sweep_eps\neps_list = 0.5,0.25\n").find("eps_list") != std::string::npos);
  CHECK(error_of("experiment = sweep_eps\neps_list = 0.1,0.2,0.3\n").find("eps_list") != std::string::npos);
  CHECK(error_of("experiment = sweep_mesh\nmesh_list = 10,20,30\n").find("mesh_list") != std::string::npos);
  CHECK(error_of("experiment = sweep_mesh\nmesh_list = 10,20,40\n").empty());
}

TEST_CASE("config round trip") {
  Config c;
  c.params.gamma = 1.4;
  c.params.epsilon = 0.1;
  c.params.alpha = 1.0 / 3.0;
  c.params.N = 123;
  c.kind = FamilyKind::well_prepared;
  c.delta = 0.07;
  c.shape = ShapeKind::velocity;
  c.integrator = IntegratorMode::explicit_reference;
  c.experiment = ExperimentKind::sweep_eps;
  c.eps_list = {0.4, 0.2, 0.1};
  c.output = "somewhere";
  const Config back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));
}

TEST_CASE("dispatch exit codes") {
  CHECK(run_cli({"frobnicate"}) == kExitUsage);
  CHECK(run_cli({}) == kExitUsage);
  const fs::path dir = scratch("codes");
  write(dir / "bad.cfg", "gamma = 0.9\n");
  std::string err;
  CHECK(run_cli({"run", "--config", (dir / "bad.cfg").string(), "--out", (dir / "o").string()}, nullptr, &err) ==
        kExitUsage);
  CHECK(err.find("gamma") != std::string::npos);
  CHECK(run_cli({"run", "--config", (dir / "missing.cfg").string()}) != kExitPass);
}

TEST_CASE("run writes outputs and refuses to overwrite") {
  const fs::path dir = scratch("run");
  write(dir / "eq.cfg", kEquilibrium);
  const std::string out = (dir / "out").string();
  std::string text;
  REQUIRE(run_cli({"run", "--config", (dir / "eq.cfg").string(), "--out", out}, &text) == kExitPass);
  CHECK(text.find("PASS") != std::string::npos);
  for (const char* f : {"run.csv", "monitors.csv", "summary.json", "config.cfg", "manifest.txt"}) {
    CHECK(fs::exists(dir / "out" / f));
  }
  const auto records = read_records_csv(dir / "out" / "run.csv");
  CHECK(records.size() == 6);
  for (const auto& r : records) CHECK(r.E == 0.0);

  std::ifstream header(dir / "out" / "run.csv");
  std::string first;
  std::getline(header, first);
  CHECK(first == "t,E,D,EN,EL,EH,EL_tilde,min_etax,max_etax,qbar,gamma_fb,mass");

  // the saved config reproduces the run
  CHECK(load_config((dir / "out" / "config.cfg").string()).params.N == 16);

  std::string err;
  CHECK(run_cli({"run", "--config", (dir / "eq.cfg").string(), "--out", out}, nullptr, &err) == kExitAbort);
  CHECK(err.find("exists") != std::string::npos);
  CHECK(run_cli({"run", "--config", (dir / "eq.cfg").string(), "--out", out, "--overwrite"}) == kExitPass);

  CHECK(run_cli({"analyze", "--out", out}) == kExitPass);
  CHECK(fs::exists(dir / "out" / "run.dat"));
}

TEST_CASE("manifest lists every file with its size") {
  const fs::path dir = scratch("manifest");
  write(dir / "eq.cfg", kEquilibrium);
  const Config c = load_config((dir / "eq.cfg").string());
  const Manifest m = write_outputs(run_single(c), dir / "o", false);
  CHECK(m.entries.size() == 4);
  for (const auto& e : m.entries) CHECK(fs::file_size(dir / "o" / e.path) == e.bytes);
  std::ifstream in(dir / "o" / "manifest.txt");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (const auto& e : m.entries) CHECK(all.find(e.path) != std::string::npos);
}

TEST_CASE("sweep outputs land in per-member subdirectories") {
  const fs::path dir = scratch("sweep");
  write(dir / "eq.cfg", kEquilibrium);
  const std::string out = (dir / "out").string();
  CHECK(run_cli({"sweep-mesh", "--config", (dir / "eq.cfg").string(), "--mesh", "8,16,32", "--out", out}) ==
        kExitPass);
  for (const char* n : {"8", "16", "32"}) CHECK(fs::exists(dir / "out" / "sweep-mesh" / n / "run.csv"));
  CHECK(fs::exists(dir / "out" / "sweep-mesh" / "summary.json"));
  CHECK(fs::exists(dir / "out" / "sweep-mesh" / "manifest.txt"));
  CHECK(run_cli({"sweep-eps", "--config", (dir / "eq.cfg").string(), "--eps", "0.5,0.25,0.125", "--out", out}) ==
        kExitPass);
  CHECK(fs::exists(dir / "out" / "sweep-eps" / "0.25" / "run.csv"));
  CHECK(run_cli({"sweep-eps", "--config", (dir / "eq.cfg").string(), "--eps", "0.5,0.6,0.1", "--out", out}) ==
        kExitUsage);
}

TEST_CASE("json summary replaces non-finite values by null") {
  RunReport r;
  r.config = parse_config(kEquilibrium);
  r.verdicts.push_back({"x", std::nan(""), 1.0, "<=", false, true});
  const auto j = to_json(r);
  CHECK(j.dump().find("null") != std::string::npos);
}
