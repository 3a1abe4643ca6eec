// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stepanov/stepanov.h"

using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct RuntimeFailure {};
struct UsageFailure {
  std::string message;
};

struct FunctionDeleter {
  void operator()(stp_function* u) const { stp_function_free(u); }
};
struct MapDeleter {
  void operator()(stp_map* f) const { stp_map_free(f); }
};
using Function = std::unique_ptr<stp_function, FunctionDeleter>;
using Map = std::unique_ptr<stp_map, MapDeleter>;

void check(stp_status s) {
  if (s != STP_OK) throw RuntimeFailure{};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  stp_string_free(s);
  return out;
}

struct Globals {
  int m = 20;
  std::vector<long> window = {-2, 2};
  double p = 1.0;
  std::optional<double> q;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
  std::string norm = "l2";
};

struct FunctionSource {
  std::string dsl;
  std::string catalog;
  std::string params;
  std::string input;
};

void add_function_options(CLI::App* cmd, FunctionSource& src, const std::string& prefix = "") {
  const std::string p = prefix.empty() ? "--" : "--" + prefix + "-";
  cmd->add_option(p + "dsl", src.dsl, "Function of t in the expression DSL");
  cmd->add_option(p + "catalog", src.catalog, "Catalog function name");
  cmd->add_option(p + "params", src.params, "Catalog parameters as JSON");
  cmd->add_option(p + "input", src.input, "Grid function file (.json or .csv)");
}

Function load_function(const FunctionSource& src, const Globals& g, const std::string& what) {
  const int given = !src.dsl.empty() + !src.catalog.empty() + !src.input.empty();
  if (given != 1) throw UsageFailure{"give exactly one of --dsl, --catalog or --input for " + what};
  if (g.window.size() != 2) throw UsageFailure{"--window takes two integers"};
  stp_function* raw = nullptr;
  if (!src.dsl.empty())
    check(stp_function_from_dsl(src.dsl.c_str(), g.m, g.window[0], g.window[1], g.norm.c_str(), &raw));
  else if (!src.catalog.empty())
    check(stp_function_from_catalog(src.catalog.c_str(), src.params.empty() ? nullptr : src.params.c_str(), g.m,
                                    g.window[0], g.window[1], g.norm.c_str(), &raw));
  else
    check(stp_function_load(src.input.c_str(), src.input.ends_with(".csv") ? g.m : 0, g.norm.c_str(), &raw));
  return Function(raw);
}

struct MapSource {
  std::string catalog;
  std::string dsl;
  std::string params;
  std::string a;
  std::size_t dim = 1;
};

Map load_map(const MapSource& src, const Globals& g) {
  if (src.catalog.empty() == src.dsl.empty()) throw UsageFailure{"give exactly one of --catalog or --dsl for the map"};
  stp_map* raw = nullptr;
  if (!src.catalog.empty()) {
    json params = src.params.empty() ? json::object() : json::parse(src.params, nullptr, false);
    if (params.is_discarded()) throw UsageFailure{"--params is not valid JSON"};
    if (!src.a.empty()) params["a"] = src.a;
    if (!params.contains("p") && (src.catalog == "exp-oscillation" || src.catalog == "section7")) params["p"] = g.p;
    check(stp_map_from_catalog(src.catalog.c_str(), params.dump().c_str(), src.dim, g.norm.c_str(), &raw));
  } else {
    check(stp_map_from_dsl(src.dsl.c_str(), src.dim, g.p, g.q.value_or(g.p), g.norm.c_str(), &raw));
  }
  return Map(raw);
}

void add_map_options(CLI::App* cmd, MapSource& src, bool catalog_is_map) {
  if (catalog_is_map) {
    cmd->add_option("--catalog,--map", src.catalog, "Catalog map name");
    cmd->add_option("--dsl,--map-dsl", src.dsl, "Map f(t, x) in the expression DSL");
    cmd->add_option("--params", src.params, "Catalog map parameters as JSON");
  } else {
    cmd->add_option("--map", src.catalog, "Catalog map name");
    cmd->add_option("--map-dsl", src.dsl, "Map f(t, x) in the expression DSL");
    cmd->add_option("--map-params", src.params, "Catalog map parameters as JSON");
  }
  cmd->add_option("--a", src.a, "Coefficient a(t) for exp-oscillation, as a DSL expression");
  cmd->add_option("--dim", src.dim, "Dimension of x")->check(CLI::PositiveNumber);
}

void write_output(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) {
    std::cerr << json{{"status", "io"}, {"message", "cannot write '" + g.out + "'"}}.dump() << '\n';
    throw RuntimeFailure{};
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void write_json(const Globals& g, const std::string& raw) { write_output(g, json::parse(raw).dump(2)); }

std::string csv_columns(const json& j, const std::vector<std::pair<std::string, std::string>>& columns) {
  std::ostringstream s;
  for (std::size_t i = 0; i < columns.size(); ++i) s << (i ? "," : "") << columns[i].first;
  s << '\n';
  const std::size_t rows = j.at(columns.front().second).size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto& v = j.at(columns[i].second).at(r);
      s << (i ? "," : "") << (v.is_null() ? std::string("nan") : v.dump());
    }
    s << '\n';
  }
  return s.str();
}

void require_json_format(const Globals& g, const std::string& cmd) {
  if (g.format != "json") throw UsageFailure{"csv output is not available for '" + cmd + "'"};
}

std::vector<double> default_or(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stepanov almost periodic function laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(stp_version()));

  Globals g;
  app.add_option("--m", g.m, "Samples per unit interval")->check(CLI::PositiveNumber);
  app.add_option("--window", g.window, "Integer window lo hi")->expected(2);
  app.add_option("--p", g.p, "Exponent p (inf allowed)");
  app.add_option("--q", g.q, "Exponent q (defaults to p)");
  app.add_option("--seed", g.seed, "Seed for verification suites");
  app.add_option("--out", g.out, "Output file (stdout when omitted)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--norm", g.norm, "Norm on R^d")->check(CLI::IsMember({"l1", "l2", "linf"}));

  FunctionSource fn, ref, pert;
  MapSource map;

  auto* norm_cmd = app.add_subcommand("norm", "Stepanov norm bracket of a function");
  add_function_options(norm_cmd, fn);

  std::string op, transform_input;
  auto* transform_cmd = app.add_subcommand("transform", "Apply B, D, Dinv, R or L to a JSON document");
  transform_cmd->add_option("--op", op, "Transform")->required()->check(CLI::IsMember({"B", "D", "Dinv", "R", "L"}));
  transform_cmd->add_option("--input", transform_input, "Input document")->required();

  double eps = 0.1, half_width = 1.0, tol = 1e-6;
  std::string mode = "bohr";
  bool curve = false;
  auto* scan_cmd = app.add_subcommand("ap-scan", "Almost-period certificate over [-W, W]");
  add_function_options(scan_cmd, fn);
  scan_cmd->add_option("--eps", eps, "Tolerance epsilon");
  scan_cmd->add_option("--mode", mode, "bohr or stepanov")->check(CLI::IsMember({"bohr", "stepanov"}));
  scan_cmd->add_option("--half-width,-W", half_width, "Scan half-width W");
  scan_cmd->add_flag("--curve", curve, "Include the defect curve");

  std::vector<double> shifts, probes, radii, deltas, eps_list, scales;
  auto* aa_cmd = app.add_subcommand("aa-check", "Windowed almost-automorphy residuals along a shift sequence");
  add_function_options(aa_cmd, fn);
  aa_cmd->add_option("--shifts", shifts, "Shift sequence t_k")->required();
  aa_cmd->add_option("--probes", probes, "Probe points t")->required();
  aa_cmd->add_option("--tol", tol, "Residual tolerance");

  auto* tight_cmd = app.add_subcommand("tight", "Stepanov tightness excursions");
  add_function_options(tight_cmd, fn);
  tight_cmd->add_option("--radii", radii, "Ball radii R");

  auto* ui_cmd = app.add_subcommand("ui-mod", "p-uniform-integrability modulus");
  add_function_options(ui_cmd, fn);
  ui_cmd->add_option("--deltas", deltas, "Measures delta in [0, 1]");

  auto* defect_cmd = app.add_subcommand("defect", "Windowed measure defect of u_k against u");
  add_function_options(defect_cmd, fn);
  add_function_options(defect_cmd, ref, "ref");
  defect_cmd->add_option("--eps", eps_list, "Thresholds epsilon");

  auto* apply_cmd = app.add_subcommand("apply", "Superposition N_f u");
  add_function_options(apply_cmd, fn);
  add_map_options(apply_cmd, map, false);

  std::string which, options_json, weight, thetas_arg;
  double radius = 3.0, period = 0.0, t0 = 0.0, r_budget = 0.5;
  std::size_t count = 64;
  long k_max = 10;
  std::vector<double> thetas;
  auto* hyp_cmd = app.add_subcommand("hyp", "Sampling check of a hypothesis on a map");
  hyp_cmd->add_option("which", which, "H1 H2 H3 H4 H5 eq49|lipschitz eq50|autonomous-growth c2")->required();
  add_map_options(hyp_cmd, map, true);
  hyp_cmd->add_option("--radius", radius, "Ball radius for x samples");
  hyp_cmd->add_option("--count", count, "Number of ball samples");
  hyp_cmd->add_option("--tol", tol, "Override the hypothesis tolerance");
  hyp_cmd->add_option("--period", period, "Period T for H4/H5");
  hyp_cmd->add_option("--weight", weight, "Lipschitz weight L(t) as a DSL expression");
  hyp_cmd->add_option("--k-max", k_max, "Pairs in the divergent family (exp-oscillation)");
  hyp_cmd->add_option("--t0", t0, "Time of the divergent family");
  hyp_cmd->add_option("--r-budget", r_budget, "Exceptional-set budget r for H3");
  hyp_cmd->add_option("--thetas", thetas, "Thresholds searched for H3");
  hyp_cmd->add_option("--deltas", deltas, "Deltas for H3 and C2");
  hyp_cmd->add_option("--options", options_json, "Additional options as JSON");

  auto* alpha_cmd = app.add_subcommand("alpha", "Modulus alpha_delta(t) on a ball");
  add_map_options(alpha_cmd, map, true);
  alpha_cmd->add_option("--radius", radius, "Ball radius");
  alpha_cmd->add_option("--count", count, "Number of ball samples");
  alpha_cmd->add_option("--deltas", deltas, "Deltas");

  auto* probe_cmd = app.add_subcommand("probe", "Continuity probe along u + w/k");
  add_function_options(probe_cmd, fn);
  add_function_options(probe_cmd, pert, "w");
  add_map_options(probe_cmd, map, false);
  probe_cmd->add_option("--scales", scales, "Scales k");

  std::string suite;
  std::string report_dir;
  bool no_timing = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("suite", suite, "Suite id or all")->required();
  verify_cmd->add_option("--report-dir", report_dir, "Also write one report file per suite");
  verify_cmd->add_flag("--no-timing", no_timing, "Omit timing fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"status", "usage"}, {"message", e.what()}}.dump() << '\n';
    std::cerr << app.help();
    return kExitUsage;
  }

  const auto fail_runtime = [] {
    const char* err = stp_last_error();
    std::cerr << (err ? err : R"({"status":"runtime","message":"unknown error"})") << '\n';
    return kExitRuntime;
  };

  try {
    const double q = g.q.value_or(g.p);
    if (norm_cmd->parsed()) {
      require_json_format(g, "norm");
      auto u = load_function(fn, g, "norm");
      char* out = nullptr;
      check(stp_norm(u.get(), g.p, &out));
      write_json(g, take(out));
      return kExitPass;
    }
    if (transform_cmd->parsed()) {
      require_json_format(g, "transform");
      std::ifstream in(transform_input, std::ios::binary);
      if (!in) throw UsageFailure{"cannot open '" + transform_input + "'"};
      std::stringstream buf;
      buf << in.rdbuf();
      char* out = nullptr;
      check(stp_transform(op.c_str(), buf.str().c_str(), g.p, &out));
      write_json(g, take(out));
      return kExitPass;
    }
    if (scan_cmd->parsed()) {
      auto u = load_function(fn, g, "ap-scan");
      char* out = nullptr;
      check(stp_ap_scan(u.get(), eps, mode.c_str(), g.p, half_width, curve || g.format == "csv", &out));
      const auto raw = take(out);
      if (g.format == "csv")
        write_output(g, csv_columns(json::parse(raw).at("curve"), {{"tau", "tau"}, {"defect", "defect"}}));
      else
        write_json(g, raw);
      return kExitPass;
    }
    if (aa_cmd->parsed()) {
      require_json_format(g, "aa-check");
      auto u = load_function(fn, g, "aa-check");
      char* out = nullptr;
      check(stp_aa_check(u.get(), shifts.data(), shifts.size(), probes.data(), probes.size(), tol, &out));
      const auto raw = take(out);
      write_json(g, raw);
      return json::parse(raw).at("pass").get<bool>() ? kExitPass : kExitCheckFail;
    }
    if (tight_cmd->parsed()) {
      require_json_format(g, "tight");
      auto u = load_function(fn, g, "tight");
      const auto r = default_or(radii, {0.5, 1.0, 2.0, 4.0});
      char* out = nullptr;
      check(stp_tightness(u.get(), r.data(), r.size(), &out));
      write_json(g, take(out));
      return kExitPass;
    }
    if (ui_cmd->parsed()) {
      auto u = load_function(fn, g, "ui-mod");
      const auto d = default_or(deltas, {0.01, 0.05, 0.1, 0.25, 0.5, 1.0});
      char* out = nullptr;
      check(stp_ui_modulus(u.get(), g.p, d.data(), d.size(), &out));
      const auto raw = take(out);
      if (g.format == "csv")
        write_output(g, csv_columns(json::parse(raw), {{"delta", "deltas"}, {"modulus", "modulus"}}));
      else
        write_json(g, raw);
      return kExitPass;
    }
    if (defect_cmd->parsed()) {
      require_json_format(g, "defect");
      auto uk = load_function(fn, g, "u_k");
      auto u = load_function(ref, g, "the reference (--ref-*)");
      json list = json::array();
      for (double e : default_or(eps_list, {0.5, 0.1, 0.01})) {
        char* out = nullptr;
        check(stp_measure_defect(uk.get(), u.get(), e, &out));
        list.push_back(json::parse(take(out)));
      }
      write_output(g, json{{"schema_version", 1}, {"type", "measure_defects"}, {"defects", list}}.dump(2));
      return kExitPass;
    }
    if (apply_cmd->parsed()) {
      auto u = load_function(fn, g, "apply");
      auto f = load_map(map, g);
      stp_function* raw = nullptr;
      check(stp_apply(f.get(), u.get(), &raw));
      Function result(raw);
      char* out = nullptr;
      if (g.format == "csv") {
        check(stp_function_to_csv(result.get(), &out));
        write_output(g, take(out));
      } else {
        check(stp_function_to_json(result.get(), &out));
        write_json(g, take(out));
      }
      return kExitPass;
    }
    if (hyp_cmd->parsed()) {
      require_json_format(g, "hyp");
      if (map.catalog.empty() && map.dsl.empty()) throw UsageFailure{"hyp needs --catalog or --dsl"};
      auto f = load_map(map, g);
      json o = options_json.empty() ? json::object() : json::parse(options_json, nullptr, false);
      if (o.is_discarded()) throw UsageFailure{"--options is not valid JSON"};
      o["radius"] = radius;
      o["count"] = count;
      if (hyp_cmd->count("--tol")) o["tolerance"] = tol;
      if (period > 0.0) o["period"] = period;
      if (!weight.empty()) o["weight"] = weight;
      o["k_max"] = k_max;
      o["t0"] = t0;
      o["r_budget"] = r_budget;
      if (!thetas.empty()) o["thetas"] = thetas;
      if (!deltas.empty()) o["deltas"] = deltas;
      if (!map.a.empty()) o["a"] = map.a;
      if (!o.contains("m")) o["m"] = g.m;
      if (!o.contains("window")) o["window"] = g.window;
      char* out = nullptr;
      check(stp_hypothesis(f.get(), which.c_str(), o.dump().c_str(), &out));
      const auto raw = take(out);
      write_json(g, raw);
      return json::parse(raw).at("pass").get<bool>() ? kExitPass : kExitCheckFail;
    }
    if (alpha_cmd->parsed()) {
      require_json_format(g, "alpha");
      auto f = load_map(map, g);
      const auto d = default_or(deltas, {0.05, 0.1, 0.2});
      char* out = nullptr;
      check(stp_modulus_alpha(f.get(), radius, count, d.data(), d.size(), g.m, g.window[0], g.window[1], &out));
      write_json(g, take(out));
      return kExitPass;
    }
    if (probe_cmd->parsed()) {
      auto u = load_function(fn, g, "probe");
      FunctionSource w = pert;
      if (w.dsl.empty() && w.catalog.empty() && w.input.empty()) {
        // Default perturbation: seeded noise in every component.
        std::size_t dim = 1;
        check(stp_function_dim(u.get(), &dim));
        if (dim != 1) throw UsageFailure{"give a perturbation with --w-dsl, --w-catalog or --w-input for dim > 1"};
        w.catalog = "noise";
        w.params = json{{"seed", g.seed}, {"resolution", g.m}}.dump();
      }
      auto pw = load_function(w, g, "the perturbation (--w-*)");
      auto f = load_map(map, g);
      const auto s = default_or(scales, {1, 10, 100, 1000, 10000});
      char* out = nullptr;
      check(stp_continuity_probe(f.get(), u.get(), pw.get(), s.data(), s.size(), g.p, q, &out));
      const auto raw = take(out);
      if (g.format == "csv")
        write_output(g, csv_columns(json::parse(raw), {{"input", "input"}, {"output", "output"}, {"envelope", "envelope"}}));
      else
        write_json(g, raw);
      return kExitPass;
    }
    if (verify_cmd->parsed()) {
      require_json_format(g, "verify");
      char* out = nullptr;
      int pass = 0;
      check(stp_verify(suite.c_str(), g.seed, no_timing ? 0 : 1, &out, &pass));
      const auto doc = json::parse(take(out));
      if (!report_dir.empty()) {
        std::filesystem::create_directories(report_dir);
        for (const auto& r : doc.at("reports")) {
          std::ofstream f(std::filesystem::path(report_dir) / (r.at("suite").get<std::string>() + ".json"));
          f << r.dump(2) << '\n';
        }
      }
      write_output(g, doc.dump(2));
      for (const auto& r : doc.at("reports"))
        std::cerr << r.at("suite").get<std::string>() << ": " << (r.at("pass").get<bool>() ? "pass" : "FAIL") << " ("
                  << r.at("checks").size() << " checks)\n";
      return pass ? kExitPass : kExitCheckFail;
    }
  } catch (const UsageFailure& e) {
    std::cerr << json{{"status", "usage"}, {"message", e.message}}.dump() << '\n';
    return kExitUsage;
  } catch (const RuntimeFailure&) {
    return fail_runtime();
  } catch (const std::exception& e) {
    std::cerr << json{{"status", "runtime"}, {"message", e.what()}}.dump() << '\n';
    return kExitRuntime;
  }
  std::cerr << app.help();
  return kExitUsage;
}
