#include "stepanov/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "stepanov/error.hpp"

namespace stepanov::io {

namespace {

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json reals(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

json opt(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::Parse, std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<double> values_field(const json& j) {
  const auto& v = j.contains("values") ? j.at("values") : json();
  if (!v.is_array()) throw Error(ErrorCode::Parse, "missing array field 'values'");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw Error(ErrorCode::Parse, "values must be finite numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string format_real(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

json to_json(const GridSpec& spec) { return {{"m", spec.m()}, {"n_lo", spec.n_lo()}, {"n_hi", spec.n_hi()}}; }

json to_json(const GridFunction& u) {
  return {{"m", u.spec().m()},       {"n_lo", u.spec().n_lo()}, {"n_hi", u.spec().n_hi()},
          {"dim", u.dim()},          {"norm_kind", to_string(u.norm_kind())}, {"values", reals(u.values())}};
}

json to_json(const BochnerSequence& seq) {
  json slices = json::array();
  for (const auto& s : seq.slices())
    slices.push_back({{"m", s.m()}, {"dim", s.dim()}, {"norm_kind", to_string(s.norm_kind())}, {"values", reals(s.values())}});
  return {{"p", real(seq.p())}, {"n_lo", seq.n_lo()}, {"n_hi", seq.n_hi()}, {"slices", std::move(slices)}};
}

json to_json(const BochnerFunction& v) {
  std::vector<double> flat;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto s = v.slice_values(j);
    flat.insert(flat.end(), s.begin(), s.end());
  }
  return {{"m", v.spec().m()}, {"n_lo", v.spec().n_lo()}, {"n_hi", v.spec().n_hi()}, {"dim", v.dim()},
          {"norm_kind", to_string(v.norm_kind())}, {"points", v.size()}, {"values", reals(flat)}};
}

json to_json(const NormBracket& b) {
  return {{"p", real(b.p)},
          {"lower", real(b.lower)},
          {"grid_sup", real(b.grid_sup)},
          {"upper", real(b.upper)},
          {"lower_pow", real(b.lower_pow)},
          {"grid_sup_pow", real(b.grid_sup_pow)},
          {"argmax_t", real(b.argmax_t)},
          {"sandwich_holds", b.sandwich_holds()}};
}

json to_json(const DefectCurve& c) {
  json tau = json::array();
  for (std::size_t i = 0; i < c.defects.size(); ++i) tau.push_back(real(c.tau(i)));
  return {{"mode", to_string(c.mode)}, {"p", real(c.p)}, {"m", c.m}, {"tau", std::move(tau)}, {"defect", reals(c.defects)}};
}

json to_json(const APCertificate& c) {
  json j = {{"epsilon", real(c.epsilon)},
            {"mode", to_string(c.mode)},
            {"p", real(c.p)},
            {"half_width", real(c.half_width)},
            {"accepted", reals(c.accepted)},
            {"accepted_count", c.accepted.size()},
            {"max_gap", opt(c.max_gap)}};
  if (c.curve) j["curve"] = to_json(*c.curve);
  return j;
}

json to_json(const SequenceAPCertificate& c) {
  return {{"epsilon", real(c.epsilon)},
          {"p", real(c.p)},
          {"half_width", c.half_width},
          {"accepted", c.accepted},
          {"defects", reals(c.defects)},
          {"max_gap", c.max_gap ? json(*c.max_gap) : json(nullptr)}};
}

json to_json(const AACheckReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes)
    probes.push_back({{"t", real(p.t)},
                      {"limit", reals(p.limit)},
                      {"forward_cauchy", real(p.forward_cauchy)},
                      {"forward_to_limit", real(p.forward_to_limit)},
                      {"backward", real(p.backward)},
                      {"complete", p.complete}});
  return {{"shifts", reals(r.shifts)},
          {"tail_begin", r.tail_begin},
          {"tolerance", real(r.tolerance)},
          {"probes", std::move(probes)},
          {"max_residual", real(r.max_residual())},
          {"partial", r.partial},
          {"pass", r.pass}};
}

json to_json(const ConsistencyReport& r) {
  return {{"epsilon", real(r.epsilon)},     {"lipschitz", real(r.lipschitz)},   {"max_lag_cells", r.max_lag_cells},
          {"pairs", r.pairs},               {"max_violation", real(r.max_violation)},
          {"witness_t1", real(r.witness_t1)}, {"witness_t2", real(r.witness_t2)}, {"holds", r.holds}};
}

json to_json(const TightnessReport& r) {
  json windows = json::array();
  for (const auto& w : r.integer_windows) windows.push_back(reals(w));
  return {{"radii", reals(r.radii)},
          {"excursion", reals(r.excursion)},
          {"witness_t", reals(r.witness_t)},
          {"integer_windows", std::move(windows)}};
}

json to_json(const UIModulusReport& r) {
  return {{"p", real(r.p)}, {"deltas", reals(r.deltas)}, {"modulus", reals(r.modulus)}, {"witness_t", reals(r.witness_t)}};
}

json to_json(const MeasureDefect& d) {
  return {{"epsilon", real(d.epsilon)}, {"value", real(d.value)}, {"witness_t", real(d.witness_t)}};
}

json to_json(const ConvergenceReport& r) {
  json defects = json::array();
  for (const auto& row : r.defects) defects.push_back(reals(row));
  return {{"p", real(r.p)},
          {"epsilons", reals(r.epsilons)},
          {"deltas", reals(r.deltas)},
          {"distances", reals(r.distances)},
          {"defects", std::move(defects)},
          {"family_modulus", to_json(r.family_modulus)},
          {"tchebychev_worst", real(r.tchebychev_worst)},
          {"tchebychev_holds", r.tchebychev_holds},
          {"sp_converges", r.sp_converges},
          {"measure_converges", r.measure_converges},
          {"ui_certified", r.ui_certified},
          {"consistent", r.consistent},
          {"options", {{"convergence_tol", real(r.options.convergence_tol)}, {"ui_tol", real(r.options.ui_tol)}}}};
}

json to_json(const HypothesisReport& r) {
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = real(v);
  json j = {{"hypothesis", to_string(r.id)},
            {"samples", r.samples},
            {"max_violation", real(r.max_violation)},
            {"tolerance", real(r.tolerance)},
            {"pass", r.pass},
            {"metrics", std::move(metrics)},
            {"note", r.note}};
  if (r.witness)
    j["witness"] = {{"t", real(r.witness->t)}, {"x1", reals(r.witness->x1)}, {"x2", reals(r.witness->x2)}};
  else
    j["witness"] = nullptr;
  return j;
}

json to_json(const ModulusCurve& c) {
  json alpha = json::array();
  for (const auto& row : c.alpha) alpha.push_back(reals(row));
  return {{"radius", real(c.radius)},
          {"points", c.points},
          {"covering_radius", real(c.covering_radius)},
          {"low_confidence", c.low_confidence},
          {"deltas", reals(c.deltas)},
          {"sup_alpha", reals(c.sup_alpha)},
          {"t_grid", c.t_grid ? to_json(*c.t_grid) : json(nullptr)},
          {"alpha", std::move(alpha)}};
}

json to_json(const ProbeTable& t) {
  return {{"p", real(t.p)},
          {"q", real(t.q)},
          {"input", reals(t.input)},
          {"output", reals(t.output)},
          {"envelope", reals(t.envelope)},
          {"max_ratio", real(t.max_ratio)},
          {"final_output", real(t.final_output)},
          {"decreasing", t.decreasing}};
}

GridFunction grid_function_from_json(const json& j) {
  GridSpec spec(field<int>(j, "m"), field<long>(j, "n_lo"), field<long>(j, "n_hi"));
  const auto kind = j.contains("norm_kind") ? parse_norm_kind(field<std::string>(j, "norm_kind")) : NormKind::L2;
  return GridFunction(spec, field<std::size_t>(j, "dim"), values_field(j), kind);
}

BochnerSequence bochner_sequence_from_json(const json& j) {
  if (!j.contains("slices") || !j.at("slices").is_array()) throw Error(ErrorCode::Parse, "missing array field 'slices'");
  std::vector<LpSlice> slices;
  for (const auto& s : j.at("slices")) {
    const auto kind = s.contains("norm_kind") ? parse_norm_kind(field<std::string>(s, "norm_kind")) : NormKind::L2;
    slices.emplace_back(field<int>(s, "m"), field<std::size_t>(s, "dim"), values_field(s), kind);
  }
  return BochnerSequence(field<long>(j, "n_lo"), field<long>(j, "n_hi"), field<double>(j, "p"), std::move(slices));
}

BochnerFunction bochner_function_from_json(const json& j) {
  GridSpec spec(field<int>(j, "m"), field<long>(j, "n_lo"), field<long>(j, "n_hi"));
  const auto kind = j.contains("norm_kind") ? parse_norm_kind(field<std::string>(j, "norm_kind")) : NormKind::L2;
  return BochnerFunction(spec, field<std::size_t>(j, "dim"), kind, values_field(j));
}

json envelope(std::string type, json payload) {
  json j = {{"schema_version", kSchemaVersion}, {"type", std::move(type)}};
  for (auto& [k, v] : payload.items()) j[k] = v;
  return j;
}

GridFunction read_csv(std::istream& in, std::optional<int> m, NormKind kind) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty CSV input");
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ',');
    if (cell != "t") throw Error(ErrorCode::Parse, "CSV header must start with column t");
    while (std::getline(header, cell, ',')) {
      if (cell != "x_" + std::to_string(dim + 1))
        throw Error(ErrorCode::Parse, "CSV header column " + std::to_string(dim + 2) + " must be x_" + std::to_string(dim + 1));
      ++dim;
    }
  }
  if (dim == 0) throw Error(ErrorCode::Parse, "CSV needs at least one value column");

  std::vector<double> ts, values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> parsed;
    while (std::getline(fields, cell, ',')) {
      try {
        std::size_t used = 0;
        parsed.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "CSV row " + std::to_string(row) + ": not a number: '" + cell + "'");
      }
    }
    if (parsed.size() != dim + 1)
      throw Error(ErrorCode::Parse, "CSV row " + std::to_string(row) + " has " + std::to_string(parsed.size()) +
                                        " columns, expected " + std::to_string(dim + 1));
    ts.push_back(parsed[0]);
    values.insert(values.end(), parsed.begin() + 1, parsed.end());
  }
  if (ts.size() < 2 && !m) throw Error(ErrorCode::Parse, "cannot infer m from fewer than two rows");
  const int mm = m ? *m : static_cast<int>(std::lround(1.0 / (ts[1] - ts[0])));
  if (mm < 1) throw Error(ErrorCode::Alignment, "CSV rows must have increasing t");
  const double start = ts.front();
  if (std::fabs(start - std::round(start)) > 1e-9) throw Error(ErrorCode::Alignment, "CSV must start at an integer t");
  if (ts.size() % static_cast<std::size_t>(mm) != 0)
    throw Error(ErrorCode::Alignment, "CSV must cover whole unit intervals (row count not a multiple of m)");
  const long n_lo = std::lround(start);
  GridSpec spec(mm, n_lo, n_lo + static_cast<long>(ts.size() / static_cast<std::size_t>(mm)));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::fabs(ts[i] - spec.cell_start(i)) > 1e-9)
      throw Error(ErrorCode::Alignment, "CSV row " + std::to_string(i + 2) + ": t = " + format_real(ts[i]) +
                                            " is not the grid point " + format_real(spec.cell_start(i)));
  }
  return GridFunction(spec, dim, std::move(values), kind);
}

void write_csv(std::ostream& out, const GridFunction& u) {
  out << "t";
  for (std::size_t d = 0; d < u.dim(); ++d) out << ",x_" << d + 1;
  out << "\n";
  for (std::size_t i = 0; i < u.cells(); ++i) {
    out << format_real(u.spec().cell_start(i));
    for (double v : u.point(i)) out << "," << format_real(v);
    out << "\n";
  }
}

void write_csv(std::ostream& out, const DefectCurve& c) {
  out << "tau,defect\n";
  for (std::size_t i = 0; i < c.defects.size(); ++i) out << format_real(c.tau(i)) << "," << format_real(c.defects[i]) << "\n";
}

void write_csv(std::ostream& out, const UIModulusReport& r) {
  out << "delta,modulus\n";
  for (std::size_t i = 0; i < r.deltas.size(); ++i) out << format_real(r.deltas[i]) << "," << format_real(r.modulus[i]) << "\n";
}

void write_csv(std::ostream& out, const ProbeTable& t) {
  out << "input,output,envelope\n";
  for (std::size_t i = 0; i < t.input.size(); ++i)
    out << format_real(t.input[i]) << "," << format_real(t.output[i]) << "," << format_real(t.envelope[i]) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

GridFunction load_function(const std::string& path, std::optional<int> m, NormKind kind) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "csv") {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    return read_csv(in, m, kind);
  }
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
  return grid_function_from_json(j);
}

}  // namespace stepanov::io
