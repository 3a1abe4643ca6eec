#include "stepanov/stepanov.h"

#include <cstring>
#include <stdexcept>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "stepanov/bochner.hpp"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/expr.hpp"
#include "stepanov/harness.hpp"
#include "stepanov/integrability.hpp"
#include "stepanov/io.hpp"
#include "stepanov/nemytskii.hpp"
#include "stepanov/periodicity.hpp"

using stepanov::GridFunction;
using stepanov::GridSpec;
using stepanov::NormKind;
using json = nlohmann::json;

struct stp_function {
  GridFunction u;
};
struct stp_sequence {
  stepanov::BochnerSequence seq;
};
struct stp_map {
  stepanov::NemytskiiMap f;
};

namespace {

thread_local std::string last_error;

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

stp_status status_of(stepanov::ErrorCode code) { return static_cast<stp_status>(static_cast<int>(code)); }

stp_status fail(stp_status status, const std::string& code, const std::string& message, json extra = json::object()) {
  json j = {{"status", static_cast<int>(status)}, {"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  last_error = j.dump();
  return status;
}

// Runs body, translating exceptions into status codes and the thread's last error.
template <class Body>
stp_status guard(Body&& body) {
  try {
    body();
    return STP_OK;
  } catch (const NullArgument& e) {
    return fail(STP_ERR_NULL, "Null", e.what());
  } catch (const stepanov::ParseError& e) {
    return fail(STP_ERR_PARSE, "Parse", e.what(), {{"offset", e.offset()}});
  } catch (const stepanov::EvaluationError& e) {
    json extra = {{"t", e.t()}, {"cell", e.cell()}};
    if (e.offset() != stepanov::EvaluationError::npos) extra["offset"] = e.offset();
    return fail(STP_ERR_EVALUATION, "Evaluation", e.what(), extra);
  } catch (const stepanov::Error& e) {
    return fail(status_of(e.code()), stepanov::to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(STP_ERR_PARSE, "Parse", std::string("invalid JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(STP_ERR_INTERNAL, "Internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(STP_ERR_INTERNAL, "Internal", e.what());
  }
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& type, json payload) { *out = dup(stepanov::io::envelope(type, std::move(payload)).dump()); }

void require(const void* p, const char* what) {
  if (!p) throw NullArgument(std::string(what) + " must not be null");
}

NormKind kind_of(const char* s) { return s ? stepanov::parse_norm_kind(s) : NormKind::L2; }

json parse_json(const char* s) {
  if (!s || !*s) return json::object();
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    throw stepanov::ParseError(e.byte > 0 ? e.byte - 1 : 0, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<double> array(const double* p, std::size_t n) {
  if (n && !p) throw stepanov::Error(stepanov::ErrorCode::InvalidArgument, "array pointer must not be null");
  return n ? std::vector<double>(p, p + n) : std::vector<double>{};
}

std::vector<double> number_list(const json& o, const char* key, std::vector<double> fallback) {
  if (!o.contains(key)) return fallback;
  return o.at(key).get<std::vector<double>>();
}

double number(const json& o, const char* key, double fallback) {
  return o.contains(key) ? o.at(key).get<double>() : fallback;
}

std::vector<double> sample_times(const json& o) {
  if (o.contains("ts")) return o.at("ts").get<std::vector<double>>();
  const auto range = number_list(o, "t_range", {-4.0, 4.0});
  const double step = number(o, "t_step", 0.25);
  if (range.size() != 2 || !(step > 0.0) || !(range[1] >= range[0]))
    throw stepanov::Error(stepanov::ErrorCode::InvalidArgument, "t_range must be [lo, hi] with a positive t_step");
  std::vector<double> ts;
  for (long i = 0; range[0] + i * step <= range[1] + 1e-12; ++i) ts.push_back(range[0] + i * step);
  return ts;
}

GridSpec t_grid(const json& o) {
  const auto window = number_list(o, "window", {-2.0, 2.0});
  if (window.size() != 2) throw stepanov::Error(stepanov::ErrorCode::InvalidArgument, "window must be [lo, hi]");
  return GridSpec(static_cast<int>(number(o, "m", 20)), std::lround(window[0]), std::lround(window[1]));
}

bool is_exp_oscillation(const stepanov::NemytskiiMap& f) { return f.name() == "exp-oscillation"; }

json hypothesis(const stepanov::NemytskiiMap& f, std::string_view which, const json& o) {
  using namespace stepanov;
  const auto h = parse_hypothesis(which);
  const auto ts = sample_times(o);
  const auto ball = sample_ball(f.d_in(), number(o, "radius", 3.0), static_cast<std::size_t>(number(o, "count", 64)),
                                f.norm_kind());
  const auto tol = [&](double fallback) { return number(o, "tolerance", fallback); };
  const double period = number(o, "period", f.period.value_or(1.0));
  HypothesisReport report;
  switch (h) {
    case Hypothesis::H1: report = check_H1(f, ts, ball.points, tol(1e-9)); break;
    case Hypothesis::H2: report = check_H2(f, ts, ball.points, number(o, "step", 1e-8), tol(1e-5)); break;
    case Hypothesis::H4: report = check_H4(f, period, ts, ball.points, tol(1e-9)); break;
    case Hypothesis::H5: report = check_H5(f, period, ts, ball.points, tol(1e-12)); break;
    case Hypothesis::AutonomousGrowth: report = check_autonomous_growth(f, ball.points, tol(1e-9)); break;
    case Hypothesis::Lipschitz: {
      ScalarFn weight;
      std::string note;
      if (o.contains("weight")) {
        const auto e = expr::parse(o.at("weight").get<std::string>());
        weight = [e](double t) { return e.evaluate_scalar(t); };
      } else if (f.lipschitz) {
        weight = f.lipschitz->weight;
      } else {
        weight = [](double) { return 0.0; };
        note = "no Lipschitz weight declared; the quotient itself is reported as the violation";
      }
      std::vector<PointPair> pairs;
      if (is_exp_oscillation(f)) {
        // Divergent family x_k = s_k e_1, y_k = (s_k + eps_k) e_1 at t0.
        const double t0 = number(o, "t0", 0.0);
        const auto k_max = static_cast<long>(number(o, "k_max", 10));
        const double a = o.contains("a") ? expr::parse(o.at("a").get<std::string>()).evaluate_scalar(t0) : 1.0;
        for (long k = 1; k <= k_max; ++k) {
          const auto pr = harness::exp_oscillation_pair(k, a, t0, f.d_in());
          pairs.push_back({t0, pr.x, pr.y});
        }
      } else {
        for (double t : ts)
          for (std::size_t i = 0; i + 1 < ball.points.size(); i += 2) pairs.push_back({t, ball.points[i], ball.points[i + 1]});
      }
      report = check_lipschitz(f, weight, pairs, tol(1e-9));
      if (is_exp_oscillation(f) && report.witness) {
        // Pair index of the witness; the family is indexed from k = 1.
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if (pairs[i].x1 == report.witness->x1) report.metrics["k"] = static_cast<double>(i + 1);
      }
      if (!note.empty()) report.note = note;
      break;
    }
    case Hypothesis::H3: {
      report = check_H3(f, ball, number(o, "r_budget", 0.5), number_list(o, "thetas", {0.9, 0.5, 0.1, 0.05, 0.01}),
                        number_list(o, "deltas", {0.01, 0.05, 0.2}), t_grid(o), number(o, "vanish_tol", 1e-2));
      break;
    }
    case Hypothesis::C2: {
      const auto a = expr::parse(o.contains("a") ? o.at("a").get<std::string>() : std::string("1"));
      // eps is written as an expression in t, read as delta.
      const auto eps = expr::parse(o.contains("eps") ? o.at("eps").get<std::string>() : std::string("t"));
      report = check_C2(
          f, ball, [a](double t) { return a.evaluate_scalar(t); }, [eps](double d) { return eps.evaluate_scalar(d); },
          number_list(o, "deltas", {0.01, 0.05, 0.2}), t_grid(o), tol(1e-9));
      break;
    }
  }
  json j = io::to_json(report);
  j["map"] = f.name();
  j["ball"] = {{"dim", f.d_in()}, {"radius", ball.radius}, {"points", ball.points.size()},
               {"covering_radius", ball.covering_radius}};
  return j;
}

}  // namespace

extern "C" {

const char* stp_version(void) { return stepanov::harness::kVersion; }

const char* stp_last_error(void) { return last_error.empty() ? nullptr : last_error.c_str(); }

void stp_string_free(char* s) { std::free(s); }

stp_status stp_function_from_dsl(const char* expr, int m, long n_lo, long n_hi, const char* norm_kind,
                                 stp_function** out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    const auto e = stepanov::expr::parse(expr);
    *out = new stp_function{stepanov::expr::sample(e, GridSpec(m, n_lo, n_hi), kind_of(norm_kind))};
  });
}

stp_status stp_function_from_catalog(const char* name, const char* params_json, int m, long n_lo, long n_hi,
                                     const char* norm_kind, stp_function** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new stp_function{
        stepanov::catalog::sample(name, parse_json(params_json), GridSpec(m, n_lo, n_hi), kind_of(norm_kind))};
  });
}

stp_status stp_function_from_json(const char* text, stp_function** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new stp_function{stepanov::io::grid_function_from_json(parse_json(text))};
  });
}

stp_status stp_function_load(const char* path, int m, const char* norm_kind, stp_function** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    std::optional<int> res;
    if (m > 0) res = m;
    *out = new stp_function{stepanov::io::load_function(path, res, kind_of(norm_kind))};
  });
}

stp_status stp_function_to_json(const stp_function* u, char** out) {
  return guard([&] {
    require(u, "function");
    require(out, "out");
    emit(out, "grid_function", stepanov::io::to_json(u->u));
  });
}

stp_status stp_function_to_csv(const stp_function* u, char** out) {
  return guard([&] {
    require(u, "function");
    require(out, "out");
    std::ostringstream s;
    stepanov::io::write_csv(s, u->u);
    *out = dup(s.str());
  });
}

stp_status stp_function_dim(const stp_function* u, size_t* out) {
  return guard([&] {
    require(u, "function");
    require(out, "out");
    *out = u->u.dim();
  });
}

stp_status stp_function_axpy(const stp_function* u, double lambda, const stp_function* w, stp_function** out) {
  return guard([&] {
    require(u, "u");
    require(w, "w");
    require(out, "out");
    *out = new stp_function{u->u + stepanov::scale(w->u, lambda)};
  });
}

void stp_function_free(stp_function* u) { delete u; }

stp_status stp_sequence_from_json(const char* text, stp_sequence** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new stp_sequence{stepanov::io::bochner_sequence_from_json(parse_json(text))};
  });
}

stp_status stp_sequence_to_json(const stp_sequence* s, char** out) {
  return guard([&] {
    require(s, "sequence");
    require(out, "out");
    emit(out, "bochner_sequence", stepanov::io::to_json(s->seq));
  });
}

void stp_sequence_free(stp_sequence* s) { delete s; }

stp_status stp_map_from_catalog(const char* name, const char* params_json, size_t dim, const char* norm_kind,
                                stp_map** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new stp_map{stepanov::catalog::map(name, parse_json(params_json), dim, kind_of(norm_kind))};
  });
}

stp_status stp_map_from_dsl(const char* expr, size_t dim, double p, double q, const char* norm_kind, stp_map** out) {
  return guard([&] {
    require(expr, "expr");
    require(out, "out");
    const auto e = stepanov::expr::parse(expr, {dim, kind_of(norm_kind)});
    *out = new stp_map{stepanov::expr::to_map(e, "dsl", p, q)};
  });
}

void stp_map_free(stp_map* f) { delete f; }

stp_status stp_norm(const stp_function* u, double p, char** out_json) {
  return guard([&] {
    require(u, "function");
    require(out_json, "out");
    emit(out_json, "norm", stepanov::io::to_json(stepanov::stepanov_norm(u->u, p)));
  });
}

stp_status stp_transform(const char* op, const char* input_json, double p, char** out_json) {
  return guard([&] {
    require(op, "op");
    require(out_json, "out");
    const auto in = parse_json(input_json);
    const std::string o = op;
    using namespace stepanov;
    if (o == "B") {
      emit(out_json, "bochner_function", io::to_json(bochner(io::grid_function_from_json(in)).materialize()));
    } else if (o == "D") {
      emit(out_json, "bochner_sequence", io::to_json(discrete_bochner(io::grid_function_from_json(in), p)));
    } else if (o == "Dinv") {
      emit(out_json, "grid_function", io::to_json(discrete_bochner_inverse(io::bochner_sequence_from_json(in))));
    } else if (o == "R") {
      emit(out_json, "bochner_sequence", io::to_json(restriction(io::bochner_function_from_json(in), p)));
    } else if (o == "L") {
      emit(out_json, "grid_function", io::to_json(left_inverse(io::bochner_function_from_json(in))));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown transform '" + o + "' (expected B, D, Dinv, R or L)");
    }
  });
}

stp_status stp_ap_scan(const stp_function* u, double epsilon, const char* mode, double p, double half_width,
                       int keep_curve, char** out_json) {
  return guard([&] {
    require(u, "function");
    require(out_json, "out");
    const auto m = mode ? stepanov::parse_scan_mode(mode) : stepanov::ScanMode::BohrSup;
    emit(out_json, "ap_certificate",
         stepanov::io::to_json(stepanov::ap_scan(u->u, epsilon, m, p, half_width, keep_curve != 0)));
  });
}

stp_status stp_sequence_ap_scan(const stp_sequence* s, double epsilon, long half_width, char** out_json) {
  return guard([&] {
    require(s, "sequence");
    require(out_json, "out");
    emit(out_json, "sequence_ap_certificate", stepanov::io::to_json(stepanov::sequence_ap_scan(s->seq, epsilon, half_width)));
  });
}

stp_status stp_aa_check(const stp_function* u, const double* shifts, size_t n_shifts, const double* probes,
                        size_t n_probes, double tolerance, char** out_json) {
  return guard([&] {
    require(u, "function");
    require(out_json, "out");
    emit(out_json, "aa_check",
         stepanov::io::to_json(stepanov::aa_check(u->u, array(shifts, n_shifts), array(probes, n_probes), tolerance)));
  });
}

stp_status stp_tightness(const stp_function* u, const double* radii, size_t n, char** out_json) {
  return guard([&] {
    require(u, "function");
    require(out_json, "out");
    emit(out_json, "tightness", stepanov::io::to_json(stepanov::tightness(u->u, array(radii, n))));
  });
}

stp_status stp_ui_modulus(const stp_function* u, double p, const double* deltas, size_t n, char** out_json) {
  return guard([&] {
    require(u, "function");
    require(out_json, "out");
    emit(out_json, "ui_modulus", stepanov::io::to_json(stepanov::ui_modulus(u->u, p, array(deltas, n))));
  });
}

stp_status stp_measure_defect(const stp_function* uk, const stp_function* u, double epsilon, char** out_json) {
  return guard([&] {
    require(uk, "uk");
    require(u, "u");
    require(out_json, "out");
    emit(out_json, "measure_defect", stepanov::io::to_json(stepanov::measure_defect(uk->u, u->u, epsilon)));
  });
}

stp_status stp_apply(const stp_map* f, const stp_function* u, stp_function** out) {
  return guard([&] {
    require(f, "map");
    require(u, "function");
    require(out, "out");
    *out = new stp_function{stepanov::apply(f->f, u->u)};
  });
}

stp_status stp_hypothesis(const stp_map* f, const char* which, const char* options_json, char** out_json) {
  return guard([&] {
    require(f, "map");
    require(which, "which");
    require(out_json, "out");
    emit(out_json, "hypothesis", hypothesis(f->f, which, parse_json(options_json)));
  });
}

stp_status stp_modulus_alpha(const stp_map* f, double radius, size_t count, const double* deltas, size_t n, int m,
                             long n_lo, long n_hi, char** out_json) {
  return guard([&] {
    require(f, "map");
    require(out_json, "out");
    const auto ball = stepanov::sample_ball(f->f.d_in(), radius, count, f->f.norm_kind());
    emit(out_json, "modulus",
         stepanov::io::to_json(stepanov::modulus_alpha(f->f, ball, array(deltas, n), GridSpec(m, n_lo, n_hi))));
  });
}

stp_status stp_continuity_probe(const stp_map* f, const stp_function* u, const stp_function* w, const double* scales,
                                size_t n, double p, double q, char** out_json) {
  return guard([&] {
    require(f, "map");
    require(u, "u");
    require(w, "w");
    require(out_json, "out");
    std::vector<GridFunction> perturbations;
    for (double s : array(scales, n)) {
      if (!(s > 0.0)) throw stepanov::Error(stepanov::ErrorCode::InvalidArgument, "probe scales must be > 0");
      perturbations.push_back(stepanov::scale(w->u, 1.0 / s));
    }
    auto j = stepanov::io::to_json(stepanov::continuity_probe(f->f, u->u, perturbations, p, q));
    j["scales"] = array(scales, n);
    emit(out_json, "probe", std::move(j));
  });
}

stp_status stp_verify(const char* suite, uint64_t seed, int include_timing, char** out_json, int* all_pass) {
  return guard([&] {
    require(suite, "suite");
    require(out_json, "out");
    std::vector<stepanov::harness::VerificationReport> reports;
    if (std::string_view(suite) == "all")
      reports = stepanov::harness::run_all(seed);
    else
      reports.push_back(stepanov::harness::run_suite(suite, seed));
    json list = json::array();
    bool pass = true;
    for (const auto& r : reports) {
      list.push_back(r.to_json(include_timing != 0));
      pass &= r.pass();
    }
    emit(out_json, "verification", {{"seed", seed}, {"pass", pass}, {"reports", std::move(list)}});
    if (all_pass) *all_pass = pass ? 1 : 0;
  });
}

}  // extern "C"
