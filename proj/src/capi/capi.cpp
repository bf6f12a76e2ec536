#include "gptctx.h"

#include "core/json_io.hpp"
#include "measures/measures.hpp"
#include "physical/physical.hpp"
#include "zoo/systems.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

using namespace gptctx;

struct gptctx_system {
    GptSystem value;
};

namespace {

constexpr const char* kVersion = "1.0.0";

thread_local std::string t_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

gptctx_status fail(gptctx_status code, const char* message) {
    t_error = message;
    return code;
}

// Compute-path exception mapping: domain violations, then JSON schema issues,
// then solver breakdown (runtime_error is reserved for it across the
// library), then everything else.
template <typename Fn>
gptctx_status run_compute(Fn&& fn) noexcept {
    try {
        fn();
        t_error.clear();
        return GPTCTX_OK;
    } catch (const std::invalid_argument& e) {
        t_error = e.what();
        return GPTCTX_ERROR_INVALID_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        t_error = e.what();
        return GPTCTX_ERROR_PARSE;
    } catch (const std::runtime_error& e) {
        t_error = e.what();
        return GPTCTX_ERROR_SOLVER;
    } catch (const std::exception& e) {
        t_error = e.what();
        return GPTCTX_ERROR_INTERNAL;
    } catch (...) {
        t_error = "unknown error";
        return GPTCTX_ERROR_INTERNAL;
    }
}

// Parse-path mapping: any failure while decoding names or documents is a
// parse error, including range guards inside the zoo constructors.
template <typename Fn>
gptctx_status run_parse(Fn&& fn) noexcept {
    try {
        fn();
        t_error.clear();
        return GPTCTX_OK;
    } catch (const std::exception& e) {
        t_error = e.what();
        return GPTCTX_ERROR_PARSE;
    } catch (...) {
        t_error = "unknown error";
        return GPTCTX_ERROR_PARSE;
    }
}

SeesawConfig to_seesaw_config(const gptctx_config* cfg) {
    SeesawConfig out;
    if (!cfg) return out;
    if (!(cfg->tolerance > 0.0))
        throw std::invalid_argument("config: tolerance must be positive");
    if (cfg->restarts < 1) throw std::invalid_argument("config: restarts must be >= 1");
    if (cfg->max_iters < 1) throw std::invalid_argument("config: max_iters must be >= 1");
    if (cfg->threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    out.restarts = cfg->restarts;
    out.maxIters = cfg->max_iters;
    out.seed = cfg->seed;
    out.innerTol = cfg->tolerance;
    out.preserveUnit = cfg->preserve_unit != 0;
    out.threads = cfg->threads;
    return out;
}

double config_tolerance(const gptctx_config* cfg) { return cfg ? cfg->tolerance : 1e-9; }

Json finite_or_null(double x) {
    if (std::isfinite(x)) return Json(x);
    return Json(nullptr);
}

Json report_to_json(const ValidationReport& rep) {
    Json violations = Json::array();
    for (const Violation& v : rep.violations) {
        Json entry;
        entry["invariant"] = v.invariant;
        entry["indices"] = v.indices;
        entry["magnitude"] = finite_or_null(v.magnitude);
        violations.push_back(entry);
    }
    Json out;
    out["passed"] = rep.passed;
    out["violations"] = violations;
    return out;
}

UnivalentSimulation parse_simulation(const char* text) {
    return simulation_from_json(Json::parse(text));
}

}  // namespace

extern "C" {

void gptctx_config_default(gptctx_config* cfg) {
    if (!cfg) return;
    cfg->tolerance = 1e-9;
    cfg->seed = 0;
    cfg->restarts = 32;
    cfg->max_iters = 200;
    cfg->preserve_unit = 0;
    cfg->threads = 0;
}

const char* gptctx_version(void) { return kVersion; }

const char* gptctx_last_error(void) { return t_error.c_str(); }

void gptctx_string_free(char* text) { std::free(text); }

gptctx_status gptctx_system_from_name(const char* name, gptctx_system** out) {
    if (!name || !out) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return run_parse([&] {
        auto sys = make_from_name(name);
        if (!sys) throw std::runtime_error("unknown system name \"" + std::string(name) + "\"");
        *out = new gptctx_system{std::move(*sys)};
    });
}

gptctx_status gptctx_system_from_json(const char* json_text, gptctx_system** out) {
    if (!json_text || !out) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return run_parse([&] { *out = new gptctx_system{system_from_json(Json::parse(json_text))}; });
}

void gptctx_system_free(gptctx_system* sys) { delete sys; }

gptctx_status gptctx_system_to_json(const gptctx_system* sys, char** out_json) {
    if (!sys || !out_json) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] { *out_json = dup_string(system_to_json(sys->value).dump()); });
}

gptctx_status gptctx_system_label(const gptctx_system* sys, char** out_label) {
    if (!sys || !out_label) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] { *out_label = dup_string(sys->value.label); });
}

gptctx_status gptctx_system_validate(const gptctx_system* sys, double tolerance,
                                     int32_t* out_passed, char** out_report_json) {
    if (!sys) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] {
        if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
        const ValidationReport rep = validate_system(sys->value, tolerance);
        if (out_passed) *out_passed = rep.passed ? 1 : 0;
        if (out_report_json) *out_report_json = dup_string(report_to_json(rep).dump());
    });
}

gptctx_status gptctx_simulation_validate(const char* simulation_json, double tolerance,
                                         int32_t preserve_unit, char** out_json) {
    if (!simulation_json || !out_json)
        return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    UnivalentSimulation sim;
    const gptctx_status parsed = run_parse([&] { sim = parse_simulation(simulation_json); });
    if (parsed != GPTCTX_OK) return parsed;
    return run_compute([&] {
        if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
        const SimulationCheck chk = validate_simulation(sim, tolerance, preserve_unit != 0);
        Json out;
        out["source"] = sim.source.label;
        out["target"] = sim.target.label;
        out["epsilonClaimed"] = sim.epsilonClaimed;
        out["epsilonObserved"] = chk.epsilonObserved;
        out["passed"] = chk.valid();
        out["report"] = report_to_json(chk.report);
        *out_json = dup_string(out.dump());
    });
}

gptctx_status gptctx_classical_excess(const gptctx_system* sys, int32_t m_max,
                                      const gptctx_config* cfg, char** out_json) {
    if (!sys || !out_json) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] {
        const SeesawConfig sc = to_seesaw_config(cfg);
        const ExcessSweep sweep = classical_excess(sys->value, m_max, sc);
        Json rows = Json::array();
        for (const ExcessEstimate& est : sweep.perM) {
            Json row;
            row["m"] = est.m;
            row["upper"] = finite_or_null(est.upperBound);
            row["lower"] = est.lowerBound;
            row["failed"] = est.failed;
            rows.push_back(row);
        }
        Json out;
        out["system"] = sys->value.label;
        out["mMax"] = m_max;
        out["perM"] = rows;
        out["stabilized"] = finite_or_null(sweep.stabilized);
        out["stabilizedFlag"] = sweep.stabilizedFlag;
        out["lowerBound"] = sweep.lowerBound;
        *out_json = dup_string(out.dump());
    });
}

gptctx_status gptctx_pom_value(const gptctx_system* sys, int32_t n_bits,
                               const gptctx_config* cfg, char** out_json) {
    if (!sys || !out_json) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] {
        const SeesawConfig sc = to_seesaw_config(cfg);
        const PomValue pv = pom_value(sys->value, n_bits, sc);
        Json strategy;
        Json states = Json::array();
        for (const Vec& s : pv.strategy.states) states.push_back(vec_to_json(s));
        Json effects = Json::array();
        for (const Vec& e : pv.strategy.effects) effects.push_back(vec_to_json(e));
        strategy["states"] = states;
        strategy["effects"] = effects;
        strategy["success"] = pom_success(sys->value, pv.strategy);
        strategy["poResidual"] = pom_po_residual(pv.strategy);
        Json out;
        out["system"] = sys->value.label;
        out["bits"] = n_bits;
        out["value"] = pv.value;
        out["classicalBound"] = (n_bits + 1) / (2.0 * n_bits);
        out["solverFailure"] = pv.solverFailure;
        out["strategy"] = strategy;
        *out_json = dup_string(out.dump());
    });
}

gptctx_status gptctx_pom_yield(const gptctx_system* sys, int32_t n_bits, int32_t d_max,
                               const gptctx_config* cfg, char** out_json) {
    if (!sys || !out_json) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] {
        const SeesawConfig sc = to_seesaw_config(cfg);
        const PomYield py = pom_yield(sys->value, n_bits, d_max, sc);
        Json out;
        out["system"] = sys->value.label;
        out["bits"] = n_bits;
        out["dMax"] = d_max;
        out["value"] = py.value;
        out["perD"] = py.perD;
        Json failed = Json::array();
        for (std::size_t i = 0; i < py.failedD.size(); ++i)
            if (py.failedD[i]) failed.push_back(static_cast<int>(i) + 1);
        out["failedD"] = failed;
        out["stabilizedFlag"] = py.stabilizedFlag;
        *out_json = dup_string(out.dump());
    });
}

gptctx_status gptctx_compare(const gptctx_system* a, const gptctx_system* b,
                             int32_t n_free_max, const gptctx_config* cfg, char** out_json) {
    if (!a || !b || !out_json) return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    return run_compute([&] {
        const SeesawConfig sc = to_seesaw_config(cfg);
        const HierarchyEvidence ev = compare(a->value, b->value, n_free_max, sc);
        Json out;
        out["a"] = a->value.label;
        out["b"] = b->value.label;
        out["nFreeMax"] = n_free_max;
        out["verdict"] = to_string(ev.verdict);
        out["freeWireSize"] =
            ev.verdict == Verdict::Holds ? Json(ev.freeWireSize) : Json(nullptr);
        out["witnessLower"] = ev.witnessLower;
        out["simulatorUpper"] = finite_or_null(ev.simulatorUpper);
        Json perN = Json::array();
        for (double eps : ev.perN) perN.push_back(finite_or_null(eps));
        out["perN"] = perN;
        if (ev.certificate) {
            out["certificateEpsilon"] =
                validate_simulation(*ev.certificate, config_tolerance(cfg)).epsilonObserved;
            out["certificate"] = simulation_to_json(*ev.certificate);
        }
        *out_json = dup_string(out.dump());
    });
}

gptctx_status gptctx_find_realisation(const char* simulation_json, double tolerance,
                                      char** out_json) {
    if (!simulation_json || !out_json)
        return fail(GPTCTX_ERROR_INVALID_ARGUMENT, "null argument");
    UnivalentSimulation sim;
    const gptctx_status parsed = run_parse([&] { sim = parse_simulation(simulation_json); });
    if (parsed != GPTCTX_OK) return parsed;
    return run_compute([&] {
        const RealisationResult res = find_realisation(sim, tolerance);
        Json out;
        out["source"] = sim.source.label;
        out["target"] = sim.target.label;
        out["status"] = to_string(res.status);
        if (res.status == RealisationStatus::Feasible) {
            out["strictAdjoint"] = res.strictAdjoint;
            out["map"] = mat_to_json(res.map.coefficients);
        }
        *out_json = dup_string(out.dump());
    });
}

}  // extern "C"
