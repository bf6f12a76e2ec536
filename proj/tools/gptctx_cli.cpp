// Command-line front end. Links only the shared C API; all numerics live
// behind it. Exit codes: 0 pass/holds/feasible, 1 fail/refuted/infeasible,
// 2 parse/usage error, 3 solver failure, 4 inconclusive.
#include <CLI11.hpp>
#include <gptctx.h>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitInconclusive = 4;

struct Options {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int restarts = 32;
    int maxIters = 200;
    std::string format = "json";
    bool preserveUnit = false;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--tol", opt.tol, "Membership/validation tolerance")
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Seed for all randomness")->capture_default_str();
    cmd->add_option("--restarts", opt.restarts, "Search restarts")->capture_default_str();
    cmd->add_option("--max-iters", opt.maxIters, "Iteration cap per restart")
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_flag("--preserve-unit", opt.preserveUnit,
                  "Require unit preservation in embeddings");
}

gptctx_config make_config(const Options& opt) {
    gptctx_config cfg;
    gptctx_config_default(&cfg);
    cfg.tolerance = opt.tol;
    cfg.seed = opt.seed;
    cfg.restarts = opt.restarts;
    cfg.max_iters = opt.maxIters;
    cfg.preserve_unit = opt.preserveUnit ? 1 : 0;
    cfg.threads = 0;  // GPTCTX_THREADS caps parallelism inside the library
    return cfg;
}

int exit_for(gptctx_status status) {
    switch (status) {
        case GPTCTX_OK: return kExitPass;
        case GPTCTX_ERROR_PARSE: return kExitParse;
        case GPTCTX_ERROR_INVALID_ARGUMENT: return kExitParse;
        case GPTCTX_ERROR_SOLVER: return kExitSolver;
        case GPTCTX_ERROR_INTERNAL: return kExitSolver;
    }
    return kExitSolver;
}

int report_error(gptctx_status status) {
    std::cerr << "error: " << gptctx_last_error() << "\n";
    return exit_for(status);
}

// Takes ownership of a library string.
std::string take(char* text) {
    std::string out = text ? text : "";
    gptctx_string_free(text);
    return out;
}

std::string fmt12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_number(const Json& value) {
    if (value.is_null()) return "";
    return fmt12(value.get<double>());
}

// systemRef: zoo name, or path of a JSON system document.
gptctx_status load_system(const std::string& ref, gptctx_system** out) {
    std::error_code ec;
    if (std::filesystem::exists(ref, ec)) {
        std::ifstream in(ref);
        std::ostringstream text;
        text << in.rdbuf();
        return gptctx_system_from_json(text.str().c_str(), out);
    }
    return gptctx_system_from_name(ref.c_str(), out);
}

struct SystemGuard {
    gptctx_system* ptr = nullptr;
    ~SystemGuard() { gptctx_system_free(ptr); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_key_value_csv(const Json& doc, const std::string& skipKey) {
    std::cout << "key,value\n";
    for (const auto& [key, value] : doc.items()) {
        if (key == skipKey) continue;
        if (value.is_number_float())
            std::cout << key << "," << fmt12(value.get<double>()) << "\n";
        else if (value.is_primitive())
            std::cout << key << "," << value.dump() << "\n";
    }
}

int cmd_validate(const std::string& ref, const Options& opt) {
    SystemGuard sys;
    gptctx_status st = load_system(ref, &sys.ptr);
    if (st != GPTCTX_OK) return report_error(st);
    std::int32_t passed = 0;
    char* report = nullptr;
    st = gptctx_system_validate(sys.ptr, opt.tol, &passed, &report);
    if (st != GPTCTX_OK) return report_error(st);
    const std::string doc = take(report);
    if (opt.format == "csv") {
        const Json parsed = Json::parse(doc);
        std::cout << "key,value\n";
        std::cout << "passed," << parsed.at("passed").dump() << "\n";
        for (const auto& v : parsed.at("violations"))
            std::cout << "violation," << v.at("invariant").get<std::string>() << "\n";
    } else {
        std::cout << doc << "\n";
    }
    return passed ? kExitPass : kExitFail;
}

int cmd_excess(const std::string& ref, int mMax, const Options& opt) {
    SystemGuard sys;
    gptctx_status st = load_system(ref, &sys.ptr);
    if (st != GPTCTX_OK) return report_error(st);
    const gptctx_config cfg = make_config(opt);
    const auto start = std::chrono::steady_clock::now();
    char* out = nullptr;
    st = gptctx_classical_excess(sys.ptr, mMax, &cfg, &out);
    if (st != GPTCTX_OK) return report_error(st);
    const double wall = seconds_since(start);
    const std::string doc = take(out);
    const Json parsed = Json::parse(doc);
    if (opt.format == "csv") {
        const std::string flag = parsed.at("stabilizedFlag").dump();
        std::cout << "m,upper,lower,stabilized_flag,wall_time_s\n";
        for (const auto& row : parsed.at("perM"))
            std::cout << row.at("m").get<int>() << "," << csv_number(row.at("upper")) << ","
                      << csv_number(row.at("lower")) << "," << flag << "," << fmt12(wall)
                      << "\n";
    } else {
        std::cout << doc << "\n";
    }
    for (const auto& row : parsed.at("perM"))
        if (row.at("failed").get<bool>()) return kExitSolver;
    return kExitPass;
}

int cmd_pom(const std::string& ref, int bits, int yieldDmax, const Options& opt) {
    SystemGuard sys;
    gptctx_status st = load_system(ref, &sys.ptr);
    if (st != GPTCTX_OK) return report_error(st);
    const gptctx_config cfg = make_config(opt);
    const auto start = std::chrono::steady_clock::now();
    char* out = nullptr;
    st = gptctx_pom_value(sys.ptr, bits, &cfg, &out);
    if (st != GPTCTX_OK) return report_error(st);
    Json doc = Json::parse(take(out));
    if (yieldDmax > 0) {
        char* yieldOut = nullptr;
        st = gptctx_pom_yield(sys.ptr, bits, yieldDmax, &cfg, &yieldOut);
        if (st != GPTCTX_OK) return report_error(st);
        doc["yield"] = Json::parse(take(yieldOut));
    }
    const double wall = seconds_since(start);

    bool solverFailure = doc.at("solverFailure").get<bool>();
    if (doc.contains("yield") && !doc.at("yield").at("failedD").empty()) solverFailure = true;

    if (opt.format == "csv") {
        std::cout << "d,upper,lower,stabilized_flag,wall_time_s\n";
        // d = 0: the bare system, no free classical wire.
        std::cout << "0,," << fmt12(doc.at("value").get<double>()) << ",," << fmt12(wall)
                  << "\n";
        if (doc.contains("yield")) {
            const Json& yield = doc.at("yield");
            const std::string flag = yield.at("stabilizedFlag").dump();
            const auto& perD = yield.at("perD");
            for (std::size_t i = 0; i < perD.size(); ++i)
                std::cout << (i + 1) << ",," << fmt12(perD.at(i).get<double>()) << "," << flag
                          << "," << fmt12(wall) << "\n";
        }
    } else {
        std::cout << doc.dump() << "\n";
    }
    return solverFailure ? kExitSolver : kExitPass;
}

int cmd_compare(const std::string& refA, const std::string& refB, int nFreeMax,
                const Options& opt) {
    SystemGuard a;
    gptctx_status st = load_system(refA, &a.ptr);
    if (st != GPTCTX_OK) return report_error(st);
    SystemGuard b;
    st = load_system(refB, &b.ptr);
    if (st != GPTCTX_OK) return report_error(st);
    const gptctx_config cfg = make_config(opt);
    char* out = nullptr;
    st = gptctx_compare(a.ptr, b.ptr, nFreeMax, &cfg, &out);
    if (st != GPTCTX_OK) return report_error(st);
    const std::string doc = take(out);
    const Json parsed = Json::parse(doc);
    if (opt.format == "csv")
        print_key_value_csv(parsed, "certificate");
    else
        std::cout << doc << "\n";
    const std::string verdict = parsed.at("verdict").get<std::string>();
    if (verdict == "holds") return kExitPass;
    if (verdict == "refuted") return kExitFail;
    return kExitInconclusive;
}

int cmd_realize(const std::string& simPath, const Options& opt) {
    std::error_code ec;
    if (!std::filesystem::exists(simPath, ec)) {
        std::cerr << "error: no such file: " << simPath << "\n";
        return kExitParse;
    }
    std::ifstream in(simPath);
    std::ostringstream text;
    text << in.rdbuf();
    char* out = nullptr;
    const gptctx_status st = gptctx_find_realisation(text.str().c_str(), opt.tol, &out);
    if (st != GPTCTX_OK) return report_error(st);
    const std::string doc = take(out);
    const Json parsed = Json::parse(doc);
    if (opt.format == "csv")
        print_key_value_csv(parsed, "map");
    else
        std::cout << doc << "\n";
    const std::string status = parsed.at("status").get<std::string>();
    if (status == "feasible") return kExitPass;
    if (status == "infeasible") return kExitFail;
    return kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polytope-described probabilistic systems: validation, excess, "
                 "multiplexing values, hierarchy comparison, realisation"};
    app.set_version_flag("--version", std::string(gptctx_version()));
    app.require_subcommand(1);

    Options opt;
    std::string refA;
    std::string refB;
    std::string simPath;
    int mMax = 4;
    int bits = 2;
    int yieldDmax = 0;
    int nFreeMax = 3;

    CLI::App* validate = app.add_subcommand("validate", "Structural validation of a system");
    validate->add_option("system", refA, "Zoo name or system JSON file")->required();
    add_common(validate, opt);

    CLI::App* excess = app.add_subcommand("excess", "Classical-excess sweep over simplex sizes");
    excess->add_option("system", refA, "Zoo name or system JSON file")->required();
    excess->add_option("--m-max", mMax, "Largest simplex size")->capture_default_str();
    add_common(excess, opt);

    CLI::App* pom = app.add_subcommand("pom", "Parity-oblivious multiplexing value");
    pom->add_option("system", refA, "Zoo name or system JSON file")->required();
    pom->add_option("--bits", bits, "Number of multiplexed bits")->capture_default_str();
    pom->add_option("--yield-dmax", yieldDmax,
                    "Also sweep the value over free classical wires up to this size");
    add_common(pom, opt);

    CLI::App* compare = app.add_subcommand("compare", "Hierarchy comparison of two systems");
    compare->add_option("a", refA, "Candidate simulated system")->required();
    compare->add_option("b", refB, "Candidate simulator")->required();
    compare->add_option("--n-free-max", nFreeMax, "Largest free classical wire")
        ->capture_default_str();
    add_common(compare, opt);

    CLI::App* realize = app.add_subcommand("realize", "Physical decode-map search");
    realize->add_option("--simulation", simPath, "Simulation JSON file")->required();
    add_common(realize, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (validate->parsed()) return cmd_validate(refA, opt);
        if (excess->parsed()) return cmd_excess(refA, mMax, opt);
        if (pom->parsed()) return cmd_pom(refA, bits, yieldDmax, opt);
        if (compare->parsed()) return cmd_compare(refA, refB, nFreeMax, opt);
        if (realize->parsed()) return cmd_realize(simPath, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitParse;
}
