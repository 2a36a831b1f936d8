// Command-line front end: single swap configurations, Fig-style
// fidelity sweeps over the standard scenarios, and the verification
// suite.  Squeezing is given dimensionless (--r, --s, ...) or in dB;
// efficiencies are always given as eta^2, the form they are usually
// quoted in, and converted to amplitude efficiency exactly once.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvswap/cvswap.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

double parse_gain_flag(const std::string& text, bool& auto_gain) {
    if (text == "auto") {
        auto_gain = true;
        return 0.0;
    }
    auto_gain = false;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(value))
        throw CLI::ValidationError("--g-swap", "expected a real number or 'auto'");
    return value;
}

void check_eta_sq(double value, const char* flag) {
    if (!(value > 0.0) || value > 1.0)
        throw CLI::ValidationError(flag, "must be in (0, 1]");
}

int run_swap(double r1, double r2, double s1, double s2,
             const std::optional<double>& db, const std::string& g_swap_text,
             double g, double eta_c_sq, double eta_a_sq) {
    using namespace cvswap;
    check_eta_sq(eta_c_sq, "--eta-c-sq");
    check_eta_sq(eta_a_sq, "--eta-a-sq");

    SwapParams p;
    if (db) {
        p.r1 = p.r2 = p.s1 = p.s2 = db_to_r(*db);
    } else {
        p.r1 = r1;
        p.r2 = r2;
        p.s1 = s1;
        p.s2 = s2;
    }
    p.g = g;
    p.eta_c = std::sqrt(eta_c_sq);
    p.eta_a = std::sqrt(eta_a_sq);

    bool auto_gain = false;
    p.g_swap = parse_gain_flag(g_swap_text, auto_gain);
    if (auto_gain) p.g_swap = optimal_gain_numeric_unit_eta(p);
    p.validate();

    SwapOutput swap = entanglement_swap(p);
    const double duan = duan_sum(swap.reg, swap.alice, swap.bob);
    const double tan = tan_product(swap.reg, swap.alice, swap.bob);
    const TeleportOutput tel = teleport_coherent(swap, p.g, p.eta_a);

    nlohmann::ordered_json out;
    out["fidelity"] = fidelity_from_exprs(tel);
    out["sigma_x"] = q_function_variance(tel.x_tel, tel);
    out["sigma_p"] = q_function_variance(tel.p_tel, tel);
    out["g"] = p.g;
    out["g_swap"] = p.g_swap;
    out["duan_sum"] = duan;
    out["tan_product"] = tan;
    out["params"] = {{"r1", p.r1},
                     {"r2", p.r2},
                     {"s1", p.s1},
                     {"s2", p.s2},
                     {"g", p.g},
                     {"g_swap", p.g_swap},
                     {"eta_c_sq", p.eta_c * p.eta_c},
                     {"eta_a_sq", p.eta_a * p.eta_a}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_sweep_cmd(const std::vector<std::string>& scenario_flags,
                  const std::optional<double>& db,
                  const std::optional<std::string>& db_range,
                  const std::string& g_swap_text, const std::optional<double>& g,
                  const std::optional<double>& eta_c_sq,
                  const std::optional<double>& eta_a_sq,
                  const std::string& format_text,
                  const std::optional<std::string>& out_path) {
    using namespace cvswap;
    SweepSpec spec;
    for (const std::string& s : scenario_flags) {
        if (s.size() != 1)
            throw CLI::ValidationError("--scenario", "expected one of a|b|c|d|e");
        spec.scenarios.push_back(parse_scenario(s[0]));
    }
    if (db_range) {
        double lo = 0.0, hi = 0.0, step = 0.0;
        if (std::sscanf(db_range->c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
            throw CLI::ValidationError("--db-range", "expected MIN:MAX:STEP");
        spec.db_min = lo;
        spec.db_max = hi;
        spec.db_step = step;
    } else if (db) {
        spec.db_min = spec.db_max = *db;
        spec.db_step = 1.0;
    }
    if (!g_swap_text.empty() && g_swap_text != "auto") {
        bool auto_gain = false;
        spec.overrides.g_swap = parse_gain_flag(g_swap_text, auto_gain);
    }
    spec.overrides.g = g;
    if (eta_c_sq) {
        check_eta_sq(*eta_c_sq, "--eta-c-sq");
        spec.overrides.eta_c_sq = eta_c_sq;
    }
    if (eta_a_sq) {
        check_eta_sq(*eta_a_sq, "--eta-a-sq");
        spec.overrides.eta_a_sq = eta_a_sq;
    }
    if (format_text == "csv")
        spec.format = OutputFormat::Csv;
    else if (format_text == "json")
        spec.format = OutputFormat::Json;
    else
        throw CLI::ValidationError("--format", "expected csv or json");
    spec.out_path = out_path;

    const std::string text = format_rows(run_sweep(spec), spec.format);
    if (spec.out_path) {
        std::ofstream file(*spec.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: --out: cannot open '" << *spec.out_path << "'\n";
            return kExitUsage;
        }
        file << text;
    } else {
        std::cout << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous-variable entanglement swapping toolkit"};
    app.require_subcommand(1);

    // swap
    auto* swap = app.add_subcommand(
        "swap", "run one swap-then-teleport configuration, report as JSON");
    double r1 = 0.0, r2 = 0.0, s1 = 0.0, s2 = 0.0;
    double g = 1.0, eta_c_sq = 1.0, eta_a_sq = 1.0;
    std::optional<double> swap_db;
    std::string g_swap_text = "auto";
    auto* opt_r = swap->add_option("--r", r1, "squeezing r1 (dimensionless)");
    auto* opt_r2 = swap->add_option("--r2", r2, "squeezing r2");
    auto* opt_s = swap->add_option("--s", s1, "squeezing s1");
    auto* opt_s2 = swap->add_option("--s2", s2, "squeezing s2");
    auto* opt_db =
        swap->add_option("--db", swap_db, "equal squeezing for all four modes, in dB");
    opt_db->excludes(opt_r)->excludes(opt_r2)->excludes(opt_s)->excludes(opt_s2);
    swap->add_option("--g-swap", g_swap_text,
                     "swap gain, a real number or 'auto' (unit-efficiency optimum)");
    swap->add_option("--g", g, "teleportation gain (default 1)");
    swap->add_option("--eta-c-sq", eta_c_sq, "Claire's detector efficiency eta^2");
    swap->add_option("--eta-a-sq", eta_a_sq, "Alice's detector efficiency eta^2");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "fidelity vs squeezing table over scenarios a-e");
    std::vector<std::string> scenario_flags;
    std::optional<double> sweep_db;
    std::optional<std::string> db_range, out_path;
    std::string sweep_g_swap = "auto", format_text = "csv";
    std::optional<double> sweep_g, sweep_eta_c_sq, sweep_eta_a_sq;
    sweep->add_option("--scenario", scenario_flags,
                      "scenario tag a|b|c|d|e (repeatable)")
        ->required();
    auto* opt_range =
        sweep->add_option("--db-range", db_range, "squeezing grid MIN:MAX:STEP in dB");
    sweep->add_option("--db", sweep_db, "single squeezing value in dB")
        ->excludes(opt_range);
    sweep->add_option("--g-swap", sweep_g_swap,
                      "pin the swap gain (default: scenario's optimum)");
    sweep->add_option("--g", sweep_g, "pin the teleportation gain");
    sweep->add_option("--eta-c-sq", sweep_eta_c_sq, "pin Claire's efficiency eta^2");
    sweep->add_option("--eta-a-sq", sweep_eta_a_sq, "pin Alice's efficiency eta^2");
    sweep->add_option("--format", format_text, "output format: csv or json");
    sweep->add_option("--out", out_path, "write output to this file instead of stdout");

    // verify
    app.add_subcommand("verify",
                       "run the acceptance checks, one pass/fail line each");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (swap->parsed())
            return run_swap(r1, r2, s1, s2, swap_db, g_swap_text, g, eta_c_sq,
                            eta_a_sq);
        if (sweep->parsed())
            return run_sweep_cmd(scenario_flags, sweep_db, db_range, sweep_g_swap,
                                 sweep_g, sweep_eta_c_sq, sweep_eta_a_sq,
                                 format_text, out_path);
        return cvswap::verify::run_verification(std::cout) ? kExitOk
                                                           : kExitVerifyFailure;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
}
