#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cvswap/sweep.hpp"

namespace cvswap::verify {

struct CheckResult {
    int number;
    std::string name;
    bool pass;
    std::string detail;
};

/// Expected headline numbers, overridable so a harness test can prove
/// that a tampered constant turns the corresponding check red.
struct VerifyOptions {
    double expected_f_6db = 0.5201;
    double expected_f_10db = 0.5425;
    unsigned seed = 917u;
};

namespace detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline double engine_fidelity(const SwapParams& p) {
    SwapOutput sw = entanglement_swap(p);
    const TeleportOutput tel = teleport_coherent(sw, p.g, p.eta_a);
    return fidelity_from_exprs(tel);
}

/// Coefficients on the four initial-pair vacuum slots (in creation
/// order) of the displaced receiver mode after the swap.
struct PairCoeffs {
    std::array<double, 4> c;
};

inline PairCoeffs swapped_mode_x_reference(const SwapParams& p) {
    const double gs = p.g_swap, f = M_SQRT1_2;
    return {{gs * f * std::exp(+p.r1), -gs * f * std::exp(-p.r2),
             -(gs - 1.0) * f * std::exp(+p.s1), -(gs + 1.0) * f * std::exp(-p.s2)}};
}
inline PairCoeffs swapped_mode_p_reference(const SwapParams& p) {
    const double gs = p.g_swap, f = M_SQRT1_2;
    return {{gs * f * std::exp(-p.r1), -gs * f * std::exp(+p.r2),
             +(gs + 1.0) * f * std::exp(-p.s1), +(gs - 1.0) * f * std::exp(+p.s2)}};
}
inline PairCoeffs teleported_x_reference(const SwapParams& p) {
    const double gs = p.g_swap, f = M_SQRT1_2;
    return {{(gs - 1.0) * f * std::exp(+p.r1), -(gs + 1.0) * f * std::exp(-p.r2),
             -(gs - 1.0) * f * std::exp(+p.s1), -(gs + 1.0) * f * std::exp(-p.s2)}};
}
inline PairCoeffs teleported_p_reference(const SwapParams& p) {
    const double gs = p.g_swap, f = M_SQRT1_2;
    return {{(gs + 1.0) * f * std::exp(-p.r1), -(gs - 1.0) * f * std::exp(+p.r2),
             +(gs + 1.0) * f * std::exp(-p.s1), +(gs - 1.0) * f * std::exp(+p.s2)}};
}

/// Detector-noise variance of each teleported quadrature at g = 1.
inline double teleported_noise_variance_reference(const SwapParams& p) {
    const double kc = 1.0 / (p.eta_c * p.eta_c) - 1.0;
    const double ka = 1.0 / (p.eta_a * p.eta_a) - 1.0;
    return p.g_swap * p.g_swap * kc / 2.0 + ka / 2.0;
}

inline double max_pair_deviation(const QuadExpr& e, const PairCoeffs& ref) {
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        dev = std::max(dev, std::abs(e.vacuum_coeff(i) - ref.c[i]));
    return dev;
}

inline double pick_eta_sq(std::mt19937& rng) {
    static constexpr std::array<double, 5> choices{1.0, 0.99, 0.97, 0.95, 0.9};
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    return choices[pick(rng)];
}

}  // namespace detail

inline CheckResult check_six_db(const VerifyOptions& opt) {
    const double r = db_to_r(6.0);
    const double eta = std::sqrt(0.99);
    const double tol = 5e-4;
    const double closed = optimal_fidelity_single_squeezers(r, eta, eta);
    const double engine = detail::engine_fidelity(
        {r, 0.0, r, 0.0, std::tanh(r), 1.0, eta, eta});
    const bool pass = std::abs(closed - opt.expected_f_6db) <= tol &&
                      std::abs(engine - opt.expected_f_6db) <= tol;
    return {1, "six-db-reproduction",
            pass,
            "closed=" + detail::num(closed) + " engine=" + detail::num(engine) +
                " target=" + detail::num(opt.expected_f_6db) + " tol=5e-4"};
}

inline CheckResult check_ten_db(const VerifyOptions& opt) {
    const double r = db_to_r(10.0);
    const double eta = std::sqrt(0.99);
    const double tol = 5e-4;
    const double closed = optimal_fidelity_single_squeezers(r, eta, eta);
    const double engine = detail::engine_fidelity(
        {r, 0.0, r, 0.0, std::tanh(r), 1.0, eta, eta});
    const bool pass = std::abs(closed - opt.expected_f_10db) <= tol &&
                      std::abs(engine - opt.expected_f_10db) <= tol;
    return {2, "ten-db-reproduction",
            pass,
            "closed=" + detail::num(closed) + " engine=" + detail::num(engine) +
                " target=" + detail::num(opt.expected_f_10db) + " tol=5e-4"};
}

/// r = 10 stands in for infinite squeezing; scenario B must equal its
/// closed form at every sweep grid point.
inline CheckResult check_asymptotes(const VerifyOptions&) {
    const double fc = run_scenario(Scenario::C, 10.0).fidelity;
    const double fd = run_scenario(Scenario::D, 10.0).fidelity;
    const double dev_c = std::abs(fc - 1.0 / std::sqrt(2.0));
    const double dev_d = std::abs(fd - 1.0 / std::sqrt(3.0));

    double dev_b = 0.0;
    for (double db : db_grid(0.0, 10.0, 0.5)) {
        const double r = db_to_r(db);
        const double expected = 1.0 / (1.0 + 1.0 / std::cosh(2.0 * r));
        dev_b = std::max(dev_b,
                         std::abs(run_scenario(Scenario::B, r).fidelity - expected));
    }
    const bool pass = dev_c <= 1e-6 && dev_d <= 1e-6 && dev_b <= 1e-12;
    return {3, "infinite-squeezing-asymptotes", pass,
            "|c-1/sqrt2|=" + detail::num(dev_c) + " |d-1/sqrt3|=" + detail::num(dev_d) +
                " max|b-closed|=" + detail::num(dev_b)};
}

/// The two-pair optimal fidelity sits exactly on the classical bound
/// 1/2 when either source is unsqueezed and above it otherwise.
inline CheckResult check_classical_boundary(const VerifyOptions& opt) {
    double dev_boundary = 0.0;
    for (double t = 0.0; t <= 2.0 + 1e-12; t += 0.125) {
        dev_boundary = std::max(dev_boundary,
                                std::abs(optimal_fidelity_two_pair(0.0, t) - 0.5));
        dev_boundary = std::max(dev_boundary,
                                std::abs(optimal_fidelity_two_pair(t, 0.0) - 0.5));
    }
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> squeeze(0.01, 2.0);
    bool above = true;
    double min_f = 1.0;
    for (int i = 0; i < 100; ++i) {
        const double f = optimal_fidelity_two_pair(squeeze(rng), squeeze(rng));
        min_f = std::min(min_f, f);
        above = above && f > 0.5;
    }
    const bool pass = dev_boundary <= 1e-12 && above;
    return {4, "classical-boundary", pass,
            "max|F-1/2|=" + detail::num(dev_boundary) +
                " min F(r,s>0.01)=" + detail::num(min_f)};
}

/// Engine fidelity against the closed form on 1000 random parameter
/// tuples, nonunit efficiencies included.
inline CheckResult check_oracle_equivalence(const VerifyOptions& opt) {
    std::mt19937 rng(opt.seed + 1);
    std::uniform_real_distribution<double> squeeze(0.0, 2.0);
    std::uniform_real_distribution<double> gain(0.0, 2.0);
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        SwapParams p{squeeze(rng), squeeze(rng), squeeze(rng), squeeze(rng),
                     gain(rng),  1.0,
                     std::sqrt(detail::pick_eta_sq(rng)),
                     std::sqrt(detail::pick_eta_sq(rng))};
        dev = std::max(dev, std::abs(detail::engine_fidelity(p) -
                                     fidelity_closed_form(p)));
    }
    return {5, "engine-vs-closed-form", dev <= 1e-10,
            "max|engine-closed|=" + detail::num(dev) + " tol=1e-10 n=1000"};
}

/// Golden-section maximization of the closed form recovers the
/// optimal-gain formula, including its tanh 2r and tanh r special
/// cases.
inline CheckResult check_gain_formulas(const VerifyOptions& opt) {
    std::mt19937 rng(opt.seed + 2);
    std::uniform_real_distribution<double> squeeze(0.0, 2.0);
    std::uniform_real_distribution<double> eta_sq(0.9, 1.0);
    double dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = squeeze(rng), s = squeeze(rng);
        const double eta_c = std::sqrt(eta_sq(rng));
        SwapParams p{r, r, s, s, 0.0, 1.0, eta_c, 1.0};
        const GainOpt found = optimize_gain_numeric([&](double gs) {
            p.g_swap = gs;
            return fidelity_closed_form(p);
        });
        dev = std::max(dev, std::abs(found.gain - optimal_gain(r, s, eta_c)));
    }
    const double dev_equal = std::abs(optimal_gain(0.7, 0.7) - std::tanh(1.4));
    const double dev_single = std::abs(optimal_gain(0.9, 0.0) - std::tanh(0.9));
    const double eta = std::sqrt(0.95);
    const double dev_eta =
        std::abs(optimal_gain(0.8, 0.8, eta) -
                 std::sinh(1.6) / (std::cosh(1.6) + 1.0 / (eta * eta) - 1.0));
    const bool pass =
        dev <= 1e-6 && dev_equal <= 1e-12 && dev_single <= 1e-12 && dev_eta <= 1e-12;
    return {6, "optimal-gain-formulas", pass,
            "max|search-formula|=" + detail::num(dev) + " tol=1e-6 n=100"};
}

/// Resolved coefficients of the displaced receiver mode and of the
/// teleported mode against their closed forms; detector noise matched
/// in variance.
inline CheckResult check_symbolic_regression(const VerifyOptions&) {
    double dev = 0.0;
    const std::array<SwapParams, 2> cases{
        SwapParams{0.3, 0.55, 0.7, 0.2, 0.8, 1.0, 1.0, 1.0},
        SwapParams{0.5, 0.5, 0.5, 0.5, 1.0, 1.0, 1.0, 1.0}};
    for (SwapParams p : cases) {
        SwapOutput sw = entanglement_swap(p);
        dev = std::max(dev,
                       detail::max_pair_deviation(sw.reg.resolve(sw.reg.mode(sw.bob).x),
                                                  detail::swapped_mode_x_reference(p)));
        dev = std::max(dev,
                       detail::max_pair_deviation(sw.reg.resolve(sw.reg.mode(sw.bob).p),
                                                  detail::swapped_mode_p_reference(p)));
    }

    double noise_dev = 0.0;
    for (SwapParams p : cases) {
        p.eta_c = std::sqrt(0.95);
        p.eta_a = std::sqrt(0.9);
        SwapOutput sw = entanglement_swap(p);
        const TeleportOutput tel = teleport_coherent(sw, 1.0, p.eta_a);
        dev = std::max(dev, detail::max_pair_deviation(
                                tel.x_tel, detail::teleported_x_reference(p)));
        dev = std::max(dev, detail::max_pair_deviation(
                                tel.p_tel, detail::teleported_p_reference(p)));
        dev = std::max(dev, std::abs(tel.x_tel.input_coeff(tel.input) - 1.0));
        dev = std::max(dev, std::abs(tel.p_tel.input_coeff(tel.input) - 1.0));

        const double expected_noise = detail::teleported_noise_variance_reference(p);
        for (const QuadExpr* e : {&tel.x_tel, &tel.p_tel}) {
            QuadExpr noise = *e;
            for (std::size_t slot = 0; slot < 4; ++slot) noise.erase_vacuum(slot);
            noise.erase_vacuum(tel.input_vacuum_slot);
            noise.erase_input(tel.input);
            noise_dev = std::max(noise_dev,
                                 std::abs(variance(noise) - expected_noise));
        }
    }
    const bool pass = dev <= 1e-12 && noise_dev <= 1e-12;
    return {7, "symbolic-regression", pass,
            "max coeff dev=" + detail::num(dev) +
                " noise var dev=" + detail::num(noise_dev) + " tol=1e-12"};
}

/// At unit swap gain and equal squeezing the criteria are
/// 2 e^{-2r} and e^{-4r}/4, crossing their bounds at 10 log10(2) dB.
inline CheckResult check_three_db_threshold(const VerifyOptions&) {
    auto criteria_at = [](double db) {
        const double r = db_to_r(db);
        SwapOutput sw = entanglement_swap({r, r, r, r, 1.0, 1.0, 1.0, 1.0});
        return std::array<double, 3>{duan_sum(sw.reg, sw.alice, sw.bob),
                                     tan_product(sw.reg, sw.alice, sw.bob),
                                     std::exp(-2.0 * r)};
    };
    double dev = 0.0;
    for (double db = 0.0; db <= 6.0 + 1e-12; db += 0.25) {
        const auto [duan, tan, em2r] = criteria_at(db);
        dev = std::max(dev, std::abs(duan - 2.0 * em2r));
        dev = std::max(dev, std::abs(tan - em2r * em2r / 4.0));
    }
    const double threshold_db = 10.0 * std::log10(2.0);
    const auto [duan_at, tan_at, em2r_at] = criteria_at(threshold_db);
    dev = std::max(dev, std::abs(duan_at - 1.0));
    dev = std::max(dev, std::abs(tan_at - 1.0 / 16.0));
    const bool crosses = criteria_at(threshold_db - 0.1)[0] > 1.0 &&
                         criteria_at(threshold_db + 0.1)[0] < 1.0 &&
                         criteria_at(threshold_db - 0.1)[1] > 1.0 / 16.0 &&
                         criteria_at(threshold_db + 0.1)[1] < 1.0 / 16.0;
    const bool pass = dev <= 1e-12 && crosses;
    return {8, "three-db-unit-gain-threshold", pass,
            "max dev=" + detail::num(dev) + " threshold_db=" +
                detail::num(threshold_db) + " crossing=" + (crosses ? "yes" : "no")};
}

/// With the optimal gain the projected pair is inseparable for every
/// r, s > 0 on the grid and sits on the bound when either is zero.
inline CheckResult check_inseparability_grid(const VerifyOptions&) {
    auto duan_at = [](double r, double s) {
        const double gs = optimal_gain(r, s);
        SwapOutput sw = entanglement_swap({r, r, s, s, gs, 1.0, 1.0, 1.0});
        return duan_sum(sw.reg, sw.alice, sw.bob);
    };
    double max_inside = 0.0;
    for (double r = 0.05; r <= 1.5 + 1e-12; r += 0.05)
        for (double s = 0.05; s <= 1.5 + 1e-12; s += 0.05)
            max_inside = std::max(max_inside, duan_at(r, s));
    double min_boundary = 2.0;
    for (double t = 0.0; t <= 1.5 + 1e-12; t += 0.05) {
        min_boundary = std::min(min_boundary, duan_at(0.0, t));
        min_boundary = std::min(min_boundary, duan_at(t, 0.0));
    }
    const bool pass = max_inside < 1.0 && min_boundary >= 1.0 - 1e-12;
    return {9, "inseparability-grid", pass,
            "max duan(r,s>0)=" + detail::num(max_inside) +
                " min duan(boundary)=" + detail::num(min_boundary)};
}

/// Without Claire's results (g_swap = 0) the fidelity never beats the
/// classical bound.
inline CheckResult check_no_assistance(const VerifyOptions& opt) {
    std::mt19937 rng(opt.seed + 3);
    std::uniform_real_distribution<double> squeeze(0.0, 2.0);
    double max_f = 0.0;
    for (int i = 0; i < 1000; ++i) {
        SwapParams p{squeeze(rng), squeeze(rng), squeeze(rng), squeeze(rng),
                     0.0, 1.0,
                     std::sqrt(detail::pick_eta_sq(rng)),
                     std::sqrt(detail::pick_eta_sq(rng))};
        max_f = std::max(max_f, std::max(detail::engine_fidelity(p),
                                         fidelity_closed_form(p)));
    }
    return {10, "no-assistance-bound", max_f <= 0.5 + 1e-12,
            "max F(g_swap=0)=" + detail::num(max_f) + " bound=0.5 n=1000"};
}

/// Swap-then-teleport at unit gains equals teleporting through both
/// pairs in sequence: identical coefficients at unit efficiency,
/// identical Q variances with lossy detectors.
inline CheckResult check_two_stage(const VerifyOptions& opt) {
    std::mt19937 rng(opt.seed + 4);
    std::uniform_real_distribution<double> squeeze(0.0, 1.5);
    double dev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double r1 = squeeze(rng), r2 = squeeze(rng);
        const double s1 = squeeze(rng), s2 = squeeze(rng);

        SwapOutput sw = entanglement_swap({r1, r2, s1, s2, 1.0, 1.0, 1.0, 1.0});
        const TeleportOutput via_swap = teleport_coherent(sw, 1.0, 1.0);

        ModeRegister reg;
        auto [m1, m2] = make_epr_pair(reg, r1, r2);
        auto [m3, m4] = make_epr_pair(reg, s1, s2);
        const mode_id in = reg.add_input_mode();
        const InputRecord input = reg.inputs().back();
        teleport_mode(reg, in, m1, m2, 1.0, 1.0);
        teleport_mode(reg, m2, m3, m4, 1.0, 1.0);
        const QuadExpr x_seq = reg.resolve(reg.mode(m4).x);
        const QuadExpr p_seq = reg.resolve(reg.mode(m4).p);

        for (std::size_t slot = 0; slot < 5; ++slot) {
            dev = std::max(dev, std::abs(via_swap.x_tel.vacuum_coeff(slot) -
                                         x_seq.vacuum_coeff(slot)));
            dev = std::max(dev, std::abs(via_swap.p_tel.vacuum_coeff(slot) -
                                         p_seq.vacuum_coeff(slot)));
        }
        dev = std::max(dev, std::abs(via_swap.x_tel.input_coeff(via_swap.input) -
                                     x_seq.input_coeff(input.id)));
        dev = std::max(dev, std::abs(via_swap.p_tel.input_coeff(via_swap.input) -
                                     p_seq.input_coeff(input.id)));
    }

    // Lossy-detector variant: noise slots are created in a different
    // order in the two routes, so compare total Q variances instead.
    double sigma_dev = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double r1 = squeeze(rng), r2 = squeeze(rng);
        const double s1 = squeeze(rng), s2 = squeeze(rng);
        const double eta_c = std::sqrt(0.95), eta_a = std::sqrt(0.9);

        SwapOutput sw = entanglement_swap({r1, r2, s1, s2, 1.0, 1.0, eta_c, eta_a});
        const TeleportOutput via_swap = teleport_coherent(sw, 1.0, eta_a);

        ModeRegister reg;
        auto [m1, m2] = make_epr_pair(reg, r1, r2);
        auto [m3, m4] = make_epr_pair(reg, s1, s2);
        const mode_id in = reg.add_input_mode();
        const InputRecord input = reg.inputs().back();
        teleport_mode(reg, in, m1, m2, 1.0, eta_a);
        teleport_mode(reg, m2, m3, m4, 1.0, eta_c);
        const QuadExpr x_seq = reg.resolve(reg.mode(m4).x);
        const QuadExpr p_seq = reg.resolve(reg.mode(m4).p);

        sigma_dev = std::max(
            sigma_dev,
            std::abs(q_function_variance(via_swap.x_tel, via_swap) -
                     q_function_variance(x_seq, 1.0, input.id, input.vacuum_slot)));
        sigma_dev = std::max(
            sigma_dev,
            std::abs(q_function_variance(via_swap.p_tel, via_swap) -
                     q_function_variance(p_seq, 1.0, input.id, input.vacuum_slot)));
    }
    const bool pass = dev <= 1e-12 && sigma_dev <= 1e-12;
    return {11, "two-stage-equivalence", pass,
            "max coeff dev=" + detail::num(dev) +
                " max sigma dev=" + detail::num(sigma_dev) + " tol=1e-12"};
}

/// Full sweep over scenarios a-e, 0-10 dB: curve ordering a >= b and
/// c >= d >= e, fidelities above the classical bound away from 0 dB
/// (scenario e's lossy region is recorded, not asserted), all within
/// the runtime budget.
inline CheckResult check_sweep_end_to_end(const VerifyOptions&,
                                          double elapsed_seconds) {
    SweepSpec spec;
    spec.scenarios = {Scenario::A, Scenario::B, Scenario::C, Scenario::D,
                      Scenario::E};
    const std::vector<SweepRow> rows = run_sweep(spec);

    bool ok = rows.size() == 105;
    const std::size_t n = 21;
    auto fid = [&](std::size_t scenario_index, std::size_t j) {
        return rows[scenario_index * n + j].fidelity_engine;
    };
    double e_limit_db = -1.0;
    for (std::size_t j = 0; ok && j < n; ++j) {
        const double db = rows[j].db;
        ok = ok && fid(0, j) >= fid(1, j) - 1e-12;  // a >= b
        ok = ok && fid(2, j) >= fid(3, j) - 1e-12;  // c >= d
        ok = ok && fid(3, j) >= fid(4, j) - 1e-12;  // d >= e
        for (std::size_t k = 0; k < 4; ++k) {
            ok = ok && fid(k, j) >= 0.5 - 1e-12;
            if (db > 0.0) ok = ok && fid(k, j) > 0.5;
        }
        if (fid(4, j) <= 0.5) e_limit_db = db;
    }
    ok = ok && elapsed_seconds < 60.0;
    std::string note = e_limit_db >= 0.0
                           ? " e<=1/2 up to " + detail::num(e_limit_db) +
                                 " dB (recorded, not asserted)"
                           : "";
    return {12, "sweep-end-to-end", ok,
            "rows=" + std::to_string(rows.size()) + " elapsed=" +
                detail::num(elapsed_seconds) + "s limit=60s" + note};
}

inline std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    results.push_back(check_six_db(opt));
    results.push_back(check_ten_db(opt));
    results.push_back(check_asymptotes(opt));
    results.push_back(check_classical_boundary(opt));
    results.push_back(check_oracle_equivalence(opt));
    results.push_back(check_gain_formulas(opt));
    results.push_back(check_symbolic_regression(opt));
    results.push_back(check_three_db_threshold(opt));
    results.push_back(check_inseparability_grid(opt));
    results.push_back(check_no_assistance(opt));
    results.push_back(check_two_stage(opt));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(check_sweep_end_to_end(opt, elapsed));
    return results;
}

/// Prints one pass/fail line per criterion; returns true if all pass.
inline bool run_verification(std::ostream& out, const VerifyOptions& opt = {}) {
    const auto results = run_acceptance_checks(opt);
    bool all = true;
    for (const CheckResult& r : results) {
        char head[64];
        std::snprintf(head, sizeof(head), "%s %2d %-30s", r.pass ? "PASS" : "FAIL",
                      r.number, r.name.c_str());
        out << head << " " << r.detail << "\n";
        all = all && r.pass;
    }
    out << (all ? "OK" : "FAILURE") << ": " << results.size() << " criteria checked\n";
    return all;
}

}  // namespace cvswap::verify
