#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "cvswap/criteria.hpp"
#include "cvswap/protocol.hpp"

namespace cvswap {

/// The five standard comparison curves, all at teleportation gain 1,
/// as functions of a single squeezing value r:
///
///   A  direct teleportation over a pair built from two equally
///      squeezed modes (r, r)
///   B  swap with four equally squeezed modes, g_swap = tanh 2r
///   C  direct teleportation over a pair built from one squeezed
///      mode (r, 0)
///   D  swap with two equally squeezed modes (r1 = s1 = r,
///      r2 = s2 = 0), g_swap = tanh r
///   E  as D with detector efficiencies eta_c^2 = eta_a^2 = 0.95
///
/// The swap gains are the closed-form optima for unit efficiency,
/// also in scenario E.
enum class Scenario { A, B, C, D, E };

inline char scenario_letter(Scenario s) {
    switch (s) {
        case Scenario::A: return 'a';
        case Scenario::B: return 'b';
        case Scenario::C: return 'c';
        case Scenario::D: return 'd';
        case Scenario::E: return 'e';
    }
    throw std::invalid_argument("unknown scenario");
}

inline Scenario parse_scenario(char c) {
    switch (c) {
        case 'a': case 'A': return Scenario::A;
        case 'b': case 'B': return Scenario::B;
        case 'c': case 'C': return Scenario::C;
        case 'd': case 'D': return Scenario::D;
        case 'e': case 'E': return Scenario::E;
    }
    throw std::invalid_argument(std::string("unknown scenario '") + c + "'");
}

/// Optional pins for verification sweeps; unset fields come from the
/// scenario tag.  Efficiencies are given as eta^2, matching how they
/// are usually quoted.
struct ScenarioOverrides {
    std::optional<double> g_swap;
    std::optional<double> g;
    std::optional<double> eta_c_sq;
    std::optional<double> eta_a_sq;
};

struct ScenarioSetup {
    SwapParams params;
    bool swapped;
};

/// Effective parameters for one scenario at squeezing r.
inline ScenarioSetup scenario_setup(Scenario tag, double r,
                                    const ScenarioOverrides& ov = {}) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("scenario squeezing must be >= 0");
    SwapParams p;
    bool swapped = true;
    switch (tag) {
        case Scenario::A:
            p.r1 = p.r2 = r;
            swapped = false;
            break;
        case Scenario::B:
            p.r1 = p.r2 = p.s1 = p.s2 = r;
            p.g_swap = std::tanh(2.0 * r);
            break;
        case Scenario::C:
            p.r1 = r;
            swapped = false;
            break;
        case Scenario::D:
            p.r1 = p.s1 = r;
            p.g_swap = std::tanh(r);
            break;
        case Scenario::E:
            p.r1 = p.s1 = r;
            p.g_swap = std::tanh(r);
            p.eta_c = p.eta_a = std::sqrt(0.95);
            break;
    }
    if (swapped && ov.g_swap) p.g_swap = *ov.g_swap;
    if (ov.g) p.g = *ov.g;
    if (ov.eta_c_sq) p.eta_c = std::sqrt(*ov.eta_c_sq);
    if (ov.eta_a_sq) p.eta_a = std::sqrt(*ov.eta_a_sq);
    p.validate();
    return {p, swapped};
}

/// Closed-form fidelity of one scenario, for cross-checking the
/// engine column in sweeps.
inline double scenario_closed_form(Scenario tag, double r,
                                   const ScenarioOverrides& ov = {}) {
    const ScenarioSetup setup = scenario_setup(tag, r, ov);
    if (setup.swapped) return fidelity_closed_form(setup.params);
    return fidelity_direct_closed_form(setup.params.r1, setup.params.r2,
                                       setup.params.eta_a);
}

/// Runs one scenario through the symbolic engine and reports fidelity,
/// Q-function variances and the inseparability criteria of the shared
/// pair (modes 1 and 4' for swaps, the EPR pair itself for direct
/// teleportation).
inline FidelityReport run_scenario(Scenario tag, double r,
                                   const ScenarioOverrides& ov = {}) {
    const ScenarioSetup setup = scenario_setup(tag, r, ov);
    const SwapParams& p = setup.params;

    FidelityReport report;
    report.params = p;
    report.swapped = setup.swapped;
    report.g = p.g;

    ModeRegister reg;
    mode_id sender = 0, receiver = 0;
    if (setup.swapped) {
        SwapOutput swap = entanglement_swap(p);
        reg = std::move(swap.reg);
        sender = swap.alice;
        receiver = swap.bob;
        report.g_swap = p.g_swap;
    } else {
        auto [m1, m2] = make_epr_pair(reg, p.r1, p.r2);
        sender = m1;
        receiver = m2;
    }
    report.duan_sum = duan_sum(reg, sender, receiver);
    report.tan_product = tan_product(reg, sender, receiver);

    const TeleportOutput tel = teleport_coherent(reg, sender, receiver, p.g, p.eta_a);
    report.sigma_x = q_function_variance(tel.x_tel, tel);
    report.sigma_p = q_function_variance(tel.p_tel, tel);
    report.fidelity = fidelity_from_exprs(tel);
    report.check_consistency();
    return report;
}

}  // namespace cvswap
