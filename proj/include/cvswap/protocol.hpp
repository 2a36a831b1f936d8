#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "cvswap/register.hpp"

namespace cvswap {

/// Knobs of one entanglement-swapping experiment.
///
/// r1, r2 are the squeezing parameters of the two vacua forming the
/// sender-side pair (modes 1, 2), s1, s2 those of the receiver-side
/// pair (modes 3, 4).  g_swap is the normalized gain of Bob's
/// displacement conditioned on Claire's Bell detection; g the gain of
/// the final teleportation displacement.  eta_c, eta_a are amplitude
/// detector efficiencies of Claire's and Alice's detections (note the
/// usual quoted numbers are eta^2).
struct SwapParams {
    double r1 = 0.0;
    double r2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double g_swap = 0.0;
    double g = 1.0;
    double eta_c = 1.0;
    double eta_a = 1.0;

    void validate() const {
        for (double v : {r1, r2, s1, s2, g_swap, g})
            if (!std::isfinite(v))
                throw std::invalid_argument("swap parameters must be finite");
        for (double e : {eta_c, eta_a})
            if (!(e > 0.0) || e > 1.0 || !std::isfinite(e))
                throw std::invalid_argument("detector efficiency must be in (0, 1]");
    }
};

/// The network state after the swap: Alice's mode 1 and Bob's
/// displaced mode 4 are alive, modes 2 and 3 are consumed by Claire's
/// Bell detection whose outcomes are recorded in the register.
struct SwapOutput {
    ModeRegister reg;
    mode_id alice;
    mode_id bob;
    outcome_id x_u;
    outcome_id p_v;
    SwapParams params;
};

/// Bob's outgoing mode after coherent-state teleportation, fully
/// resolved (no outcome symbols left), plus the input symbol identity.
struct TeleportOutput {
    QuadExpr x_tel;
    QuadExpr p_tel;
    input_id input;
    std::size_t input_vacuum_slot;
    double g;
};

/// Two-mode squeezed (EPR) pair: two vacua squeezed by +ra and -rb,
/// combined on a 50:50 beamsplitter.  The first returned mode has
/// x = (e^{+ra} x_a + e^{-rb} x_b)/sqrt(2), the second the difference.
inline std::pair<mode_id, mode_id> make_epr_pair(ModeRegister& reg, double ra,
                                                 double rb) {
    const mode_id a = reg.add_vacuum_mode();
    const mode_id b = reg.add_vacuum_mode();
    reg.squeeze(a, +ra);
    reg.squeeze(b, -rb);
    reg.beamsplitter_5050(a, b);
    return {a, b};
}

/// Builds the full swap network: EPR pairs (1,2) and (3,4), Claire's
/// Bell detection on modes 2 and 3 yielding x_u = (x2 - x3)/sqrt(2)
/// and p_v = (p2 + p3)/sqrt(2) with efficiency eta_c, and Bob's
/// displacement of mode 4 by g_swap * sqrt(2) times each outcome.
inline SwapOutput entanglement_swap(const SwapParams& params) {
    params.validate();
    ModeRegister reg;
    auto [m1, m2] = make_epr_pair(reg, params.r1, params.r2);
    auto [m3, m4] = make_epr_pair(reg, params.s1, params.s2);

    // Sum port lands on mode 2's slot (v), difference port on mode 3's (u).
    reg.beamsplitter_5050(m2, m3);
    const outcome_id xu = reg.homodyne(m3, QuadKind::X, params.eta_c);
    const outcome_id pv = reg.homodyne(m2, QuadKind::P, params.eta_c);

    reg.displace(m4, QuadKind::X, xu, params.g_swap * M_SQRT2);
    reg.displace(m4, QuadKind::P, pv, params.g_swap * M_SQRT2);
    return {std::move(reg), m1, m4, xu, pv, params};
}

/// Teleports the existing mode `src` from the owner of `sender` onto
/// `receiver`: Bell detection of (x_src - x_sender)/sqrt(2) and
/// (p_src + p_sender)/sqrt(2) with efficiency eta, then displacement
/// of the receiver by g * sqrt(2) times each result.  Consumes src
/// and sender.
inline void teleport_mode(ModeRegister& reg, mode_id src, mode_id sender,
                          mode_id receiver, double g, double eta) {
    // Difference port lands on the sender's slot (u'), sum port on the
    // source's slot (v').
    reg.beamsplitter_5050(src, sender);
    const outcome_id xu = reg.homodyne(sender, QuadKind::X, eta);
    const outcome_id pv = reg.homodyne(src, QuadKind::P, eta);
    reg.displace(receiver, QuadKind::X, xu, g * M_SQRT2);
    reg.displace(receiver, QuadKind::P, pv, g * M_SQRT2);
}

/// Teleports a fresh unknown coherent input from the owner of
/// `sender` onto `receiver`.
inline TeleportOutput teleport_coherent(ModeRegister& reg, mode_id sender,
                                        mode_id receiver, double g,
                                        double eta_a) {
    const mode_id in = reg.add_input_mode();
    const InputRecord input = reg.inputs().back();
    teleport_mode(reg, in, sender, receiver, g, eta_a);
    return {reg.resolve(reg.mode(receiver).x), reg.resolve(reg.mode(receiver).p),
            input.id, input.vacuum_slot, g};
}

inline TeleportOutput teleport_coherent(SwapOutput& swap, double g,
                                        double eta_a) {
    return teleport_coherent(swap.reg, swap.alice, swap.bob, g, eta_a);
}

}  // namespace cvswap
