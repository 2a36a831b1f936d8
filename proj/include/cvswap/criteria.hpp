#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

#include "cvswap/protocol.hpp"

namespace cvswap {

/// Everything measured for one configuration: Q-function variances of
/// the teleported mode, the coherent-state fidelity, the gains used,
/// and the two inseparability criterion values of the shared pair.
struct FidelityReport {
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double fidelity = 0.0;
    double g = 1.0;
    std::optional<double> g_swap;  // empty for direct (unswapped) runs
    double duan_sum = 0.0;
    double tan_product = 0.0;
    SwapParams params;
    bool swapped = true;

    /// A physical single mode teleported at g = 1 can never have a
    /// Q-function variance below 1/2; smaller values signal an
    /// internally inconsistent build, not data to clamp.
    void check_consistency() const {
        if (g == 1.0 && (sigma_x < 0.5 - 1e-9 || sigma_p < 0.5 - 1e-9))
            throw std::logic_error("Q-function variance below vacuum floor");
    }
};

namespace detail {
inline double sq(double v) { return v * v; }
inline double excess_noise(double eta) { return 1.0 / (eta * eta) - 1.0; }
}  // namespace detail

/// Squeezing in decibels of noise reduction of the squeezed
/// quadrature: e^{-2r} = 10^{-db/10}, i.e. r = db ln(10)/20.
inline double db_to_r(double db) {
    if (db < 0.0 || !std::isfinite(db))
        throw std::invalid_argument("squeezing dB must be >= 0");
    return db * std::log(10.0) / 20.0;
}

inline double r_to_db(double r) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("squeezing parameter must be >= 0");
    return 20.0 * r / std::log(10.0);
}

/// Q-function variance of a teleported quadrature: the variance of
/// its noise part (everything except the transmitted input symbol and
/// the input's own vacuum entry), plus g^2/4 for that vacuum noise,
/// plus 1/4 from the Q-function convolution.  The transmitted
/// amplitude must appear with coefficient g, else the protocol that
/// produced the expression is mis-built.
inline double q_function_variance(const QuadExpr& e, double g, input_id input,
                                  std::size_t input_vacuum_slot) {
    if (!e.is_resolved())
        throw std::logic_error("teleported expression must be resolved");
    if (std::abs(e.input_coeff(input) - g) > 1e-9)
        throw std::logic_error("teleported input coefficient differs from gain");
    QuadExpr noise = e;
    noise.erase_input(input);
    noise.erase_vacuum(input_vacuum_slot);
    return variance(noise) + g * g / 4.0 + 0.25;
}

inline double q_function_variance(const QuadExpr& e, const TeleportOutput& tel) {
    return q_function_variance(e, tel.g, tel.input, tel.input_vacuum_slot);
}

/// Coherent-state teleportation fidelity from the resolved output
/// quadratures:
///
///   F = 1/(2 sqrt(sigma_x sigma_p))
///       * exp[-(1-g)^2 (x_in^2 / 2 sigma_x + p_in^2 / 2 sigma_p)]
///
/// with sigma_x, sigma_p the Q-function variances of the teleported
/// mode.
inline double fidelity_from_exprs(const QuadExpr& x_tel, const QuadExpr& p_tel,
                                  double g, input_id input,
                                  std::size_t input_vacuum_slot,
                                  double alpha_x = 0.0, double alpha_p = 0.0) {
    const double sx = q_function_variance(x_tel, g, input, input_vacuum_slot);
    const double sp = q_function_variance(p_tel, g, input, input_vacuum_slot);
    const double bias = detail::sq(1.0 - g) *
                        (alpha_x * alpha_x / (2.0 * sx) + alpha_p * alpha_p / (2.0 * sp));
    return std::exp(-bias) / (2.0 * std::sqrt(sx * sp));
}

inline double fidelity_from_exprs(const TeleportOutput& tel, double alpha_x = 0.0,
                                  double alpha_p = 0.0) {
    return fidelity_from_exprs(tel.x_tel, tel.p_tel, tel.g, tel.input,
                               tel.input_vacuum_slot, alpha_x, alpha_p);
}

/// Closed-form swap-then-teleport fidelity at g = 1:
///
///   F = [1 + (gs-1)^2 (e^{2r1}+e^{2s1})/4 + (gs+1)^2 (e^{-2r2}+e^{-2s2})/4
///          + gs^2 (eta_c^-2 - 1) + eta_a^-2 - 1]^{-1/2}
///     * [same with (r1,s1) <-> (r2,s2)]^{-1/2}
inline double fidelity_closed_form(const SwapParams& p) {
    using detail::sq;
    const double gs = p.g_swap;
    const double noise =
        gs * gs * detail::excess_noise(p.eta_c) + detail::excess_noise(p.eta_a);
    const double bx = 1.0 +
                      sq(gs - 1.0) * (std::exp(2.0 * p.r1) + std::exp(2.0 * p.s1)) / 4.0 +
                      sq(gs + 1.0) * (std::exp(-2.0 * p.r2) + std::exp(-2.0 * p.s2)) / 4.0 +
                      noise;
    const double bp = 1.0 +
                      sq(gs - 1.0) * (std::exp(2.0 * p.r2) + std::exp(2.0 * p.s2)) / 4.0 +
                      sq(gs + 1.0) * (std::exp(-2.0 * p.r1) + std::exp(-2.0 * p.s1)) / 4.0 +
                      noise;
    return 1.0 / std::sqrt(bx * bp);
}

/// Closed-form fidelity of direct (unswapped) teleportation at g = 1
/// over an EPR pair built from squeezings (r1, r2), with Bell-detector
/// efficiency eta_a.
inline double fidelity_direct_closed_form(double r1, double r2,
                                          double eta_a = 1.0) {
    const double noise = detail::excess_noise(eta_a);
    const double bx = 1.0 + std::exp(-2.0 * r2) + noise;
    const double bp = 1.0 + std::exp(-2.0 * r1) + noise;
    return 1.0 / std::sqrt(bx * bp);
}

/// Fidelity-optimal swap gain for pairs squeezed r1 = r2 = r and
/// s1 = s2 = s:  (sinh 2r + sinh 2s)/(cosh 2r + cosh 2s + 2 eta_c^-2 - 2).
inline double optimal_gain(double r, double s, double eta_c = 1.0) {
    return (std::sinh(2.0 * r) + std::sinh(2.0 * s)) /
           (std::cosh(2.0 * r) + std::cosh(2.0 * s) +
            2.0 * detail::excess_noise(eta_c));
}

/// Optimal fidelity at unit efficiency for pairs squeezed (r, r) and
/// (s, s):  {1 + [cosh(2(r-s)) + 1]/(cosh 2r + cosh 2s)}^{-1}.
inline double optimal_fidelity_two_pair(double r, double s) {
    return 1.0 / (1.0 + (std::cosh(2.0 * (r - s)) + 1.0) /
                            (std::cosh(2.0 * r) + std::cosh(2.0 * s)));
}

/// Optimal fidelity when each pair is built from a single squeezed
/// mode (r1 = s1 = r, r2 = s2 = 0) at the unit-efficiency optimal gain
/// g_swap = tanh r, evaluated with detector efficiencies eta_c, eta_a.
inline double optimal_fidelity_single_squeezers(double r, double eta_c = 1.0,
                                                double eta_a = 1.0) {
    const double t2 = detail::sq(std::tanh(r));
    const double noise =
        t2 * detail::excess_noise(eta_c) + detail::excess_noise(eta_a);
    const double e2r = std::exp(2.0 * r);
    const double em2r = std::exp(-2.0 * r);
    const double b1 = 1.0 + 2.0 * e2r / (e2r + 1.0) + noise;
    const double b2 = 1.0 + 2.0 * em2r / (em2r + 1.0) + noise;
    return 1.0 / std::sqrt(b1 * b2);
}

/// Sum criterion Var(x_a - x_b) + Var(p_a + p_b); any separable pair
/// of modes gives >= 1, so a value < 1 witnesses inseparability.
inline double duan_sum(const ModeRegister& reg, mode_id a, mode_id b) {
    if (!reg.alive(a) || !reg.alive(b))
        throw std::logic_error("inseparability criterion on consumed mode");
    const double vx = reg.variance(reg.mode(a).x - reg.mode(b).x);
    const double vp = reg.variance(reg.mode(a).p + reg.mode(b).p);
    return vx + vp;
}

/// Product criterion Var((x_a - x_b)/sqrt(2)) * Var((p_a + p_b)/sqrt(2));
/// values < 1/16 violate the uncertainty bound of the combined modes
/// and witness entanglement.
inline double tan_product(const ModeRegister& reg, mode_id a, mode_id b) {
    if (!reg.alive(a) || !reg.alive(b))
        throw std::logic_error("inseparability criterion on consumed mode");
    const double vx = reg.variance((reg.mode(a).x - reg.mode(b).x) * M_SQRT1_2);
    const double vp = reg.variance((reg.mode(a).p + reg.mode(b).p) * M_SQRT1_2);
    return vx * vp;
}

struct GainOpt {
    double gain;
    double value;
};

/// Golden-section maximization of a unimodal objective over
/// [lo, hi], to a bracket width below 1e-10.  Ties shrink the bracket
/// from both sides, so a constant objective returns the midpoint.
inline GainOpt optimize_gain_numeric(const std::function<double(double)>& objective,
                                     double lo = 0.0, double hi = 1.5) {
    if (!(lo < hi)) throw std::invalid_argument("empty optimization bracket");
    auto eval = [&](double x) {
        const double v = objective(x);
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite objective in gain search");
        return v;
    };
    constexpr double kTol = 1e-10;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > kTol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = eval(c);
        } else if (fd > fc) {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = eval(d);
        } else {
            a = c;
            b = d;
            c = b - phi * (b - a);
            d = a + phi * (b - a);
            fc = eval(c);
            fd = eval(d);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, eval(mid)};
}

/// Gain a sender would pick knowing only the squeezing parameters:
/// the g_swap maximizing the closed-form fidelity at unit detector
/// efficiency.
inline double optimal_gain_numeric_unit_eta(const SwapParams& p) {
    SwapParams q = p;
    q.eta_c = 1.0;
    q.eta_a = 1.0;
    return optimize_gain_numeric([&](double gs) {
               q.g_swap = gs;
               return fidelity_closed_form(q);
           })
        .gain;
}

}  // namespace cvswap
