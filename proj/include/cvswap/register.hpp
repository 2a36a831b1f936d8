#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvswap/quadrature.hpp"

namespace cvswap {

using mode_id = std::size_t;
using outcome_id = std::size_t;
using input_id = std::size_t;

/// A measured homodyne result: its symbol id, quadrature kind, and the
/// operator it stands for.  The defining expression is resolved eagerly
/// at detection time and therefore never references other outcomes.
struct OutcomeRecord {
    outcome_id id;
    QuadKind kind;
    QuadExpr defining_expr;
};

/// An unknown input amplitude: the symbol id shared by its x and p
/// components and the vacuum slot carrying its quantum noise.
struct InputRecord {
    input_id id;
    std::size_t vacuum_slot;
    mode_id mode;
};

/// One optical mode.  A mode consumed by homodyne detection has
/// alive = false and may not be operated on again.
struct Mode {
    QuadExpr x;
    QuadExpr p;
    bool alive = true;
};

/// Heisenberg-picture bookkeeping of quadrature operators under
/// squeezers, 50:50 beamsplitters, inefficient homodyne detection and
/// outcome-conditioned displacements.
///
/// Measurement records an outcome symbol; displacements add multiples
/// of such symbols; resolve() substitutes every symbol by its defining
/// operator so statistics can be read off the vacuum coefficients.
///
/// Vacuum basis slots are allocated in x/p pairs (slot i carries both
/// an x and a p ledger entry), so the ledgers stay aligned for the
/// symplectic bookkeeping check.  Slots are never deleted; consumed
/// modes keep their entries inside recorded expressions.
///
/// A register is a single-owner mutable object: no concurrent
/// mutation.  Registers are independent and cheap, so parameter sweeps
/// parallelize by using one register per parameter point.
class ModeRegister {
public:
    ModeRegister() = default;

    std::size_t mode_count() const { return modes_.size(); }
    std::size_t basis_count(QuadKind) const { return slot_count_; }
    const Mode& mode(mode_id m) const { return at(m); }
    bool alive(mode_id m) const { return at(m).alive; }
    const std::vector<OutcomeRecord>& outcomes() const { return outcomes_; }
    const std::vector<InputRecord>& inputs() const { return inputs_; }
    const OutcomeRecord& outcome(outcome_id id) const {
        if (id >= outcomes_.size())
            throw std::invalid_argument("unknown outcome symbol " + std::to_string(id));
        return outcomes_[id];
    }

    /// New mode in the vacuum state: x and p are fresh unit basis entries.
    mode_id add_vacuum_mode() {
        const std::size_t slot = new_slot();
        Mode m{QuadExpr::vacuum(QuadKind::X, slot),
               QuadExpr::vacuum(QuadKind::P, slot), true};
        modes_.push_back(std::move(m));
        return modes_.size() - 1;
    }

    /// New mode carrying an unknown coherent amplitude: each quadrature
    /// is one input symbol (the unknown mean) plus one fresh vacuum
    /// entry (its quantum noise).
    mode_id add_input_mode() {
        const std::size_t slot = new_slot();
        const input_id id = inputs_.size();
        Mode m{QuadExpr::input_symbol(QuadKind::X, id),
               QuadExpr::input_symbol(QuadKind::P, id), true};
        m.x.add_vacuum(slot, 1.0);
        m.p.add_vacuum(slot, 1.0);
        modes_.push_back(std::move(m));
        inputs_.push_back({id, slot, modes_.size() - 1});
        return modes_.size() - 1;
    }

    /// x -> e^{+r} x, p -> e^{-r} p.  Negative r squeezes x instead.
    void squeeze(mode_id m, double r) {
        Mode& md = live(m, "squeeze");
        md.x *= std::exp(+r);
        md.p *= std::exp(-r);
    }

    /// 50:50 beamsplitter, a' = (a+b)/sqrt(2), b' = (a-b)/sqrt(2),
    /// applied to both quadratures.
    void beamsplitter_5050(mode_id a, mode_id b) {
        if (a == b)
            throw std::invalid_argument("beamsplitter needs two distinct modes");
        Mode& ma = live(a, "beamsplitter");
        Mode& mb = live(b, "beamsplitter");
        const double f = M_SQRT1_2;
        QuadExpr sx = (ma.x + mb.x) * f;
        QuadExpr dx = (ma.x - mb.x) * f;
        QuadExpr sp = (ma.p + mb.p) * f;
        QuadExpr dp = (ma.p - mb.p) * f;
        ma.x = std::move(sx);
        mb.x = std::move(dx);
        ma.p = std::move(sp);
        mb.p = std::move(dp);
    }

    /// Homodyne detection of one quadrature with amplitude efficiency
    /// eta in (0,1].  Records the measured operator, with detector
    /// inefficiency as one additive vacuum term sqrt(eta^-2 - 1) per
    /// detector, and consumes the whole mode (the conjugate quadrature
    /// is discarded, never exposed).
    outcome_id homodyne(mode_id m, QuadKind kind, double eta) {
        if (!(eta > 0.0) || eta > 1.0 || !std::isfinite(eta))
            throw std::invalid_argument("detector efficiency must be in (0, 1]");
        Mode& md = live(m, "homodyne");
        QuadExpr def = resolve(kind == QuadKind::X ? md.x : md.p);
        if (eta < 1.0) {
            const std::size_t noise = new_slot();
            def.add_vacuum(noise, std::sqrt(1.0 / (eta * eta) - 1.0));
        }
        const outcome_id id = outcomes_.size();
        outcomes_.push_back({id, kind, std::move(def)});
        md.alive = false;
        return id;
    }

    /// Adds gain * (outcome symbol) to the selected quadrature.  The
    /// caller supplies the full factor, e.g. g_swap * sqrt(2).
    void displace(mode_id m, QuadKind kind, outcome_id out, double gain) {
        Mode& md = live(m, "displace");
        const OutcomeRecord& rec = outcome(out);
        if (rec.kind != kind)
            throw std::invalid_argument("displacement outcome kind mismatch");
        (kind == QuadKind::X ? md.x : md.p).add_outcome(out, gain);
    }

    /// Substitutes every outcome symbol by its defining operator.  The
    /// result carries only vacuum terms, input terms and a constant.
    /// Idempotent: definitions are themselves resolved at registration.
    QuadExpr resolve(const QuadExpr& e) const {
        if (e.is_resolved()) return e;
        QuadExpr out = e;
        for (const auto& [id, c] : e.outcome_terms()) {
            out += outcome(id).defining_expr * c;
        }
        for (const auto& [id, c] : e.outcome_terms()) out.add_outcome(id, -c);
        return out;
    }

    double variance(const QuadExpr& e) const { return cvswap::variance(resolve(e)); }
    double covariance(const QuadExpr& a, const QuadExpr& b) const {
        return cvswap::covariance(resolve(a), resolve(b));
    }

    /// Sum over slots of (x coefficient) * (p coefficient) for one
    /// mode; squeezers and beamsplitters preserve this at exactly 1.
    double symplectic_product(mode_id m) const {
        const Mode& md = at(m);
        const QuadExpr x = resolve(md.x);
        const QuadExpr p = resolve(md.p);
        double sum = 0.0;
        for (const auto& [slot, c] : x.vacuum_terms())
            sum += c * p.vacuum_coeff(slot);
        return sum;
    }

private:
    const Mode& at(mode_id m) const {
        if (m >= modes_.size())
            throw std::invalid_argument("unknown mode " + std::to_string(m));
        return modes_[m];
    }
    Mode& live(mode_id m, const char* op) {
        if (m >= modes_.size())
            throw std::invalid_argument("unknown mode " + std::to_string(m));
        if (!modes_[m].alive)
            throw std::logic_error(std::string(op) + " on consumed mode " +
                                   std::to_string(m));
        return modes_[m];
    }
    std::size_t new_slot() { return slot_count_++; }

    std::vector<Mode> modes_;
    std::vector<OutcomeRecord> outcomes_;
    std::vector<InputRecord> inputs_;
    std::size_t slot_count_ = 0;
};

}  // namespace cvswap
