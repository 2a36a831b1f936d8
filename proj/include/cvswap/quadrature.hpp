#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cvswap {

/// Which quadrature of an optical mode an expression describes.
/// The x and p ledgers never mix: every expression, basis entry and
/// homodyne outcome carries exactly one kind.
enum class QuadKind { X, P };

inline char kind_letter(QuadKind k) { return k == QuadKind::X ? 'x' : 'p'; }

/// Variance of a single vacuum quadrature, Var(x) = Var(p) = 1/4.
inline constexpr double kVacuumVariance = 0.25;

/// Coefficients below this magnitude are dropped (canonical form).
inline constexpr double kCoeffEpsilon = 1e-15;

/// Absolute tolerance for structural comparisons of expressions.
inline constexpr double kMatchTolerance = 1e-12;

/// A quadrature observable as an exact linear combination of vacuum
/// basis quadratures, recorded measurement outcomes, unknown input
/// amplitudes, and a real constant.
///
/// Vacuum slots index the register's basis ledger; an X-kind expression
/// refers to the x quadrature of each slot, a P-kind expression to the
/// p quadrature.  Zero coefficients are never stored, so structural
/// equality is well defined up to a tolerance.
class QuadExpr {
public:
    using TermMap = std::map<std::size_t, double>;

    explicit QuadExpr(QuadKind kind) : kind_(kind) {}

    static QuadExpr vacuum(QuadKind kind, std::size_t slot) {
        QuadExpr e(kind);
        e.add_vacuum(slot, 1.0);
        return e;
    }
    static QuadExpr outcome_symbol(QuadKind kind, std::size_t id) {
        QuadExpr e(kind);
        e.add_outcome(id, 1.0);
        return e;
    }
    static QuadExpr input_symbol(QuadKind kind, std::size_t id) {
        QuadExpr e(kind);
        e.add_input(id, 1.0);
        return e;
    }

    QuadKind kind() const { return kind_; }
    const TermMap& vacuum_terms() const { return vacuum_; }
    const TermMap& outcome_terms() const { return outcome_; }
    const TermMap& input_terms() const { return input_; }
    double constant() const { return constant_; }

    double vacuum_coeff(std::size_t slot) const { return coeff(vacuum_, slot); }
    double outcome_coeff(std::size_t id) const { return coeff(outcome_, id); }
    double input_coeff(std::size_t id) const { return coeff(input_, id); }

    bool is_resolved() const { return outcome_.empty(); }
    bool empty() const {
        return vacuum_.empty() && outcome_.empty() && input_.empty() &&
               constant_ == 0.0;
    }

    void add_vacuum(std::size_t slot, double c) { add_term(vacuum_, slot, c); }
    void add_outcome(std::size_t id, double c) { add_term(outcome_, id, c); }
    void add_input(std::size_t id, double c) { add_term(input_, id, c); }
    void add_constant(double c) {
        constant_ += c;
        if (std::abs(constant_) < kCoeffEpsilon) constant_ = 0.0;
    }
    void erase_input(std::size_t id) { input_.erase(id); }
    void erase_vacuum(std::size_t slot) { vacuum_.erase(slot); }

    QuadExpr& operator+=(const QuadExpr& o) {
        require_same_kind(o);
        for (const auto& [k, c] : o.vacuum_) add_vacuum(k, c);
        for (const auto& [k, c] : o.outcome_) add_outcome(k, c);
        for (const auto& [k, c] : o.input_) add_input(k, c);
        add_constant(o.constant_);
        return *this;
    }
    QuadExpr& operator-=(const QuadExpr& o) {
        require_same_kind(o);
        for (const auto& [k, c] : o.vacuum_) add_vacuum(k, -c);
        for (const auto& [k, c] : o.outcome_) add_outcome(k, -c);
        for (const auto& [k, c] : o.input_) add_input(k, -c);
        add_constant(-o.constant_);
        return *this;
    }
    QuadExpr& operator*=(double f) {
        scale(vacuum_, f);
        scale(outcome_, f);
        scale(input_, f);
        constant_ *= f;
        if (std::abs(constant_) < kCoeffEpsilon) constant_ = 0.0;
        return *this;
    }

    friend QuadExpr operator+(QuadExpr a, const QuadExpr& b) { return a += b; }
    friend QuadExpr operator-(QuadExpr a, const QuadExpr& b) { return a -= b; }
    friend QuadExpr operator*(QuadExpr a, double f) { return a *= f; }
    friend QuadExpr operator*(double f, QuadExpr a) { return a *= f; }

    friend bool operator==(const QuadExpr& a, const QuadExpr& b) {
        return a.kind_ == b.kind_ && a.vacuum_ == b.vacuum_ &&
               a.outcome_ == b.outcome_ && a.input_ == b.input_ &&
               a.constant_ == b.constant_;
    }

    /// Term-by-term comparison with absolute tolerance.
    bool approx_equal(const QuadExpr& o, double tol = kMatchTolerance) const {
        return kind_ == o.kind_ && maps_close(vacuum_, o.vacuum_, tol) &&
               maps_close(outcome_, o.outcome_, tol) &&
               maps_close(input_, o.input_, tol) &&
               std::abs(constant_ - o.constant_) <= tol;
    }

    /// Deterministic rendering, terms sorted by ledger then index.
    std::string to_string() const {
        std::ostringstream out;
        bool first = true;
        const char q = kind_letter(kind_);
        for (const auto& [slot, c] : vacuum_)
            emit(out, first, c, std::string(1, q) + "_vac" + std::to_string(slot));
        for (const auto& [id, c] : outcome_)
            emit(out, first, c, std::string(1, q) + "_out" + std::to_string(id));
        for (const auto& [id, c] : input_)
            emit(out, first, c, std::string(1, q) + "_in" + std::to_string(id));
        if (constant_ != 0.0) emit(out, first, constant_, "");
        if (first) out << "0";
        return out.str();
    }

private:
    static double coeff(const TermMap& m, std::size_t key) {
        auto it = m.find(key);
        return it == m.end() ? 0.0 : it->second;
    }
    static void add_term(TermMap& m, std::size_t key, double c) {
        double& v = m[key];
        v += c;
        if (std::abs(v) < kCoeffEpsilon) m.erase(key);
    }
    static void scale(TermMap& m, double f) {
        for (auto it = m.begin(); it != m.end();) {
            it->second *= f;
            if (std::abs(it->second) < kCoeffEpsilon)
                it = m.erase(it);
            else
                ++it;
        }
    }
    static bool maps_close(const TermMap& a, const TermMap& b, double tol) {
        for (const auto& [k, c] : a)
            if (std::abs(c - coeff(b, k)) > tol) return false;
        for (const auto& [k, c] : b)
            if (a.find(k) == a.end() && std::abs(c) > tol) return false;
        return true;
    }
    void require_same_kind(const QuadExpr& o) const {
        if (kind_ != o.kind_)
            throw std::logic_error("cannot combine x- and p-kind expressions");
    }
    static void emit(std::ostringstream& out, bool& first, double c,
                     const std::string& sym) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.9g", std::abs(c));
        if (first) {
            if (c < 0.0) out << "-";
            first = false;
        } else {
            out << (c < 0.0 ? " - " : " + ");
        }
        out << buf;
        if (!sym.empty()) out << "*" << sym;
    }

    QuadKind kind_;
    TermMap vacuum_;
    TermMap outcome_;
    TermMap input_;
    double constant_ = 0.0;
};

/// Variance of a fully resolved expression.  Vacuum entries are
/// independent with variance 1/4 each; input symbols are classical
/// unknown means and the constant is deterministic, so neither
/// contributes.
inline double variance(const QuadExpr& e) {
    if (!e.is_resolved())
        throw std::logic_error("variance of unresolved expression");
    double sum = 0.0;
    for (const auto& [slot, c] : e.vacuum_terms()) sum += c * c;
    return kVacuumVariance * sum;
}

/// Covariance of two resolved expressions.  Expressions of different
/// kinds live on disjoint ledgers and have zero covariance.
inline double covariance(const QuadExpr& a, const QuadExpr& b) {
    if (!a.is_resolved() || !b.is_resolved())
        throw std::logic_error("covariance of unresolved expression");
    if (a.kind() != b.kind()) return 0.0;
    double sum = 0.0;
    for (const auto& [slot, c] : a.vacuum_terms())
        sum += c * b.vacuum_coeff(slot);
    return kVacuumVariance * sum;
}

}  // namespace cvswap
