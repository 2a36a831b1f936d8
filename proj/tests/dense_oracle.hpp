#pragma once

// Brute-force reference model for cross-checking the symbolic engine.
// Quadratures are dense coefficient rows over the vacuum basis and the
// input symbols, displacements are expanded eagerly at application
// time, and every operation is a plain loop.  Shares no code with the
// sparse expression algebra it checks.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dense_oracle {

struct Row {
    std::vector<double> vac;
    std::vector<double> in;
};

struct DenseMode {
    Row x, p;
    bool alive = true;
};

struct Outcome {
    bool is_x;
    Row row;
};

class Model {
public:
    std::size_t add_vacuum() {
        const std::size_t slot = slots_++;
        DenseMode m;
        set_unit(m.x.vac, slot);
        set_unit(m.p.vac, slot);
        modes_.push_back(std::move(m));
        return modes_.size() - 1;
    }

    std::size_t add_input() {
        const std::size_t slot = slots_++;
        const std::size_t id = inputs_++;
        DenseMode m;
        set_unit(m.x.vac, slot);
        set_unit(m.p.vac, slot);
        set_unit(m.x.in, id);
        set_unit(m.p.in, id);
        modes_.push_back(std::move(m));
        return modes_.size() - 1;
    }

    void squeeze(std::size_t m, double r) {
        scale(mode(m).x, std::exp(+r));
        scale(mode(m).p, std::exp(-r));
    }

    void beamsplitter(std::size_t a, std::size_t b) {
        const double f = 1.0 / std::sqrt(2.0);
        DenseMode& ma = mode(a);
        DenseMode& mb = mode(b);
        Row ax = combine(ma.x, mb.x, f, f);
        Row bx = combine(ma.x, mb.x, f, -f);
        Row ap = combine(ma.p, mb.p, f, f);
        Row bp = combine(ma.p, mb.p, f, -f);
        ma.x = std::move(ax);
        mb.x = std::move(bx);
        ma.p = std::move(ap);
        mb.p = std::move(bp);
    }

    std::size_t homodyne(std::size_t m, bool measure_x, double eta) {
        DenseMode& md = mode(m);
        if (!md.alive) throw std::logic_error("oracle: homodyne on dead mode");
        Row row = measure_x ? md.x : md.p;
        if (eta < 1.0) {
            const std::size_t noise = slots_++;
            if (row.vac.size() <= noise) row.vac.resize(noise + 1, 0.0);
            row.vac[noise] = std::sqrt(1.0 / (eta * eta) - 1.0);
        }
        md.alive = false;
        outcomes_.push_back({measure_x, std::move(row)});
        return outcomes_.size() - 1;
    }

    void displace(std::size_t m, bool on_x, std::size_t outcome, double gain) {
        const Row& src = outcomes_.at(outcome).row;
        Row& dst = on_x ? mode(m).x : mode(m).p;
        Row sum = combine(dst, src, 1.0, gain);
        dst = std::move(sum);
    }

    double var_x(std::size_t m) const { return 0.25 * dot(modes_.at(m).x.vac, modes_.at(m).x.vac); }
    double var_p(std::size_t m) const { return 0.25 * dot(modes_.at(m).p.vac, modes_.at(m).p.vac); }
    double cov_xx(std::size_t a, std::size_t b) const {
        return 0.25 * dot(modes_.at(a).x.vac, modes_.at(b).x.vac);
    }
    double cov_pp(std::size_t a, std::size_t b) const {
        return 0.25 * dot(modes_.at(a).p.vac, modes_.at(b).p.vac);
    }
    double duan(std::size_t a, std::size_t b) const {
        Row dx = combine(modes_.at(a).x, modes_.at(b).x, 1.0, -1.0);
        Row sp = combine(modes_.at(a).p, modes_.at(b).p, 1.0, 1.0);
        return 0.25 * (dot(dx.vac, dx.vac) + dot(sp.vac, sp.vac));
    }
    double x_vacuum_coeff(std::size_t m, std::size_t slot) const {
        const auto& v = modes_.at(m).x.vac;
        return slot < v.size() ? v[slot] : 0.0;
    }
    double x_input_coeff(std::size_t m, std::size_t id) const {
        const auto& v = modes_.at(m).x.in;
        return id < v.size() ? v[id] : 0.0;
    }
    bool alive(std::size_t m) const { return modes_.at(m).alive; }
    std::size_t slot_count() const { return slots_; }

private:
    DenseMode& mode(std::size_t m) { return modes_.at(m); }

    static void set_unit(std::vector<double>& v, std::size_t index) {
        if (v.size() <= index) v.resize(index + 1, 0.0);
        v[index] = 1.0;
    }
    static void scale(Row& row, double f) {
        for (double& c : row.vac) c *= f;
        for (double& c : row.in) c *= f;
    }
    static std::vector<double> combine_vec(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           double fa, double fb) {
        std::vector<double> out(std::max(a.size(), b.size()), 0.0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double ca = i < a.size() ? a[i] : 0.0;
            const double cb = i < b.size() ? b[i] : 0.0;
            out[i] = fa * ca + fb * cb;
        }
        return out;
    }
    static Row combine(const Row& a, const Row& b, double fa, double fb) {
        return {combine_vec(a.vac, b.vac, fa, fb), combine_vec(a.in, b.in, fa, fb)};
    }
    static double dot(const std::vector<double>& a, const std::vector<double>& b) {
        double sum = 0.0;
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
        return sum;
    }

    std::vector<DenseMode> modes_;
    std::vector<Outcome> outcomes_;
    std::size_t slots_ = 0;
    std::size_t inputs_ = 0;
};

}  // namespace dense_oracle
