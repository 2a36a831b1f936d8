#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvswap/scenario.hpp"

namespace cvswap {

enum class OutputFormat { Csv, Json };

/// A fidelity-vs-squeezing sweep over one or more scenarios.
struct SweepSpec {
    std::vector<Scenario> scenarios;
    double db_min = 0.0;
    double db_max = 10.0;
    double db_step = 0.5;
    ScenarioOverrides overrides;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> out_path;

    void validate() const {
        if (scenarios.empty())
            throw std::invalid_argument("sweep needs at least one scenario");
        if (!(db_min <= db_max))
            throw std::invalid_argument("db range must have min <= max");
        if (!(db_step > 0.0))
            throw std::invalid_argument("db step must be > 0");
        if (db_min < 0.0)
            throw std::invalid_argument("squeezing dB must be >= 0");
    }
};

struct SweepRow {
    Scenario scenario;
    double db;
    double r;
    std::optional<double> g_swap;
    double fidelity_engine;
    double fidelity_closed_form;
    double duan_sum;
    double tan_product;
};

inline const char* kSweepCsvHeader =
    "scenario,db,r,g_swap,fidelity_engine,fidelity_closed_form,duan_sum,"
    "tan_product";

inline std::vector<double> db_grid(double db_min, double db_max, double db_step) {
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(
        std::floor((db_max - db_min) / db_step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) grid.push_back(db_min + static_cast<double>(i) * db_step);
    return grid;
}

/// One row per (scenario, dB), scenarios sorted and deduplicated, dB
/// ascending; identical specs produce identical rows.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<Scenario> tags = spec.scenarios;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

    std::vector<SweepRow> rows;
    for (Scenario tag : tags) {
        for (double db : db_grid(spec.db_min, spec.db_max, spec.db_step)) {
            const double r = db_to_r(db);
            const FidelityReport rep = run_scenario(tag, r, spec.overrides);
            rows.push_back({tag, db, r, rep.g_swap, rep.fidelity,
                            scenario_closed_form(tag, r, spec.overrides),
                            rep.duan_sum, rep.tan_product});
        }
    }
    return rows;
}

namespace detail {
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace detail

inline std::string format_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const SweepRow& row : rows) {
        out += scenario_letter(row.scenario);
        out += ',';
        out += detail::format_double(row.db);
        out += ',';
        out += detail::format_double(row.r);
        out += ',';
        if (row.g_swap) out += detail::format_double(*row.g_swap);
        out += ',';
        out += detail::format_double(row.fidelity_engine);
        out += ',';
        out += detail::format_double(row.fidelity_closed_form);
        out += ',';
        out += detail::format_double(row.duan_sum);
        out += ',';
        out += detail::format_double(row.tan_product);
        out += '\n';
    }
    return out;
}

inline std::string format_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
        nlohmann::ordered_json obj;
        obj["scenario"] = std::string(1, scenario_letter(row.scenario));
        obj["db"] = row.db;
        obj["r"] = row.r;
        if (row.g_swap)
            obj["g_swap"] = *row.g_swap;
        else
            obj["g_swap"] = nullptr;
        obj["fidelity_engine"] = row.fidelity_engine;
        obj["fidelity_closed_form"] = row.fidelity_closed_form;
        obj["duan_sum"] = row.duan_sum;
        obj["tan_product"] = row.tan_product;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

inline std::string format_rows(const std::vector<SweepRow>& rows,
                               OutputFormat format) {
    return format == OutputFormat::Csv ? format_csv(rows) : format_json(rows);
}

}  // namespace cvswap
