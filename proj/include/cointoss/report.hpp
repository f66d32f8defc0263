// Copyright 2026 The cointoss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cointoss/analysis.hpp"

namespace cointoss {

enum class OutputFormat { Structured, Tabular };

inline std::string to_string(OutputFormat f) {
    return f == OutputFormat::Structured ? "structured" : "tabular";
}

inline constexpr int kReportSchemaVersion = 1;

/// Ordered key-value fields plus an optional named table.
///
/// Structured rendering, one entry per line:
///   key = value
///   <table>.<row>.<column> = value
/// Tabular rendering: every field as a "# key = value" comment line, followed
/// by the table as comma-separated values with a header row.
struct Report {
    std::vector<std::pair<std::string, std::string>> fields;
    std::string table_name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    void add_probability(std::string key, double p) {
        add(std::move(key), format_probability(p));
    }
    void add_integer(std::string key, std::uint64_t n) {
        add(std::move(key), std::to_string(n));
    }

    const std::string *find(const std::string &key) const {
        for (const auto &[k, v] : fields) {
            if (k == key) {
                return &v;
            }
        }
        return nullptr;
    }

    std::string render(OutputFormat format) const {
        std::string out;
        for (const auto &[key, value] : fields) {
            out += (format == OutputFormat::Tabular ? "# " : "") + key + " = " + value + "\n";
        }
        if (columns.empty()) {
            return out;
        }
        if (format == OutputFormat::Structured) {
            for (std::size_t r = 0; r < rows.size(); r++) {
                for (std::size_t c = 0; c < columns.size(); c++) {
                    out += table_name + "." + std::to_string(r) + "." + columns[c] + " = " + rows[r][c] + "\n";
                }
            }
            return out;
        }
        auto csv_line = [](const std::vector<std::string> &cells) {
            std::string line;
            for (std::size_t c = 0; c < cells.size(); c++) {
                line += (c ? "," : "") + cells[c];
            }
            return line + "\n";
        };
        out += csv_line(columns);
        for (const auto &row : rows) {
            out += csv_line(row);
        }
        return out;
    }
};

inline void add_reference_constants(Report &report) {
    report.add_probability("analytic_bound", kCheatingBound);
    report.add_probability("kitaev_reference", kKitaevReference);
}

inline void add_bias(Report &report, const BiasReport &bias) {
    report.add("party", bias.party == Party::Alice ? "A" : "B");
    report.add_probability("p_win_exact", bias.p_win_exact);
    report.add_probability("p_lose_exact", bias.p_lose_exact);
    report.add_probability("p_abort_exact", bias.p_abort_exact);
    report.add_probability("epsilon", bias.epsilon);
    report.add_probability("analytic_bound", bias.analytic_bound);
    report.add_probability("kitaev_reference", bias.kitaev_reference);
}

inline void add_honest(Report &report, const HonestDistribution &d) {
    report.add_probability("p_heads_exact", d.p_heads);
    report.add_probability("p_tails_exact", d.p_tails);
    report.add_probability("p_abort_exact", d.p_abort);
    report.add_probability("p_disagree_exact", d.p_disagree);
}

inline void add_monte_carlo(Report &report, const MonteCarloReport &mc) {
    report.add_integer("mc_trials", mc.trials);
    report.add_integer("mc_heads", mc.heads);
    report.add_integer("mc_tails", mc.tails);
    report.add_integer("mc_aborts", mc.aborts);
    report.add_integer("mc_wins", mc.wins());
    report.add_probability("mc_win_frequency", mc.frequency(mc.wins()));
    report.add_probability("mc_win_stderr", mc.standard_error(mc.wins()));
    report.add_probability("mc_heads_frequency", mc.frequency(mc.heads));
    report.add_probability("mc_heads_stderr", mc.standard_error(mc.heads));
    report.add_probability("mc_abort_frequency", mc.frequency(mc.aborts));
    report.add_probability("mc_abort_stderr", mc.standard_error(mc.aborts));
}

inline void add_transcript_table(Report &report, const Transcript &transcript) {
    report.table_name = "event";
    report.columns = {"index", "sender", "kind", "payload", "probability"};
    for (std::size_t i = 0; i < transcript.events.size(); i++) {
        const auto &e = transcript.events[i];
        report.rows.push_back({std::to_string(i), to_string(e.sender), to_string(e.kind),
                               e.payload.empty() ? "-" : e.payload, format_probability(e.probability)});
    }
}

inline void add_scan_table(Report &report, const std::vector<SensitivityPoint> &points) {
    report.table_name = "point";
    report.columns = {"t", "a00", "a01", "a10", "a11", "p_win", "p_lose", "p_detect"};
    for (const auto &p : points) {
        report.rows.push_back({format_probability(p.t), format_probability(p.coefficients.a00),
                               format_probability(p.coefficients.a01), format_probability(p.coefficients.a10),
                               format_probability(p.coefficients.a11), format_probability(p.p_win),
                               format_probability(p.p_lose), format_probability(p.p_detect)});
    }
}

}  // namespace cointoss
