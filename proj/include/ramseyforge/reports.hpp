#pragma once

#include <string>
#include <vector>

#include "ramseyforge/arrows.hpp"
#include "ramseyforge/expansions.hpp"
#include "ramseyforge/json_io.hpp"
#include "ramseyforge/metric_lab.hpp"
#include "ramseyforge/preadjunction.hpp"
#include "ramseyforge/tournaments.hpp"

namespace ramseyforge {

inline constexpr const char* kReportSchema = "ramsey-forge/report/v1";

// Report envelope. `config` echoes every result-affecting parameter
// (instance, budgets, seed, mode); execution-only knobs such as the worker
// count stay out so that exhaustive-mode reports are byte-identical for
// any parallelism.
inline ordered_json make_report(const std::string& command, ordered_json config,
                                ordered_json inputs, ordered_json result) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["config"] = std::move(config);
    j["input_hash"] = content_hash(inputs);
    j["inputs"] = std::move(inputs);
    j["result"] = std::move(result);
    return j;
}

namespace detail {
inline void flatten_json(const ordered_json& j, const std::string& prefix,
                         std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& e : j)
            if (e.is_object() || e.is_array()) scalars = false;
        if (scalars) {
            std::string joined;
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) joined += ';';
                joined += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
            }
            rows.emplace_back(prefix, joined);
        } else {
            for (size_t i = 0; i < j.size(); ++i)
                flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        }
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

inline std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace detail

// CSV rendering of a report: flattened dotted keys, one value per row.
inline std::string report_to_csv(const ordered_json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    detail::flatten_json(report, "", rows);
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows)
        out += detail::csv_escape(k) + "," + detail::csv_escape(v) + "\n";
    return out;
}

// ---- result serializers -------------------------------------------------------

inline ordered_json verdict_to_json(const ArrowVerdict& v) {
    ordered_json j;
    j["status"] = arrow_status_name(v.status);
    j["holds"] = v.status == ArrowStatus::holds;
    j["hom_sizes"] = {{"C_to_A", v.hom_ca_size}, {"C_to_B", v.hom_cb_size}, {"B_to_A", v.hom_ba_size}};
    j["canonical_colorings"] = v.canonical_colorings;
    if (v.status == ArrowStatus::fails) {
        j["bad_coloring"] = v.bad_coloring;
        j["per_w_counts"] = v.per_w_counts;
    }
    if (v.status == ArrowStatus::holds && !v.witness_table.empty()) {
        ordered_json table = ordered_json::array();
        for (const auto& [coloring, w] : v.witness_table) {
            ordered_json row;
            row["coloring"] = coloring;
            row["w"] = w;
            table.push_back(std::move(row));
        }
        j["good_w_table"] = std::move(table);
    }
    if (v.witness_table_truncated) j["good_w_table_truncated"] = true;
    return j;
}

inline ordered_json min_t_to_json(const MinTResult& r) {
    ordered_json j;
    j["min_t"] = r.min_t;
    j["t_upper_bound"] = r.t_upper_bound;
    j["canonical_colorings"] = r.canonical_colorings;
    j["hom_sizes"] = {{"C_to_A", r.hom_ca_size}, {"C_to_B", r.hom_cb_size}, {"B_to_A", r.hom_ba_size}};
    ordered_json per_t = ordered_json::array();
    for (const auto& [t, coloring] : r.failing_certificates) {
        ordered_json row;
        row["t"] = t;
        row["holds"] = false;
        row["bad_coloring"] = coloring;
        per_t.push_back(std::move(row));
    }
    for (int t = r.min_t; t <= r.t_upper_bound; ++t) {
        ordered_json row;
        row["t"] = t;
        row["holds"] = true;
        per_t.push_back(std::move(row));
    }
    j["per_t"] = std::move(per_t);
    return j;
}

inline ordered_json bound_report_to_json(const BoundReport& r) {
    ordered_json j;
    j["class"] = r.cls == BoundClass::metric ? "metric" : (r.cls == BoundClass::digraph ? "digraph" : "graph");
    j["n"] = r.n;
    if (r.cls != BoundClass::metric) {
        j["loops"] = r.loops;
        j["non_loops"] = r.non_loops;
        j["isolated"] = r.isolated;
    }
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json row;
        row["thm"] = e.thm;
        row["relation"] = e.relation;
        row["bound"] = e.bound;
        row["symbolic_only"] = e.symbolic_only;
        row["formula"] = e.formula;
        entries.push_back(std::move(row));
    }
    j["bounds"] = std::move(entries);
    return j;
}

inline ordered_json sibling_result_to_json(const SiblingSearchResult& r) {
    ordered_json j;
    j["found"] = r.found;
    ordered_json sizes = ordered_json::array();
    for (const auto& [size, space] : r.sizes_scanned) {
        ordered_json row;
        row["size"] = size;
        row["orientations"] = space;
        sizes.push_back(std::move(row));
    }
    j["sizes_scanned"] = std::move(sizes);
    if (r.found) {
        j["witness_size"] = r.size;
        j["witness_mask"] = r.mask;
        j["witness"] = structure_to_json(Structure(tournament_from_mask(r.size, r.mask)));
        j["hom_to_a"] = r.hom_to_a;
        j["hom_to_b"] = r.hom_to_b;
    }
    return j;
}

inline ordered_json no_degree_to_json(const NoDegreeReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["b_size"] = r.b_size;
    j["surjection_count"] = r.surjection_count;
    j["colors"] = r.colors;
    j["phi_positions"] = r.phi_positions;
    j["phi_colors_match"] = r.phi_colors_match;
    j["distinct_colors"] = r.distinct_colors;
    j["double_match_fired"] = r.double_match_fired;
    return j;
}

inline ordered_json pa_sweep_to_json(const PaSweepReport& r) {
    ordered_json j;
    j["max_x"] = r.max_x;
    j["instances"] = r.instances;
    j["failures"] = r.failures;
    j["composite_rigid_failures"] = r.composite_rigid_failures;
    j["clean"] = r.clean();
    return j;
}

}  // namespace ramseyforge
