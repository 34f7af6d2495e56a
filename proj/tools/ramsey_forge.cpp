// ramsey-forge: finite dual-Ramsey workbench CLI.
//
// Subcommands: gen, enum, check, arrow, mint, fibers, bounds, preadj,
// tournaments, metric, selftest. Reports are JSON (default) or CSV and
// embed the semantic config plus a content hash of the inputs. Exit codes:
// 0 completed verdict (a failing arrow is a completed verdict), 1 input
// error, 2 budget exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ramseyforge/json_io.hpp"
#include "ramseyforge/reports.hpp"
#include "ramseyforge/selftest.hpp"

namespace rf = ramseyforge;
using rf::ordered_json;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::string out;
    int workers = rf::default_workers();
    std::uint64_t budget_colorings = std::uint64_t{1} << 31;
    std::uint64_t budget_morphisms = std::uint64_t{1} << 20;
    std::uint64_t budget_nodes = std::uint64_t{1} << 26;
    std::uint64_t seed = 0;

    rf::EnumBudget enum_budget() const { return rf::EnumBudget{budget_morphisms, budget_nodes}; }
    rf::ArrowSearchOptions arrow_options() const {
        rf::ArrowSearchOptions o;
        o.workers = workers;
        o.seed = seed;
        o.budget.max_colorings = budget_colorings;
        o.budget.morphisms = enum_budget();
        return o;
    }
    ordered_json config_echo() const {
        ordered_json c;
        c["budgets"] = {{"colorings", budget_colorings},
                        {"morphisms", budget_morphisms},
                        {"nodes", budget_nodes}};
        c["seed"] = seed;
        return c;
    }
};

void apply_env_budgets(GlobalOpts& g) {
    // RAMSEY_FORGE_BUDGET=<colorings>[:<morphisms>[:<nodes>]]
    const char* env = std::getenv("RAMSEY_FORGE_BUDGET");
    if (!env) return;
    auto parts = rf::detail::split(env, ':');
    try {
        if (parts.size() >= 1 && !parts[0].empty()) g.budget_colorings = std::stoull(parts[0]);
        if (parts.size() >= 2 && !parts[1].empty()) g.budget_morphisms = std::stoull(parts[1]);
        if (parts.size() >= 3 && !parts[2].empty()) g.budget_nodes = std::stoull(parts[2]);
    } catch (...) {
        throw std::invalid_argument("RAMSEY_FORGE_BUDGET: cannot parse '" + std::string(env) + "'");
    }
}

int emit(const ordered_json& report, const GlobalOpts& g) {
    std::string text = g.format == "csv" ? rf::report_to_csv(report) : report.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        if (!f) throw std::invalid_argument("cannot open output file '" + g.out + "'");
        f << text;
    }
    return 0;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    if (csv.empty()) return out;
    for (const auto& part : rf::detail::split(csv, ','))
        out.push_back(rf::detail::parse_int(part, "list entry"));
    return out;
}

rf::EdgeOrder parse_edge_order(const std::string& s) {
    // "0,0;1,1;0,1" -> [(0,0),(1,1),(0,1)]
    std::vector<rf::Edge> edges;
    for (const auto& pair : rf::detail::split(s, ';')) {
        auto xy = rf::detail::split(pair, ',');
        if (xy.size() != 2) throw std::invalid_argument("edge order entry '" + pair + "' is not x,y");
        edges.emplace_back(rf::detail::parse_int(xy[0], "edge x"), rf::detail::parse_int(xy[1], "edge y"));
    }
    return rf::EdgeOrder(std::move(edges));
}

bool kind_needs_vertex_orders(rf::MorphismKind k) {
    return k == rf::MorphismKind::rigid_surjection ||
           k == rf::MorphismKind::nonexpansive_rigid_surjection;
}

bool kind_needs_edge_orders(rf::MorphismKind k) {
    return k == rf::MorphismKind::quotient_rigid_surjection ||
           k == rf::MorphismKind::quotient_rigid_map;
}

// Attach orders per flags; with --canonical-orders, rigid kinds on metric
// spaces get the identity vertex order and digraphs the canonical tidy
// (or non-loop) edge order.
rf::OrderedStructure ordered_from_flags(const rf::Structure& s, const std::string& vertex_order_csv,
                                        const std::string& edge_order_str, bool canonical,
                                        rf::MorphismKind kind, bool is_domain_of_rigid_map) {
    rf::OrderedStructure os{s};
    if (!vertex_order_csv.empty()) os.vertex_order = rf::LinearOrder(parse_int_list(vertex_order_csv));
    if (!edge_order_str.empty()) os.edge_order = parse_edge_order(edge_order_str);
    if (canonical) {
        if (kind_needs_vertex_orders(kind) && !os.vertex_order && !std::get_if<rf::Chain>(&s))
            os.vertex_order = rf::LinearOrder::identity(rf::structure_size(s));
        if (kind_needs_edge_orders(kind) && !os.edge_order) {
            const auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
            if (d)
                os.edge_order = (kind == rf::MorphismKind::quotient_rigid_map && is_domain_of_rigid_map)
                                    ? rf::canonical_non_loop_order(*d)
                                    : rf::canonical_tidy_order(*d);
        }
    }
    return os;
}

ordered_json check_result_to_json(const rf::CheckResult& r) {
    ordered_json j;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["reason"] = r.reason;
        j["witness"] = r.witness;
    }
    return j;
}

ordered_json selftest_to_json(const std::vector<rf::SelfTestResult>& results) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
        ordered_json row;
        row["name"] = r.name;
        row["passed"] = r.passed;
        row["detail"] = r.detail;
        arr.push_back(std::move(row));
    }
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramsey-forge: finite dual-Ramsey workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--format", g.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Write the report to this path instead of stdout");
    app.add_option("--workers", g.workers, "Worker threads for sharded searches");
    app.add_option("--budget-colorings", g.budget_colorings, "Exhaustive coloring cap");
    app.add_option("--budget-morphisms", g.budget_morphisms, "Morphism results cap per hom-set");
    app.add_option("--budget-nodes", g.budget_nodes, "Backtracking node cap per search");
    app.add_option("--seed", g.seed, "PRNG seed for sampling mode");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Build canonical structures and apply transforms");
    std::string gen_family, gen_delta = "1", gen_in, gen_induce, gen_sum;
    int gen_n = 1;
    bool gen_classify = false, gen_symmetrize = false, gen_spectrum = false;
    gen->add_option("--family", gen_family,
                    "chain | acyclic_tournament | rotational_tournament | copies_of_A2 | equilateral | omega_truncation");
    gen->add_option("--n", gen_n, "Size parameter");
    gen->add_option("--delta", gen_delta, "Distance for equilateral (rational p/q)");
    gen->add_option("--in", gen_in, "Start from an inline spec or JSON file instead of --family");
    gen->add_flag("--classify", gen_classify, "Report property flags of the digraph");
    gen->add_flag("--symmetrize", gen_symmetrize, "Symmetrize the digraph");
    gen->add_flag("--spectrum", gen_spectrum, "Report the distance spectrum of the metric space");
    gen->add_option("--induce", gen_induce, "Restrict to these vertices, e.g. 0,2");
    gen->add_option("--arrow-sum", gen_sum, "Arrow-sum with this structure (S => T)");

    // ---- enum ----
    auto* en = app.add_subcommand("enum", "Enumerate a hom-set in canonical order");
    std::string en_x, en_y, en_kind = "rigid_surjection";
    std::string en_ox, en_oy, en_ex, en_ey;
    bool en_canonical = false, en_list = true;
    en->add_option("--X", en_x, "Domain structure spec")->required();
    en->add_option("--Y", en_y, "Codomain structure spec")->required();
    en->add_option("--kind", en_kind, "Morphism class");
    en->add_option("--order-x", en_ox, "Domain vertex order, e.g. 2,0,1");
    en->add_option("--order-y", en_oy, "Codomain vertex order");
    en->add_option("--edge-order-x", en_ex, "Domain edge order, e.g. 0,0;1,1;0,1");
    en->add_option("--edge-order-y", en_ey, "Codomain edge order");
    en->add_flag("--canonical-orders", en_canonical, "Use canonical orders where the kind needs them");
    en->add_flag("--list,!--count-only", en_list, "Include the morphism list in the report");

    // ---- check ----
    auto* ck = app.add_subcommand("check", "Check one map against a morphism class");
    std::string ck_f, ck_x, ck_y, ck_kind = "rigid_surjection";
    std::string ck_ox, ck_oy, ck_ex, ck_ey, ck_cone;
    bool ck_canonical = false, ck_edge_map = false;
    ck->add_option("--f", ck_f, "The map as a,b,c,...");
    ck->add_option("--X", ck_x, "Domain structure spec");
    ck->add_option("--Y", ck_y, "Codomain structure spec");
    ck->add_option("--kind", ck_kind, "Morphism class");
    ck->add_option("--order-x", ck_ox, "Domain vertex order");
    ck->add_option("--order-y", ck_oy, "Codomain vertex order");
    ck->add_option("--edge-order-x", ck_ex, "Domain edge order");
    ck->add_option("--edge-order-y", ck_ey, "Codomain edge order");
    ck->add_flag("--canonical-orders", ck_canonical, "Use canonical orders where the kind needs them");
    ck->add_flag("--edge-map", ck_edge_map, "Also report the induced edge map");
    ck->add_option("--cone", ck_cone, "Amalgamation cone JSON: symmetrize and re-validate");

    // ---- arrow ----
    auto* ar = app.add_subcommand("arrow", "Decide a dual arrow instance exhaustively");
    std::string ar_a, ar_b, ar_c, ar_kind = "rigid_surjection";
    int ar_k = 2, ar_t = 1, ar_max_c = 32;
    std::uint64_t ar_samples = 0;
    bool ar_table = false, ar_glr = false;
    ar->add_option("--A", ar_a, "Structure A")->required();
    ar->add_option("--B", ar_b, "Structure B")->required();
    ar->add_option("--C", ar_c, "Structure C (ignored with --glr-search)");
    ar->add_option("--kind", ar_kind, "Morphism class");
    ar->add_option("--k", ar_k, "Number of colors");
    ar->add_option("--t", ar_t, "Tolerance");
    ar->add_option("--sample", ar_samples, "Sampling mode with this many random colorings");
    ar->add_flag("--witness-table", ar_table, "Record a per-coloring good-w table when the arrow holds");
    ar->add_flag("--glr-search", ar_glr, "Search chain sizes C upward until the arrow holds");
    ar->add_option("--max-c", ar_max_c, "Size cap for --glr-search");

    // ---- mint ----
    auto* mt = app.add_subcommand("mint", "Least tolerance t for which the arrow holds");
    std::string mt_a, mt_b, mt_c, mt_kind = "rigid_surjection";
    int mt_k = 2;
    mt->add_option("--A", mt_a, "Structure A")->required();
    mt->add_option("--B", mt_b, "Structure B")->required();
    mt->add_option("--C", mt_c, "Structure C")->required();
    mt->add_option("--kind", mt_kind, "Morphism class");
    mt->add_option("--k", mt_k, "Number of colors");

    // ---- fibers ----
    auto* fb = app.add_subcommand("fibers", "Enumerate expansion fibers U^{-1}(S)");
    std::string fb_s, fb_kind = "linear_order";
    bool fb_list = false, fb_axioms = false;
    fb->add_option("--S", fb_s, "Structure spec")->required();
    fb->add_option("--kind", fb_kind, "linear_order | tidy_edge_order | acyclic_orientation");
    fb->add_flag("--list", fb_list, "Include the fiber list in the report");
    fb->add_flag("--axioms", fb_axioms,
                 "Also run the instance-level reasonableness/uniqueness checks over this fiber");

    // ---- bounds ----
    auto* bd = app.add_subcommand("bounds", "Dual degree bound report");
    std::string bd_s, bd_class = "digraph";
    bd->add_option("--S", bd_s, "Structure spec")->required();
    bd->add_option("--class", bd_class, "metric | digraph | graph");

    // ---- preadj ----
    auto* pa = app.add_subcommand("preadj", "Pre-adjunction operations");
    auto* pa_sw = pa->add_subcommand("sweep", "Exhaustive (PA) sweep");
    int pa_max_x = 4;
    pa_sw->add_option("--max-x", pa_max_x, "Largest chain size X");
    auto* pa_cv = pa->add_subcommand("cover", "Universal cover by copies of A_2");
    std::string pa_cv_s;
    pa_cv->add_option("--S", pa_cv_s, "Digraph spec")->required();

    // ---- tournaments ----
    auto* tn = app.add_subcommand("tournaments", "Tournament lab");
    auto* tn_nd = tn->add_subcommand("no-degree", "No-dual-degree certificate on B_n");
    int tn_n = 2;
    tn_nd->add_option("--n", tn_n, "Family size");
    auto* tn_sb = tn->add_subcommand("siblings", "Common inflation search for T_a and T_b");
    int tn_a = 3, tn_b = 5, tn_max = 7;
    tn_sb->add_option("--a", tn_a, "First member (odd vertex count)");
    tn_sb->add_option("--b", tn_b, "Second member (odd vertex count)");
    tn_sb->add_option("--max", tn_max, "Vertex cap for candidate inflations");

    // ---- metric ----
    auto* me = app.add_subcommand("metric", "Metric lab");
    auto* me_pr = me->add_subcommand("project", "Universal projection from an Omega truncation");
    std::string me_pr_in;
    me_pr->add_option("--in", me_pr_in, "Metric space spec")->required();
    auto* me_sp = me->add_subcommand("split", "All threshold splits onto E_{2,l}");
    std::string me_sp_in, me_sp_l = "1";
    me_sp->add_option("--in", me_sp_in, "Metric space spec")->required();
    me_sp->add_option("--l", me_sp_l, "Threshold (rational p/q)");
    auto* me_ss = me->add_subcommand("selfsim", "Self-similarity rigid surjection from a prefix order");
    std::string me_ss_order;
    me_ss->add_option("--order", me_ss_order, "Prefix order as a permutation, e.g. 2,0,3,1")->required();

    // ---- selftest ----
    auto* st = app.add_subcommand("selftest", "Run every module's micro-suite");

    try {
        app.parse(argc, argv);
        apply_env_budgets(g);

        if (gen->parsed()) {
            rf::Structure s = !gen_in.empty() ? rf::parse_structure_spec(gen_in) : [&]() {
                if (gen_family == "chain") return rf::Structure(rf::build_chain(gen_n));
                if (gen_family == "acyclic_tournament")
                    return rf::Structure(rf::build_acyclic_tournament(gen_n));
                if (gen_family == "rotational_tournament")
                    return rf::Structure(rf::build_rotational_tournament(gen_n));
                if (gen_family == "copies_of_A2") return rf::Structure(rf::build_copies_of_a2(gen_n));
                if (gen_family == "equilateral")
                    return rf::Structure(rf::build_equilateral(gen_n, rf::Rational::parse(gen_delta)));
                if (gen_family == "omega_truncation")
                    return rf::Structure(rf::build_omega_truncation(gen_n));
                throw std::invalid_argument("gen: unknown family '" + gen_family + "'");
            }();
            ordered_json result;
            if (!gen_induce.empty()) {
                auto verts = parse_int_list(gen_induce);
                if (auto* d = std::get_if<rf::ReflexiveDigraph>(&s))
                    s = rf::Structure(rf::induced_subdigraph(*d, verts));
                else if (auto* m = std::get_if<rf::MetricSpace>(&s))
                    s = rf::Structure(rf::induced_submetric(*m, verts));
                else
                    s = rf::Structure(rf::induced_subchain(std::get<rf::Chain>(s), verts));
            }
            if (!gen_sum.empty()) {
                auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                auto other = rf::parse_structure_spec(gen_sum);
                auto* d2 = std::get_if<rf::ReflexiveDigraph>(&other);
                if (!d || !d2) throw std::invalid_argument("--arrow-sum needs two digraphs");
                s = rf::Structure(rf::arrow_sum(*d, *d2));
            }
            if (gen_symmetrize) {
                auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                if (!d) throw std::invalid_argument("--symmetrize needs a digraph");
                s = rf::Structure(rf::symmetrize(*d));
            }
            result["structure"] = rf::structure_to_json(s);
            if (gen_classify) {
                auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                if (!d) throw std::invalid_argument("--classify needs a digraph");
                auto f = rf::classify(*d);
                result["flags"] = {{"is_graph", f.is_graph},       {"is_oriented", f.is_oriented},
                                   {"is_acyclic", f.is_acyclic},   {"is_transitive", f.is_transitive},
                                   {"is_poset", f.is_poset},       {"is_tournament", f.is_tournament}};
            }
            if (gen_spectrum) {
                auto* m = std::get_if<rf::MetricSpace>(&s);
                if (!m) throw std::invalid_argument("--spectrum needs a metric space");
                ordered_json spec = ordered_json::array();
                for (const auto& r : rf::spectrum(*m)) spec.push_back(r.str());
                result["spectrum"] = std::move(spec);
            }
            ordered_json config = g.config_echo();
            config["family"] = gen_family;
            config["n"] = gen_n;
            return emit(rf::make_report("gen", config, result["structure"], result), g);
        }

        if (en->parsed()) {
            rf::MorphismKind kind = rf::kind_from_name(en_kind);
            auto X = ordered_from_flags(rf::parse_structure_spec(en_x), en_ox, en_ex, en_canonical,
                                        kind, true);
            auto Y = ordered_from_flags(rf::parse_structure_spec(en_y), en_oy, en_ey, en_canonical,
                                        kind, false);
            auto ms = rf::enumerate_morphisms(X, Y, kind, g.enum_budget());
            ordered_json result;
            result["count"] = ms.size();
            if (en_list) {
                ordered_json arr = ordered_json::array();
                for (const auto& m : ms) arr.push_back(rf::morphism_to_json(m));
                result["morphisms"] = std::move(arr);
            }
            ordered_json inputs;
            inputs["X"] = rf::structure_to_json(X.s);
            inputs["Y"] = rf::structure_to_json(Y.s);
            ordered_json config = g.config_echo();
            config["kind"] = en_kind;
            return emit(rf::make_report("enum", config, inputs, result), g);
        }

        if (ck->parsed()) {
            ordered_json result;
            ordered_json inputs;
            if (!ck_cone.empty()) {
                std::ifstream in(ck_cone);
                if (!in) throw std::invalid_argument("cannot open cone file '" + ck_cone + "'");
                ordered_json j;
                in >> j;
                rf::AmalgamationCone cone{
                    std::get<rf::ReflexiveDigraph>(rf::structure_from_json(j.at("apex"))), {}, {}, {}};
                for (const auto& t : j.at("targets"))
                    cone.targets.push_back(std::get<rf::ReflexiveDigraph>(rf::structure_from_json(t)));
                for (const auto& m : j.at("maps")) cone.maps.push_back(m.get<std::vector<int>>());
                if (j.contains("arrows"))
                    for (const auto& a : j.at("arrows"))
                        cone.arrows.push_back({a.at("from").get<int>(), a.at("to").get<int>(),
                                               a.at("h").get<std::vector<int>>()});
                auto sol = rf::amalgamation_symmetrize(cone);
                result["apex"] = rf::structure_to_json(rf::Structure(sol.apex));
                result["maps"] = sol.maps;
                result["revalidated"] = sol.revalidated;
                inputs = j;
            } else {
                rf::MorphismKind kind = rf::kind_from_name(ck_kind);
                auto X = ordered_from_flags(rf::parse_structure_spec(ck_x), ck_ox, ck_ex, ck_canonical,
                                            kind, true);
                auto Y = ordered_from_flags(rf::parse_structure_spec(ck_y), ck_oy, ck_ey, ck_canonical,
                                            kind, false);
                auto f = parse_int_list(ck_f);
                result["check"] = check_result_to_json(rf::check(f, X, Y, kind));
                if (ck_edge_map) {
                    if (!X.digraph() || !Y.digraph())
                        throw std::invalid_argument("--edge-map needs digraph structures");
                    auto em = rf::edge_map(f, *X.digraph(), *Y.digraph());
                    ordered_json arr = ordered_json::array();
                    for (const auto& e : em) arr.push_back({e.first, e.second});
                    result["edge_map"] = std::move(arr);
                }
                inputs["X"] = rf::structure_to_json(X.s);
                inputs["Y"] = rf::structure_to_json(Y.s);
                inputs["f"] = f;
            }
            ordered_json config = g.config_echo();
            config["kind"] = ck_kind;
            return emit(rf::make_report("check", config, inputs, result), g);
        }

        if (ar->parsed()) {
            rf::MorphismKind kind = rf::kind_from_name(ar_kind);
            ordered_json config = g.config_echo();
            config["kind"] = ar_kind;
            config["k"] = ar_k;
            config["t"] = ar_t;
            if (ar_glr) {
                rf::Structure sa = rf::parse_structure_spec(ar_a);
                rf::Structure sb = rf::parse_structure_spec(ar_b);
                const auto* a_chain = std::get_if<rf::Chain>(&sa);
                const auto* b_chain = std::get_if<rf::Chain>(&sb);
                if (!a_chain || !b_chain)
                    throw std::invalid_argument("--glr-search expects chain specs for --A and --B");
                auto opt = g.arrow_options();
                auto res = rf::search_chain_arrow_size(a_chain->size, b_chain->size, ar_k, ar_t,
                                                       ar_max_c, opt);
                ordered_json result;
                result["found_size"] = res.found_size;
                ordered_json per = ordered_json::array();
                for (auto& [size, holds] : res.per_size) per.push_back({{"size", size}, {"holds", holds}});
                result["per_size"] = std::move(per);
                config["max_c"] = ar_max_c;
                ordered_json inputs;
                inputs["A"] = rf::structure_to_json(rf::Structure(*a_chain));
                inputs["B"] = rf::structure_to_json(rf::Structure(*b_chain));
                return emit(rf::make_report("arrow.glr-search", config, inputs, result), g);
            }
            if (ar_c.empty()) throw std::invalid_argument("arrow: --C is required without --glr-search");
            rf::DualArrowInstance inst{rf::OrderedStructure(rf::parse_structure_spec(ar_a)),
                                       rf::OrderedStructure(rf::parse_structure_spec(ar_b)),
                                       rf::OrderedStructure(rf::parse_structure_spec(ar_c)), kind,
                                       ar_k, ar_t};
            auto opt = g.arrow_options();
            opt.record_witness_table = ar_table;
            if (ar_samples > 0) {
                opt.sampling = true;
                opt.samples = ar_samples;
                config["mode"] = "sampling";
                config["samples"] = ar_samples;
            } else {
                config["mode"] = "exhaustive";
            }
            auto verdict = rf::dual_arrow_check(inst, opt);
            ordered_json inputs;
            inputs["A"] = rf::structure_to_json(inst.A.s);
            inputs["B"] = rf::structure_to_json(inst.B.s);
            inputs["C"] = rf::structure_to_json(inst.C.s);
            ordered_json result = rf::verdict_to_json(verdict);
            result["instance"] = {{"k", ar_k}, {"t", ar_t}, {"kind", ar_kind}};
            return emit(rf::make_report("arrow", config, inputs, result), g);
        }

        if (mt->parsed()) {
            rf::MorphismKind kind = rf::kind_from_name(mt_kind);
            rf::DualArrowInstance inst{rf::OrderedStructure(rf::parse_structure_spec(mt_a)),
                                       rf::OrderedStructure(rf::parse_structure_spec(mt_b)),
                                       rf::OrderedStructure(rf::parse_structure_spec(mt_c)), kind,
                                       mt_k, 1};
            auto res = rf::min_t(inst, g.arrow_options());
            ordered_json inputs;
            inputs["A"] = rf::structure_to_json(inst.A.s);
            inputs["B"] = rf::structure_to_json(inst.B.s);
            inputs["C"] = rf::structure_to_json(inst.C.s);
            ordered_json config = g.config_echo();
            config["kind"] = mt_kind;
            config["k"] = mt_k;
            return emit(rf::make_report("mint", config, inputs, rf::min_t_to_json(res)), g);
        }

        if (fb->parsed()) {
            rf::Structure s = rf::parse_structure_spec(fb_s);
            ordered_json result;
            if (fb_kind == "linear_order") {
                auto fibers = rf::linear_order_fibers(rf::structure_size(s));
                result["count"] = fibers.size();
                if (fb_list) {
                    ordered_json arr = ordered_json::array();
                    for (const auto& o : fibers) arr.push_back(o.perm);
                    result["fibers"] = std::move(arr);
                }
                if (fb_axioms) {
                    int n = rf::structure_size(s);
                    std::vector<std::vector<int>> sample;
                    for (const auto& m : rf::enumerate_morphisms(
                             rf::OrderedStructure(rf::Structure(rf::build_equilateral(n, rf::Rational(1)))),
                             rf::OrderedStructure(rf::Structure(rf::build_equilateral(std::max(1, n - 1), rf::Rational(1)))),
                             rf::MorphismKind::nonexpansive_surjection, g.enum_budget()))
                        sample.push_back(m.map);
                    auto rep = rf::check_axioms_instance_vertex(n, std::max(1, n - 1), sample);
                    result["axioms"] = {{"reasonableness_checks", rep.reasonableness_checks},
                                        {"uniqueness_checks", rep.uniqueness_checks},
                                        {"violations", rep.violations}};
                }
            } else if (fb_kind == "tidy_edge_order") {
                const auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                if (!d) throw std::invalid_argument("tidy_edge_order fibers need a digraph");
                auto fibers = rf::tidy_edge_order_fibers(*d);
                result["count"] = fibers.size();
                result["loops"] = d->size();
                result["non_loops"] = d->non_loop_count();
                if (fb_list) {
                    ordered_json arr = ordered_json::array();
                    for (const auto& o : fibers) {
                        ordered_json edges = ordered_json::array();
                        for (const auto& e : o.edges) edges.push_back({e.first, e.second});
                        arr.push_back(std::move(edges));
                    }
                    result["fibers"] = std::move(arr);
                }
            } else if (fb_kind == "acyclic_orientation") {
                const auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                if (!d) throw std::invalid_argument("acyclic_orientation fibers need a reflexive graph");
                auto fibers = rf::acyclic_orientation_fibers(*d);
                result["count"] = fibers.size();
                if (fb_list) {
                    ordered_json arr = ordered_json::array();
                    for (const auto& o : fibers) arr.push_back(rf::structure_to_json(rf::Structure(o)));
                    result["fibers"] = std::move(arr);
                }
            } else {
                throw std::invalid_argument("fibers: unknown kind '" + fb_kind + "'");
            }
            ordered_json config = g.config_echo();
            config["kind"] = fb_kind;
            return emit(rf::make_report("fibers", config, rf::structure_to_json(s), result), g);
        }

        if (bd->parsed()) {
            rf::Structure s = rf::parse_structure_spec(bd_s);
            rf::BoundReport rep;
            if (bd_class == "metric")
                rep = rf::bound_report_metric(std::get<rf::MetricSpace>(s));
            else if (bd_class == "digraph")
                rep = rf::bound_report_digraph(std::get<rf::ReflexiveDigraph>(s));
            else if (bd_class == "graph")
                rep = rf::bound_report_graph(std::get<rf::ReflexiveDigraph>(s));
            else
                throw std::invalid_argument("bounds: unknown class '" + bd_class + "'");
            ordered_json config = g.config_echo();
            config["class"] = bd_class;
            return emit(rf::make_report("bounds", config, rf::structure_to_json(s),
                                        rf::bound_report_to_json(rep)),
                        g);
        }

        if (pa->parsed()) {
            if (pa_sw->parsed()) {
                auto rep = rf::pa_sweep(pa_max_x, g.enum_budget());
                ordered_json config = g.config_echo();
                config["max_x"] = pa_max_x;
                int code = emit(rf::make_report("preadj.sweep", config, ordered_json::object(),
                                                rf::pa_sweep_to_json(rep)),
                                g);
                return rep.clean() ? code : 1;
            }
            if (pa_cv->parsed()) {
                auto s = rf::parse_structure_spec(pa_cv_s);
                const auto* d = std::get_if<rf::ReflexiveDigraph>(&s);
                if (!d) throw std::invalid_argument("preadj cover needs a digraph");
                auto uc = rf::universal_cover(*d);
                ordered_json result;
                result["copies"] = uc.copies;
                result["cover"] = rf::structure_to_json(rf::Structure(uc.cover));
                result["q"] = rf::morphism_to_json(uc.q);
                return emit(rf::make_report("preadj.cover", g.config_echo(),
                                            rf::structure_to_json(s), result),
                            g);
            }
            throw std::invalid_argument("preadj: choose a subcommand (sweep, cover)");
        }

        if (tn->parsed()) {
            if (tn_nd->parsed()) {
                auto rep = rf::no_degree_certificate(tn_n, g.enum_budget());
                ordered_json config = g.config_echo();
                config["n"] = tn_n;
                ordered_json inputs = rf::structure_to_json(rf::Structure(rf::build_b(tn_n).t));
                return emit(rf::make_report("tournaments.no-degree", config, inputs,
                                            rf::no_degree_to_json(rep)),
                            g);
            }
            if (tn_sb->parsed()) {
                auto res = rf::sibling_search(tn_a, tn_b, tn_max, g.workers, g.enum_budget());
                ordered_json config = g.config_echo();
                config["a"] = tn_a;
                config["b"] = tn_b;
                config["max"] = tn_max;
                ordered_json inputs;
                inputs["T_a"] = rf::structure_to_json(rf::Structure(rf::build_rotational_tournament(tn_a)));
                inputs["T_b"] = rf::structure_to_json(rf::Structure(rf::build_rotational_tournament(tn_b)));
                return emit(rf::make_report("tournaments.siblings", config, inputs,
                                            rf::sibling_result_to_json(res)),
                            g);
            }
            throw std::invalid_argument("tournaments: choose a subcommand (no-degree, siblings)");
        }

        if (me->parsed()) {
            if (me_pr->parsed()) {
                auto s = rf::parse_structure_spec(me_pr_in);
                const auto* m = std::get_if<rf::MetricSpace>(&s);
                if (!m) throw std::invalid_argument("metric project needs a metric space");
                auto up = rf::universal_projection(*m);
                ordered_json result;
                result["prefix_len"] = up.prefix_len;
                result["q"] = up.q;
                result["plateau_starts"] = up.plateau_starts;
                if (up.prefix_len <= 512)
                    result["validated"] = rf::validate_universal_projection(*m, up).ok;
                return emit(rf::make_report("metric.project", g.config_echo(),
                                            rf::structure_to_json(s), result),
                            g);
            }
            if (me_sp->parsed()) {
                auto s = rf::parse_structure_spec(me_sp_in);
                const auto* m = std::get_if<rf::MetricSpace>(&s);
                if (!m) throw std::invalid_argument("metric split needs a metric space");
                auto splits = rf::split_by_threshold(*m, rf::Rational::parse(me_sp_l));
                ordered_json result;
                result["threshold"] = rf::Rational::parse(me_sp_l).str();
                result["count"] = splits.size();
                result["splits"] = splits;
                ordered_json config = g.config_echo();
                config["l"] = me_sp_l;
                return emit(rf::make_report("metric.split", config, rf::structure_to_json(s), result),
                            g);
            }
            if (me_ss->parsed()) {
                rf::LinearOrder order(parse_int_list(me_ss_order));
                auto res = rf::self_similar_rigid(order);
                rf::validate_self_similar(order, res);
                ordered_json result;
                result["r"] = res.r;
                result["complete"] = res.complete;
                result["image_size"] = res.image_size;
                result["plateau_ends"] = res.plateau_ends;
                ordered_json config = g.config_echo();
                config["order"] = me_ss_order;
                ordered_json inputs;
                inputs["order"] = order.perm;
                return emit(rf::make_report("metric.selfsim", config, inputs, result), g);
            }
            throw std::invalid_argument("metric: choose a subcommand (project, split, selfsim)");
        }

        if (st->parsed()) {
            auto results = rf::run_selftests(g.workers);
            bool all = true;
            for (const auto& r : results) all = all && r.passed;
            ordered_json result;
            result["passed"] = all;
            result["suites"] = selftest_to_json(results);
            int code = emit(rf::make_report("selftest", g.config_echo(), ordered_json::object(), result), g);
            return all ? code : 1;
        }

        throw std::invalid_argument("no subcommand given");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const rf::BudgetError& e) {
        std::cerr << "budget exhausted (" << e.bound() << "): " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
