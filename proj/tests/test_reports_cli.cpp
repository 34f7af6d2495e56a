#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ramseyforge/reports.hpp"
#include "ramseyforge/selftest.hpp"

using namespace ramseyforge;

namespace {

ordered_json arrow_report(int workers) {
    DualArrowInstance inst{OrderedStructure(Structure(Chain(2))), OrderedStructure(Structure(Chain(3))),
                           OrderedStructure(Structure(Chain(4))), MorphismKind::rigid_surjection, 2, 1};
    ArrowSearchOptions opt;
    opt.workers = workers;
    auto v = dual_arrow_check(inst, opt);
    ordered_json config;
    config["kind"] = "rigid_surjection";
    config["k"] = 2;
    config["t"] = 1;
    ordered_json inputs;
    inputs["A"] = structure_to_json(inst.A.s);
    inputs["B"] = structure_to_json(inst.B.s);
    inputs["C"] = structure_to_json(inst.C.s);
    return make_report("arrow", config, inputs, verdict_to_json(v));
}

// Minimal structural validation against the published report schema:
// required keys with the right JSON types.
void validate_report_envelope(const ordered_json& r) {
    REQUIRE(r.contains("schema"));
    CHECK(r["schema"] == kReportSchema);
    REQUIRE(r.contains("command"));
    CHECK(r["command"].is_string());
    REQUIRE(r.contains("config"));
    CHECK(r["config"].is_object());
    REQUIRE(r.contains("input_hash"));
    CHECK(r["input_hash"].is_string());
    CHECK(r["input_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    REQUIRE(r.contains("inputs"));
    REQUIRE(r.contains("result"));
}

#ifdef RAMSEY_FORGE_BIN
int run_cli(const std::string& args, std::string* out = nullptr) {
    std::string out_path = std::string(RAMSEY_FORGE_BIN) + ".test_out";
    std::string cmd = std::string(RAMSEY_FORGE_BIN) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream f(out_path);
        std::stringstream ss;
        ss << f.rdbuf();
        *out = ss.str();
    }
    std::remove(out_path.c_str());
    return WEXITSTATUS(rc);
}
#endif

}  // namespace

TEST_CASE("report envelope and schema fields") {
    auto r = arrow_report(1);
    validate_report_envelope(r);
    CHECK(r["result"]["holds"] == false);
    CHECK(r["result"]["bad_coloring"] == ordered_json({0, 0, 1, 0, 1, 1, 0}));
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    auto ref = arrow_report(1).dump(2);
    CHECK(arrow_report(1).dump(2) == ref);
    CHECK(arrow_report(4).dump(2) == ref);
    CHECK(arrow_report(8).dump(2) == ref);
}

TEST_CASE("content hash is stable and input-sensitive") {
    auto a = structure_to_json(Structure(Chain(4)));
    auto b = structure_to_json(Structure(Chain(5)));
    CHECK(content_hash(a) == content_hash(a));
    CHECK(content_hash(a) != content_hash(b));
}

TEST_CASE("csv rendering flattens reports") {
    auto r = arrow_report(1);
    auto csv = report_to_csv(r);
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("result.holds,false") != std::string::npos);
    CHECK(csv.find("result.bad_coloring,0;0;1;0;1;1;0") != std::string::npos);

    ordered_json tricky;
    tricky["note"] = "a,b \"quoted\"";
    CHECK(report_to_csv(tricky) == "key,value\nnote,\"a,b \"\"quoted\"\"\"\n");
}

#ifdef RAMSEY_FORGE_SCHEMA_DIR
TEST_CASE("shipped schemas parse and pin the envelope contract") {
    std::ifstream f(std::string(RAMSEY_FORGE_SCHEMA_DIR) + "/report.schema.json");
    REQUIRE(f.good());
    ordered_json schema;
    f >> schema;
    CHECK(schema["$id"] == kReportSchema);
    auto required = schema["required"].get<std::vector<std::string>>();
    auto report = arrow_report(1);
    for (const auto& key : required) CHECK(report.contains(key));
    for (auto it = report.begin(); it != report.end(); ++it)
        CHECK(std::find(required.begin(), required.end(), it.key()) != required.end());

    for (const char* name : {"structure.schema.json", "arrow_result.schema.json",
                             "bounds_result.schema.json"}) {
        std::ifstream sf(std::string(RAMSEY_FORGE_SCHEMA_DIR) + "/" + name);
        REQUIRE(sf.good());
        ordered_json s;
        sf >> s;
        CHECK(s.contains("$id"));
    }
}
#endif

TEST_CASE("selftest suites all pass") {
    for (const auto& r : run_selftests(2)) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}

#ifdef RAMSEY_FORGE_BIN

TEST_CASE("cli: arrow verdict with exit 0 on a failing arrow") {
    std::string out;
    int rc = run_cli("arrow --kind rigid_surjection --A chain:2 --B chain:3 --C chain:4 --k 2 --t 1",
                     &out);
    CHECK(rc == 0);
    auto j = ordered_json::parse(out);
    validate_report_envelope(j);
    CHECK(j["result"]["holds"] == false);
    CHECK(j["result"]["bad_coloring"] == ordered_json({0, 0, 1, 0, 1, 1, 0}));
    CHECK(j["result"]["per_w_counts"] == ordered_json({2, 2, 2, 2, 2, 2}));
}

TEST_CASE("cli: reports identical across worker counts") {
    std::string o1, o4, o8;
    std::string base = "mint --kind rigid_surjection --A chain:2 --B chain:3 --C chain:4 --k 2";
    CHECK(run_cli(base + " --workers 1", &o1) == 0);
    CHECK(run_cli(base + " --workers 4", &o4) == 0);
    CHECK(run_cli(base + " --workers 8", &o8) == 0);
    CHECK(o1 == o4);
    CHECK(o1 == o8);
    auto j = ordered_json::parse(o1);
    CHECK(j["result"]["min_t"] == 2);
}

TEST_CASE("cli: budget exhaustion exits 2") {
    std::string out;
    int rc = run_cli("--budget-colorings 4 arrow --kind rigid_surjection --A chain:2 --B chain:3 "
                     "--C chain:4 --k 2 --t 1",
                     &out);
    CHECK(rc == 2);
}

TEST_CASE("cli: input errors exit 1") {
    std::string out;
    CHECK(run_cli("gen --family rotational_tournament --n 4", &out) == 1);
    CHECK(run_cli("enum --X chain:3 --Y chain:2 --kind nosuchkind", &out) == 1);
    CHECK(run_cli("metric selfsim --order 0,0,1", &out) == 1);
}

TEST_CASE("cli: gen, fibers, bounds, metric, preadj, tournaments round out") {
    std::string out;
    CHECK(run_cli("gen --family rotational_tournament --n 5 --classify", &out) == 0);
    auto j = ordered_json::parse(out);
    CHECK(j["result"]["flags"]["is_tournament"] == true);

    CHECK(run_cli("fibers --S nA2:1 --kind tidy_edge_order --list", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["count"] == 2);

    CHECK(run_cli("bounds --S nA2:1 --class digraph", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["bounds"][0]["bound"] == 2);
    CHECK(j["result"]["bounds"][1]["bound"] == 8);

    CHECK(run_cli("metric split --in omega:4 --l 3", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["count"] == 1);

    CHECK(run_cli("metric selfsim --order 2,0,3,1", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["r"] == ordered_json({0, 1, 0, 1}));

    CHECK(run_cli("metric project --in E:2:1", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["prefix_len"] == 3);
    CHECK(j["result"]["validated"] == true);

    CHECK(run_cli("preadj sweep --max-x 3", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["clean"] == true);

    CHECK(run_cli("tournaments siblings --a 3 --b 5 --max 5", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["found"] == false);

    CHECK(run_cli("--format csv enum --X chain:3 --Y chain:2", &out) == 0);
    CHECK(out.rfind("key,value\n", 0) == 0);
    CHECK(out.find("result.count,3") != std::string::npos);

    CHECK(run_cli("arrow --glr-search --A chain:2 --B chain:2 --k 2 --t 1 --max-c 32", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["found_size"] == 2);

    CHECK(run_cli("arrow --kind rigid_surjection --A chain:2 --B chain:3 --C chain:4 --k 2 --t 1 "
                  "--sample 50 --seed 7",
                  &out) == 0);
    j = ordered_json::parse(out);
    std::string status = j["result"]["status"];
    CHECK((status == "fails" || status == "unknown"));
    CHECK(j["config"]["mode"] == "sampling");

    CHECK(run_cli("preadj cover --S rot:3", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["copies"] == 6);

    CHECK(run_cli("gen --in atour:3 --induce 0,2", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["structure"]["adj"] == ordered_json({{1, 1}, {0, 1}}));

    CHECK(run_cli("gen --in atour:2 --arrow-sum atour:1", &out) == 0);
    j = ordered_json::parse(out);
    CHECK(j["result"]["structure"]["n"] == 3);
}

TEST_CASE("cli: selftest exits 0") {
    std::string out;
    CHECK(run_cli("selftest", &out) == 0);
    auto j = ordered_json::parse(out);
    CHECK(j["result"]["passed"] == true);
}

TEST_CASE("cli: env var overrides budgets") {
    std::string out_path = std::string(RAMSEY_FORGE_BIN) + ".env_out";
    std::string cmd = std::string("RAMSEY_FORGE_BUDGET=4 ") + RAMSEY_FORGE_BIN +
                      " arrow --kind rigid_surjection --A chain:2 --B chain:3 --C chain:4 --k 2 --t 1 > " +
                      out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    std::remove(out_path.c_str());
}

#endif  // RAMSEY_FORGE_BIN
