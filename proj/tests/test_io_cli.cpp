#include "helpers.hpp"

#include <convind/cli.hpp>
#include <convind/io.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace convind;
using testutil::planar;
using testutil::spatial;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

io::json report_of(const CliResult& r) { return io::json::parse(r.out); }

std::string fixture(const std::string& name, const PointSet& s) {
    std::string path = "cli_fixture_" + name + ".json";
    io::save_point_set(path, s);
    return path;
}

std::string family_fixture(const std::string& name, const std::vector<PointSet>& sets) {
    std::string path = "cli_fixture_" + name + ".json";
    io::save_json(path, io::wrap_file("family", io::point_sets_json(sets)));
    return path;
}

}  // namespace

TEST_CASE("point sets round-trip through JSON exactly") {
    PointSet s;
    s.dimension = 2;
    s.push_back(Vec{rat(-7, 3), rat(22, 7)});
    s.push_back(Vec{rat(0), rat(1000000007, 2)});
    io::json j = io::point_set_json(s);
    PointSet back = io::point_set_from_json(io::json::parse(j.dump()));
    REQUIRE(back.dimension == 2);
    REQUIRE(back.points == s.points);

    // All rationals serialize as num/den strings.
    REQUIRE(j["points"][0][0] == "-7/3");
    REQUIRE(j["points"][1][0] == "0/1");

    REQUIRE_THROWS_AS(io::rational_from_json(io::json(3)), std::invalid_argument);
    REQUIRE_THROWS_AS(io::point_set_from_json(io::json::object()), std::invalid_argument);
    REQUIRE_THROWS_AS(io::vec_from_json(io::json::array()), std::invalid_argument);
}

TEST_CASE("file wrappers stamp schema version and kind") {
    io::json j = io::wrap_file("point_set", io::point_set_json(planar({{1, 2}})));
    REQUIRE(j["schema_version"] == io::kSchemaVersion);
    REQUIRE(j["kind"] == "point_set");

    std::string path = "cli_fixture_roundtrip.json";
    io::save_json(path, j);
    PointSet s = io::load_point_set(path);
    REQUIRE(s.points == planar({{1, 2}}).points);
    REQUIRE_THROWS_AS(io::load_point_set("does_not_exist_anywhere.json"), std::invalid_argument);
}

TEST_CASE("five-pair configurations round-trip") {
    FivePairConfig cfg;
    cfg.classes[0] = spatial({{0, 0, 0}, {1, 0, 0}});
    cfg.classes[1] = spatial({{0, 1, 0}, {0, 2, 0}});
    cfg.classes[2] = spatial({{0, 0, 1}, {0, 0, 2}});
    cfg.classes[3] = spatial({{1, 1, 0}, {2, 2, 0}});
    cfg.classes[4] = spatial({{1, 1, 1}, {2, 2, 2}});
    FivePairConfig back = io::five_pair_from_json(io::five_pair_json(cfg));
    for (int i = 0; i < 5; ++i) REQUIRE(back.classes[i].points == cfg.classes[i].points);
    REQUIRE_THROWS_AS(io::five_pair_from_json(io::point_sets_json({planar({{0, 0}})})),
                      std::invalid_argument);
}

TEST_CASE("census_csv fixed formatting") {
    io::CensusRow row{4, 4, 2, 2, rat(2), 17};
    REQUIRE(io::census_csv({row}) == "n,U,W,D,diameter,runtime_ms\n4,4,2,2,2/1,17\n");
}

TEST_CASE("cli: verify-cubearc reports a certified configuration") {
    CliResult r = run_cli({"verify-cubearc", "--k", "2"});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "cube_arc_verification");
    REQUIRE(j["schema_version"] == io::kSchemaVersion);
    REQUIRE(j["manifest"]["command"] == "verify-cubearc");
    REQUIRE(j["midpoint_count"] == 12);
    REQUIRE(j["certificate"]["verdict"] == "independent");
}

TEST_CASE("cli: construct-cubearc emits the raw arcs") {
    CliResult r = run_cli({"construct-cubearc", "--k", "1"});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "cube_arcs");
    REQUIRE(j["midpoint_count"] == 3);
}

TEST_CASE("cli: compute-e and compute-m echo their manifests") {
    std::string tri = fixture("triangle", planar({{0, 0}, {1, 0}, {0, 1}}));
    CliResult r = run_cli({"compute-e", "--in", tri});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "extremal_report");
    REQUIRE(j["operation"] == "E");
    REQUIRE(j["value"] == 3);
    REQUIRE(j["manifest"]["inputs"] == io::json::array({tri}));

    std::string single = fixture("single", planar({{0, 0}}));
    std::string square = fixture("square", planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CliResult m = run_cli({"compute-m", "--p", single, "--q", square});
    REQUIRE(m.code == 0);
    REQUIRE(report_of(m)["value"] == 4);

    CliResult ec = run_cli({"compute-ecirc", "--in", square});
    REQUIRE(ec.code == 0);
    REQUIRE(report_of(ec)["operation"] == "E_circ");
    REQUIRE(report_of(ec)["value"] == 4);
}

TEST_CASE("cli: census writes report and CSV") {
    std::string square = fixture("square2", planar({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    std::string csv = "cli_fixture_census.csv";
    CliResult r = run_cli({"census", "--in", square, "--csv", csv});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "census_report");
    REQUIRE(j["metric"] == "euclidean");
    REQUIRE(j["unit_pairs"] == 4);
    REQUIRE(j["unit_directions"] == 2);
    REQUIRE(j["diameter_pairs"] == 2);
    REQUIRE(j["diameter_value"] == "2/1");
    std::ifstream in(csv);
    std::string header, line;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, line));
    REQUIRE(header == "n,U,W,D,diameter,runtime_ms");
    REQUIRE(line.rfind("4,4,2,2,2/1,", 0) == 0);
}

TEST_CASE("cli: antipodal-verify exit codes") {
    std::string good = family_fixture("family_good", {planar({{0, 0}}), planar({{1, 0}})});
    CliResult ok = run_cli({"antipodal-verify", "--in", good});
    REQUIRE(ok.code == 0);
    REQUIRE(report_of(ok)["antipodal"] == true);
    REQUIRE(report_of(ok)["witness_count"] == 1);

    std::string bad =
        family_fixture("family_bad", {planar({{0, 0}}), planar({{1, 0}}), planar({{2, 0}})});
    CliResult no = run_cli({"antipodal-verify", "--in", bad});
    REQUIRE(no.code == 1);
    io::json j = report_of(no);
    REQUIRE(j["antipodal"] == false);
    REQUIRE(j["counterexample"] == io::json::array({0, 0, 1, 0}));
}

TEST_CASE("cli: antipodal-build output feeds antipodal-verify") {
    std::string fam = "cli_fixture_family_built.json";
    CliResult build = run_cli({"antipodal-build", "--m", "1", "--out", fam});
    REQUIRE(build.code == 0);
    REQUIRE(report_of(build)["kind"] == "antipodal_triple");
    CliResult verify = run_cli({"antipodal-verify", "--in", fam});
    REQUIRE(verify.code == 0);
    REQUIRE(report_of(verify)["witness_count"] == 3);
}

TEST_CASE("cli: theorem3 and bench") {
    CliResult r = run_cli({"theorem3", "--m", "1"});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "theorem3_report");
    REQUIRE(j["expected"] == 3);
    REQUIRE(j["census"]["unit_pairs"] == 3);

    CliResult b = run_cli({"bench", "--max-m", "1"});
    REQUIRE(b.code == 0);
    REQUIRE(b.out.rfind("n,U,W,D,diameter,runtime_ms\n3,3,3,3,1/1,", 0) == 0);
}

TEST_CASE("cli: covering honors the pigeonhole bound") {
    PointSet line;
    line.dimension = 2;
    for (long i = 0; i < 10; ++i) line.push_back(Vec{rat(i), rat(0)});
    std::string path = fixture("line10", line);
    CliResult r = run_cli({"covering", "--in", path, "--lambda", "1/2"});
    REQUIRE(r.code == 0);
    io::json j = report_of(r);
    REQUIRE(j["kind"] == "covering_report");
    REQUIRE(j["selected_indices"].size() >= 4);

    CliResult bad = run_cli({"covering", "--in", path, "--lambda", "nonsense"});
    REQUIRE(bad.code == 2);
}

TEST_CASE("cli: reduction subcommands") {
    std::string tri = fixture("tri_red", planar({{0, 0}, {1, 0}, {0, 1}}));
    CliResult c1 = run_cli({"reduce-claim1", "--p", tri, "--q", tri});
    REQUIRE(c1.code == 0);
    REQUIRE(report_of(c1)["kind"] == "claim1_report");
    REQUIRE(report_of(c1)["value"] == 4);

    CliResult c2 = run_cli({"reduce-claim2", "--p", tri, "--q", tri});
    REQUIRE(c2.code == 0);
    REQUIRE(report_of(c2)["m_value"] == 4);

    CliResult c3 = run_cli({"reduce-claim3", "--p", tri, "--q", tri, "--seed", "5"});
    REQUIRE(c3.code == 0);
    REQUIRE(report_of(c3)["bound"] == 1);

    CliResult eq = run_cli({"equivalence", "--p", tri, "--q", tri});
    REQUIRE(eq.code == 0);
    io::json j = report_of(eq);
    REQUIRE(j["kind"] == "equivalence_report");
    REQUIRE(j["m_value"] == 4);
    REQUIRE(j.contains("claim2"));
}

TEST_CASE("cli: forbidden-configuration subcommands") {
    CliResult suite = run_cli({"refute-k22222", "--count", "3", "--seed", "11"});
    REQUIRE(suite.code == 0);
    io::json j = report_of(suite);
    REQUIRE(j["kind"] == "violation_suite");
    REQUIRE(j["verified"] == 3);
    REQUIRE(j["violating_indices"].size() == 3);

    CliResult h = run_cli({"halman5", "--count", "2", "--seed", "3"});
    REQUIRE(h.code == 0);
    REQUIRE(report_of(h)["passed"] == 2);

    // Exactly one of --in / --count.
    REQUIRE(run_cli({"halman5"}).code == 2);
    REQUIRE(run_cli({"refute-k22222", "--in", "x.json", "--count", "2"}).code == 2);

    CliResult s = run_cli({"conjecture-search", "--c", "1", "--budget", "0"});
    REQUIRE(s.code == 0);
    io::json sj = report_of(s);
    REQUIRE(sj["kind"] == "search_report");
    REQUIRE(sj["found"] == false);
    REQUIRE(sj["note"] == "zero budget: no candidate evaluated");
}

TEST_CASE("cli: usage and input failures exit 2") {
    REQUIRE(run_cli({}).code == 2);                       // subcommand required
    REQUIRE(run_cli({"no-such-command"}).code == 2);      // unknown name
    REQUIRE(run_cli({"compute-e"}).code == 2);            // missing --in
    REQUIRE(run_cli({"compute-e", "--in", "missing_file.json"}).code == 2);
    REQUIRE(run_cli({"--help"}).code == 0);

    std::string garbled = "cli_fixture_garbled.json";
    std::ofstream(garbled) << "this is not json";
    REQUIRE(run_cli({"compute-e", "--in", garbled}).code == 2);
}

TEST_CASE("cli: --out writes the same report to disk") {
    std::string out_file = "cli_fixture_report_out.json";
    CliResult r = run_cli({"verify-cubearc", "--k", "1", "--out", out_file});
    REQUIRE(r.code == 0);
    io::json from_stdout = report_of(r);
    io::json from_disk = io::load_json(out_file);
    REQUIRE(from_stdout == from_disk);
    REQUIRE(from_disk["manifest"]["output"] == out_file);
}

TEST_CASE("cli: reports are deterministic given the manifest") {
    std::string tri = fixture("tri_det", planar({{0, 0}, {1, 0}, {0, 1}}));
    CliResult a = run_cli({"compute-e", "--in", tri});
    CliResult b = run_cli({"compute-e", "--in", tri});
    REQUIRE(a.out == b.out);

    CliResult s1 = run_cli({"conjecture-search", "--c", "1", "--budget", "600", "--seed", "9"});
    CliResult s2 = run_cli({"conjecture-search", "--c", "1", "--budget", "600", "--seed", "9"});
    REQUIRE(s1.code == 0);
    REQUIRE(s1.out == s2.out);
}
