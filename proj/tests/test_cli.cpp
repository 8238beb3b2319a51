#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

using ncstree::cli::run;

namespace {

const std::string catalan = std::string(NCSTREE_DATA_DIR) + "/catalan.map";

std::string write_map(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

} // namespace

TEST_CASE("cli: tree enumeration and order polynomials") {
    auto r = run({"trees", "enum", "--max-weight", "5"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.payload["counts_by_weight"] == nlohmann::json({1, 1, 2, 4, 9}));
    CHECK(r.payload["count"] == 17);

    r = run({"orderpoly", "(1 (1))"});
    CHECK(r.payload["polynomial"] == "1/2*s^2 + 1/2*s");
    r = run({"orderpoly", "--strict", "(1 (1))"});
    CHECK(r.payload["polynomial"] == "1/2*s^2 - 1/2*s");

    r = run({"theta", "(1 (1) (1))"});
    CHECK(r.payload["varphi"] == "1/6");
    r = run({"theta", "(0 (1))"});
    CHECK(r.exit_code == 0);
    CHECK(r.payload["varphi"].is_null());
}

TEST_CASE("cli: inversion backends agree on the Catalan map") {
    auto r = run({"invert", "--map", catalan, "--method", "both"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.payload["agreement"] == true);
    CHECK(r.payload["first_difference"].is_null());
    std::string inverse = r.payload["inverse"][0];
    CHECK(inverse.find("429*t^7*z^8") != std::string::npos);
    CHECK(inverse.find("1430*t^8*z^9") != std::string::npos);

    auto tree = run({"invert", "--map", catalan, "--method", "tree"});
    auto fixed = run({"invert", "--map", catalan, "--method", "fixedpoint"});
    CHECK(tree.payload["inverse"] == fixed.payload["inverse"]);
}

TEST_CASE("cli: powers, flows and the D-Log") {
    auto r = run({"power", "--map", catalan, "--m", "2"});
    CHECK(r.payload["power"][0] == "z - 2*t*z^2 + 2*t^2*z^3 - t^3*z^4");
    r = run({"flow", "--map", catalan, "--s", "1"});
    CHECK(r.payload["flow"][0] == "z - t*z^2");
    r = run({"dlog", "--map", catalan});
    CHECK(r.payload["exp_check"] == true);
}

TEST_CASE("cli: verification suites") {
    CHECK(run({"verify", "ncs", "--source", "trees", "--order", "4"}).exit_code == 0);
    CHECK(run({"verify", "ncs", "--source", "map", "--map", catalan, "--order", "4"}).exit_code == 0);
    CHECK(run({"verify", "hopf", "--algebra", "ck", "--max-weight", "3"}).exit_code == 0);
    CHECK(run({"verify", "cd2", "--map", catalan, "--max-weight", "3"}).exit_code == 0);
    auto r = run({"verify", "inject", "--max-weight", "4"});
    REQUIRE(r.payload["ranks"].size() == 4);
    CHECK(r.payload["ranks"][3]["rank"] == 8);
}

TEST_CASE("cli: payloads are deterministic") {
    auto a = run({"separating", "--tree", "(1 (2))", "--labels", "1,2"});
    auto b = run({"separating", "--tree", "(1 (2))", "--labels", "1,2"});
    CHECK(a.exit_code == 0);
    CHECK(a.payload == b.payload);
    CHECK(a.document()["payload"].dump() == b.document()["payload"].dump());
}

TEST_CASE("cli: errors and exit codes") {
    auto r = run({"orderpoly", "(1"});
    CHECK(r.exit_code == 2);
    CHECK(r.status == "fail");
    CHECK(r.payload["kind"] == "parse");
    CHECK(r.payload["position"] == 2);

    CHECK(run({}).exit_code == 2);
    CHECK(run({"hopf", "product", "--algebra", "xx", "(1)"}).exit_code == 2);
    CHECK(run({"verify", "inject", "--max-weight", "9"}).exit_code == 2);
    CHECK(run({"invert", "--map", "/nonexistent/map"}).exit_code == 2);

    auto bad = write_map("ncstree_bad.map", R"({"vars": ["z"], "truncation": {"t_order": 3, "z_degree": 4},
        "H": [{"m": 0, "component": 1, "series": "z^2"}]})");
    CHECK(run({"invert", "--map", bad}).exit_code == 2);
    std::filesystem::remove(bad);

    auto help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(!help.help.empty());
}

TEST_CASE("cli: text view") {
    auto r = run({"--text", "power", "--map", catalan, "--m", "2"});
    CHECK(r.text_view);
    CHECK(r.text().find("m: 2") != std::string::npos);
}
