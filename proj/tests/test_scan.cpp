#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>

#include "udw/errors.hpp"
#include "udw/estimator.hpp"
#include "udw/scan.hpp"

using namespace udw;
namespace fs = std::filesystem;

namespace {

ScanConfig pointlike_config() {
    ScanConfig c;
    c.subcommand = Subcommand::Estimate;
    c.options["kind"] = "pointlike";
    c.params = {{"L", 2.0}, {"delta", 0.3}, {"omega", 1.0}, {"r_a", 1.0}};
    return c;
}

double num(const Table& t, std::size_t row, const std::string& col) {
    return std::get<double>(t.rows[row][t.column(col)]);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(UDWSCAN_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "udw_scan_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("csv floats round-trip bit-exactly") {
    Table t;
    t.columns = {"x", "label", "n", "empty"};
    for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1.0}) t.rows.push_back({v, std::string("a,\"b\""), 3LL, {}});
    const auto parsed = parse_csv(to_csv(t));
    REQUIRE(parsed.size() == t.rows.size() + 1);
    CHECK(parsed[0] == t.columns);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string& f = parsed[i + 1][0];
        double back = 0.0;
        std::from_chars(f.data(), f.data() + f.size(), back);
        CHECK(back == std::get<double>(t.rows[i][0]));
        CHECK(parsed[i + 1][1] == "a,\"b\"");
        CHECK(parsed[i + 1][2] == "3");
        CHECK(parsed[i + 1][3].empty());
    }
}

TEST_CASE("empty table is header only") {
    Table t;
    t.columns = {"a", "b"};
    CHECK(to_csv(t) == "a,b\r\n");
    CHECK(nlohmann::json::parse(to_json(t)) == nlohmann::json::array());
}

TEST_CASE("json rows keep the column keys") {
    Table t;
    t.columns = {"x", "error"};
    t.rows.push_back({1.5, {}});
    const auto j = nlohmann::json::parse(to_json(t));
    CHECK(j[0]["x"] == 1.5);
    CHECK(j[0]["error"].is_null());
}

TEST_CASE("config hash tracks every field") {
    const ScanConfig base = pointlike_config();
    ScanConfig other = base;
    CHECK(base.hash() == other.hash());
    other.params["L"] = 2.0000000001;
    CHECK(base.hash() != other.hash());
    other = base;
    other.tol.rel_tol = 1e-8;
    CHECK(base.hash() != other.hash());
    other = base;
    other.options["path"] = "fourier";
    CHECK(base.hash() != other.hash());
    other = base;
    other.axes.push_back({"R", {0.5}});
    CHECK(base.hash() != other.hash());
    CHECK(base.hash().size() == 16);
}

TEST_CASE("config errors name the field") {
    auto message = [](const nlohmann::json& j) {
        try {
            parse_config(j);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({{"params", {{"L", "x"}}}}).find("params.L") != std::string::npos);
    CHECK(message({{"params", {{"bogus", 1}}}}).find("params.bogus") != std::string::npos);
    CHECK(message({{"axes", {{{"name", "L"}, {"min", 1}, {"max", 2}}}}}).find("axes[0].count") != std::string::npos);
    CHECK(message({{"axes", {{{"name", "L"}, {"min", 0}, {"max", 2}, {"count", 3}, {"spacing", "log"}}}}})
              .find("axes[0]") != std::string::npos);
    CHECK(message({{"colour", 1}}).find("colour") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), IoError);
}

TEST_CASE("axis specifications") {
    const ScanConfig c = parse_config(
        {{"axes", {{{"name", "R"}, {"min", 0.1}, {"max", 10}, {"count", 3}, {"spacing", "log"}},
                   {{"name", "L"}, {"values", {1, 2}}}}}});
    REQUIRE(c.axes.size() == 2);
    CHECK(c.axes[0].values[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.axes[1].values == std::vector<double>{1, 2});
}

TEST_CASE("single point reproduces the library call") {
    const Table t = run_scan(pointlike_config(), false);
    REQUIRE(t.rows.size() == 1);
    const cplx i = i_pointlike(2.0, 0.3, 1.0, 1.0, 1.0);
    CHECK(num(t, 0, "re_i_pp") == i.real());
    CHECK(num(t, 0, "im_i_pp") == i.imag());
    const IPair ip = ipair_pointlike(2.0, 0.3, 1.0, 1.0, 1.0);
    CHECK(num(t, 0, "s_max") == s_max(ip));
    const double s = estimator_s(sigma_two_level(TwoLevelState{1, 0, 0}, ip), TwoLevelState::ground());
    CHECK(num(t, 0, "s") == s);
}

TEST_CASE("axis order does not change the row set") {
    ScanConfig a = pointlike_config();
    a.axes = {{"L", {1.0, 2.0, 3.0}}, {"omega", {0.0, 1.5}}};
    ScanConfig b = a;
    std::swap(b.axes[0], b.axes[1]);
    const Table ta = run_scan(a, false), tb = run_scan(b, false);
    auto key = [](const Table& t, std::size_t r) {
        return std::make_tuple(num(t, r, "L"), num(t, r, "omega"), num(t, r, "re_i_pp"), num(t, r, "s_max"));
    };
    std::set<std::tuple<double, double, double, double>> sa, sb;
    for (std::size_t r = 0; r < ta.rows.size(); ++r) sa.insert(key(ta, r));
    for (std::size_t r = 0; r < tb.rows.size(); ++r) sb.insert(key(tb, r));
    CHECK(sa.size() == 6);
    CHECK(sa == sb);
}

TEST_CASE("a coincident point is isolated in its own error row") {
    ScanConfig c = pointlike_config();
    c.axes = {{"L", {1.0, 0.0, 2.0}}};
    const Table t = run_scan(c, true);
    REQUIRE(t.rows.size() == 3);
    const std::size_t err = t.column("error");
    CHECK(format_cell(t.rows[0][err]).empty());
    CHECK(format_cell(t.rows[1][err]) == "CoincidenceLimit");
    CHECK(std::holds_alternative<std::monostate>(t.rows[1][t.column("s_max")]));
    CHECK(format_cell(t.rows[2][err]).empty());
    CHECK(num(t, 2, "re_i_pp") == i_pointlike(2.0, 0.3, 1.0, 1.0, 1.0).real());
    CHECK(has_error_rows(t));
}

TEST_CASE("parallel scan output is byte-identical to serial") {
    ScanConfig c = pointlike_config();
    c.options["kind"] = "gaussian";
    c.params["R"] = 0.4;
    c.axes = {{"L", {1.0, 2.5, 4.0}}, {"omega", {0.0, 1.0, 3.0}}};
    c.threads = 2;
    CHECK(to_csv(run_scan(c, false)) == to_csv(run_scan(c, true)));
}

TEST_CASE("every subcommand produces its columns") {
    for (Subcommand s : {Subcommand::ICalc, Subcommand::SMax, Subcommand::Fisher, Subcommand::Bound}) {
        ScanConfig c = pointlike_config();
        c.subcommand = s;
        const Table t = run_scan(c, false);
        REQUIRE(t.rows.size() == 1);
        CHECK_FALSE(has_error_rows(t));
    }
    ScanConfig o;
    o.subcommand = Subcommand::OracleCheck;
    o.params = {{"cases", 2}, {"seed", 5}};
    const Table t = run_scan(o, false);
    CHECK(t.rows.size() == 2);
    CHECK_FALSE(has_error_rows(t));
}

TEST_CASE("overrides and units") {
    ScanConfig c;
    set_param(c, "L=2.5");
    set_param(c, "kind=gaussian");
    CHECK(c.params["L"] == 2.5);
    CHECK(c.options["kind"] == "gaussian");
    CHECK_THROWS_AS(set_param(c, "L=abc"), ConfigError);
    CHECK_THROWS_AS(set_param(c, "nothing"), ConfigError);
    apply_units(c, "T=2,R=0.5");
    CHECK(c.unit_T == 2.0);
    CHECK(c.unit_R == 0.5);
    CHECK_THROWS_AS(apply_units(c, "T=-1"), ConfigError);
    CHECK_THROWS_AS(apply_units(c, "Q=1"), ConfigError);
}

TEST_CASE("emit writes data and metadata") {
    const fs::path p = scratch("out.csv");
    Table t;
    t.columns = {"a"};
    t.rows.push_back({1.0});
    emit(t, Format::Csv, p.string(), {"abc", version_string, 1e-12, 1e-9, "now"});
    std::ifstream meta(p.string() + ".meta.json");
    const auto j = nlohmann::json::parse(meta);
    CHECK(j["config_hash"] == "abc");
    CHECK(j["version"] == version_string);
    CHECK_THROWS_AS(emit(t, Format::Csv, "/nonexistent/dir/out.csv", {}), IoError);
}

TEST_CASE("cli exit codes") {
    const fs::path out = scratch("cli.csv");
    CHECK(run_cli("estimate --set L=2 --set omega=1 --out " + out.string()) == 0);
    CHECK(fs::file_size(out) > 0);
    CHECK(run_cli("estimate --set L=0 --out " + out.string()) == 3);
    CHECK(run_cli("estimate --set bogus=1") == 2);
    CHECK(run_cli("estimate") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("estimate --set L=2 --out /nonexistent/dir/x.csv") == 4);
    CHECK(run_cli("figure fig4") == 2);
}

TEST_CASE("identical cli runs give identical bytes") {
    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    const std::string args = "scan --set L=3 --set kind=gaussian --set R=0.5 --threads 2 --out ";
    REQUIRE(run_cli(args + a.string()) == 0);
    REQUIRE(run_cli(args + b.string()) == 0);
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p);
        return std::string(std::istreambuf_iterator<char>(is), {});
    };
    CHECK(slurp(a) == slurp(b));
}
