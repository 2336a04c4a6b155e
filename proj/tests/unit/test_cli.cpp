#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using mvsk::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("mvsk_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const std::string& p) { return nlohmann::json::parse(slurp(p)); }

void write_text(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("moments on a hand-written CSV") {
    TempDir dir("moments");
    write_text(dir / "r.csv", "A,B\n0.01,0.02,0.03\n0.0,-0.01,0.01\n");
    const auto r = cli({"moments", "--data", dir / "r.csv", "--out", dir / "m.json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("n = 2, m = 3") != std::string::npos);
    CHECK(r.out.find("simplex bounds") != std::string::npos);
    CHECK(r.out.find("cube") != std::string::npos);
    const auto j = read_json(dir / "m.json");
    CHECK(j["mean"][0].get<double>() == doctest::Approx(0.02));
    CHECK(j["mean"][1].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("prices flag converts a price row") {
    TempDir dir("prices");
    write_text(dir / "p.csv", "P\n1,1.1,1.21,1.331\n");
    REQUIRE(cli({"moments", "--data", dir / "p.csv", "--prices", "--out", dir / "m.json"}).code == 0);
    const auto j = read_json(dir / "m.json");
    CHECK(j["m"] == 3);
    CHECK(j["mean"][0].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(j["covariance"][0][0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("usage and IO errors exit with status 1") {
    const auto missing = cli({"moments", "--data", "/nonexistent/returns.csv"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("/nonexistent/returns.csv") != std::string::npos);
    CHECK(cli({"moments"}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({}).code == 1);
    CHECK(cli({"solve", "--lambda", "1,2,3", "--n", "3", "--m", "50"}).code == 1);
    CHECK(cli({"solve", "--simplex", "--cube", "1"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("synth is byte-identical per seed and has the requested shape") {
    TempDir dir("synth");
    REQUIRE(cli({"synth", "--seed", "7", "--out", dir / "a.csv"}).code == 0);
    REQUIRE(cli({"synth", "--seed", "7", "--out", dir / "b.csv"}).code == 0);
    REQUIRE(cli({"synth", "--seed", "8", "--out", dir / "c.csv"}).code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
    std::istringstream lines(slurp(dir / "a.csv"));
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 499);
    }
    CHECK(rows == 20);
}

TEST_CASE("classify prints the label and condition breakdown") {
    TempDir dir("classify");
    REQUIRE(cli({"synth", "--n", "4", "--m", "100", "--out", dir / "r.csv"}).code == 0);
    REQUIRE(cli({"moments", "--data", dir / "r.csv", "--out", dir / "m.json"}).code == 0);
    const auto r = cli({"classify", "--model", dir / "m.json", "--lambda", "0.1,0.3,0.3,0.3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["label"] == "GlobalConvex");
    CHECK(j["conditions"]["ii"] == true);
    CHECK(j["bounds"].size() == 2);
}

TEST_CASE("solve output reloads to the same value") {
    TempDir dir("solve");
    REQUIRE(cli({"synth", "--n", "5", "--m", "120", "--out", dir / "r.csv"}).code == 0);
    REQUIRE(cli({"moments", "--data", dir / "r.csv", "--out", dir / "m.json"}).code == 0);
    REQUIRE(cli({"solve", "--model", dir / "m.json", "--lambda", "1,1,1,1", "--out", dir / "s1.json"}).code == 0);
    REQUIRE(cli({"solve", "--model", dir / "m.json", "--lambda", "1,1,1,1", "--out", dir / "s2.json"}).code == 0);
    const auto a = read_json(dir / "s1.json");
    const auto b = read_json(dir / "s2.json");
    CHECK(std::abs(a["scalarized_value"].get<double>() - b["scalarized_value"].get<double>()) <= 1e-12);
    CHECK(a["lambda"][0].get<double>() == 0.25);

    const auto sp = cli({"solve-sparse", "--model", dir / "m.json", "--lambda", "0,1,0,0", "--sparse-k", "1",
                         "--out", dir / "sp.json"});
    REQUIRE(sp.code == 0);
    CHECK(read_json(dir / "sp.json")["support_size"] == 1);
    CHECK(cli({"solve-sparse", "--model", dir / "m.json", "--sparse-k", "9"}).code == 1);

    write_text(dir / "pairs.csv", "# forbidden\n0,1\n2,3\n");
    const auto fp = cli({"solve-sparse", "--model", dir / "m.json", "--lambda", "0,1,0,0", "--sparse-k", "5",
                         "--forbidden-pairs", dir / "pairs.csv", "--out", dir / "fp.json"});
    REQUIRE(fp.code == 0);
    const auto support = read_json(dir / "fp.json")["support"].get<std::vector<int>>();
    auto has = [&](int i) { return std::find(support.begin(), support.end(), i) != support.end(); };
    CHECK_FALSE((has(0) && has(1)));
    CHECK_FALSE((has(2) && has(3)));
}

TEST_CASE("sweep writes complete outputs") {
    TempDir dir("sweep");
    REQUIRE(cli({"synth", "--n", "4", "--m", "150", "--seed", "3", "--out", dir / "r.csv"}).code == 0);
    REQUIRE(cli({"moments", "--data", dir / "r.csv", "--out", dir / "m.json"}).code == 0);
    const auto r = cli({"sweep", "--model", dir / "m.json", "--grid-s", "5", "--no-lambda1-filter", "--eta", "0.01",
                        "--out-dir", dir / "out"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("grid points 56") != std::string::npos);
    const auto j = read_json(dir / "out/sweep.json");
    CHECK(j["results"].size() == 56);
    CHECK(j["grid"].size() == 56);
    CHECK(j["meta"]["data_fingerprint"].get<std::string>().size() == 16);
    CHECK(fs::exists(dir / "out/sweep.csv"));
    CHECK(fs::exists(dir / "out/superior.csv"));

    double mx = 0;
    for (const auto& e : j["results"]) mx = std::max(mx, e["aggregate"].get<double>());
    REQUIRE_FALSE(j["superior_set"].empty());
    for (const auto& s : j["superior_set"]) {
        CHECK(s["score"].get<double>() >= 0.99 * mx);
        CHECK(s["score"].get<double>() <= mx);
    }

    const auto k2 = cli({"sweep", "--model", dir / "m.json", "--grid-s", "5", "--no-lambda1-filter", "--sparse-k",
                         "2", "--out-dir", dir / "k2"});
    REQUIRE(k2.code == 0);
    const auto jk = read_json(dir / "k2/sweep.json");
    CHECK(jk["meta"]["sparse_k"] == 2);
    for (const auto& e : jk["results"]) CHECK(e["support_size"].get<int>() <= 2);

    const auto rep = cli({"report", "--sweep", dir / "out/sweep.json", "--select", "1,0,0,0", "--select",
                          "0.2,0.2,0.4,0.2", "--out", dir / "table.csv"});
    REQUIRE(rep.code == 0);
    std::istringstream table(slurp(dir / "table.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(table, line)) ++rows;
    CHECK(rows == 2);
    CHECK(cli({"report", "--sweep", dir / "out/sweep.json", "--select", "0.3,0.3,0.3,0.1"}).code == 1);
}

TEST_CASE("sweep output is identical across job counts and config files work") {
    TempDir dir("jobs");
    write_text(dir / "sweep.ini", "grid-s = 4\nn = 4\nm = 120\nseed = 11\n");
    REQUIRE(cli({"sweep", "--config", dir / "sweep.ini", "--jobs", "1", "--out-dir", dir / "j1"}).code == 0);
    REQUIRE(cli({"sweep", "--config", dir / "sweep.ini", "--jobs", "4", "--out-dir", dir / "j4"}).code == 0);
    CHECK(slurp(dir / "j1/sweep.json") == slurp(dir / "j4/sweep.json"));
    CHECK(slurp(dir / "j1/sweep.csv") == slurp(dir / "j4/sweep.csv"));
    const auto j = read_json(dir / "j1/sweep.json");
    CHECK(j["meta"]["s"] == 4);
    CHECK(j["meta"]["seed"] == 11);
    CHECK(j["results"].size() == 20); // C(6,3) with the lambda1 filter
    CHECK(j["results"][0]["w"].size() == 4);
}

TEST_CASE("sweep with failing solves exits with status 2") {
    TempDir dir("fail");
    REQUIRE(cli({"synth", "--n", "3", "--m", "50", "--out", dir / "r.csv"}).code == 0);
    REQUIRE(cli({"moments", "--data", dir / "r.csv", "--out", dir / "m.json"}).code == 0);
    auto j = read_json(dir / "m.json");
    for (auto& v : j["cokurtosis_flat"]) v = 1.7e308;
    std::ofstream(dir / "bad.json") << j.dump();
    const auto r = cli({"sweep", "--model", dir / "bad.json", "--grid-s", "2", "--out-dir", dir / "out"});
    CHECK(r.code == 2);
    CHECK(r.out.find("failed at lambda") != std::string::npos);
}
