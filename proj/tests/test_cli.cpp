#include <cmath>
#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "doctest.h"
#include "vpent/json_io.hpp"

namespace fs = std::filesystem;
using namespace vpent;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("vpent_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string& name, const std::string& content) {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }

    std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("vpent");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int rc = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

const char* kC5Graph = R"({"vertices":["v1","v2","v3","v4","v5"],
  "edges":[["v1","v2"],["v2","v3"],["v3","v4"],["v4","v5"],["v5","v1"]],
  "pi":{"v1":0.2,"v2":0.2,"v3":0.2,"v4":0.2,"v5":0.2}})";

const char* kC5System = R"({"universe":[{"id":"v1","mass":0.2},{"id":"v2","mass":0.2},
  {"id":"v3","mass":0.2},{"id":"v4","mass":0.2},{"id":"v5","mass":0.2}],
  "sets":[["v1","v3"],["v1","v4"],["v2","v4"],["v2","v5"],["v3","v5"]]})";

double field_value(const std::string& json, const std::string& key) {
    auto pos = json.find("\"" + key + "\":");
    REQUIRE(pos != std::string::npos);
    return std::stod(json.substr(pos + key.size() + 3));
}

}  // namespace

TEST_CASE("graph-entropy on C_5 emits the cycle value") {
    TempDir dir;
    auto path = dir.file("c5.json", kC5Graph);
    auto r = run({"graph-entropy", "--graph", path, "--tol", "1e-9"});
    CHECK(r.exit_code == 0);
    CHECK(field_value(r.out, "value") == doctest::Approx(0.916290731874).epsilon(1e-9));
    CHECK(r.out.find("\"log_base\":\"nat\"") != std::string::npos);
    CHECK(r.out.find("\"converged\":true") != std::string::npos);
}

TEST_CASE("entropy accepts string masses and the bit log base") {
    TempDir dir;
    auto path = dir.file("sys.json",
                         R"({"universe":[{"id":"a","mass":"0.5"},{"id":"b","mass":"0.5"}],
                             "sets":[["a"],["b"]]})");
    auto r = run({"entropy", "--system", path, "--log-base", "bit"});
    CHECK(r.exit_code == 0);
    CHECK(field_value(r.out, "value") == doctest::Approx(1.0).epsilon(1e-9));  // one bit
    CHECK(r.out.find("\"log_base\":\"bit\"") != std::string::npos);
}

TEST_CASE("uncoverable support reports infinite entropy with exit 0") {
    TempDir dir;
    auto path = dir.file("sys.json",
                         R"({"universe":[{"id":"a","mass":0.5},{"id":"b","mass":0.5}],
                             "sets":[["a"]]})");
    auto r = run({"entropy", "--system", path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"entropy\":\"infinity\"") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2 with a located message") {
    TempDir dir;
    auto path = dir.file("bad.json", "{\"universe\": [");
    auto r = run({"entropy", "--system", path});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("oversized graphs exit 3") {
    TempDir dir;
    std::ostringstream doc;
    doc << "{\"vertices\":[";
    for (int i = 0; i < 41; ++i) doc << (i ? "," : "") << "\"v" << i << "\"";
    doc << "],\"edges\":[],\"pi\":{";
    for (int i = 0; i < 41; ++i)
        doc << (i ? "," : "") << "\"v" << i << "\":" << (i == 0 ? "1.0" : "0.0");
    doc << "}}";
    auto path = dir.file("big.json", doc.str());
    auto r = run({"graph-entropy", "--graph", path});
    CHECK(r.exit_code == 3);
}

TEST_CASE("iteration starvation exits 4 and still prints a bracket") {
    TempDir dir;
    // skewed pi so no closed-form start is optimal
    auto path = dir.file("c5skew.json",
                         R"({"vertices":["v1","v2","v3","v4","v5"],
  "edges":[["v1","v2"],["v2","v3"],["v3","v4"],["v4","v5"],["v5","v1"]],
  "pi":{"v1":0.4,"v2":0.15,"v3":0.15,"v4":0.15,"v5":0.15}})");
    auto r = run({"graph-entropy", "--graph", path, "--tol", "1e-13", "--max-iters", "3"});
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("\"converged\":false") != std::string::npos);
    CHECK(r.out.find("\"bracket\":[") != std::string::npos);
}

TEST_CASE("frac emits chi, omega and pi_star") {
    TempDir dir;
    auto path = dir.file("c5sys.json", kC5System);
    auto r = run({"frac", "--system", path});
    CHECK(r.exit_code == 0);
    CHECK(field_value(r.out, "chi_frac") == doctest::Approx(2.5).epsilon(1e-7));
    CHECK(field_value(r.out, "omega_frac") == doctest::Approx(2.5).epsilon(1e-7));
    CHECK(r.out.find("\"pi_star\"") != std::string::npos);
}

TEST_CASE("closed-form values") {
    auto interval = run({"closed-form", "--model", "interval", "--c", "0.3"});
    CHECK(interval.exit_code == 0);
    CHECK(field_value(interval.out, "value") == doctest::Approx(1.213685117649).epsilon(1e-9));

    auto circle = run({"closed-form", "--model", "circle", "--c", "0.25"});
    CHECK(field_value(circle.out, "value") == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    auto cycle = run({"closed-form", "--model", "cycle", "--n", "2"});
    CHECK(field_value(cycle.out, "value") == doctest::Approx(std::log(2.5)).epsilon(1e-9));
    CHECK(cycle.out.find("\"applicable\":true") != std::string::npos);

    auto indep = run({"closed-form", "--model", "indep-events", "--m1", "0.9", "--minf", "0.5"});
    CHECK(field_value(indep.out, "value") == doctest::Approx(0.325082973391).epsilon(1e-9));

    auto bits = run({"closed-form", "--model", "circle", "--c", "0.25", "--log-base", "bit"});
    CHECK(field_value(bits.out, "value") == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("closed-form cycle precondition failure is reported, not fatal") {
    TempDir dir;
    auto pi = dir.file("pi.json", "[0.5,0.2,0.1,0.1,0.1]");
    auto r = run({"closed-form", "--model", "cycle", "--n", "2", "--pi", pi});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"applicable\":false") != std::string::npos);
}

TEST_CASE("step-graphon subcommand solves the quotient") {
    TempDir dir;
    auto path = dir.file("w.json", R"({"masses":[0.5,0.5],"support":[[0,1],[1,0]]})");
    auto r = run({"step-graphon", "--graphon", path, "--tol", "1e-9"});
    CHECK(r.exit_code == 0);
    CHECK(field_value(r.out, "value") == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("exact-cover emits one CSV row per ell") {
    TempDir dir;
    auto path = dir.file("k2.json",
                         R"({"universe":[{"id":"a","mass":0.5},{"id":"b","mass":0.5}],
                             "sets":[["a"],["b"]]})");
    auto r = run({"exact-cover", "--system", path, "--ell", "1,2,3", "--lambda", "0.4"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ell,boxes,covered_mass,rate") != std::string::npos);
    CHECK(r.out.find("1,2,") != std::string::npos);
    CHECK(r.out.find("2,3,") != std::string::npos);
    CHECK(r.out.find("3,5,") != std::string::npos);
}

TEST_CASE("simulate-cover with the countable mixture") {
    auto r = run({"simulate-cover", "--mixture", "10,0.05", "--ell", "16", "--lambda", "0.5",
                  "--trials", "500", "--seed", "9"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ell,boxes,covered_mass,rate") != std::string::npos);
    CHECK(r.out.find("16,") != std::string::npos);
}

TEST_CASE("results and manifests are written and reproducible") {
    TempDir dir;
    auto path = dir.file("c5.json", kC5Graph);
    auto out1 = (dir.path / "r1.json").string();
    auto out2 = (dir.path / "r2.json").string();
    auto r1 = run({"graph-entropy", "--graph", path, "--seed", "4", "--out", out1});
    auto r2 = run({"graph-entropy", "--graph", path, "--seed", "4", "--out", out2});
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(dir.slurp(out1) == dir.slurp(out2));  // byte-identical reruns

    auto manifest = dir.slurp(out1 + ".manifest.json");
    CHECK(manifest.find("\"input_digest\":\"sha256:") != std::string::npos);
    CHECK(manifest.find("\"subcommand\":\"graph-entropy\"") != std::string::npos);
    CHECK(manifest.find("\"seed\":4") != std::string::npos);
    CHECK(manifest.find(out1) != std::string::npos);
}

TEST_CASE("round-trip: serialize(parse(x)) is canonical-stable") {
    auto sys = parse_system(kC5System);
    auto once = serialize_system(sys);
    auto twice = serialize_system(parse_system(once));
    CHECK(once == twice);

    auto graph = parse_graph(kC5Graph);
    auto g_once = serialize_graph(graph);
    CHECK(g_once == serialize_graph(parse_graph(g_once)));
}

TEST_CASE("format_real uses 12 significant digits, locale-free") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(std::log(2.5)) == "0.916290731874");
    CHECK(format_real(1e300) == "1e+300");
    CHECK(format_real(std::numeric_limits<double>::infinity()) == "infinity");
}

TEST_CASE("unknown flags and missing subcommands exit 2") {
    auto r = run({"entropy", "--no-such-flag"});
    CHECK(r.exit_code == 2);
    auto none = run({});
    CHECK(none.exit_code == 2);
}

TEST_CASE("sha256 digest matches a known vector") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
