#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef FCOVER_BIN
#error "FCOVER_BIN must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(FCOVER_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// csv text with the wall-clock column blanked, so byte comparison is
// meaningful across runs
std::string mask_runtime(const std::string& csv) {
    std::vector<std::string> lines = split(csv, '\n');
    if (lines.empty()) return csv;
    std::vector<std::string> header = split(lines[0], ',');
    std::ptrdiff_t runtime_col = -1;
    for (size_t c = 0; c < header.size(); ++c)
        if (header[c] == "runtime_ms") runtime_col = static_cast<std::ptrdiff_t>(c);
    if (runtime_col < 0) return csv;
    std::string out = lines[0];
    for (size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].empty()) continue;
        std::vector<std::string> cells = split(lines[l], ',');
        if (static_cast<std::ptrdiff_t>(cells.size()) > runtime_col)
            cells[static_cast<size_t>(runtime_col)] = "_";
        std::string joined;
        for (size_t c = 0; c < cells.size(); ++c) joined += (c ? "," : "") + cells[c];
        out += "\n" + joined;
    }
    return out;
}

}  // namespace

TEST_CASE("cover subcommand emits the contracted columns and a value near 1") {
    RunResult r = run(
        "cover --f \"gauss(1)\" --g \"gauss(1)\" --window -6 6 --n 241 --atoms -8 8 321 -o -");
    CHECK(r.exit_code == 0);
    std::vector<std::string> lines = split(r.out, '\n');
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] ==
          "step,n_constraints,n_atoms,value_primal,value_dual,gap,lower_bound,upper_bound,status,"
          "runtime_ms");
    std::vector<std::string> cells = split(lines[1], ',');
    REQUIRE(cells.size() == 10);
    CHECK(std::fabs(std::stod(cells[3]) - 1.0) < 1e-4);
    CHECK(std::stod(cells[5]) <= 1e-7 * 2);
    CHECK(cells[8] == "optimal");
}

TEST_CASE("missing required option exits 1") {
    RunResult r = run("cover --f \"gauss(1)\"");
    CHECK(r.exit_code == 1);
}

TEST_CASE("bad expression exits 1") {
    RunResult r = run("cover --f \"gauss(-3)\" --g \"gauss(1)\" --window -6 6 --n 41");
    CHECK(r.exit_code == 1);
}

TEST_CASE("infeasible instance exits 2 with machine-readable status") {
    RunResult r = run(
        "cover --f \"ind_box(0,2)\" --g \"ind_box(0,1)\" --window -0.5 2.5 --n 61 "
        "--atoms -1 0.5 31 --allow-unpadded --force-window -o -");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("infeasible") != std::string::npos);
}

TEST_CASE("padding violation without override exits 1 with guidance") {
    RunResult r = run(
        "cover --f \"ind_box(0,2)\" --g \"ind_box(0,1)\" --window -0.5 2.5 --n 61 "
        "--atoms -1 0.5 31 --force-window -o -");
    CHECK(r.exit_code == 1);
}

TEST_CASE("separate agrees with cover through duality") {
    RunResult cov = run(
        "cover --f \"gauss(0.25)\" --g \"gauss(1)\" --window -8 8 --n 161 --atoms -10 10 201 "
        "--force-window -o -");
    RunResult sep = run(
        "separate --f \"gauss(0.25)\" --g \"reflect(gauss(1))\" --window -8 8 --n 161 "
        "--atoms -10 10 201 --force-window -o -");
    REQUIRE(cov.exit_code == 0);
    REQUIRE(sep.exit_code == 0);
    const double n_hat = std::stod(split(split(cov.out, '\n')[1], ',')[3]);
    const double m_hat = std::stod(split(split(sep.out, '\n')[1], ',')[4]);
    CHECK(std::fabs(n_hat - m_hat) <= 1e-7 * (1.0 + n_hat));
}

TEST_CASE("deterministic output: identical runs give identical bytes up to runtime") {
    const std::string args =
        "cover --f \"gauss(1)\" --g \"gauss(1)\" --window -5 5 --n 101 --atoms -7 7 141 -o -";
    RunResult a = run(args);
    RunResult b = run(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(mask_runtime(a.out) == mask_runtime(b.out));
}

TEST_CASE("facts subcommand is deterministic for a fixed seed") {
    RunResult a = run("facts --seed 7 --count 26 -o -");
    RunResult b = run("facts --seed 7 --count 26 -o -");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    RunResult c = run("facts --seed 8 --count 26 -o -");
    CHECK(c.exit_code == 0);
}

TEST_CASE("json output carries the schema marker") {
    RunResult r = run(
        "cover --f \"gauss(1)\" --g \"gauss(1)\" --window -5 5 --n 81 --atoms -7 7 113 "
        "--format json -o -");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"schema\": 1") != std::string::npos);
    CHECK(r.out.find("\"columns\"") != std::string::npos);
}

TEST_CASE("hadwiger writes a table and an svg polyline") {
    const std::string csv = "/tmp/fcover_test_scan.csv";
    const std::string svg = "/tmp/fcover_test_scan.svg";
    RunResult r = run("hadwiger --f \"gauss(1)\" --lambdas 0.8,0.9,0.95 --window -6 6 --n 121 "
                      "--atoms -8 8 161 --plot " + svg + " -o " + csv);
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> lines = split(slurp(csv), '\n');
    REQUIRE(lines.size() >= 4);  // header + 3 lambda rows
    CHECK(lines[0] == "lambda,n_hat,upper_bound_p2,extrapolated_limit,theorem_bound");
    const std::string svg_text = slurp(svg);
    CHECK(svg_text.find("<polyline") != std::string::npos);
    CHECK(svg_text.find("fcover plot v1") != std::string::npos);
    std::remove(csv.c_str());
    std::remove(svg.c_str());
}

TEST_CASE("transform subcommand: legendre of the unit box") {
    RunResult r = run(
        "transform --op logdual --f \"ind_box(-1,1)\" --window -4 4 --n 801 "
        "--dual-window -2 2 --dual-n 41 -o -");
    REQUIRE(r.exit_code == 0);
    std::vector<std::string> lines = split(r.out, '\n');
    REQUIRE(lines.size() >= 42);
    // value at y: exp(-|y|)
    for (size_t l = 1; l < 42; ++l) {
        std::vector<std::string> cells = split(lines[l], ',');
        REQUIRE(cells.size() == 2);
        const double y = std::stod(cells[0]);
        CHECK(std::fabs(std::stod(cells[1]) - std::exp(-std::fabs(y))) < 1e-6);
    }
}

TEST_CASE("config file mirrors the flag interface") {
    const std::string cfg_path = "/tmp/fcover_test_cfg.json";
    {
        std::ofstream f(cfg_path);
        f << R"js({"command":"cover","f":"gauss(1)","g":"gauss(1)",)js"
          << R"js("window":[-5,5],"n":[101],"atoms":[-7,7,141],"output":"-"})js";
    }
    RunResult from_cfg = run("--config " + cfg_path);
    RunResult from_flags =
        run("cover --f \"gauss(1)\" --g \"gauss(1)\" --window -5 5 --n 101 --atoms -7 7 141 -o -");
    REQUIRE(from_cfg.exit_code == 0);
    CHECK(mask_runtime(from_cfg.out) == mask_runtime(from_flags.out));
    std::remove(cfg_path.c_str());
}

TEST_CASE("node cap environment override") {
    // a grid over the default cap is refused, then allowed via the env knob
    const std::string tail =
        " transform --op levelset --f \"gauss2(1,0,1)\" --window -4 4 -4 4 --n 300 300 "
        "--force-window -o - 2>/dev/null";
    RunResult denied = run(
        "transform --op levelset --f \"gauss2(1,0,1)\" --window -4 4 -4 4 --n 300 300 "
        "--force-window -o -");
    CHECK(denied.exit_code == 1);

    const std::string cmd = "env FCOVER_MAX_NODES=100000 " + std::string(FCOVER_BIN) + tail;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string outbuf;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) outbuf.append(buf, n);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(outbuf.find("volume") != std::string::npos);
}
