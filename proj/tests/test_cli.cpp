// Drives the installed CLI binary end to end. The harness exports the binary
// path in BALLMODES_CLI; every test shells out through popen.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* path = std::getenv("BALLMODES_CLI");
    REQUIRE_MESSAGE(path != nullptr, "BALLMODES_CLI must point at the binary");
    return path;
}

RunResult run(const std::string& args) {
    const std::string command = "\"" + cli_path() + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe))
        result.output.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string scratch_dir() {
    static const std::string dir = [] {
        char pattern[] = "/tmp/ballmodes_cli_XXXXXX";
        const char* made = mkdtemp(pattern);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string scratch(const std::string& name) { return scratch_dir() + "/" + name; }

/// Parse "n m value" rows emitted by the roots subcommand.
std::vector<std::string> root_values(const std::string& output) {
    std::istringstream in(output);
    std::string line;
    std::vector<std::string> values;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string n, m, z;
        row >> n >> m >> z;
        values.push_back(z);
    }
    return values;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("roots prints the lowest interior eigenvalue") {
    const auto r = run("roots psi 1 1");
    CHECK(r.exit_code == 0);
    const auto values = root_values(r.output);
    REQUIRE(values.size() == 2);  // (0,1) and (1,1)
    CHECK(std::abs(std::stod(values[1]) - 4.4934) < 1e-4);
}

TEST_CASE("degree-zero zeros print as multiples of pi") {
    const auto r = run("roots psi 0 3");
    CHECK(r.exit_code == 0);
    const auto values = root_values(r.output);
    REQUIRE(values.size() == 3);
    for (int m = 1; m <= 3; ++m)
        CHECK(std::stod(values[m - 1]) == doctest::Approx(m * 3.14159265358979324).epsilon(1e-12));
}

TEST_CASE("derivative zeros of degree zero repeat the degree-one zeros") {
    const auto prime = root_values(run("roots psi-prime 0 2").output);
    const auto psi = root_values(run("roots psi 1 2").output);
    REQUIRE(prime.size() == 2);
    REQUIRE(psi.size() == 4);  // degrees 0 and 1
    CHECK(prime[0] == psi[2]);  // identical digits, not merely close
    CHECK(prime[1] == psi[3]);
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run("").exit_code == 2);
    CHECK(run("eval --mode banana --out " + scratch("x.csv")).exit_code == 2);
    CHECK(run("eval --grid 8x8x8").exit_code == 2);  // neither --mode nor --field
    CHECK(run("roots psi 500 1").exit_code == 2);
    CHECK(run("solve --problem 1 --lambda 1 --rhs " + scratch("missing.json")).exit_code == 3);
    CHECK(run("project --in " + scratch("missing.csv") + " --n-modes 4").exit_code == 3);
    CHECK(run("verify --suite roots").exit_code == 0);
}

TEST_CASE("identical configuration gives byte-identical output") {
    const auto first = run("verify --suite spectral --seed 7");
    const auto second = run("verify --suite spectral --seed 7");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    const std::string a = scratch("det_a.csv"), b = scratch("det_b.csv");
    CHECK(run("eval --mode 2,1,1,- --grid 6x7x8 --out " + a).exit_code == 0);
    CHECK(run("eval --mode 2,1,1,- --grid 6x7x8 --out " + b).exit_code == 0);
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}

TEST_CASE("eval then project recovers the sampled mode") {
    const std::string grid = scratch("mode_grid.csv"), coeffs = scratch("mode_proj.json");
    CHECK(run("eval --mode 1,1,0,+ --grid 24x24x48 --out " + grid).exit_code == 0);
    CHECK(run("project --in " + grid + " --n-modes 9 --out " + coeffs).exit_code == 0);
    const json j = read_json(coeffs);
    CHECK(j.at("R").get<double>() == 1.0);
    double main_coef = 0.0, worst_other = 0.0;
    for (const auto& e : j.at("modes")) {
        const double c = e.at("c").get<double>();
        if (e.at("family") == "curl+" && e.at("n") == 1 && e.at("m") == 1 && e.at("k") == 0)
            main_coef = c;
        else
            worst_other = std::max(worst_other, std::abs(c));
    }
    // Tolerances reflect tricubic interpolation error on a 24x24x48 grid, not
    // projection accuracy (which test_quad pins at 1e-9 on exact evaluators).
    CHECK(std::abs(main_coef - 1.0) < 5e-3);
    CHECK(worst_other < 5e-3);
}

TEST_CASE("solve reports the diagonal coefficient") {
    const std::string rhs = scratch("rhs.json"), out = scratch("sol.json");
    {
        std::ofstream f(rhs);
        f << R"({"R": 1.0, "modes": [{"family": "curl+", "n": 1, "m": 1, "k": 0, "c": 1.0}]})";
    }
    const auto r = run("solve --problem 1 --lambda 1 --rhs " + rhs + " --out " + out);
    CHECK(r.exit_code == 0);
    const json j = read_json(out);
    CHECK(j.at("solvable").get<bool>());
    REQUIRE(j.at("solution").at("modes").size() == 1);
    const double c = j.at("solution").at("modes")[0].at("c").get<double>();
    CHECK(std::abs(c - 1.0 / (1.0 + 4.49340945790906)) < 1e-12);
}

TEST_CASE("streamline from the axis reaches the far pole") {
    const std::string out = scratch("line.csv");
    const auto r = run("streamlines --mode 1,1,0,+ --seed 0,0,-0.5 --step 0.004 "
                       "--max-steps 20000 --out " + out);
    CHECK(r.exit_code == 0);
    std::ifstream f(out);
    std::string line, last;
    std::getline(f, line);
    CHECK(line.rfind("# streamline seed=", 0) == 0);
    std::getline(f, line);
    CHECK(line == "x,y,z");
    while (std::getline(f, line))
        if (!line.empty()) last = line;
    const auto comma = last.rfind(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stod(last.substr(comma + 1)) > 0.99);
}

TEST_CASE("vtk output is sniffable and reloadable") {
    const std::string out = scratch("grid.vtk"), back = scratch("reproj.json");
    CHECK(run("eval --mode 1,1,0,g --grid 10x10x12 --format vtk --out " + out).exit_code == 0);
    std::ifstream f(out);
    std::string first;
    std::getline(f, first);
    CHECK(first.rfind("# vtk DataFile", 0) == 0);
    CHECK(run("project --in " + out + " --n-modes 4 --quad 24x24x48 --out " + back).exit_code ==
          0);
    CHECK(read_json(back).at("modes").size() == 4);
}
