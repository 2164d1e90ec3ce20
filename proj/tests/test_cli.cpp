#include "disk_squeeze/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

using namespace disk_squeeze;
using cli::parse_complex;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Complex point(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> shell(const std::string& args) {
    const std::string cmd = std::string("\"") + DISK_SQUEEZE_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string text;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

}  // namespace

TEST_CASE("complex literal grammar") {
    CHECK(parse_complex("1+0i") == Complex(1.0, 0.0));
    CHECK(parse_complex("1-2i") == Complex(1.0, -2.0));
    CHECK(parse_complex("-0.5+0.25i") == Complex(-0.5, 0.25));
    CHECK(parse_complex("0.3") == Complex(0.3, 0.0));
    CHECK(parse_complex("-3") == Complex(-3.0, 0.0));
    CHECK(parse_complex("2i") == Complex(0.0, 2.0));
    CHECK(parse_complex("-2i") == Complex(0.0, -2.0));
    CHECK(parse_complex("1e-3+2e+1i") == Complex(1e-3, 20.0));
    CHECK(parse_complex(".5") == Complex(0.5, 0.0));
    for (const char* bad : {"", "i", "1+i", "1 + 2i", " 1", "1+2", "1+-2i", "abc", "1+2j", "nan", "inf", "+2i", "1++2i",
                            "1+2i ", "0x1p3"}) {
        CHECK_MESSAGE(!parse_complex(bad).has_value(), bad);
    }
}

TEST_CASE("classify") {
    const Result stable = run({"classify", "--omega", "2", "--alpha", "1+0i"});
    REQUIRE(stable.code == 0);
    const Json j = stable.json();
    CHECK(j["schema"] == "disk-squeeze/1");
    CHECK(j["class"] == "stable");
    CHECK(j["lambda"].get<double>() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(std::abs(point(j["xi_minus"]) - (2.0 - std::sqrt(3.0))) < 1e-15);

    CHECK(run({"classify", "--omega", "1", "--alpha", "1+0i"}).json()["class"] == "free");
    const Json unstable = run({"classify", "--omega", "0", "--alpha", "1"}).json();
    CHECK(unstable["class"] == "unstable");
    CHECK(unstable["gamma"].get<double>() == 1.0);

    const Result zero = run({"classify", "--omega", "0", "--alpha", "0+0i"});
    CHECK(zero.code == 2);
    CHECK(zero.err.find("zero Hamiltonian") != std::string::npos);
    CHECK(run({"classify", "--omega", "1", "--alpha", "1+i"}).code == 2);
    CHECK(run({"classify", "--omega", "1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("trajectory") {
    const Json s = run({"trajectory", "--omega", "2", "--alpha", "1+0i", "--z0", "0", "--t-max", "2"}).json();
    CHECK(s["carrier"]["class"] == "hyperbolic_circle");
    CHECK(std::abs(point(s["carrier"]["center"]) - 0.25) < 1e-10);
    CHECK(s["carrier"]["radius"].get<double>() == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(s["samples"].size() == 101);

    const Json f = run({"trajectory", "--omega", "1", "--alpha", "1+0i"}).json();
    CHECK(f["carrier"]["class"] == "horocycle");
    const Complex c = point(f["carrier"]["center"]);
    CHECK(std::abs(std::abs(1.0 - c) - f["carrier"]["radius"].get<double>()) < 1e-10);

    const Json single = run({"trajectory", "--omega", "1", "--alpha", "1", "--z0", "0.1+0.2i", "--t-max", "0"}).json();
    REQUIRE(single["samples"].size() == 1);
    CHECK(point(single["samples"][0]["z"]) == Complex(0.1, 0.2));

    const Result fixed = run({"trajectory", "--omega", "2", "--alpha", "1", "--z0", "0.2679491924311227"});
    CHECK(fixed.code == 2);
    CHECK(fixed.err.find("fixed point") != std::string::npos);

    CHECK(run({"trajectory", "--omega", "2", "--alpha", "1", "--z0=-0.5+0.1i"}).code == 0);
    CHECK(run({"trajectory", "--omega", "2", "--alpha", "1", "--z0", "1"}).code == 2);
}

TEST_CASE("bangbang") {
    // H1 = 2 a*a + 0.8 (a^2 + a*^2) has |xi| = 0.5.
    const std::vector<std::string> h1{"--omega1", "2", "--alpha1", "1.6"};
    auto with = [&](std::vector<std::string> args) {
        args.insert(args.begin(), "bangbang");
        args.insert(args.end(), h1.begin(), h1.end());
        return run(args);
    };
    CHECK(with({"--z0", "0", "--zf", "0.9", "--mode", "min-switches"}).json()["k"] == 2);

    const Json same = with({"--z0", "0.3i", "--zf", "0.3i", "--mode", "feasible", "--k", "0"}).json();
    CHECK(same["feasible"] == true);

    const Result synth = with({"--z0", "0", "--zf", "0.5+0.4i", "--mode", "synthesize"});
    REQUIRE(synth.code == 0);
    const Json sj = synth.json();
    CHECK(sj["endpoint_error"].get<double>() <= 1e-6);
    CHECK(sj["pass"] == true);
    CHECK(sj["pulses"].size() == 2 * sj["k"].get<std::size_t>() + 1);

    const Result infeasible = with({"--zf", "0.9", "--mode", "synthesize", "--k", "1"});
    CHECK(infeasible.code == 1);
    CHECK(infeasible.err.find("[r, R]") != std::string::npos);
    CHECK(infeasible.json()["feasible"] == false);
    CHECK(infeasible.json()["bounds"]["max_radius"].get<double>() == doctest::Approx(0.8).epsilon(1e-14));

    CHECK(run({"bangbang", "--zf", "0.5", "--omega1", "1", "--alpha1", "1"}).code == 2);
    CHECK(with({"--zf", "0.5", "--mode", "teleport"}).code == 2);
}

TEST_CASE("reachable") {
    const std::vector<std::string> free{"reachable", "--case", "free", "--omega0", "1", "--alpha0", "1",
                                        "--omega1",  "1",      "--alpha1", "-1"};
    auto steps = [&](const char* n) {
        auto args = free;
        args.insert(args.end(), {"--steps", n});
        return run(args);
    };
    CHECK(steps("3").json()["reachable"] == Json{{"result", "entire_disk"}});
    const Json one = steps("1").json();
    CHECK(one["reachable"]["result"] == "arc_polygon");
    CHECK(one["reachable"]["polygon"]["edges"].size() == 2);
    CHECK(one["area"].get<double>() < 1e-12);
    CHECK(steps("2").json()["reachable"]["polygon"]["edges"].size() == 3);
    CHECK(steps("4").code == 2);

    const Json interleaved = run({"reachable", "--case", "unstable", "--omega0", "0", "--alpha0", "1", "--omega1", "0",
                                  "--alpha1", "1i"})
                                 .json();
    CHECK(interleaved["reachable"] == Json{{"result", "entire_disk"}});

    const Result mismatch = run({"reachable", "--case", "unstable", "--omega0", "1", "--alpha0", "1", "--omega1", "0",
                                 "--alpha1", "1i"});
    CHECK(mismatch.code == 2);
    CHECK(mismatch.err.find("expected unstable") != std::string::npos);
}

TEST_CASE("adiabatic") {
    const Json p = run({"adiabatic", "--omega", "2", "--alpha0", "1+1i", "--alpha1", "-1+1i", "--samples", "1000"}).json();
    CHECK(std::abs(point(p["path"]["carrier"]["center"]) - Complex(0.0, -2.0)) < 1e-12);
    CHECK(p["path"]["carrier"]["radius"].get<double>() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(p["carrier_residual"].get<double>() <= 1e-12);
    CHECK(p["orthogonality_residual"].get<double>() <= 1e-12);

    const Json single = run({"adiabatic", "--omega", "2", "--alpha0", "0.5", "--alpha1", "0.5", "--samples", "5"}).json();
    CHECK(single["single_point"] == true);
    for (const auto& s : single["path"]["samples"]) {
        CHECK(point(s["xi_minus"]) == point(single["path"]["samples"][0]["xi_minus"]));
    }

    const Result gap = run({"adiabatic", "--omega", "1", "--alpha0", "0.9", "--alpha1", "1.1"});
    CHECK(gap.code == 2);
    const auto at = gap.err.find("gap closes at t=");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(gap.err.substr(at + 16)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("svg output") {
    const Result svg = run({"reachable", "--case", "free", "--omega0", "1", "--alpha0", "1", "--omega1", "1",
                            "--alpha1", "-1", "--format", "svg"});
    REQUIRE(svg.code == 0);
    CHECK(svg.out.rfind("<?xml", 0) == 0);
    CHECK(svg.out.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    CHECK(svg.out.find("fill-opacity=\"0.4\"") != std::string::npos);
    const auto begin = svg.out.find("<!-- disk-squeeze ");
    const auto end = svg.out.find(" -->", begin);
    REQUIRE(begin != std::string::npos);
    const Json embedded = Json::parse(svg.out.substr(begin + 18, end - begin - 18));
    CHECK(embedded["command"] == "reachable");
    CHECK(svg.out.substr(begin + 4, end - begin - 4).find("--") == std::string::npos);

    const Result traj = run({"trajectory", "--omega", "0", "--alpha", "1", "--z0", "0.3", "--format", "svg"});
    CHECK(traj.out.find("<polyline") != std::string::npos);
    const Result ad = run({"adiabatic", "--omega", "2", "--alpha0", "1+1i", "--alpha1", "-1+1i", "--format", "svg"});
    CHECK(ad.out.find("<polyline") != std::string::npos);
    CHECK(run({"classify", "--omega", "1", "--alpha", "0", "--format", "svg"}).code == 2);
}

TEST_CASE("--out writes the report to a file") {
    const auto path = std::filesystem::temp_directory_path() / "disk_squeeze_cli_out.json";
    std::filesystem::remove(path);
    const Result r = run({"classify", "--omega", "2", "--alpha", "1", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(Json::parse(in)["class"] == "stable");
    std::filesystem::remove(path);
}

TEST_CASE("verify suites, seeds and determinism") {
    const Result overlap = run({"verify", "--suite", "overlap", "--dim", "128", "--seed", "7"});
    REQUIRE(overlap.code == 0);
    const Json j = overlap.json();
    CHECK(j["pass"] == true);
    CHECK(j["seed"] == 7);
    CHECK(j["tolerances"]["overlap"].get<double>() == 1e-10);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
    CHECK(run({"verify", "--suite", "overlap", "--dim", "128", "--seed", "7"}).out == overlap.out);

    const Result strict = run({"verify", "--suite", "overlap", "--seed", "7", "--overlap-tol", "1e-30"});
    CHECK(strict.code == 1);
    CHECK(strict.json()["pass"] == false);

    for (const char* suite : {"flow", "metric"}) {
        const Result r = run({"verify", "--suite", suite});
        CHECK_MESSAGE(r.code == 0, r.out);
    }
    CHECK(run({"verify", "--suite", "nonsense"}).code == 2);

    ::setenv("DISK_SQUEEZE_SEED", "99", 1);
    CHECK(run({"verify", "--suite", "metric"}).json()["seed"] == 99);
    ::unsetenv("DISK_SQUEEZE_SEED");
    CHECK(run({"verify", "--suite", "metric"}).json()["seed"] == 1);
}

TEST_CASE("the binary honours the exit-code contract") {
    CHECK(shell("classify --omega 2 --alpha 1+0i").first == 0);
    CHECK(shell("classify --omega 0 --alpha 0+0i").first == 2);
    CHECK(shell("classify --omega 2 --alpha x").first == 2);
    CHECK(shell("bangbang --zf 0.9 --omega1 2 --alpha1 1.6 --mode synthesize --k 1").first == 1);
    const auto a = shell("verify --suite metric --seed 3");
    const auto b = shell("verify --suite metric --seed 3");
    CHECK(a.first == 0);
    CHECK(a.second == b.second);
}
