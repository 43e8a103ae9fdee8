#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cjl/cli.hpp"
#include "cjl/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cjl_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cjl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("cjl_test_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("spectrum writes JSON and a manifest with checksums") {
    const auto dir = scratch("spectrum");
    const auto r = cjl_run({"spectrum", "--m", "4", "--n", "4", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto sp = nlohmann::json::parse(slurp(dir / "spectrum.json"));
    CHECK(sp["stable"] == true);
    CHECK(sp["Lambda_re"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
    const auto man = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(man["tool"] == "cjl");
    CHECK(man["config"]["m"] == 4);
    for (const auto& f : man["files"])
        CHECK(f["sha256"] == cjl::io::sha256_hex(slurp(dir / f["path"].get<std::string>())));
    CHECK(nlohmann::json::parse(r.out)["stable"] == true);

    const auto r22 = cjl_run({"spectrum", "--m", "2", "--n", "2", "--out", dir.string()});
    CHECK(r22.code == 0);
    CHECK(nlohmann::json::parse(r22.out)["stable"] == false);
}

TEST_CASE("usage errors exit 2") {
    const auto dir = scratch("usage");
    CHECK(cjl_run({"spectrum", "--m", "1", "--n", "4", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"report", "--sweep", "", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"report", "--sweep", "2y2", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"plateau", "--N", "2", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"profile", "--tol", "0", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"profile", "--format", "xml", "--out", dir.string()}).code == 2);
    CHECK(cjl_run({"--m", "3"}).code == 2);
    CHECK(cjl_run({"bogus"}).code == 2);
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("help and version exit 0") {
    const auto h = cjl_run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("--s-max") != std::string::npos);
    const auto v = cjl_run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(cjl::cli::version) != std::string::npos);
}

TEST_CASE("unwritable output exits 3 without a manifest") {
    const auto base = scratch("io");
    fs::create_directories(base);
    std::ofstream(base / "file") << "x";
    const auto r = cjl_run({"spectrum", "--m", "3", "--n", "3", "--out", (base / "file" / "sub").string()});
    CHECK(r.code == 3);
    CHECK_FALSE(fs::exists(base / "file" / "sub" / "manifest.json"));
}

TEST_CASE("CJL_OUT is the default output directory") {
    const auto dir = scratch("env");
    ::setenv("CJL_OUT", dir.string().c_str(), 1);
    const auto r = cjl_run({"plateau", "--N", "3", "--r-max", "50"});
    ::unsetenv("CJL_OUT");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "plateau.csv"));
    const auto csv = slurp(dir / "plateau.csv");
    CHECK(csv.rfind("r,v,dv,zeta0,flux_residual\n", 0) == 0);
}

TEST_CASE("json format and config file with command-line override") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    std::ofstream(dir / "run.ini") << "m = 3\nn = 3\ns-max = 50\nformat = json\n";
    const auto r = cjl_run({"profile", "--config", (dir / "run.ini").string(), "--n", "4", "--out", (dir / "o").string()});
    REQUIRE(r.code == 0);
    const auto man = nlohmann::json::parse(slurp(dir / "o" / "manifest.json"));
    CHECK(man["config"]["m"] == 3);
    CHECK(man["config"]["n"] == 4);
    CHECK(man["config"]["s_max"] == 50.0);
    const auto prof = nlohmann::json::parse(slurp(dir / "o" / "profile.json"));
    CHECK(prof.contains("columns"));
}

TEST_CASE("jacobi run emits its three files and repeats byte for byte") {
    const auto d1 = scratch("jac1"), d2 = scratch("jac2");
    REQUIRE(cjl_run({"jacobi", "--m", "4", "--n", "4", "--s-max", "300", "--out", d1.string()}).code == 0);
    REQUIRE(cjl_run({"jacobi", "--m", "4", "--n", "4", "--s-max", "300", "--out", d2.string()}).code == 0);
    for (const char* f : {"profile.csv", "jacobi.csv", "decay_report.json"}) {
        REQUIRE(fs::exists(d1 / f));
        CHECK(slurp(d1 / f) == slurp(d2 / f));
    }
    const auto rep = nlohmann::json::parse(slurp(d1 / "decay_report.json"));
    CHECK(rep["decay_report"]["weight"] == "s+1");
    CHECK(rep["residual_sup"].get<double>() <= rep["residual_target"].get<double>());
}
