#include "cjl/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cjl/errors.hpp"
#include "cjl/io.hpp"
#include "cjl/pipeline.hpp"

namespace cjl::cli {

namespace {

struct RunConfig {
    std::string command;
    int m = 2, n = 2;
    int N = 3;
    double R = 1.0;
    std::optional<double> s_max;
    std::optional<double> r_max;
    double eps = 1e-4;
    double tol = 1e-12;
    std::string out;
    std::string format = "csv";
    std::string sweep = "2x2,2x3,3x3,4x4";
    std::string axis = "m";
    int count = 12;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<ConeSpec> parse_sweep(const std::string& text) {
    std::vector<ConeSpec> out;
    static const std::regex item(R"(\s*(\d+)\s*x\s*(\d+)\s*)");
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::smatch mt;
        if (!std::regex_match(tok, mt, item)) throw UsageError("bad sweep entry '" + tok + "' (expected MxN)");
        out.emplace_back(std::stoi(mt[1]), std::stoi(mt[2]));
    }
    if (out.empty()) throw UsageError("empty sweep");
    return out;
}

nlohmann::json echo(const RunConfig& c, const std::filesystem::path& out_dir) {
    nlohmann::json j = {{"command", c.command}, {"eps", c.eps},     {"tol", c.tol},
                        {"format", c.format},   {"out", out_dir.string()}};
    if (c.command == "plateau") {
        j["N"] = c.N;
        j["R"] = c.R;
        j["r_max"] = c.r_max.value_or(2000.0 * c.R);
    } else if (c.command == "report") {
        j["sweep"] = c.sweep;
        j["s_max"] = c.s_max.value_or(2000.0);
        j["axis"] = c.axis;
    } else {
        j["m"] = c.m;
        j["n"] = c.n;
        if (c.command == "spectrum") j["count"] = c.count;
        else {
            j["s_max"] = c.s_max.value_or(c.command == "profile" ? 200.0 : 2000.0);
            j["axis"] = c.axis;
        }
    }
    return j;
}

pipeline::Outcome execute(const RunConfig& c) {
    if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(c.eps > 0.0 && c.eps < 0.1)) throw UsageError("--eps must lie in (0, 0.1)");
    const auto format = c.format == "json" ? pipeline::Format::json : pipeline::Format::csv;
    pipeline::SpecRun run;
    run.axis = c.axis == "n" ? StartAxis::axis_n : StartAxis::axis_m;
    run.eps = c.eps;
    run.tol = c.tol;
    run.format = format;

    if (c.command == "spectrum") {
        if (c.count < 2) throw UsageError("--count must be >= 2");
        return pipeline::spectrum(ConeSpec(c.m, c.n), c.count);
    }
    if (c.command == "profile") {
        run.spec = ConeSpec(c.m, c.n);
        run.s_max = c.s_max.value_or(200.0);
        if (!(run.s_max > c.eps)) throw UsageError("--s-max must exceed --eps");
        return pipeline::profile(run);
    }
    if (c.command == "jacobi") {
        run.spec = ConeSpec(c.m, c.n);
        run.s_max = c.s_max.value_or(2000.0);
        if (!(run.s_max > 10.0)) throw UsageError("--s-max must exceed 10 for jacobi");
        return pipeline::jacobi(run);
    }
    if (c.command == "plateau") {
        const double r_max = c.r_max.value_or(2000.0 * c.R);
        if (c.N < 3) throw UsageError("--N must be >= 3");
        if (!(c.R > 0.0)) throw UsageError("--R must be positive");
        if (!(r_max > c.R)) throw UsageError("--r-max must exceed --R");
        return pipeline::plateau(c.N, c.R, r_max, format);
    }
    run.s_max = c.s_max.value_or(2000.0);
    if (!(run.s_max > 10.0)) throw UsageError("--s-max must exceed 10 for report");
    return pipeline::report(parse_sweep(c.sweep), run);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Minimal hypersurfaces near Lawson cones: spectra, profiles, Jacobi fields", "cjl"};
    app.set_version_flag("--version", version);
    app.set_config("--config", "", "key = value file; command-line flags win");
    app.add_option("--m", c.m, "dimension of the first sphere factor (>= 2)");
    app.add_option("--n", c.n, "dimension of the second sphere factor (>= 2)");
    app.add_option("--N", c.N, "dimension of the Plateau graph domain (>= 3)");
    app.add_option("--R", c.R, "radius of the Plateau boundary sphere");
    app.add_option("--s-max", c.s_max, "arc-length end of the profile");
    app.add_option("--r-max", c.r_max, "radial end of the Plateau grid");
    app.add_option("--eps", c.eps, "series-start offset from the axis");
    app.add_option("--tol", c.tol, "relative integrator tolerance");
    app.add_option("--out", c.out, "output directory (default $CJL_OUT or ./cjl_out)");
    app.add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--sweep", c.sweep, "report specs, e.g. 2x2,2x3,3x3,4x4");
    app.add_option("--axis", c.axis, "start axis")->check(CLI::IsMember({"m", "n"}));
    app.add_option("--count", c.count, "number of link eigenvalues (spectrum)");
    for (const char* name : {"spectrum", "profile", "jacobi", "plateau", "report"}) {
        auto* sub = app.add_subcommand(name, std::string(name) + " run");
        sub->fallthrough();
        sub->callback([&c, name] { c.command = name; });
    }
    app.require_subcommand(1);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    std::filesystem::path out_dir = c.out;
    if (out_dir.empty()) {
        const char* env = std::getenv("CJL_OUT");
        out_dir = env && *env ? env : "cjl_out";
    }

    const auto t_start = std::chrono::steady_clock::now();
    try {
        io::ensure_writable_dir(out_dir);
        auto outcome = execute(c);

        nlohmann::json files = nlohmann::json::array();
        for (const auto& f : outcome.files) {
            const auto path = out_dir / f.path;
            std::error_code ec;
            std::filesystem::create_directories(path.parent_path(), ec);
            if (ec) throw io::IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
            io::write_file(path, f.bytes);
            files.push_back({{"path", f.path}, {"sha256", io::sha256_hex(f.bytes)}, {"bytes", f.bytes.size()}});
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        nlohmann::json manifest = {{"tool", "cjl"},           {"version", version}, {"config", echo(c, out_dir)},
                                   {"wall_time_s", wall},     {"files", files},     {"summary", outcome.summary}};
        io::write_file(out_dir / "manifest.json", manifest.dump(1) + "\n");
        out << outcome.summary.dump(1) << "\n";
        return ok;
    } catch (const io::IoError& e) {
        err << "cjl: I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const std::invalid_argument& e) {
        err << "cjl: " << e.what() << "\n";
        return usage_error;
    } catch (const NumericalError& e) {
        err << "cjl: numerical target missed: " << e.what() << "\n";
        return numerical_error;
    } catch (const ode::IntegrationError& e) {
        err << "cjl: integration failed near " << e.last_x() << ": " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        err << "cjl: internal error: " << e.what() << "\n";
        return internal_error;
    }
}

}  // namespace cjl::cli
