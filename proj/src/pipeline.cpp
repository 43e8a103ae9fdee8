#include "cjl/pipeline.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "cjl/io.hpp"
#include "cjl/jacobi_solver.hpp"
#include "cjl/plateau.hpp"

namespace cjl::pipeline {

namespace {

constexpr std::size_t jacobi_csv_stride = 10;

Artifact table_artifact(const std::string& stem, const io::Table& t, Format format, std::size_t stride = 1) {
    if (format == Format::csv) return {stem + ".csv", io::to_csv(t, stride)};
    return {stem + ".json", io::to_json(t, stride).dump(1) + "\n"};
}

Artifact json_artifact(const std::string& name, const nlohmann::json& j) { return {name, j.dump(1) + "\n"}; }

std::string spec_dir(const ConeSpec& spec) {
    return "m" + std::to_string(spec.m) + "_n" + std::to_string(spec.n);
}

const char* side_name(ConeSide side) {
    switch (side) {
        case ConeSide::e_plus: return "E+";
        case ConeSide::e_minus: return "E-";
        default: return "mixed";
    }
}

ShootingConfig shooting(const SpecRun& run, double s_max) {
    if (!(run.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    ShootingConfig cfg;
    cfg.spec = run.spec;
    cfg.start = run.axis;
    cfg.epsilon = run.eps;
    cfg.s_max = s_max;
    cfg.tol = {run.tol, run.tol * 1e-2};
    return cfg;
}

io::Table profile_table(const ProfileCurve& curve) {
    const auto tr = geometry_trace(curve);
    std::vector<double> a, b, phi;
    for (const auto& p : curve.samples()) {
        a.push_back(p.a);
        b.push_back(p.b);
        phi.push_back(p.phi);
    }
    io::Table t;
    t.add("s", tr.s).add("a", a).add("b", b).add("phi", phi).add("alpha", tr.alpha).add("A2", tr.A2);
    t.add("trA3", tr.trA3).add("zeta0", tr.zeta0).add("Hres", tr.Hres);
    return t;
}

nlohmann::json profile_summary(const ProfileCurve& curve) {
    const auto& spec = curve.spec();
    const double hi = std::min(200.0, curve.s_max());
    const auto d = profile_defects(curve, std::max(1e-3, curve.s_min()), hi);
    const auto end = curve.at(curve.s_max());
    const double target = std::sqrt(static_cast<double>(spec.n - 1) / (spec.m - 1));
    return {{"crossings", cone_crossings(curve)},
            {"side", side_name(classify_side(curve))},
            {"h_residual", d.h_residual},
            {"arc_length_defect", d.arc_length},
            {"b_over_a_gap", end.b / end.a - target},
            {"steps", curve.step_count()}};
}

struct SpecResult {
    std::vector<Artifact> files;
    nlohmann::json row;
};

SpecResult run_spec(const SpecRun& run, const std::string& prefix) {
    const auto curve = integrate_profile(shooting(run, run.s_max));
    const auto sol = solve_jacobi(curve, sources::trA3());
    const auto no = near_origin_behavior(sol);

    io::Table jt;
    jt.add("s", sol.s).add("t", sol.t).add("p", sol.ef.p).add("V", sol.ef.V).add("ftilde", sol.ef.f_tilde);
    jt.add("psi", sol.psi).add("dpsi", sol.dpsi).add("residual", sol.residual);

    nlohmann::json decay = {{"m", run.spec.m},
                            {"n", run.spec.n},
                            {"N", run.spec.N()},
                            {"residual_sup", sol.residual_sup},
                            {"residual_target", sol.residual_target},
                            {"wronskian_drift", sol.wronskian_drift},
                            {"ivp_mismatch", sol.ivp_mismatch},
                            {"t0", sol.ef.t0},
                            {"t1", sol.ef.t1},
                            {"refinements", sol.refinements},
                            {"decay_report", io::to_json(sol.decay)},
                            {"near_origin", io::to_json(no)}};

    SpecResult out;
    out.files.push_back(table_artifact(prefix + "profile", profile_table(curve), run.format));
    out.files.push_back(table_artifact(prefix + "jacobi", jt, run.format, jacobi_csv_stride));
    out.files.push_back(json_artifact(prefix + "decay_report.json", decay));
    out.row = decay;
    out.row.erase("decay_report");
    out.row["decay_weight"] = sol.decay.weight;
    out.row["decay_non_increasing"] = sol.decay.non_increasing;
    out.row["decay_worst_ratio"] = sol.decay.worst_ratio;
    out.row["crossings"] = cone_crossings(curve);
    return out;
}

}  // namespace

Zeta0Study zeta0_decay(const ConeSpec& spec, StartAxis axis, double eps, double tol) {
    const bool stable = is_stable(spec);
    ShootingConfig cfg;
    cfg.spec = spec;
    cfg.start = axis;
    cfg.epsilon = eps;
    cfg.tol = {tol, tol * 1e-2};
    cfg.s_max = stable ? 200.0 : 2e6;
    const auto field = propagate_dilation_field(cfg);
    Zeta0Study out;
    out.fit = stable ? fit_power_law(field.s, field.zeta0, {50.0, 200.0})
                     : fit_power_law(field.s, field.zeta0, {5.0, 2e6});
    out.match = classify_against_indicial(out.fit, indicial_data(spec, link_eigenvalues(spec, 16)));
    out.predicted = predicted_nu_bar(spec, regime_of(spec));
    return out;
}

Outcome spectrum(const ConeSpec& spec, int count) {
    const auto sd = indicial_data(spec, link_eigenvalues(spec, count));
    const auto radii = link_radii(spec);
    auto j = io::to_json(sd);
    j["m"] = spec.m;
    j["n"] = spec.n;
    j["link_radii"] = {radii.first, radii.second};
    j["predicted_nu_bar"] = predicted_nu_bar(spec, regime_of(spec));
    j["regime"] = regime_of(spec) == Regime::high_dim ? "high_dim" : "low_dim";
    const auto w = solvability_window(spec, regime_of(spec));
    j["solvability_window"] = {{"lower", w.lower}, {"upper", w.upper}, {"excluded_roots", w.excluded_roots}};

    Outcome out;
    out.files.push_back(json_artifact("spectrum.json", j));
    out.summary = {{"stable", sd.stable}, {"j0", sd.j0}, {"Lambda_0_re", sd.Lambda_re[0]},
                   {"Lambda_0_im", sd.Lambda_im[0]}, {"predicted_nu_bar", j["predicted_nu_bar"]}};
    return out;
}

Outcome profile(const SpecRun& run) {
    const auto curve = integrate_profile(shooting(run, run.s_max));
    Outcome out;
    out.files.push_back(table_artifact("profile", profile_table(curve), run.format));
    out.summary = profile_summary(curve);
    return out;
}

Outcome jacobi(const SpecRun& run) {
    auto res = run_spec(run, "");
    Outcome out;
    out.files = std::move(res.files);
    out.summary = std::move(res.row);
    return out;
}

Outcome plateau(int N, double R, double r_max, Format format) {
    const auto g = plateau_profile(N, R, r_max);
    io::Table t;
    t.add("r", g.r).add("v", g.v).add("dv", g.dv).add("zeta0", g.zeta0).add("flux_residual", g.flux_residual);
    Outcome out;
    out.files.push_back(table_artifact("plateau", t, format));
    out.summary = {{"N", N}, {"R", R}, {"alpha_R", g.alphaR}, {"flux_residual", minimal_graph_residual(g)}};
    if (r_max >= 1e3 * R) {
        const auto z = plateau_zeta0(g);
        out.summary["zeta0_fit"] = io::to_json(z.fit);
        out.summary["zeta0_limit_coeff"] = z.limit_coeff;
        out.summary["zeta0_predicted_coeff"] = z.predicted_coeff;
        out.summary["degenerate"] = z.degenerate;
    }
    return out;
}

Outcome report(const std::vector<ConeSpec>& sweep, const SpecRun& base) {
    if (sweep.empty()) throw std::invalid_argument("report: empty sweep");
    struct Row {
        SpecResult res;
        Zeta0Study z;
    };
    std::vector<std::future<Row>> jobs;
    for (const auto& spec : sweep) {
        SpecRun run = base;
        run.spec = spec;
        jobs.push_back(std::async(std::launch::async, [run] {
            return Row{run_spec(run, spec_dir(run.spec) + "/"),
                       zeta0_decay(run.spec, run.axis, run.eps, run.tol)};
        }));
    }
    Outcome out;
    auto rows = nlohmann::json::array();
    for (auto& job : jobs) {
        auto r = job.get();
        auto row = r.res.row;
        row["regime"] = regime_of(ConeSpec(row["m"], row["n"])) == Regime::high_dim ? "high_dim" : "low_dim";
        row["predicted_nu_bar"] = r.z.predicted;
        row["zeta0_fit"] = io::to_json(r.z.fit, r.z.match);
        rows.push_back(row);
        for (auto& f : r.res.files) out.files.push_back(std::move(f));
    }
    out.files.push_back(json_artifact("report.json", {{"rows", rows}}));
    out.summary = {{"rows", rows.size()}};
    double worst_gap = 0.0;
    for (const auto& row : rows) worst_gap = std::max(worst_gap, row["zeta0_fit"]["gap"].get<double>());
    out.summary["worst_gap"] = worst_gap;
    return out;
}

}  // namespace cjl::pipeline
