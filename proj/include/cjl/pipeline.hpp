// End-to-end runs behind the command-line tool. Each run returns its files
// as in-memory artifacts plus a JSON summary, so nothing touches the disk
// until every number is in.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cjl/decay_fit.hpp"
#include "cjl/profile_ode.hpp"

namespace cjl::pipeline {

enum class Format { csv, json };

struct Artifact {
    std::string path;  // relative to the output directory
    std::string bytes;
};

struct Outcome {
    std::vector<Artifact> files;
    nlohmann::json summary;
};

struct SpecRun {
    ConeSpec spec{2, 2};
    StartAxis axis = StartAxis::axis_m;
    double eps = 1e-4;
    double tol = 1e-12;
    double s_max = 2000.0;
    Format format = Format::csv;
};

// Decay of zeta0 at infinity. Stable cones: raw fit over [50, 200].
// Unstable cones: envelope fit over [5, 2e6], since one oscillation of
// zeta0 spans about a decade in s.
struct Zeta0Study {
    DecayFit fit;
    RootMatch match;
    double predicted = 0.0;
};
Zeta0Study zeta0_decay(const ConeSpec& spec, StartAxis axis, double eps, double tol);

Outcome spectrum(const ConeSpec& spec, int count);
Outcome profile(const SpecRun& run);
Outcome jacobi(const SpecRun& run);
Outcome plateau(int N, double R, double r_max, Format format);
// Specs run concurrently; rows come back in input order.
Outcome report(const std::vector<ConeSpec>& sweep, const SpecRun& base);

}  // namespace cjl::pipeline
