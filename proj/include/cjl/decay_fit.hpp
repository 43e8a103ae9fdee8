// Power-law (and power-times-log) fits of sampled decay, used to compare
// computed rates against the indicial roots.
#pragma once

#include <span>
#include <vector>

#include "cjl/cone_spectra.hpp"

namespace cjl {

struct FitWindow {
    double lo;
    double hi;
};

struct DecayFit {
    double exponent = 0.0;
    double log_coeff = 0.0;  // coefficient of log|log r|; 0 unless fitted with_log
    FitWindow window{0.0, 0.0};
    double residual_rms = 0.0;
    bool oscillatory = false;  // true when the fit ran on the local-maxima envelope
    std::size_t points = 0;    // rows that entered the least-squares problem
};

// Least squares of log|y| on log r (plus log|log r| when with_log) over the
// samples with r in [lo, hi]. If |y| has at least 5 strict local maxima there,
// the fit runs on those maxima (refined by a parabola in log-log coordinates).
// Throws std::invalid_argument with fewer than 20 samples in the window or when
// every sample is zero.
DecayFit fit_power_law(std::span<const double> r, std::span<const double> y, FitWindow window,
                       bool with_log = false);

// Plain slope of log y against log x (all y > 0). Used on short tables such as
// dyadic window sups where the 20-sample floor does not apply.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct RootMatch {
    double nearest_root;
    double gap;
    bool nondegenerate;  // exponent > 2 - N (with a 0.02 margin)
};

RootMatch classify_against_indicial(const DecayFit& fit, const SpectralData& spectral);

}  // namespace cjl
