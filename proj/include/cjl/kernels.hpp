// Data-parallel per-sample kernels. Each has a serial reference version and an
// OpenMP version; they must agree bit for bit (every iteration is independent
// and no reductions reorder floating point sums).
#pragma once

#include <span>

#include "cjl/profile_ode.hpp"

namespace cjl::kernels {

enum class Exec { serial, parallel };

// Geometry at each s (dense evaluation of the curve). `hres` may be empty;
// otherwise it receives the H-residual computed with the interpolant's phi'.
void sample_geometry(const ProfileCurve& curve, std::span<const double> s,
                     std::span<GeometryPoint> out, std::span<double> hres, Exec exec);

// Radial Plateau heights v_R(r) for each r > R.
void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v, Exec exec);

// max_i (s_i + 1)^{-nu} |h_i|
double weighted_sup(std::span<const double> s, std::span<const double> h, double nu, Exec exec);

namespace serial {
void sample_geometry(const ProfileCurve& curve, std::span<const double> s,
                     std::span<GeometryPoint> out, std::span<double> hres);
void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v);
double weighted_sup(std::span<const double> s, std::span<const double> h, double nu);
}  // namespace serial

namespace omp {
void sample_geometry(const ProfileCurve& curve, std::span<const double> s,
                     std::span<GeometryPoint> out, std::span<double> hres);
void plateau_heights(int N, double R, std::span<const double> r, std::span<double> v);
double weighted_sup(std::span<const double> s, std::span<const double> h, double nu);
int max_threads();
}  // namespace omp

}  // namespace cjl::kernels
