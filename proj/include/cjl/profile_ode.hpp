// O(m) x O(n)-invariant minimal hypersurfaces
//
//   Sigma = {(a(s) x, b(s) y) : x in S^{m-1}, y in S^{n-1}},
//
// described by an arc-length profile curve gamma(s) = (a(s), b(s)) in the
// closed quadrant. With a' = cos(phi), b' = sin(phi) the zero mean curvature
// equation becomes the first order system
//
//   phi' = (n-1) cos(phi) / b - (m-1) sin(phi) / a.
//
// Sign conventions: the unit normal is (b' x, -a' y) times the orientation
// (+1 for an axis_m start, -1 for axis_n), which makes zeta_0(0+) = +1 at the
// axis. Principal curvatures are kappa_0 = phi' (profile direction),
// kappa_a = sin(phi)/a (multiplicity m-1) and kappa_b = -cos(phi)/b
// (multiplicity n-1), each multiplied by the orientation; they sum to H.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cjl/cone_spectra.hpp"
#include "cjl/dopri5.hpp"

namespace cjl {

enum class StartAxis {
    axis_m,  // starts at (a, b) = (1, 0), meeting R^m x {0} orthogonally
    axis_n,  // starts at (a, b) = (0, 1)
};

struct Tolerance {
    double rtol = 1e-12;
    double atol = 1e-14;
};

struct ShootingConfig {
    ConeSpec spec{2, 2};
    StartAxis start = StartAxis::axis_m;
    double epsilon = 1e-4;
    double s_max = 200.0;
    Tolerance tol;
    double samples_per_unit_log = 200.0;  // density of the log-uniform output grid
};

struct ProfileSample {
    double s;
    double a;
    double b;
    double phi;
};

class ProfileCurve {
public:
    ProfileCurve(ConeSpec spec, int orientation, ode::DenseTrajectory<3> traj,
                 double samples_per_unit_log);

    const ConeSpec& spec() const noexcept { return spec_; }
    int orientation() const noexcept { return orientation_; }
    double s_min() const { return traj_.front(); }
    double s_max() const { return traj_.back(); }

    // Dense evaluation anywhere in [s_min, s_max].
    ProfileSample at(double s) const;
    // d/ds of the interpolant for (a, b, phi); independent of the ODE right-hand side
    // away from step endpoints.
    ode::State<3> interpolant_derivative(double s) const;

    std::span<const ProfileSample> samples() const noexcept { return samples_; }
    std::vector<ProfileSample> nodes() const;
    std::size_t step_count() const noexcept { return traj_.size(); }
    const ode::DenseTrajectory<3>& trajectory() const noexcept { return traj_; }

private:
    ConeSpec spec_;
    int orientation_;
    ode::DenseTrajectory<3> traj_;
    std::vector<ProfileSample> samples_;
};

// Series start at s = epsilon off the axis:
//   axis_m: phi = pi/2 - (m-1) eps/n,  a = 1 + (m-1) eps^2/(2n),  b = eps
//   axis_n: phi = (n-1) eps/m,          a = eps,                   b = 1 + (n-1) eps^2/(2m)
ProfileSample axis_series_start(const ConeSpec& spec, StartAxis start, double epsilon);

// phi* with tan^2(phi*) = (n-1)/(m-1): the direction of the cone ray.
double cone_angle(const ConeSpec& spec);

ode::State<3> profile_rhs(const ConeSpec& spec, const ode::State<3>& y);

ProfileCurve integrate_profile(const ShootingConfig& cfg);

// Integrates from an arbitrary regular start (a, b > 0). Used for cone rays.
ProfileCurve integrate_from(const ConeSpec& spec, const ProfileSample& start, double s_max,
                            const Tolerance& tol, double samples_per_unit_log, int orientation = 1);

struct PrincipalCurvatures {
    double k0;  // profile direction
    double ka;  // multiplicity m-1
    double kb;  // multiplicity n-1
};

struct GeometryPoint {
    double s, a, b, phi;
    double dphi;    // phi' from the ODE
    double alpha;   // (m-1) a'/a + (n-1) b'/b
    double dalpha;  // d alpha / ds, closed form with a'' and b'' from the ODE
    double A2;      // |A|^2
    double trA3;
    double zeta0;   // dilation Jacobi field
    double dzeta0;  // d zeta0 / ds
};

PrincipalCurvatures principal_curvatures(const ConeSpec& spec, int orientation, double a, double b,
                                         double phi);
GeometryPoint geometry_at(const ConeSpec& spec, int orientation, const ProfileSample& p);

struct GeometryTrace {
    std::vector<double> s;
    std::vector<double> alpha;
    std::vector<double> A2;
    std::vector<double> trA3;
    std::vector<double> zeta0;
    std::vector<double> Hres;  // phi'_interp + (m-1) sin(phi)/a - (n-1) cos(phi)/b
};

GeometryTrace geometry_trace(const ProfileCurve& curve);

// Max over samples in [s_lo, s_hi] of |H-residual| and of the arc-length defect
// | |gamma'| - 1 | with gamma' taken from the interpolant of (a, b).
struct ProfileDefects {
    double h_residual = 0.0;
    double arc_length = 0.0;
    double unit_tangent = 0.0;  // |cos^2 + sin^2 - 1| of the stored angle
};
ProfileDefects profile_defects(const ProfileCurve& curve, double s_lo, double s_hi);

// Geometric Jacobi fields sampled on the curve's output grid.
std::vector<double> jacobi_field_dilation(const ProfileCurve& curve);
struct TranslationFields {
    std::vector<double> da;  // a'(s)
    std::vector<double> db;  // b'(s)
};
TranslationFields jacobi_field_translation(const ProfileCurve& curve);
std::vector<double> jacobi_field_rotation(const ProfileCurve& curve);

// zeta0 carried as a solution of the Jacobi equation
//   z_tt + (alpha s - 1) z_t + |A|^2 s^2 z = 0   (t = log s)
// integrated together with the profile. a b' - a' b cancels two O(s) terms, so
// its absolute error grows like s * tol; the propagated field keeps relative
// accuracy, which matters once zeta0 has decayed far below that level.
struct PropagatedField {
    std::vector<double> s;
    std::vector<double> zeta0;            // propagated
    std::vector<double> zeta0_geometric;  // a b' - a' b on the same grid
};
PropagatedField propagate_dilation_field(const ShootingConfig& cfg);

// Strict sign changes of (n-1) a^2 - (m-1) b^2 along the samples. Values within
// a relative band of 1e-12 of zero are treated as on the cone and skipped.
int cone_crossings(const ProfileCurve& curve);
int cone_crossings(const ProfileCurve& curve, double s_hi);

enum class ConeSide {
    e_plus,   // (n-1) a^2 > (m-1) b^2 throughout: the side containing R^m x {0}
    e_minus,  // the side containing {0} x R^n
    mixed,
};
ConeSide classify_side(const ProfileCurve& curve);

// s-locations (linearly interpolated) of sign changes of a sampled function.
std::vector<double> sign_change_locations(std::span<const double> s, std::span<const double> y);

}  // namespace cjl
