#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bogoflow/util.hpp"

namespace bogoflow {

enum class ScatterMode { radial3d, interval1d };

// Smooth compactly supported radial profile; the built-in family is
// V(r) = v0 * cos^2(pi r / (2R)) for r <= R, zero beyond.
struct PotentialSpec {
  double v0 = 1.0;
  double support_radius = 1.0;
  double beta = 0.5;
  double n_particles = 100.0;  // N in the scaling V_N
  ScatterMode mode = ScatterMode::radial3d;
  std::function<double(double)> profile;  // optional override of the cos^2 family

  double value(double r) const;        // unscaled V(r)
  double scaled_value(double r) const; // V_N(r) = N^{3b} V(N^b r) (3d) or N^b V(N^b r) (1d)
  double scaled_support() const { return support_radius * std::pow(n_particles, -beta); }
  double b0() const;                   // integral of V over R^3 (3d) or R (1d)
};

struct ScatteringSolution {
  double n_particles = 0.0;
  double beta = 0.0;
  double ell = 0.0;
  double lambda = 0.0;
  ScatterMode mode = ScatterMode::radial3d;
  std::vector<double> r;      // mesh on [0, ell]
  std::vector<double> f;      // f_N on the mesh, f(ell) = 1
  std::vector<double> omega;  // 1 - f

  double f_at(double rq) const;      // 1 for rq >= ell
  double omega_at(double rq) const;  // 0 for rq >= ell
  double omega_prime_at(double rq) const;

  CubicSpline spline_f;  // built by solve_neumann
};

// Ground state of [-Laplace + V_N/(2N)] f = lambda f on the ball (3d mode,
// via u = r f) or on [0, ell] with even symmetry (1d mode), Neumann at ell.
ScatteringSolution solve_neumann(const PotentialSpec& pot, double ell, int mesh_points);

// explicit large-N limit of N*omega_N
double omega_infinity(double b0, double ell, double r);     // 3d profile, singular at r=0
double omega_infinity_1d(double b0, double ell, double r);  // 1d analog (b0/(8 ell)) (ell-|r|)^2
// first-order limit of N*lambda_N
double n_lambda_limit(double b0, double ell, ScatterMode mode);

struct LimitProfileRow {
  double n_particles;
  double sup_error;   // sup over [2R N^-beta, ell] of |N omega_N - omega_inf|
  bool empty_window;  // delta > ell
};

std::vector<LimitProfileRow> verify_limit_profile(const PotentialSpec& pot, double ell,
                                                  const std::vector<double>& n_list,
                                                  int mesh_points);

struct ScatteringStudyRow {
  double n_particles, beta, ell, lambda, n_lambda_normalized, sup_omega_bound, sup_limit_error;
};

std::vector<ScatteringStudyRow> scattering_study(const PotentialSpec& pot, double ell,
                                                 const std::vector<double>& n_list,
                                                 int mesh_points);
void write_scattering_csv(const std::string& path, const std::vector<ScatteringStudyRow>& rows);

// sup_r N |omega'|(r+N^-beta)^2, for the gradient-bound diagnostics
double sup_gradient_bound(const ScatteringSolution& s);
double sup_omega_bound(const ScatteringSolution& s);

}  // namespace bogoflow
