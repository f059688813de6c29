#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ballmodes/geometry.hpp"

namespace ballmodes::fieldio {

/// Vector field sampled on a structured spherical grid. Storage is row-major
/// with r slowest and phi fastest. The grid is implicit:
///   r_i     = R (i+1) / n_r          (i = 0..n_r-1, excludes the center)
///   theta_j = pi j / (n_theta - 1)   (j = 0..n_theta-1, includes the poles)
///   phi_l   = 2 pi l / n_phi         (l = 0..n_phi-1, periodic)
struct GridField {
    double radius = 1.0;
    int n_r = 0, n_theta = 0, n_phi = 0;
    std::vector<VectorValue> samples;

    // Grouped so the extremes are exact: (i+1)/n_r is exactly 1 at the rim,
    // which keeps import(export(...)) bitwise even for awkward radii.
    double r_at(int i) const { return radius * ((i + 1.0) / n_r); }
    double theta_at(int j) const { return kPi * (static_cast<double>(j) / (n_theta - 1)); }
    double phi_at(int l) const { return 2.0 * kPi * (static_cast<double>(l) / n_phi); }
    std::size_t flat(int i, int j, int l) const {
        return (static_cast<std::size_t>(i) * n_theta + j) * n_phi + l;
    }
    const VectorValue& at(int i, int j, int l) const { return samples[flat(i, j, l)]; }
};

/// Sample an evaluator on the structured grid (all dims >= 2).
GridField sample(const FieldEvaluator& f, int n_r, int n_theta, int n_phi, double radius);

/// Tricubic (Catmull-Rom) interpolation of a grid field, periodic in phi and
/// clamped at the radial/polar edges. Reproduces the samples exactly at the
/// grid nodes.
FieldEvaluator make_interpolator(GridField grid);

/// Why a streamline trace stopped.
enum class Termination { Boundary, MaxSteps, Stagnation };

std::string termination_name(Termination t);
Termination termination_from_name(const std::string& name);

struct Streamline {
    Vec3 seed;
    double step = 0.0;
    Termination termination = Termination::MaxSteps;
    std::vector<Vec3> points;  // includes the seed; all inside the closed ball
};

/// Integrate dx/dt = u(x) from `seed` with fixed-step RK4. Stops on leaving
/// the ball, exceeding max_steps, or speed dropping below 1e-12.
Streamline trace_streamline(const CartesianField& u, const Vec3& seed, double radius,
                            double step, int max_steps = 100000);

/// CSV with header "r,theta,phi,u_r,u_theta,u_phi", 17 significant digits,
/// LF line endings. import(export(x)) and export(import(f)) are identities.
void write_grid_csv(const GridField& grid, std::ostream& out);
GridField read_grid_csv(std::istream& in);

/// Legacy-ASCII VTK structured grid with Cartesian points and vectors for
/// viewers, plus a FIELD block carrying the exact spherical samples so the
/// round trip is bitwise.
void write_grid_vtk(const GridField& grid, std::ostream& out);
GridField read_grid_vtk(std::istream& in);

/// Streamline as CSV (x,y,z with a metadata comment line) or VTK polydata.
void write_streamline_csv(const Streamline& line, std::ostream& out);
Streamline read_streamline_csv(std::istream& in);
void write_streamline_vtk(const Streamline& line, std::ostream& out);
Streamline read_streamline_vtk(std::istream& in);

/// File-path convenience wrappers; throw std::runtime_error on I/O failure.
void save_grid(const GridField& grid, const std::string& path, const std::string& format);
GridField load_grid(const std::string& path);
void save_streamline(const Streamline& line, const std::string& path, const std::string& format);

}  // namespace ballmodes::fieldio
