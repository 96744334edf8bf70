/** \file driver.hpp
 * \brief Boundary conditions, local time stepping and the outer fixed-point
 *   loop shared by the explicit and LU-SGS solvers.
 */
#ifndef KINFREE_DRIVER_HPP
#define KINFREE_DRIVER_HPP

#include <string>
#include <vector>

#include "kinfree/coloring.hpp"
#include "kinfree/counters.hpp"
#include "kinfree/implicit.hpp"
#include "kinfree/pointcloud.hpp"
#include "kinfree/spatial.hpp"
#include "kinfree/state.hpp"

namespace kinfree {

/// Boundary treatment. Physical projects wall velocities onto the tangent
/// plane and switches the outer points between imposed freestream (inflow)
/// and copy-from-nearest-interior extrapolation (outflow). FreestreamAll
/// reimposes the exact freestream at every boundary point; uniform flow is an
/// exact steady solution under it, which the preservation checks exercise.
enum class BcMode { Physical, FreestreamAll };

struct Freestream {
    double mach = 0.0;
    double aoa_deg = 0.0;
    Primitives prim{};
    Vec4 U{};

    /// Nondimensional freestream: rho = 1, a = 1 (so |u| = mach), p = 1/gamma.
    static Freestream make(double mach, double aoa_deg);
};

struct SolverConfig {
    SolverVariant variant = SolverVariant::Explicit;
    double cfl = 0.2;
    int n_iterations = 100;
    int n_inner = 3;
    double mach_inf = 0.63;
    double aoa_deg = 0.0;
    /// Stop once the density residual has fallen this many decades below the
    /// first iteration's value; 0 runs all iterations.
    double convergence_decades = 0.0;
    BcMode bc_mode = BcMode::Physical;
    /// Linear CFL ramp from cfl_start over this many iterations (0 = off).
    int cfl_ramp_iters = 0;
    double cfl_start = 0.0;
    double divergence_factor = 1e6;
};

struct IterationRecord {
    double residual;  ///< RMS of the continuity-equation residual component
    double cl, cd;
    double seconds;          ///< wall time of this iteration
    EvalSnapshot counters;   ///< cumulative counter snapshot after the iteration
    EvalSnapshot sweep;      ///< counter delta over this iteration's two sweeps
    int first_order_points;  ///< q-tilde guard demotions in the residual
};

struct RunHistory {
    std::vector<IterationRecord> iters;
    bool diverged = false;
    std::string abort_reason;
    double loop_seconds = 0.0;  ///< iteration loop only (RDP numerator)
    int points = 0;

    /// First iteration (1-based) whose residual is >= `decades` below the
    /// first iteration's, or 0 if never reached.
    int iterations_to_decades(double decades) const;
};

std::vector<double> local_timestep(const PointCloud& cloud,
                                   const std::vector<Vec4>& state, double cfl);

void apply_boundary_conditions(const PointCloud& cloud, std::vector<Vec4>& state,
                               const Freestream& fs, BcMode mode);

/// U <- U - dt * R followed by the boundary conditions; throws (naming the
/// point) if the update leaves the valid-state set.
void explicit_update(const PointCloud& cloud, std::vector<Vec4>& state,
                     const std::vector<Vec4>& R, const std::vector<double>& dt,
                     const Freestream& fs, BcMode mode);

/// Lift and drag coefficients from the trapezoidal Cp integral over the
/// closed wall polyline, rotated into the wind frame.
std::pair<double, double> compute_forces(const PointCloud& cloud,
                                         const std::vector<Vec4>& state,
                                         const Freestream& fs);

/// Surface pressure coefficient per wall point, in wall order.
std::vector<double> surface_cp(const PointCloud& cloud, const std::vector<Vec4>& state,
                               const Freestream& fs);

/// The outer fixed-point loop. Builds the least-squares operators and sweep
/// plan, initializes with uniform freestream, and iterates
/// q -> q-derivatives -> residual -> (explicit | LU-SGS) update -> BCs.
/// Aborts with history on divergence or an invalid state.
RunHistory run_fixed_point(const PointCloud& cloud, const SolverConfig& config);

/// As above but reusing prebuilt operators and returning the final state.
RunHistory run_fixed_point(const PointCloud& cloud, const LsCoefficients& ls,
                           const SweepPlan& plan, const SolverConfig& config,
                           std::vector<Vec4>* final_state);

}  // namespace kinfree

#endif
