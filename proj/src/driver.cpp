#include "kinfree/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kinfree/kinetics.hpp"

namespace kinfree {

Freestream Freestream::make(double mach, double aoa_deg)
{
    if (!(mach > 0.0)) throw std::invalid_argument("freestream Mach must be positive");
    Freestream fs;
    fs.mach = mach;
    fs.aoa_deg = aoa_deg;
    const double alpha = aoa_deg * M_PI / 180.0;
    fs.prim = {1.0, mach * std::cos(alpha), mach * std::sin(alpha), 1.0 / kGamma};
    fs.U = conserved_from_primitives(fs.prim);
    return fs;
}

std::vector<double> local_timestep(const PointCloud& cloud,
                                   const std::vector<Vec4>& state, double cfl)
{
    const int N = cloud.n();
    std::vector<double> dt(N);
    int bad = -1;
#pragma omp parallel for schedule(static)
    for (int p = 0; p < N; ++p) {
        try {
            double h = std::numeric_limits<double>::max();
            for (int q : cloud.nbr[p])
                h = std::min(h, std::hypot(cloud.x[q] - cloud.x[p],
                                           cloud.y[q] - cloud.y[p]));
            const Primitives w = primitives_from_conserved(state[p], p);
            const double speed = std::hypot(w.u1, w.u2) + w.sound_speed();
            dt[p] = cfl * h / speed;
        } catch (const invalid_state_error&) {
#pragma omp critical
            if (bad < 0 || p < bad) bad = p;
        }
    }
    if (bad >= 0) throw invalid_state_error("local_timestep: invalid state", bad);
    return dt;
}

namespace {

int nearest_interior_neighbour(const PointCloud& cloud, int p)
{
    int best = -1;
    double best_d = std::numeric_limits<double>::max();
    for (int q : cloud.nbr[p]) {
        if (cloud.kind[q] != PointKind::Interior) continue;
        const double d =
            std::hypot(cloud.x[q] - cloud.x[p], cloud.y[q] - cloud.y[p]);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

}  // namespace

void apply_boundary_conditions(const PointCloud& cloud, std::vector<Vec4>& state,
                               const Freestream& fs, BcMode mode)
{
    if (mode == BcMode::FreestreamAll) {
        for (int p : cloud.wall_ids) state[p] = fs.U;
        for (int p : cloud.outer_ids) state[p] = fs.U;
        return;
    }

    for (int p : cloud.wall_ids) {
        Primitives w = primitives_from_conserved(state[p], p);
        const double un = w.u1 * cloud.normal_x[p] + w.u2 * cloud.normal_y[p];
        w.u1 -= un * cloud.normal_x[p];
        w.u2 -= un * cloud.normal_y[p];
        state[p] = conserved_from_primitives(w);
    }
    for (int p : cloud.outer_ids) {
        const Primitives w = primitives_from_conserved(state[p], p);
        const double un = w.u1 * cloud.normal_x[p] + w.u2 * cloud.normal_y[p];
        if (un < 0.0) {
            state[p] = fs.U;  // inflow
        } else {
            const int q = nearest_interior_neighbour(cloud, p);
            state[p] = (q >= 0) ? state[q] : fs.U;
        }
    }
}

void explicit_update(const PointCloud& cloud, std::vector<Vec4>& state,
                     const std::vector<Vec4>& R, const std::vector<double>& dt,
                     const Freestream& fs, BcMode mode)
{
    const int N = cloud.n();
    for (int p = 0; p < N; ++p) {
        state[p] -= dt[p] * R[p];
        try {
            (void)primitives_from_conserved(state[p], p);
        } catch (const invalid_state_error&) {
            throw invalid_state_error(
                "explicit update left the valid-state set (time step too large?)", p);
        }
    }
    apply_boundary_conditions(cloud, state, fs, mode);
}

std::vector<double> surface_cp(const PointCloud& cloud, const std::vector<Vec4>& state,
                               const Freestream& fs)
{
    const double qdyn = 0.5 * fs.prim.rho * fs.mach * fs.mach;
    std::vector<double> cp(cloud.wall_ids.size());
    for (std::size_t k = 0; k < cloud.wall_ids.size(); ++k) {
        const int p = cloud.wall_ids[k];
        const Primitives w = primitives_from_conserved(state[p], p);
        cp[k] = (w.p - fs.prim.p) / qdyn;
    }
    return cp;
}

std::pair<double, double> compute_forces(const PointCloud& cloud,
                                         const std::vector<Vec4>& state,
                                         const Freestream& fs)
{
    const auto& wall = cloud.wall_ids;
    const int W = static_cast<int>(wall.size());
    if (W < 3) throw std::runtime_error("compute_forces: no usable wall loop");

    // Ordering sanity: consecutive wall points must be surface neighbours.
    for (int k = 0; k < W; ++k) {
        const int a = wall[k], b = wall[(k + 1) % W];
        if (std::hypot(cloud.x[b] - cloud.x[a], cloud.y[b] - cloud.y[a]) > 0.5)
            throw std::runtime_error(
                "compute_forces: wall points are not ordered along the surface");
    }

    const std::vector<double> cp = surface_cp(cloud, state, fs);

    double area2 = 0.0;  // twice the signed polygon area; fixes orientation
    for (int k = 0; k < W; ++k) {
        const int a = wall[k], b = wall[(k + 1) % W];
        area2 += cloud.x[a] * cloud.y[b] - cloud.x[b] * cloud.y[a];
    }
    const double orient = (area2 >= 0.0) ? 1.0 : -1.0;

    double fx = 0.0, fy = 0.0;
    for (int k = 0; k < W; ++k) {
        const int a = wall[k], b = wall[(k + 1) % W];
        const double tx = cloud.x[b] - cloud.x[a];
        const double ty = cloud.y[b] - cloud.y[a];
        const double cpm = 0.5 * (cp[k] + cp[(k + 1) % W]);
        // Outward normal times segment length; force on the body is -Cp n ds.
        fx -= cpm * orient * ty;
        fy -= cpm * orient * (-tx);
    }

    const double alpha = fs.aoa_deg * M_PI / 180.0;
    const double cd = fx * std::cos(alpha) + fy * std::sin(alpha);
    const double cl = -fx * std::sin(alpha) + fy * std::cos(alpha);
    return {cl, cd};
}

int RunHistory::iterations_to_decades(double decades) const
{
    if (iters.empty()) return 0;
    const double r0 = iters.front().residual;
    if (!(r0 > 0.0)) return 1;
    const double target = r0 * std::pow(10.0, -decades);
    for (std::size_t k = 0; k < iters.size(); ++k)
        if (iters[k].residual <= target) return static_cast<int>(k) + 1;
    return 0;
}

RunHistory run_fixed_point(const PointCloud& cloud, const SolverConfig& config)
{
    const ColorAssignment colors = color_points(cloud);
    const SweepPlan plan = build_sweep_plan(colors);
    const LsCoefficients ls = build_ls_coefficients(cloud);
    return run_fixed_point(cloud, ls, plan, config, nullptr);
}

RunHistory run_fixed_point(const PointCloud& cloud, const LsCoefficients& ls,
                           const SweepPlan& plan, const SolverConfig& config,
                           std::vector<Vec4>* final_state)
{
    using clock = std::chrono::steady_clock;

    if (!(config.cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    if (config.n_iterations < 1)
        throw std::invalid_argument("n_iterations must be >= 1");

    for (int p : ls.flagged)
        if (cloud.kind[p] == PointKind::Interior)
            throw std::runtime_error("interior point " + std::to_string(p) +
                                     " has a singular least-squares stencil");

    const Freestream fs = Freestream::make(config.mach_inf, config.aoa_deg);
    const VariantTraits tr = variant_traits(config.variant);
    const int N = cloud.n();

    std::vector<Vec4> state(N, fs.U);
    apply_boundary_conditions(cloud, state, fs, config.bc_mode);

    std::vector<Vec4> dU_prev(N, Vec4{});
    RunHistory hist;
    hist.points = N;
    hist.iters.reserve(config.n_iterations);

    double res0 = -1.0;
    const auto loop_start = clock::now();

    for (int n = 1; n <= config.n_iterations; ++n) {
        const auto t0 = clock::now();
        IterationRecord rec{};
        try {
            double cfl = config.cfl;
            if (config.cfl_ramp_iters > 0 && n < config.cfl_ramp_iters) {
                const double c0 =
                    (config.cfl_start > 0.0) ? config.cfl_start : 0.1 * config.cfl;
                cfl = c0 + (config.cfl - c0) * n / config.cfl_ramp_iters;
            }

            std::vector<Vec4> q(N);
            for (int p = 0; p < N; ++p) q[p] = q_from_conserved(state[p], p);
            const GradientField grads = q_derivatives(cloud, ls, q, config.n_inner);
            ResidualStats rstats;
            const std::vector<Vec4> R = flux_residual(cloud, ls, q, grads, &rstats);
            rec.first_order_points = static_cast<int>(rstats.first_order_points.size());

            const std::vector<double> dt = local_timestep(cloud, state, cfl);
            if (tr.is_implicit) {
                LusgsResult lu =
                    lusgs_step(cloud, ls, plan, state, R, dt, dU_prev, config.variant);
                for (int p = 0; p < N; ++p) state[p] += lu.dU[p];
                for (int p = 0; p < N; ++p) (void)primitives_from_conserved(state[p], p);
                apply_boundary_conditions(cloud, state, fs, config.bc_mode);
                dU_prev = std::move(lu.dU);
                rec.sweep = lu.sweep_evals;
            } else {
                explicit_update(cloud, state, R, dt, fs, config.bc_mode);
            }

            double ss = 0.0;
            for (int p = 0; p < N; ++p) ss += R[p][0] * R[p][0];
            rec.residual = std::sqrt(ss / N);
            const auto [cl, cd] = compute_forces(cloud, state, fs);
            rec.cl = cl;
            rec.cd = cd;
        } catch (const std::exception& e) {
            hist.diverged = true;
            hist.abort_reason = e.what();
            hist.loop_seconds =
                std::chrono::duration<double>(clock::now() - loop_start).count();
            if (final_state) *final_state = state;
            return hist;
        }
        rec.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        rec.counters = flux_counters().snapshot();
        hist.iters.push_back(rec);

        if (n == 1) res0 = rec.residual;
        if (rec.residual > config.divergence_factor * std::max(res0, 1e-300)) {
            hist.diverged = true;
            hist.abort_reason = "residual diverged";
            break;
        }
        if (config.convergence_decades > 0.0 && res0 > 0.0 &&
            rec.residual <= res0 * std::pow(10.0, -config.convergence_decades))
            break;
    }

    hist.loop_seconds =
        std::chrono::duration<double>(clock::now() - loop_start).count();
    if (final_state) *final_state = state;
    return hist;
}

}  // namespace kinfree
