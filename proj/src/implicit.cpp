#include "kinfree/implicit.hpp"

#include <cmath>
#include <stdexcept>

#include "kinfree/kinetics.hpp"

namespace kinfree {

VariantTraits variant_traits(SolverVariant v)
{
    switch (v) {
        case SolverVariant::Explicit:
            return {false, false, FluxIncrementMode::Exact};
        case SolverVariant::Anandh:
            return {true, false, FluxIncrementMode::Incremental};
        case SolverVariant::AnandhAD:
            return {true, false, FluxIncrementMode::Exact};
        case SolverVariant::Manish:
            return {true, true, FluxIncrementMode::Incremental};
        case SolverVariant::ManishAD:
            return {true, true, FluxIncrementMode::Exact};
    }
    throw std::logic_error("unknown variant");
}

const char* variant_name(SolverVariant v)
{
    switch (v) {
        case SolverVariant::Explicit: return "explicit";
        case SolverVariant::Anandh: return "anandh";
        case SolverVariant::AnandhAD: return "anandh_ad";
        case SolverVariant::Manish: return "manish";
        case SolverVariant::ManishAD: return "manish_ad";
    }
    return "?";
}

std::vector<double> assemble_diagonal(const PointCloud& cloud,
                                      const LsCoefficients& ls,
                                      const std::vector<Vec4>& state,
                                      const std::vector<double>& dt,
                                      SolverVariant variant)
{
    const VariantTraits tr = variant_traits(variant);
    if (!tr.is_implicit)
        throw std::logic_error("assemble_diagonal: explicit variant has no diagonal");

    const int N = cloud.n();
    std::vector<double> d(N);
    int bad = -1;

#pragma omp parallel for schedule(static)
    for (int p = 0; p < N; ++p) {
        Primitives w{};
        try {
            if (!(dt[p] > 0.0)) throw invalid_state_error("nonpositive time step", p);
            w = primitives_from_conserved(state[p], p);
        } catch (const invalid_state_error&) {
#pragma omp critical
            if (bad < 0 || p < bad) bad = p;
            continue;
        }
        double v = 1.0 / dt[p];
        if (tr.with_s_term) {
            // (A +/- rho(A) I)/2 reduction: the scalar part pairs the full-flux
            // spectral radius with the difference of the one-sided unit weights.
            v += 0.5 * spectral_radius_full(w, Axis::X) *
                 (ls.xpos[p].ls_one - ls.xneg[p].ls_one);
            v += 0.5 * spectral_radius_full(w, Axis::Y) *
                 (ls.ypos[p].ls_one - ls.yneg[p].ls_one);
        } else {
            // +/- rho(A+/-) I reduction; each half-range flux contributes on its
            // own upwind stencil.
            v -= spectral_radius_split(w, Axis::X, HalfRange::Plus) *
                 ls.xneg[p].ls_one;
            v += spectral_radius_split(w, Axis::X, HalfRange::Minus) *
                 ls.xpos[p].ls_one;
            v -= spectral_radius_split(w, Axis::Y, HalfRange::Plus) *
                 ls.yneg[p].ls_one;
            v += spectral_radius_split(w, Axis::Y, HalfRange::Minus) *
                 ls.ypos[p].ls_one;
        }
        d[p] = v;
        if (!(v > 0.0)) {
#pragma omp critical
            if (bad < 0 || p < bad) bad = p;
        }
    }
    if (bad >= 0)
        throw std::runtime_error("implicit diagonal nonpositive at point " +
                                 std::to_string(bad) + " (time step too large)");
    return d;
}

std::vector<Vec4> compute_s_term(const PointCloud& cloud, const LsCoefficients& ls,
                                 const std::vector<Vec4>& state,
                                 const std::vector<Vec4>& dU_prev,
                                 FluxIncrementMode mode,
                                 std::vector<int>* fallback_points)
{
    const int N = cloud.n();
    std::vector<Vec4> S(N, Vec4{});
    std::vector<char> fell(N, 0);
    int bad = -1;

#pragma omp parallel for schedule(static)
    for (int p = 0; p < N; ++p) {
        const double cx = ls.xpos[p].ls_one + ls.xneg[p].ls_one;
        const double cy = ls.ypos[p].ls_one + ls.yneg[p].ls_one;
        Vec4 ax{}, ay{};
        try {
            try {
                ax = mode_jvp_full(mode, state[p], dU_prev[p], Axis::X);
                ay = mode_jvp_full(mode, state[p], dU_prev[p], Axis::Y);
            } catch (const invalid_increment_error&) {
                fell[p] = 1;
                ax = jvp_full(state[p], dU_prev[p], Axis::X);
                ay = jvp_full(state[p], dU_prev[p], Axis::Y);
            }
        } catch (const invalid_state_error&) {
#pragma omp critical
            if (bad < 0 || p < bad) bad = p;
            continue;
        }
        S[p] = (-0.5 * cx) * ax + (-0.5 * cy) * ay;
    }
    if (bad >= 0)
        throw invalid_state_error("s-term: invalid base state", bad);
    if (fallback_points)
        for (int p = 0; p < N; ++p)
            if (fell[p]) fallback_points->push_back(p);
    return S;
}

namespace {

struct DirSpec {
    Axis axis;
    HalfRange sign;
};
constexpr DirSpec kDirs[4] = {
    {Axis::X, HalfRange::Plus},
    {Axis::X, HalfRange::Minus},
    {Axis::Y, HalfRange::Plus},
    {Axis::Y, HalfRange::Minus},
};

// Sum of weighted neighbour split-flux products over one in-sweep side.
// pick_lower selects neighbours from earlier color groups (forward sweep);
// otherwise later groups (backward sweep). Neighbours never share the point's
// own group, so the selection is a strict partition of the stencil.
Vec4 neighbour_products(const SweepPlan& plan, const LsCoefficients& ls,
                        const std::vector<Vec4>& state, const std::vector<Vec4>& incr,
                        FluxIncrementMode mode, int p, bool pick_lower)
{
    const int cp = plan.color_of[p];
    Vec4 acc{};
    for (const DirSpec& d : kDirs) {
        const SplitStencilLs& st = ls.split(p, d.axis, d.sign);
        for (std::size_t k = 0; k < st.nbr.size(); ++k) {
            if (st.w[k] == 0.0) continue;
            const int i = st.nbr[k];
            const int ci = plan.color_of[i];
            if (pick_lower ? (ci >= cp) : (ci <= cp)) continue;
            acc += st.w[k] * mode_jvp_split(mode, state[i], incr[i], d.axis, d.sign);
        }
    }
    return acc;
}

}  // namespace

void forward_sweep(const SweepPlan& plan, const PointCloud& cloud,
                   const LsCoefficients& ls, const std::vector<Vec4>& state,
                   const std::vector<Vec4>& residual, const std::vector<Vec4>* s_term,
                   const std::vector<double>& diag, FluxIncrementMode mode,
                   std::vector<Vec4>& dU_star)
{
    dU_star.assign(cloud.n(), Vec4{});
    for (const std::vector<int>& group : plan.groups) {
        const int ng = static_cast<int>(group.size());
        int bad = -1;
#pragma omp parallel for schedule(static)
        for (int k = 0; k < ng; ++k) {
            const int p = group[k];
            try {
                Vec4 rhs = residual[p];
                if (s_term) rhs -= (*s_term)[p];
                rhs += neighbour_products(plan, ls, state, dU_star, mode, p, true);
                dU_star[p] = (-1.0 / diag[p]) * rhs;
            } catch (const invalid_state_error&) {
#pragma omp critical
                if (bad < 0 || p < bad) bad = p;
            }
        }
        if (bad >= 0)
            throw invalid_state_error("forward sweep: invalid state encountered", bad);
    }
}

void backward_sweep(const SweepPlan& plan, const PointCloud& cloud,
                    const LsCoefficients& ls, const std::vector<Vec4>& state,
                    const std::vector<Vec4>& dU_star, const std::vector<double>& diag,
                    FluxIncrementMode mode, std::vector<Vec4>& dU)
{
    dU.assign(cloud.n(), Vec4{});
    for (auto g = plan.groups.rbegin(); g != plan.groups.rend(); ++g) {
        const int ng = static_cast<int>(g->size());
        int bad = -1;
#pragma omp parallel for schedule(static)
        for (int k = 0; k < ng; ++k) {
            const int p = (*g)[k];
            try {
                const Vec4 upper =
                    neighbour_products(plan, ls, state, dU, mode, p, false);
                dU[p] = dU_star[p] - (1.0 / diag[p]) * upper;
            } catch (const invalid_state_error&) {
#pragma omp critical
                if (bad < 0 || p < bad) bad = p;
            }
        }
        if (bad >= 0)
            throw invalid_state_error("backward sweep: invalid state encountered", bad);
    }
}

LusgsResult lusgs_step(const PointCloud& cloud, const LsCoefficients& ls,
                       const SweepPlan& plan, const std::vector<Vec4>& state,
                       const std::vector<Vec4>& residual,
                       const std::vector<double>& dt, const std::vector<Vec4>& dU_prev,
                       SolverVariant variant)
{
    const VariantTraits tr = variant_traits(variant);
    if (!tr.is_implicit) throw std::logic_error("lusgs_step: explicit variant");

    LusgsResult out;
    std::vector<Vec4> S;
    std::vector<int> fallbacks;
    if (tr.with_s_term) {
        S = compute_s_term(cloud, ls, state, dU_prev, tr.mode, &fallbacks);
        out.s_term_fallbacks = static_cast<int>(fallbacks.size());
    }
    const std::vector<double> diag = assemble_diagonal(cloud, ls, state, dt, variant);

    const EvalSnapshot before = flux_counters().snapshot();
    std::vector<Vec4> dU_star;
    forward_sweep(plan, cloud, ls, state, residual, tr.with_s_term ? &S : nullptr,
                  diag, tr.mode, dU_star);
    backward_sweep(plan, cloud, ls, state, dU_star, diag, tr.mode, out.dU);
    out.sweep_evals = flux_counters().snapshot() - before;
    return out;
}

}  // namespace kinfree
