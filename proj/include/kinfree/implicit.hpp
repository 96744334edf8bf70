/** \file implicit.hpp
 * \brief LU-SGS relaxation over the color-ordered sweep plan.
 *
 * The implicit operator splits point-wise into L + D + U, where the
 * off-diagonal blocks are the one-sided least-squares weights times split-flux
 * Jacobians of the neighbours, and "lower"/"upper" mean earlier/later color
 * group. Two diagonal reductions are supported:
 *
 *  - anandh: each split Jacobian is replaced by +/- its own spectral radius
 *    times the identity, which makes the diagonal scalar with no remainder.
 *    Sweeps solve  D dU* = -(R + L dU*),  dU = dU* - D^{-1} U dU.
 *  - manish: the split Jacobians are replaced by (A +/- rho(A) I)/2; the
 *    leftover non-scalar part S = -(sum of LS(1) weights) A dU / 2 moves to
 *    the right-hand side, evaluated with the previous iteration's increment.
 *    Sweeps solve  D dU* = -(R - S + L dU*),  dU = dU* - D^{-1} U dU.
 *
 * Jacobian-vector products inside L and U use split fluxes; the S-term uses
 * full fluxes. Either is computed exactly (tangent code) or incrementally
 * (flux differences) per the variant's FluxIncrementMode.
 */
#ifndef KINFREE_IMPLICIT_HPP
#define KINFREE_IMPLICIT_HPP

#include <vector>

#include "kinfree/coloring.hpp"
#include "kinfree/counters.hpp"
#include "kinfree/pointcloud.hpp"
#include "kinfree/spatial.hpp"
#include "kinfree/state.hpp"
#include "kinfree/tangent.hpp"

namespace kinfree {

enum class SolverVariant { Explicit, Anandh, AnandhAD, Manish, ManishAD };

struct VariantTraits {
    bool is_implicit;
    bool with_s_term;  ///< manish-family reduction
    FluxIncrementMode mode;
};
VariantTraits variant_traits(SolverVariant v);

const char* variant_name(SolverVariant v);

/// Scalar implicit diagonal per point; throws (naming the point) if any entry
/// is nonpositive, which signals a time step too large for the stencils.
std::vector<double> assemble_diagonal(const PointCloud& cloud,
                                      const LsCoefficients& ls,
                                      const std::vector<Vec4>& state,
                                      const std::vector<double>& dt,
                                      SolverVariant variant);

/// Symmetric-stencil defect moved to the explicit side (manish family):
/// S = -1/2 [ (LSxp(1)+LSxn(1)) Ax dU + (LSyp(1)+LSyn(1)) Ay dU ].
/// In incremental mode a step that leaves the valid set falls back to the
/// exact product at that point; fallback_points records them.
std::vector<Vec4> compute_s_term(const PointCloud& cloud, const LsCoefficients& ls,
                                 const std::vector<Vec4>& state,
                                 const std::vector<Vec4>& dU_prev,
                                 FluxIncrementMode mode,
                                 std::vector<int>* fallback_points = nullptr);

void forward_sweep(const SweepPlan& plan, const PointCloud& cloud,
                   const LsCoefficients& ls, const std::vector<Vec4>& state,
                   const std::vector<Vec4>& residual, const std::vector<Vec4>* s_term,
                   const std::vector<double>& diag, FluxIncrementMode mode,
                   std::vector<Vec4>& dU_star);

void backward_sweep(const SweepPlan& plan, const PointCloud& cloud,
                    const LsCoefficients& ls, const std::vector<Vec4>& state,
                    const std::vector<Vec4>& dU_star, const std::vector<double>& diag,
                    FluxIncrementMode mode, std::vector<Vec4>& dU);

struct LusgsResult {
    std::vector<Vec4> dU;
    EvalSnapshot sweep_evals;  ///< counter delta over the two sweeps only
    int s_term_fallbacks = 0;
};

/// One forward+backward pass: S-term (manish family), diagonal, sweeps.
LusgsResult lusgs_step(const PointCloud& cloud, const LsCoefficients& ls,
                       const SweepPlan& plan, const std::vector<Vec4>& state,
                       const std::vector<Vec4>& residual, const std::vector<double>& dt,
                       const std::vector<Vec4>& dU_prev, SolverVariant variant);

}  // namespace kinfree

#endif
