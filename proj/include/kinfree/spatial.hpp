/** \file spatial.hpp
 * \brief Meshfree least-squares operators: per-stencil derivative weights,
 *   the q-derivative inner iterations, and the split-flux residual.
 *
 * All derivative formulas reduce to the 2x2 normal-equation solve
 *   [ sum dx^2  sum dx dy ] [ f_x ]   [ sum dx df ]
 *   [ sum dx dy sum dy^2  ] [ f_y ] = [ sum dy df ]
 * which we precompute as per-neighbour weights: f_x = sum_i wx_i df_i. Split
 * stencils store only the weight of their own direction. Axis-degenerate
 * stencils (all dy = 0 or all dx = 0) fall back to the 1D least-squares fit
 * along the populated direction, with zero weight for the other one; empty
 * stencils contribute zero. Anything else with a vanishing normalized
 * determinant is flagged singular and yields zero weights; production drivers
 * refuse clouds whose interior points are flagged.
 */
#ifndef KINFREE_SPATIAL_HPP
#define KINFREE_SPATIAL_HPP

#include <cstdint>
#include <vector>

#include "kinfree/pointcloud.hpp"
#include "kinfree/state.hpp"

namespace kinfree {

enum class StencilKind : std::uint8_t { Regular, LineX, LineY, Empty, Singular };

/// One-sided derivative operator on a split stencil.
struct SplitStencilLs {
    StencilKind kind = StencilKind::Empty;
    std::vector<int> nbr;
    std::vector<double> w;  ///< derivative weight per neighbour (own direction)
    double ls_one = 0.0;    ///< sum of weights: the unit-field coefficient
};

/// Both derivative operators on the full stencil.
struct FullStencilLs {
    StencilKind kind = StencilKind::Empty;
    std::vector<int> nbr;
    std::vector<double> wx, wy;
};

struct LsCoefficients {
    std::vector<FullStencilLs> full;
    std::vector<SplitStencilLs> xpos, xneg, ypos, yneg;
    std::vector<int> flagged;  ///< points owning a Singular stencil

    const SplitStencilLs& split(int p, Axis axis, HalfRange upwind_of) const
    {
        // The Plus half-range flux is differenced on the negative-side stencil
        // of its axis, the Minus flux on the positive side.
        if (axis == Axis::X)
            return upwind_of == HalfRange::Plus ? xneg[p] : xpos[p];
        return upwind_of == HalfRange::Plus ? yneg[p] : ypos[p];
    }
};

LsCoefficients build_ls_coefficients(const PointCloud& cloud);

/// Standalone 2x2 least-squares gradient of scattered increments. Throws on a
/// singular (non-axis-degenerate) stencil.
struct Gradient2 {
    double ddx, ddy;
};
Gradient2 ls_gradient(const std::vector<double>& dx, const std::vector<double>& dy,
                      const std::vector<double>& dvals);

struct GradientField {
    std::vector<Vec4> qx, qy;
};

/// Inner iterations for the q-derivatives: pass 1 is the plain first-order
/// least-squares fit of the raw q increments; every later pass subtracts half
/// of the neighbour-gradient increment (defect correction) using the previous
/// pass's gradients. Simultaneous (Jacobi) updates, n_inner passes in total.
GradientField q_derivatives(const PointCloud& cloud, const LsCoefficients& ls,
                            const std::vector<Vec4>& q, int n_inner);

enum class ResidualOrder { SecondOrder, FirstOrder };

struct ResidualStats {
    std::vector<int> first_order_points;  ///< points demoted by the q-tilde guard
};

/// Flux residual R = sum of the four one-sided split-flux derivatives.
/// Second order: each (point, neighbour) pair evaluates the split flux at the
/// defect-corrected states q_i - (dx qx_i + dy qy_i)/2 and
/// q_0 - (dx qx_0 + dy qy_0)/2 and feeds the difference to the one-sided
/// weights. A point whose corrected state leaves the valid set (q4 >= 0) is
/// recomputed first-order from the raw q states and recorded in stats.
std::vector<Vec4> flux_residual(const PointCloud& cloud, const LsCoefficients& ls,
                                const std::vector<Vec4>& q,
                                const GradientField& grads,
                                ResidualStats* stats = nullptr,
                                ResidualOrder order = ResidualOrder::SecondOrder);

}  // namespace kinfree

#endif
