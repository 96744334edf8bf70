/** \file tangent.hpp
 * \brief Jacobian-vector products of the full and split fluxes.
 *
 * Two routes are provided for every product A dU = d/dh G(U + h dU)|_0:
 *  - exact: hand-written tangent-linear code (forward-mode differentiation of
 *    the flux routines, one erf evaluation per split product);
 *  - incremental: the matrix-free approximation G(U + dU) - G(U), costing two
 *    flux evaluations (and two erf calls for a split product).
 * The exact products are linear in dU; the incremental ones agree with them
 * to first order and deviate at O(|dU|^2).
 */
#ifndef KINFREE_TANGENT_HPP
#define KINFREE_TANGENT_HPP

#include "kinfree/state.hpp"

namespace kinfree {

/// Selects how Jacobian-vector products are evaluated inside the implicit
/// operator.
enum class FluxIncrementMode {
    Exact,        ///< tangent-linear code
    Incremental,  ///< flux-difference approximation
};

/// Thrown by the incremental route when U + dU leaves the valid-state set
/// (distinct from an invalid base state).
class invalid_increment_error : public invalid_state_error {
public:
    using invalid_state_error::invalid_state_error;
};

Vec4 jvp_full(const Vec4& U, const Vec4& dU, Axis axis);
Vec4 jvp_split(const Vec4& U, const Vec4& dU, Axis axis, HalfRange sign);

Vec4 incremental_jvp_full(const Vec4& U, const Vec4& dU, Axis axis);
Vec4 incremental_jvp_split(const Vec4& U, const Vec4& dU, Axis axis, HalfRange sign);

/// Mode-dispatched products used by the LU-SGS sweeps (split fluxes) and the
/// S-term (full fluxes).
Vec4 mode_jvp_split(FluxIncrementMode mode, const Vec4& U, const Vec4& dU, Axis axis,
                    HalfRange sign);
Vec4 mode_jvp_full(FluxIncrementMode mode, const Vec4& U, const Vec4& dU, Axis axis);

}  // namespace kinfree

#endif
