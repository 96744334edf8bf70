/** \file oracles.hpp
 * \brief Test-only reference implementations, independent of the production
 *   paths they certify: half-range moment quadrature for the split fluxes,
 *   central finite differences for the tangent products, dense Jacobian
 *   assembly, and a long-double normal-equation solver.
 */
#ifndef KINFREE_TEST_ORACLES_HPP
#define KINFREE_TEST_ORACLES_HPP

#include <random>
#include <vector>

#include "kinfree/state.hpp"

namespace kinfree::testing {

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Half-range moment integral of the Maxwellian: composite tensor
/// Gauss-Legendre quadrature of v_axis * psi * F over v_axis >< 0 and the full
/// transverse range, with the internal-energy variable integrated out
/// analytically. Accurate to well below 1e-10 for order-unity states.
Vec4 quad_split_flux(const Primitives& w, Axis axis, HalfRange sign);

/// Central difference (G(U + h dU) - G(U - h dU)) / (2h) with the step
/// h = 1e-6 |U| / |dU|.
Vec4 fd_jvp_full(const Vec4& U, const Vec4& dU, Axis axis);
Vec4 fd_jvp_split(const Vec4& U, const Vec4& dU, Axis axis, HalfRange sign);

/// Dense 4x4 split-flux Jacobian assembled column-by-column from the exact
/// tangent products.
using Mat4 = std::array<Vec4, 4>;  // rows
Mat4 dense_split_jacobian(const Vec4& U, Axis axis, HalfRange sign);
Vec4 matvec(const Mat4& A, const Vec4& v);

/// Verbatim reference of the primal x-flux routine (independent transcription
/// used by the dual-implementation check).
Vec4 flux_gx_reference(const Vec4& U);

/// Long-double normal-equation least-squares gradient (dual path to the
/// production Cramer weights).
std::pair<double, double> ls_gradient_reference(const std::vector<double>& dx,
                                                const std::vector<double>& dy,
                                                const std::vector<double>& dv);

/// Uniformly random valid state in a box of order-unity primitives.
Primitives random_primitives(std::mt19937& rng);
Vec4 random_state(std::mt19937& rng);

}  // namespace kinfree::testing

#endif
