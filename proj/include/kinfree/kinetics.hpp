/** \file kinetics.hpp
 * \brief Full and kinetically split Euler fluxes in 2D, plus the flux-Jacobian
 *   spectral radii used by the implicit diagonal.
 *
 * The split fluxes are the half-range velocity moments of the Maxwellian,
 * taken over v_axis > 0 (Plus) or v_axis < 0 (Minus). With
 *   beta = rho/(2p),  s = u_n * sqrt(beta),
 *   A = (1 +/- erf(s))/2,  B = exp(-s^2) / (2 sqrt(pi beta)),
 * the closed forms for the x-split are
 *   G1 = rho (u1 A +/- B)
 *   G2 = (p + rho u1^2) A +/- rho u1 B
 *   G3 = rho u2 (u1 A +/- B)
 *   G4 = (g/(g-1) p + k) u1 A +/- ((g+1)/(2(g-1)) p + k) B,  k = rho|u|^2/2
 * and the y-split is the analog with u1 and u2 exchanged. The internal-energy
 * variable is integrated out analytically; its mean I0 = (2-g)/(g-1) * p/rho
 * is fixed by requiring the full energy moment to equal (p + rho e). The unit
 * tests certify every component against a half-range quadrature oracle.
 */
#ifndef KINFREE_KINETICS_HPP
#define KINFREE_KINETICS_HPP

#include "kinfree/state.hpp"

namespace kinfree {

Vec4 flux_gx(const Vec4& U);
Vec4 flux_gy(const Vec4& U);
Vec4 flux(const Vec4& U, Axis axis);

Vec4 split_flux_gx(const Vec4& U, HalfRange sign);
Vec4 split_flux_gy(const Vec4& U, HalfRange sign);
Vec4 split_flux(const Vec4& U, Axis axis, HalfRange sign);

/// Primitive-variable overloads; the conserved overloads convert and forward.
Vec4 flux(const Primitives& w, Axis axis);
Vec4 split_flux(const Primitives& w, Axis axis, HalfRange sign);

/// |u_axis| + a.
double spectral_radius_full(const Vec4& U, Axis axis);
double spectral_radius_full(const Primitives& w, Axis axis);

/// 1/2 | (u_n +/- a) +/- |u_n +/- a| |: the positive part of u_n + a for the
/// Plus half-range, the negative part of u_n - a (in magnitude) for Minus.
double spectral_radius_split(const Vec4& U, Axis axis, HalfRange sign);
double spectral_radius_split(const Primitives& w, Axis axis, HalfRange sign);

}  // namespace kinfree

#endif
