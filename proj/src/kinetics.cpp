#include "kinfree/kinetics.hpp"

#include <cmath>

#include "kinfree/counters.hpp"

namespace kinfree {

namespace {
constexpr double kPi = 3.14159265358979323846;

double counted_erf(double x)
{
    flux_counters().add(EvalKind::Erf);
    return std::erf(x);
}
}  // namespace

Vec4 flux_gx(const Vec4& U)
{
    flux_counters().add(EvalKind::FullFlux);
    const double rho = U[0];
    const double u1 = U[1] / rho;
    const double u2 = U[2] / rho;
    const double pr = 0.4 * (U[3] - 0.5 * rho * (u1 * u1 + u2 * u2));
    return {rho * u1, pr + rho * u1 * u1, rho * u1 * u2, (pr + U[3]) * u1};
}

Vec4 flux_gy(const Vec4& U)
{
    flux_counters().add(EvalKind::FullFlux);
    const double rho = U[0];
    const double u1 = U[1] / rho;
    const double u2 = U[2] / rho;
    const double pr = 0.4 * (U[3] - 0.5 * rho * (u1 * u1 + u2 * u2));
    return {rho * u2, rho * u1 * u2, pr + rho * u2 * u2, (pr + U[3]) * u2};
}

Vec4 flux(const Vec4& U, Axis axis)
{
    return axis == Axis::X ? flux_gx(U) : flux_gy(U);
}

Vec4 flux(const Primitives& w, Axis axis)
{
    return flux(conserved_from_primitives(w), axis);
}

Vec4 split_flux(const Primitives& w, Axis axis, HalfRange sign)
{
    flux_counters().add(EvalKind::SplitFlux);
    const double sg = (sign == HalfRange::Plus) ? 1.0 : -1.0;
    const double un = (axis == Axis::X) ? w.u1 : w.u2;  // moment axis
    const double ut = (axis == Axis::X) ? w.u2 : w.u1;
    const double beta = w.beta();
    const double s = un * std::sqrt(beta);
    const double A = 0.5 * (1.0 + sg * counted_erf(s));
    const double B = 0.5 * std::exp(-s * s) / std::sqrt(kPi * beta);

    const double ke = 0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2);
    const double mass = w.rho * (un * A + sg * B);
    const double mom_n = (w.p + w.rho * un * un) * A + sg * w.rho * un * B;
    const double mom_t = ut * mass;
    const double energy = (kGamma / (kGamma - 1.0) * w.p + ke) * un * A +
                          sg * ((kGamma + 1.0) / (2.0 * (kGamma - 1.0)) * w.p + ke) * B;

    if (axis == Axis::X)
        return {mass, mom_n, mom_t, energy};
    return {mass, mom_t, mom_n, energy};
}

Vec4 split_flux(const Vec4& U, Axis axis, HalfRange sign)
{
    return split_flux(primitives_from_conserved(U), axis, sign);
}

Vec4 split_flux_gx(const Vec4& U, HalfRange sign)
{
    return split_flux(U, Axis::X, sign);
}

Vec4 split_flux_gy(const Vec4& U, HalfRange sign)
{
    return split_flux(U, Axis::Y, sign);
}

double spectral_radius_full(const Primitives& w, Axis axis)
{
    const double un = (axis == Axis::X) ? w.u1 : w.u2;
    return std::fabs(un) + w.sound_speed();
}

double spectral_radius_full(const Vec4& U, Axis axis)
{
    return spectral_radius_full(primitives_from_conserved(U), axis);
}

double spectral_radius_split(const Primitives& w, Axis axis, HalfRange sign)
{
    const double un = (axis == Axis::X) ? w.u1 : w.u2;
    const double a = w.sound_speed();
    if (sign == HalfRange::Plus)
        return 0.5 * std::fabs((un + a) + std::fabs(un + a));
    return 0.5 * std::fabs((un - a) - std::fabs(un - a));
}

double spectral_radius_split(const Vec4& U, Axis axis, HalfRange sign)
{
    return spectral_radius_split(primitives_from_conserved(U), axis, sign);
}

}  // namespace kinfree
