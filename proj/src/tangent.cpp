#include "kinfree/tangent.hpp"

#include <cmath>

#include "kinfree/counters.hpp"
#include "kinfree/kinetics.hpp"

namespace kinfree {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrtPi = 0.5641895835477562869;  // 1/sqrt(pi)

void require_valid(const Vec4& U, const char* who)
{
    const double rho = U[0];
    if (!(rho > 0.0))
        throw invalid_state_error(std::string(who) + ": nonpositive density");
    const double pr =
        0.4 * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / rho);
    if (!(pr > 0.0))
        throw invalid_state_error(std::string(who) + ": nonpositive pressure");
}

void require_valid_increment(const Vec4& V, const char* who)
{
    const double rho = V[0];
    if (!(rho > 0.0))
        throw invalid_increment_error(std::string(who) +
                                      ": U + dU has nonpositive density");
    const double pr =
        0.4 * (V[3] - 0.5 * (V[1] * V[1] + V[2] * V[2]) / rho);
    if (!(pr > 0.0))
        throw invalid_increment_error(std::string(who) +
                                      ": U + dU has nonpositive pressure");
}

}  // namespace

Vec4 jvp_full(const Vec4& U, const Vec4& Ud, Axis axis)
{
    require_valid(U, "jvp_full");
    flux_counters().add(EvalKind::JvpFull);

    const double rhod = Ud[0];
    const double rho = U[0];
    double temp = U[1] / rho;
    const double u1d = (Ud[1] - temp * rhod) / rho;
    const double u1 = temp;
    temp = U[2] / rho;
    const double u2d = (Ud[2] - temp * rhod) / rho;
    const double u2 = temp;
    temp = u1 * u1 + u2 * u2;
    const double prd =
        0.4 * (Ud[3] - 0.5 * (temp * rhod + rho * (2.0 * u1 * u1d + 2.0 * u2 * u2d)));
    const double pr = 0.4 * (U[3] - 0.5 * (rho * temp));

    if (axis == Axis::X) {
        return {u1 * rhod + rho * u1d,
                prd + u1 * u1 * rhod + rho * 2.0 * u1 * u1d,
                u2 * (u1 * rhod + rho * u1d) + rho * u1 * u2d,
                u1 * (prd + Ud[3]) + (pr + U[3]) * u1d};
    }
    return {u2 * rhod + rho * u2d,
            u1 * (u2 * rhod + rho * u2d) + rho * u2 * u1d,
            prd + u2 * u2 * rhod + rho * 2.0 * u2 * u2d,
            u2 * (prd + Ud[3]) + (pr + U[3]) * u2d};
}

Vec4 jvp_split(const Vec4& U, const Vec4& Ud, Axis axis, HalfRange sign)
{
    require_valid(U, "jvp_split");
    flux_counters().add(EvalKind::JvpSplit);
    flux_counters().add(EvalKind::Erf);

    const double sg = (sign == HalfRange::Plus) ? 1.0 : -1.0;

    const double rhod = Ud[0];
    const double rho = U[0];
    double temp = U[1] / rho;
    const double u1d = (Ud[1] - temp * rhod) / rho;
    const double u1 = temp;
    temp = U[2] / rho;
    const double u2d = (Ud[2] - temp * rhod) / rho;
    const double u2 = temp;
    const double v2 = u1 * u1 + u2 * u2;
    const double v2d = 2.0 * u1 * u1d + 2.0 * u2 * u2d;
    const double prd = 0.4 * (Ud[3] - 0.5 * (v2 * rhod + rho * v2d));
    const double pr = 0.4 * (U[3] - 0.5 * rho * v2);

    const double un = (axis == Axis::X) ? u1 : u2;
    const double und = (axis == Axis::X) ? u1d : u2d;
    const double ut = (axis == Axis::X) ? u2 : u1;
    const double utd = (axis == Axis::X) ? u2d : u1d;

    const double beta = 0.5 * rho / pr;
    const double betad = 0.5 * (rhod * pr - rho * prd) / (pr * pr);
    const double sqb = std::sqrt(beta);
    const double sqbd = 0.5 * betad / sqb;
    const double s = un * sqb;
    const double sd = und * sqb + un * sqbd;

    const double ex = std::exp(-s * s);
    const double exd = -2.0 * s * sd * ex;
    const double A = 0.5 * (1.0 + sg * std::erf(s));
    const double Ad = sg * kInvSqrtPi * ex * sd;
    const double B = 0.5 * ex / std::sqrt(kPi * beta);
    const double Bd = 0.5 * exd / std::sqrt(kPi * beta) -
                      0.25 * kInvSqrtPi * ex * betad / (beta * sqb);

    const double ke = 0.5 * rho * v2;
    const double ked = 0.5 * (rhod * v2 + rho * v2d);

    const double mass = rho * (un * A + sg * B);
    const double massd =
        rhod * (un * A + sg * B) + rho * (und * A + un * Ad + sg * Bd);

    const double mom_nd = (prd + rhod * un * un + 2.0 * rho * un * und) * A +
                          (pr + rho * un * un) * Ad +
                          sg * ((rhod * un + rho * und) * B + rho * un * Bd);

    const double mom_td = utd * mass + ut * massd;

    const double ge = kGamma / (kGamma - 1.0);
    const double gb = (kGamma + 1.0) / (2.0 * (kGamma - 1.0));
    const double c1 = ge * pr + ke;
    const double c1d = ge * prd + ked;
    const double c2 = gb * pr + ke;
    const double c2d = gb * prd + ked;
    const double energyd =
        c1d * un * A + c1 * (und * A + un * Ad) + sg * (c2d * B + c2 * Bd);

    if (axis == Axis::X)
        return {massd, mom_nd, mom_td, energyd};
    return {massd, mom_td, mom_nd, energyd};
}

Vec4 incremental_jvp_full(const Vec4& U, const Vec4& dU, Axis axis)
{
    require_valid(U, "incremental_jvp_full");
    const Vec4 V = U + dU;
    require_valid_increment(V, "incremental_jvp_full");
    return flux(V, axis) - flux(U, axis);
}

Vec4 incremental_jvp_split(const Vec4& U, const Vec4& dU, Axis axis, HalfRange sign)
{
    require_valid(U, "incremental_jvp_split");
    const Vec4 V = U + dU;
    require_valid_increment(V, "incremental_jvp_split");
    return split_flux(V, axis, sign) - split_flux(U, axis, sign);
}

Vec4 mode_jvp_split(FluxIncrementMode mode, const Vec4& U, const Vec4& dU, Axis axis,
                    HalfRange sign)
{
    if (mode == FluxIncrementMode::Exact)
        return jvp_split(U, dU, axis, sign);
    return incremental_jvp_split(U, dU, axis, sign);
}

Vec4 mode_jvp_full(FluxIncrementMode mode, const Vec4& U, const Vec4& dU, Axis axis)
{
    if (mode == FluxIncrementMode::Exact)
        return jvp_full(U, dU, axis);
    return incremental_jvp_full(U, dU, axis);
}

}  // namespace kinfree
