#include "kinfree/state.hpp"

namespace kinfree {

Primitives primitives_from_conserved(const Vec4& U, int point)
{
    const double rho = U[0];
    if (!(rho > 0.0))
        throw invalid_state_error("nonpositive density", point);
    const double u1 = U[1] / rho;
    const double u2 = U[2] / rho;
    const double p = (kGamma - 1.0) * (U[3] - 0.5 * rho * (u1 * u1 + u2 * u2));
    if (!(p > 0.0))
        throw invalid_state_error("nonpositive pressure", point);
    return {rho, u1, u2, p};
}

Vec4 conserved_from_primitives(const Primitives& w)
{
    const double rho_e = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u1 * w.u1 + w.u2 * w.u2);
    return {w.rho, w.rho * w.u1, w.rho * w.u2, rho_e};
}

Vec4 q_from_primitives(const Primitives& w)
{
    const double beta = w.beta();
    const double q1 = std::log(w.rho) + std::log(beta) / (kGamma - 1.0) -
                      beta * (w.u1 * w.u1 + w.u2 * w.u2);
    return {q1, 2.0 * beta * w.u1, 2.0 * beta * w.u2, -2.0 * beta};
}

Primitives primitives_from_q(const Vec4& q, int point)
{
    if (!(q[3] < 0.0))
        throw invalid_state_error("invalid q-state (q4 >= 0)", point);
    const double beta = -0.5 * q[3];
    const double u1 = q[1] / (2.0 * beta);
    const double u2 = q[2] / (2.0 * beta);
    const double ln_rho =
        q[0] - std::log(beta) / (kGamma - 1.0) + beta * (u1 * u1 + u2 * u2);
    const double rho = std::exp(ln_rho);
    const double p = 0.5 * rho / beta;
    if (!std::isfinite(rho) || !(rho > 0.0) || !(p > 0.0))
        throw invalid_state_error("invalid q-state (degenerate density)", point);
    return {rho, u1, u2, p};
}

Vec4 conserved_from_q(const Vec4& q, int point)
{
    return conserved_from_primitives(primitives_from_q(q, point));
}

Vec4 q_from_conserved(const Vec4& U, int point)
{
    return q_from_primitives(primitives_from_conserved(U, point));
}

}  // namespace kinfree
