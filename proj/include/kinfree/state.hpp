/** \file state.hpp
 * \brief Flow-state algebra: conserved vector, primitive variables and the
 *   q-variable reparameterization used by the defect-correction scheme.
 */
#ifndef KINFREE_STATE_HPP
#define KINFREE_STATE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kinfree {

/// Ratio of specific heats (standard air).
inline constexpr double kGamma = 1.4;

/// Per-point 4-vector. Conserved layout: (rho, rho*u1, rho*u2, rho*e).
using Vec4 = std::array<double, 4>;

enum class Axis { X, Y };

/// Half-space of the molecular velocity along the chosen axis.
enum class HalfRange { Plus, Minus };

inline Vec4 operator+(const Vec4& a, const Vec4& b)
{
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a)
{
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline Vec4& operator+=(Vec4& a, const Vec4& b)
{
    for (int k = 0; k < 4; ++k) a[k] += b[k];
    return a;
}
inline Vec4& operator-=(Vec4& a, const Vec4& b)
{
    for (int k = 0; k < 4; ++k) a[k] -= b[k];
    return a;
}

inline double norm2(const Vec4& a)
{
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}
inline double norm_inf(const Vec4& a)
{
    double m = 0.0;
    for (int k = 0; k < 4; ++k) m = std::max(m, std::fabs(a[k]));
    return m;
}
inline bool all_finite(const Vec4& a)
{
    return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]) &&
           std::isfinite(a[3]);
}

/// Thrown when a state has nonpositive density or pressure (or q4 >= 0).
/// Carries the offending point index when known, -1 otherwise.
class invalid_state_error : public std::runtime_error {
public:
    explicit invalid_state_error(const std::string& what, int point = -1)
        : std::runtime_error(point >= 0 ? what + " at point " + std::to_string(point)
                                        : what),
          point_(point)
    {
    }
    int point() const noexcept { return point_; }

private:
    int point_;
};

/// Primitive flow variables.
struct Primitives {
    double rho;  ///< density
    double u1;   ///< x-velocity
    double u2;   ///< y-velocity
    double p;    ///< pressure

    double sound_speed() const { return std::sqrt(kGamma * p / rho); }
    double beta() const { return 0.5 * rho / p; }
};

/// Inverts U = (rho, rho u1, rho u2, rho e) with gamma = 1.4.
/// Throws invalid_state_error on nonpositive density or pressure.
Primitives primitives_from_conserved(const Vec4& U, int point = -1);

Vec4 conserved_from_primitives(const Primitives& w);

/// q = (ln rho + ln(beta)/(gamma-1) - beta*(u1^2+u2^2), 2 beta u1, 2 beta u2, -2 beta).
Vec4 q_from_primitives(const Primitives& w);

/// Exact inverse of q_from_primitives; requires q[3] < 0.
Primitives primitives_from_q(const Vec4& q, int point = -1);

Vec4 conserved_from_q(const Vec4& q, int point = -1);
Vec4 q_from_conserved(const Vec4& U, int point = -1);

}  // namespace kinfree

#endif
