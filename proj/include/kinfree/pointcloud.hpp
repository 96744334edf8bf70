/** \file pointcloud.hpp
 * \brief 2D point clouds: generation from a NACA O-grid, plain-text load/save,
 *   and the sign-split stencils used for one-sided derivatives.
 *
 * Split-stencil convention: names are geometric. xpos holds neighbours with
 * dx > 0, xneg those with dx < 0; a neighbour with dx == 0 joins both (it adds
 * nothing to the x-moment sums but stabilises the y-moments). Same for ypos /
 * yneg with dy. The positive half-range flux along an axis is differenced on
 * the negative-side stencil of that axis (upwind), and vice versa.
 */
#ifndef KINFREE_POINTCLOUD_HPP
#define KINFREE_POINTCLOUD_HPP

#include <string>
#include <vector>

namespace kinfree {

enum class PointKind : int { Wall = 0, Interior = 1, Outer = 2 };

struct StencilReport {
    std::vector<int> empty_points;     ///< points with at least one empty split stencil
    std::vector<int> singular_points;  ///< points with a singular stencil (normalized det < eps)

    bool clean() const { return empty_points.empty() && singular_points.empty(); }
};

struct PointCloud {
    std::vector<double> x, y;
    std::vector<PointKind> kind;
    std::vector<double> normal_x, normal_y;  ///< unit normal; zero for interior points

    std::vector<std::vector<int>> nbr;  ///< full stencil, 0-based point ids

    /// Sign-split stencils (see file comment); filled by build_split_stencils.
    std::vector<std::vector<int>> xpos, xneg, ypos, yneg;

    std::vector<int> wall_ids;  ///< wall points in surface order (closed loop)
    std::vector<int> interior_ids;
    std::vector<int> outer_ids;

    StencilReport stencil_report;

    int n() const { return static_cast<int>(x.size()); }
    int count(PointKind k) const;
};

/// Threshold on 1 - corr^2 of the stencil moment matrix below which a stencil
/// is reported singular.
inline constexpr double kSingularDetEps = 1e-12;

/// Structured O-topology cloud around a 4-digit NACA airfoil, flattened to a
/// point list. n_wall points per ring (ring 0 on the airfoil, outermost ring
/// marked Outer), n_radial rings, geometric stretching out to
/// far_field_radius chords. Connectivity is the 8-neighbourhood of the grid,
/// wrapped circumferentially and clamped radially. Wall normals come from the
/// analytic surface derivative, outer normals are radial. Split stencils are
/// built before returning.
PointCloud generate_naca_ogrid(const std::string& naca_digits, int n_wall,
                               int n_radial, double far_field_radius);

/// Parses the line-oriented cloud format (see README). Validates connectivity
/// (n >= 3 per point), kinds, normals, and builds split stencils. Parse errors
/// carry the line number; invariant violations name the point.
PointCloud load_cloud(const std::string& path);

void save_cloud(const PointCloud& cloud, const std::string& path);

/// Partitions every point's neighbours by coordinate sign into the four split
/// stencils and reports points with empty or singular stencils. Reporting is
/// the whole contract; the caller decides whether a flagged point is fatal.
StencilReport build_split_stencils(PointCloud& cloud);

}  // namespace kinfree

#endif
