/** \file coloring.hpp
 * \brief Greedy point coloring and the color-ordered sweep plan that turns the
 *   sequential Gauss-Seidel loops into race-free parallel group passes.
 *
 * Connectivity is symmetrized (reverse edges added) before coloring, so the
 * no-shared-color guarantee holds for any input cloud: a point never shares a
 * color with a point that reads or is read by it during a sweep.
 */
#ifndef KINFREE_COLORING_HPP
#define KINFREE_COLORING_HPP

#include <utility>
#include <vector>

#include "kinfree/pointcloud.hpp"

namespace kinfree {

struct ColorAssignment {
    std::vector<int> color;  ///< 1-based color per point
    int n_colors = 0;
};

struct SweepPlan {
    /// groups[g] holds the ids of the points with color g+1; forward sweeps
    /// walk groups in order, backward sweeps in reverse.
    std::vector<std::vector<int>> groups;
    std::vector<int> color_of;  ///< 1-based color per point (sweep ordering key)
};

/// Greedy scan: point 0 gets color 1, then points are visited in index order
/// and every still-uncolored neighbour receives the smallest positive color
/// absent from its own neighbourhood. Isolated points default to color 1.
ColorAssignment color_points(const PointCloud& cloud);

SweepPlan build_sweep_plan(const ColorAssignment& colors);

/// Edges of the symmetrized connectivity whose endpoints share a color
/// (empty for a valid assignment). Each edge is reported once with i < j.
std::vector<std::pair<int, int>> validate_coloring(const PointCloud& cloud,
                                                   const ColorAssignment& colors);

/// Symmetrized adjacency: union of forward and reverse neighbour lists.
std::vector<std::vector<int>> symmetrized_connectivity(const PointCloud& cloud);

}  // namespace kinfree

#endif
