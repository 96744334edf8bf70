#include "kinfree/coloring.hpp"

#include <algorithm>

namespace kinfree {

std::vector<std::vector<int>> symmetrized_connectivity(const PointCloud& cloud)
{
    const int N = cloud.n();
    std::vector<std::vector<int>> adj(N);
    for (int i = 0; i < N; ++i)
        for (int q : cloud.nbr[i]) {
            adj[i].push_back(q);
            adj[q].push_back(i);
        }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

ColorAssignment color_points(const PointCloud& cloud)
{
    const int N = cloud.n();
    const auto adj = symmetrized_connectivity(cloud);

    ColorAssignment out;
    out.color.assign(N, 0);
    if (N == 0) return out;
    out.color[0] = 1;

    std::vector<char> used;  // scratch: color -> seen among neighbours
    for (int i = 0; i < N; ++i) {
        for (int p : adj[i]) {
            if (out.color[p] != 0) continue;
            used.assign(adj[p].size() + 2, 0);
            for (int q : adj[p]) {
                const int cq = out.color[q];
                if (cq > 0 && cq < static_cast<int>(used.size())) used[cq] = 1;
            }
            int k = 1;
            while (used[k]) ++k;
            out.color[p] = k;
        }
    }
    for (int i = 0; i < N; ++i)
        if (out.color[i] == 0) out.color[i] = 1;  // isolated points

    out.n_colors = *std::max_element(out.color.begin(), out.color.end());
    return out;
}

SweepPlan build_sweep_plan(const ColorAssignment& colors)
{
    SweepPlan plan;
    plan.color_of = colors.color;
    plan.groups.assign(colors.n_colors, {});
    for (int i = 0; i < static_cast<int>(colors.color.size()); ++i)
        plan.groups[colors.color[i] - 1].push_back(i);
    return plan;
}

std::vector<std::pair<int, int>> validate_coloring(const PointCloud& cloud,
                                                   const ColorAssignment& colors)
{
    const auto adj = symmetrized_connectivity(cloud);
    std::vector<std::pair<int, int>> bad;
    for (int i = 0; i < cloud.n(); ++i)
        for (int q : adj[i])
            if (q > i && colors.color[i] == colors.color[q]) bad.emplace_back(i, q);
    return bad;
}

}  // namespace kinfree
