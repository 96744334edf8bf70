#include <doctest.h>

#include <random>

#include "kinfree/coloring.hpp"
#include "kinfree/pointcloud.hpp"

using namespace kinfree;

namespace {

PointCloud cloud_with(const std::vector<std::pair<double, double>>& pts,
                      const std::vector<std::vector<int>>& nbr)
{
    PointCloud c;
    for (auto [px, py] : pts) {
        c.x.push_back(px);
        c.y.push_back(py);
        c.kind.push_back(PointKind::Interior);
        c.normal_x.push_back(0.0);
        c.normal_y.push_back(0.0);
    }
    c.nbr = nbr;
    return c;
}

/// Random scattered points with a random, deliberately asymmetric
/// connectivity: each point lists 3-7 fairly arbitrary other points.
PointCloud random_cloud(std::mt19937& rng, int n)
{
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    std::uniform_int_distribution<int> deg(3, 7), pick(0, n - 1);
    std::vector<std::vector<int>> nbr(n);
    for (int i = 0; i < n; ++i) {
        while (static_cast<int>(nbr[i].size()) < deg(rng)) {
            const int q = pick(rng);
            if (q == i) continue;
            if (std::find(nbr[i].begin(), nbr[i].end(), q) == nbr[i].end())
                nbr[i].push_back(q);
        }
    }
    return cloud_with(pts, nbr);
}

}  // namespace

TEST_CASE("single point gets color 1")
{
    const PointCloud c = cloud_with({{0, 0}}, {{}});
    const ColorAssignment col = color_points(c);
    CHECK(col.color == std::vector<int>{1});
    CHECK(col.n_colors == 1);
}

TEST_CASE("three-point path colors as 1, 2, 1")
{
    const PointCloud c =
        cloud_with({{0, 0}, {1, 0}, {2, 0}}, {{1}, {0, 2}, {1}});
    const ColorAssignment col = color_points(c);
    CHECK(col.color == std::vector<int>{1, 2, 1});
    CHECK(col.n_colors == 2);
}

TEST_CASE("generated O-grid uses a small palette")
{
    const PointCloud c = generate_naca_ogrid("0012", 160, 60, 20.0);
    const ColorAssignment col = color_points(c);
    CHECK(col.n_colors <= 9);
    CHECK(validate_coloring(c, col).empty());
}

TEST_CASE("sweep plan groups points by ascending color")
{
    ColorAssignment col;
    col.color = {1, 2, 1};
    col.n_colors = 2;
    const SweepPlan plan = build_sweep_plan(col);
    REQUIRE(plan.groups.size() == 2);
    CHECK(plan.groups[0] == std::vector<int>{0, 2});
    CHECK(plan.groups[1] == std::vector<int>{1});

    // No connectivity at all: everything lands in one group.
    const PointCloud iso = cloud_with({{0, 0}, {1, 0}, {2, 0}}, {{}, {}, {}});
    const ColorAssignment ciso = color_points(iso);
    const SweepPlan piso = build_sweep_plan(ciso);
    REQUIRE(piso.groups.size() == 1);
    CHECK(piso.groups[0].size() == 3);
}

TEST_CASE("group sizes on the O-grid are front-loaded")
{
    const PointCloud c = generate_naca_ogrid("0012", 160, 60, 20.0);
    const SweepPlan plan = build_sweep_plan(color_points(c));
    std::size_t big = 0;
    for (std::size_t g = 0; g < std::min<std::size_t>(4, plan.groups.size()); ++g)
        big += plan.groups[g].size();
    CHECK(big >= static_cast<std::size_t>(0.8 * c.n()));
}

TEST_CASE("validate_coloring reports conflicting edges")
{
    const PointCloud two = cloud_with({{0, 0}, {1, 0}}, {{1}, {0}});
    ColorAssignment bad;
    bad.color = {1, 1};
    bad.n_colors = 1;
    const auto violations = validate_coloring(two, bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0] == std::pair<int, int>{0, 1});

    ColorAssignment good;
    good.color = {1, 2};
    good.n_colors = 2;
    CHECK(validate_coloring(two, good).empty());
}

TEST_CASE("greedy coloring is valid on random asymmetric clouds")
{
    std::mt19937 rng(314);
    for (int trial = 0; trial < 50; ++trial) {
        const PointCloud c = random_cloud(rng, 60 + trial);
        const ColorAssignment col = color_points(c);
        CHECK(validate_coloring(c, col).empty());
        for (int v : col.color) CHECK(v >= 1);
    }
}

TEST_CASE("coloring is deterministic")
{
    std::mt19937 rng(2718);
    const PointCloud c = random_cloud(rng, 120);
    const ColorAssignment a = color_points(c);
    const ColorAssignment b = color_points(c);
    CHECK(a.color == b.color);
    CHECK(a.n_colors == b.n_colors);
}

TEST_CASE("sweep groups are race-free")
{
    // Within a group no point may appear in another group member's
    // symmetrized neighbourhood.
    const PointCloud c = generate_naca_ogrid("0012", 48, 12, 12.0);
    const auto adj = symmetrized_connectivity(c);
    const SweepPlan plan = build_sweep_plan(color_points(c));
    for (const auto& group : plan.groups) {
        std::vector<char> in_group(c.n(), 0);
        for (int p : group) in_group[p] = 1;
        for (int p : group)
            for (int q : adj[p]) CHECK(!in_group[q]);
    }
}
