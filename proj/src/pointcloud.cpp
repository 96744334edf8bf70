#include "kinfree/pointcloud.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kinfree {

namespace {

struct NacaShape {
    double m;  // max camber
    double p;  // camber position
    double t;  // thickness
};

NacaShape parse_naca(const std::string& digits)
{
    if (digits.size() != 4 || !std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw std::invalid_argument("invalid NACA code '" + digits +
                                    "' (expected 4 digits)");
    NacaShape s;
    s.m = (digits[0] - '0') / 100.0;
    s.p = (digits[1] - '0') / 10.0;
    s.t = ((digits[2] - '0') * 10 + (digits[3] - '0')) / 100.0;
    if (s.t <= 0.0)
        throw std::invalid_argument("invalid NACA code '" + digits +
                                    "' (zero thickness)");
    if (s.m > 0.0 && s.p == 0.0)
        throw std::invalid_argument("invalid NACA code '" + digits +
                                    "' (camber without camber position)");
    return s;
}

// Thickness polynomial with the closed trailing edge (last coefficient
// -0.1036 so that y_t(1) = 0 and the wall normal stays single-valued there).
double thickness(const NacaShape& s, double x)
{
    return 5.0 * s.t *
           (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x +
            0.2843 * x * x * x - 0.1036 * x * x * x * x);
}

double thickness_slope(const NacaShape& s, double x)
{
    return 5.0 * s.t *
           (0.14845 / std::sqrt(x) - 0.1260 - 0.7032 * x + 0.8529 * x * x -
            0.4144 * x * x * x);
}

double camber(const NacaShape& s, double x)
{
    if (s.m == 0.0) return 0.0;
    if (x < s.p) return s.m / (s.p * s.p) * (2.0 * s.p * x - x * x);
    return s.m / ((1.0 - s.p) * (1.0 - s.p)) *
           ((1.0 - 2.0 * s.p) + 2.0 * s.p * x - x * x);
}

double camber_slope(const NacaShape& s, double x)
{
    if (s.m == 0.0) return 0.0;
    if (x < s.p) return 2.0 * s.m / (s.p * s.p) * (s.p - x);
    return 2.0 * s.m / ((1.0 - s.p) * (1.0 - s.p)) * (s.p - x);
}

double camber_curvature(const NacaShape& s, double x)
{
    if (s.m == 0.0) return 0.0;
    if (x < s.p) return -2.0 * s.m / (s.p * s.p);
    return -2.0 * s.m / ((1.0 - s.p) * (1.0 - s.p));
}

struct SurfacePoint {
    double x, y;
    double nx, ny;  // outward unit normal
};

// theta in [0, 2pi): theta = 0 is the trailing edge, the upper surface spans
// (0, pi), the leading edge sits at theta = pi. The loop is counterclockwise.
SurfacePoint naca_surface(const NacaShape& s, double theta)
{
    const double xc = 0.5 * (1.0 + std::cos(theta));
    const bool upper = theta < M_PI;
    const double side = upper ? 1.0 : -1.0;

    SurfacePoint out;
    if (theta == 0.0) {
        // Trailing-edge wedge: normal along the bisector of the two one-sided
        // limits, which for a closed TE is the downstream camber direction.
        const double dyc = camber_slope(s, 1.0);
        const double len = std::hypot(1.0, dyc);
        out.x = 1.0;
        out.y = camber(s, 1.0);
        out.nx = 1.0 / len;
        out.ny = dyc / len;
        return out;
    }
    if (std::fabs(theta - M_PI) < 1e-14) {
        out.x = 0.0;
        out.y = 0.0;
        out.nx = -1.0;
        out.ny = 0.0;
        return out;
    }

    const double yt = thickness(s, xc);
    const double yc = camber(s, xc);
    const double dyc = camber_slope(s, xc);
    const double delta = std::atan(dyc);
    const double sd = std::sin(delta), cd = std::cos(delta);

    out.x = xc - side * yt * sd;
    out.y = yc + side * yt * cd;

    // Tangent via d/dx of the surface curves; the common dx/dtheta factor only
    // fixes the travel direction, which the counterclockwise convention pins.
    const double dyt = thickness_slope(s, xc);
    const double ddelta = camber_curvature(s, xc) / (1.0 + dyc * dyc);
    const double tx = 1.0 - side * (dyt * sd + yt * cd * ddelta);
    const double ty = dyc + side * (dyt * cd - yt * sd * ddelta);
    // dx/dtheta = -sin(theta)/2: negative on the upper side, positive below.
    const double dir = upper ? -1.0 : 1.0;
    const double gx = dir * tx, gy = dir * ty;
    const double len = std::hypot(gx, gy);
    // Outward normal of a counterclockwise loop: rotate the tangent by -90.
    out.nx = gy / len;
    out.ny = -gx / len;
    return out;
}

void classify(PointCloud& c)
{
    c.wall_ids.clear();
    c.interior_ids.clear();
    c.outer_ids.clear();
    for (int i = 0; i < c.n(); ++i) {
        switch (c.kind[i]) {
            case PointKind::Wall: c.wall_ids.push_back(i); break;
            case PointKind::Interior: c.interior_ids.push_back(i); break;
            case PointKind::Outer: c.outer_ids.push_back(i); break;
        }
    }
}

// First-ring spacing ratio -> geometric stretch factor.
double solve_stretch(int n_levels, double first_over_total)
{
    double lo = 1.0 + 1e-9, hi = 3.0;
    auto first = [&](double sigma) {
        return (sigma - 1.0) / (std::pow(sigma, n_levels) - 1.0);
    };
    if (first(hi) > first_over_total) return hi;
    if (first(lo) < first_over_total) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (first(mid) > first_over_total)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int PointCloud::count(PointKind k) const
{
    int c = 0;
    for (PointKind pk : kind)
        if (pk == k) ++c;
    return c;
}

PointCloud generate_naca_ogrid(const std::string& naca_digits, int n_wall,
                               int n_radial, double far_field_radius)
{
    const NacaShape shape = parse_naca(naca_digits);
    if (n_wall < 32 || n_radial < 8 || far_field_radius < 10.0)
        throw std::invalid_argument(
            "degenerate O-grid parameters (need n_wall >= 32, n_radial >= 8, "
            "far_field_radius >= 10)");

    const double cx = 0.5, cy = 0.0;  // ray centre (mid-chord)
    const int N = n_wall * n_radial;
    PointCloud c;
    c.x.resize(N);
    c.y.resize(N);
    c.kind.assign(N, PointKind::Interior);
    c.normal_x.assign(N, 0.0);
    c.normal_y.assign(N, 0.0);
    c.nbr.resize(N);

    // Mean wall spacing sets the first radial layer height.
    std::vector<SurfacePoint> surf(n_wall);
    double perimeter = 0.0;
    for (int i = 0; i < n_wall; ++i)
        surf[i] = naca_surface(shape, 2.0 * M_PI * i / n_wall);
    for (int i = 0; i < n_wall; ++i) {
        const SurfacePoint& a = surf[i];
        const SurfacePoint& b = surf[(i + 1) % n_wall];
        perimeter += std::hypot(b.x - a.x, b.y - a.y);
    }
    const double wall_h = perimeter / n_wall;
    const double mean_ray = far_field_radius - 0.5;  // rough mean ray length
    const double sigma = solve_stretch(n_radial - 1, wall_h / mean_ray);
    std::vector<double> w(n_radial);
    for (int j = 0; j < n_radial; ++j)
        w[j] = (std::pow(sigma, j) - 1.0) / (std::pow(sigma, n_radial - 1) - 1.0);

    for (int i = 0; i < n_wall; ++i) {
        const SurfacePoint& s = surf[i];
        const double phi = std::atan2(s.y - cy, s.x - cx);
        const double fx = cx + far_field_radius * std::cos(phi);
        const double fy = cy + far_field_radius * std::sin(phi);
        for (int j = 0; j < n_radial; ++j) {
            const int id = j * n_wall + i;
            c.x[id] = s.x + w[j] * (fx - s.x);
            c.y[id] = s.y + w[j] * (fy - s.y);
            if (j == 0) {
                c.kind[id] = PointKind::Wall;
                c.normal_x[id] = s.nx;
                c.normal_y[id] = s.ny;
            } else if (j == n_radial - 1) {
                c.kind[id] = PointKind::Outer;
                c.normal_x[id] = std::cos(phi);
                c.normal_y[id] = std::sin(phi);
            }
        }
    }

    for (int j = 0; j < n_radial; ++j) {
        for (int i = 0; i < n_wall; ++i) {
            const int id = j * n_wall + i;
            for (int dj = -1; dj <= 1; ++dj) {
                const int jj = j + dj;
                if (jj < 0 || jj >= n_radial) continue;
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = (i + di + n_wall) % n_wall;
                    c.nbr[id].push_back(jj * n_wall + ii);
                }
            }
        }
    }

    classify(c);
    c.stencil_report = build_split_stencils(c);
    return c;
}

StencilReport build_split_stencils(PointCloud& c)
{
    const int N = c.n();
    c.xpos.assign(N, {});
    c.xneg.assign(N, {});
    c.ypos.assign(N, {});
    c.yneg.assign(N, {});
    StencilReport report;

    auto singular = [&](const std::vector<int>& st, int p) {
        if (st.empty()) return false;  // reported separately
        double mxx = 0.0, myy = 0.0, mxy = 0.0;
        for (int q : st) {
            const double dx = c.x[q] - c.x[p];
            const double dy = c.y[q] - c.y[p];
            mxx += dx * dx;
            myy += dy * dy;
            mxy += dx * dy;
        }
        if (mxx == 0.0 || myy == 0.0) return false;  // axis-degenerate, 1D form applies
        const double det = mxx * myy - mxy * mxy;
        return det < kSingularDetEps * mxx * myy;
    };

    for (int p = 0; p < N; ++p) {
        for (int q : c.nbr[p]) {
            const double dx = c.x[q] - c.x[p];
            const double dy = c.y[q] - c.y[p];
            if (dx >= 0.0) c.xpos[p].push_back(q);
            if (dx <= 0.0) c.xneg[p].push_back(q);
            if (dy >= 0.0) c.ypos[p].push_back(q);
            if (dy <= 0.0) c.yneg[p].push_back(q);
        }
        if (c.xpos[p].empty() || c.xneg[p].empty() || c.ypos[p].empty() ||
            c.yneg[p].empty())
            report.empty_points.push_back(p);
        if (singular(c.xpos[p], p) || singular(c.xneg[p], p) ||
            singular(c.ypos[p], p) || singular(c.yneg[p], p) ||
            singular(c.nbr[p], p))
            report.singular_points.push_back(p);
    }
    return report;
}

PointCloud load_cloud(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cloud file: " + path);

    PointCloud c;
    int lineno = 0;
    long expected = -1;
    std::string line;

    auto parse_fail = [&](const std::string& why) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": parse error: " + why);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (expected < 0) {
            if (!(ls >> expected) || expected <= 0) parse_fail("bad point count header");
            c.x.reserve(expected);
            continue;
        }
        long idx;
        double px, py;
        int kd, nn;
        if (!(ls >> idx >> px >> py >> kd >> nn)) parse_fail("bad point record");
        if (idx != static_cast<long>(c.x.size()) + 1)
            parse_fail("point index " + std::to_string(idx) + " out of order");
        if (kd < 0 || kd > 2) parse_fail("bad point kind " + std::to_string(kd));
        if (nn < 0) parse_fail("negative neighbour count");
        std::vector<int> nb(nn);
        for (int k = 0; k < nn; ++k) {
            long v;
            if (!(ls >> v)) parse_fail("missing neighbour id");
            nb[k] = static_cast<int>(v - 1);
        }
        double nx = 0.0, ny = 0.0;
        if (kd == 0 || kd == 2) {
            if (!(ls >> nx >> ny)) parse_fail("missing normal for boundary point");
        }
        c.x.push_back(px);
        c.y.push_back(py);
        c.kind.push_back(static_cast<PointKind>(kd));
        c.normal_x.push_back(nx);
        c.normal_y.push_back(ny);
        c.nbr.push_back(std::move(nb));
    }
    if (expected < 0) throw std::runtime_error(path + ": empty cloud file");
    if (static_cast<long>(c.x.size()) != expected)
        throw std::runtime_error(path + ": expected " + std::to_string(expected) +
                                 " points, found " + std::to_string(c.x.size()));

    const int N = c.n();
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(c.nbr[i].size()) < 3)
            throw std::runtime_error(path + ": point " + std::to_string(i + 1) +
                                     " has fewer than 3 neighbours");
        for (int q : c.nbr[i]) {
            if (q < 0 || q >= N)
                throw std::runtime_error(path + ": point " + std::to_string(i + 1) +
                                         " has out-of-range neighbour " +
                                         std::to_string(q + 1));
            if (q == i)
                throw std::runtime_error(path + ": point " + std::to_string(i + 1) +
                                         " lists itself as neighbour");
        }
        if (c.kind[i] != PointKind::Interior) {
            const double len = std::hypot(c.normal_x[i], c.normal_y[i]);
            if (std::fabs(len - 1.0) > 1e-6)
                throw std::runtime_error(path + ": point " + std::to_string(i + 1) +
                                         " has a non-unit normal");
        }
    }

    classify(c);
    c.stencil_report = build_split_stencils(c);
    return c;
}

void save_cloud(const PointCloud& c, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cloud file: " + path);
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << c.n() << "\n";
    for (int i = 0; i < c.n(); ++i) {
        out << (i + 1) << " " << num(c.x[i]) << " " << num(c.y[i]) << " "
            << static_cast<int>(c.kind[i]) << " " << c.nbr[i].size();
        for (int q : c.nbr[i]) out << " " << (q + 1);
        if (c.kind[i] != PointKind::Interior)
            out << " " << num(c.normal_x[i]) << " " << num(c.normal_y[i]);
        out << "\n";
    }
}

}  // namespace kinfree
