#include "kinfree/spatial.hpp"

#include <cmath>
#include <stdexcept>

#include "kinfree/kinetics.hpp"

namespace kinfree {

namespace {

struct Moments {
    double mxx = 0.0, myy = 0.0, mxy = 0.0;
};

Moments stencil_moments(const PointCloud& c, int p, const std::vector<int>& st)
{
    Moments m;
    for (int q : st) {
        const double dx = c.x[q] - c.x[p];
        const double dy = c.y[q] - c.y[p];
        m.mxx += dx * dx;
        m.myy += dy * dy;
        m.mxy += dx * dy;
    }
    return m;
}

StencilKind classify_moments(const Moments& m, std::size_t n)
{
    if (n == 0) return StencilKind::Empty;
    if (m.mxx == 0.0 && m.myy == 0.0) return StencilKind::Singular;  // coincident
    if (m.myy == 0.0) return StencilKind::LineX;
    if (m.mxx == 0.0) return StencilKind::LineY;
    const double det = m.mxx * m.myy - m.mxy * m.mxy;
    if (det < kSingularDetEps * m.mxx * m.myy) return StencilKind::Singular;
    return StencilKind::Regular;
}

void fill_split(const PointCloud& c, int p, const std::vector<int>& st, Axis axis,
                SplitStencilLs& out, bool& flagged)
{
    out.nbr = st;
    out.w.assign(st.size(), 0.0);
    const Moments m = stencil_moments(c, p, st);
    out.kind = classify_moments(m, st.size());
    out.ls_one = 0.0;
    switch (out.kind) {
        case StencilKind::Empty:
            return;
        case StencilKind::Singular:
            flagged = true;
            return;
        case StencilKind::LineX:
            if (axis == Axis::Y) return;  // no y information on an x-line
            for (std::size_t k = 0; k < st.size(); ++k)
                out.w[k] = (c.x[st[k]] - c.x[p]) / m.mxx;
            break;
        case StencilKind::LineY:
            if (axis == Axis::X) return;
            for (std::size_t k = 0; k < st.size(); ++k)
                out.w[k] = (c.y[st[k]] - c.y[p]) / m.myy;
            break;
        case StencilKind::Regular: {
            const double den = m.mxx * m.myy - m.mxy * m.mxy;
            for (std::size_t k = 0; k < st.size(); ++k) {
                const double dx = c.x[st[k]] - c.x[p];
                const double dy = c.y[st[k]] - c.y[p];
                out.w[k] = (axis == Axis::X) ? (m.myy * dx - m.mxy * dy) / den
                                             : (m.mxx * dy - m.mxy * dx) / den;
            }
            break;
        }
    }
    for (double w : out.w) out.ls_one += w;
}

}  // namespace

LsCoefficients build_ls_coefficients(const PointCloud& cloud)
{
    const int N = cloud.n();
    if (static_cast<int>(cloud.xpos.size()) != N)
        throw std::logic_error("build_ls_coefficients: split stencils not built");

    LsCoefficients ls;
    ls.full.resize(N);
    ls.xpos.resize(N);
    ls.xneg.resize(N);
    ls.ypos.resize(N);
    ls.yneg.resize(N);

    for (int p = 0; p < N; ++p) {
        bool flagged = false;

        FullStencilLs& f = ls.full[p];
        f.nbr = cloud.nbr[p];
        f.wx.assign(f.nbr.size(), 0.0);
        f.wy.assign(f.nbr.size(), 0.0);
        const Moments m = stencil_moments(cloud, p, f.nbr);
        f.kind = classify_moments(m, f.nbr.size());
        if (f.kind == StencilKind::Regular) {
            const double den = m.mxx * m.myy - m.mxy * m.mxy;
            for (std::size_t k = 0; k < f.nbr.size(); ++k) {
                const double dx = cloud.x[f.nbr[k]] - cloud.x[p];
                const double dy = cloud.y[f.nbr[k]] - cloud.y[p];
                f.wx[k] = (m.myy * dx - m.mxy * dy) / den;
                f.wy[k] = (m.mxx * dy - m.mxy * dx) / den;
            }
        } else if (f.kind == StencilKind::LineX) {
            for (std::size_t k = 0; k < f.nbr.size(); ++k)
                f.wx[k] = (cloud.x[f.nbr[k]] - cloud.x[p]) / m.mxx;
        } else if (f.kind == StencilKind::LineY) {
            for (std::size_t k = 0; k < f.nbr.size(); ++k)
                f.wy[k] = (cloud.y[f.nbr[k]] - cloud.y[p]) / m.myy;
        } else if (f.kind == StencilKind::Singular) {
            flagged = true;
        }

        fill_split(cloud, p, cloud.xpos[p], Axis::X, ls.xpos[p], flagged);
        fill_split(cloud, p, cloud.xneg[p], Axis::X, ls.xneg[p], flagged);
        fill_split(cloud, p, cloud.ypos[p], Axis::Y, ls.ypos[p], flagged);
        fill_split(cloud, p, cloud.yneg[p], Axis::Y, ls.yneg[p], flagged);

        if (flagged) ls.flagged.push_back(p);
    }
    return ls;
}

Gradient2 ls_gradient(const std::vector<double>& dx, const std::vector<double>& dy,
                      const std::vector<double>& dvals)
{
    if (dx.size() != dy.size() || dx.size() != dvals.size())
        throw std::invalid_argument("ls_gradient: mismatched lengths");
    double mxx = 0.0, myy = 0.0, mxy = 0.0, bx = 0.0, by = 0.0;
    for (std::size_t k = 0; k < dx.size(); ++k) {
        mxx += dx[k] * dx[k];
        myy += dy[k] * dy[k];
        mxy += dx[k] * dy[k];
        bx += dx[k] * dvals[k];
        by += dy[k] * dvals[k];
    }
    if (myy == 0.0 && mxx > 0.0) return {bx / mxx, 0.0};
    if (mxx == 0.0 && myy > 0.0) return {0.0, by / myy};
    const double den = mxx * myy - mxy * mxy;
    if (!(den >= kSingularDetEps * mxx * myy) || mxx == 0.0)
        throw std::runtime_error("ls_gradient: singular stencil");
    return {(myy * bx - mxy * by) / den, (mxx * by - mxy * bx) / den};
}

GradientField q_derivatives(const PointCloud& cloud, const LsCoefficients& ls,
                            const std::vector<Vec4>& q, int n_inner)
{
    if (n_inner < 1) throw std::invalid_argument("q_derivatives: n_inner must be >= 1");
    const int N = cloud.n();
    GradientField g;
    g.qx.assign(N, Vec4{});
    g.qy.assign(N, Vec4{});

    // Pass 1: first-order fit of the raw increments.
#pragma omp parallel for schedule(static)
    for (int p = 0; p < N; ++p) {
        const FullStencilLs& f = ls.full[p];
        Vec4 gx{}, gy{};
        for (std::size_t k = 0; k < f.nbr.size(); ++k) {
            const Vec4 dq = q[f.nbr[k]] - q[p];
            gx += f.wx[k] * dq;
            gy += f.wy[k] * dq;
        }
        g.qx[p] = gx;
        g.qy[p] = gy;
    }

    GradientField prev = g;
    for (int pass = 2; pass <= n_inner; ++pass) {
        std::swap(prev, g);
#pragma omp parallel for schedule(static)
        for (int p = 0; p < N; ++p) {
            const FullStencilLs& f = ls.full[p];
            Vec4 gx{}, gy{};
            for (std::size_t k = 0; k < f.nbr.size(); ++k) {
                const int i = f.nbr[k];
                const double dx = cloud.x[i] - cloud.x[p];
                const double dy = cloud.y[i] - cloud.y[p];
                const Vec4 dq_tilde = (q[i] - q[p]) -
                                      0.5 * (dx * (prev.qx[i] - prev.qx[p]) +
                                             dy * (prev.qy[i] - prev.qy[p]));
                gx += f.wx[k] * dq_tilde;
                gy += f.wy[k] * dq_tilde;
            }
            g.qx[p] = gx;
            g.qy[p] = gy;
        }
    }
    return g;
}

namespace {

struct DirSpec {
    Axis axis;
    HalfRange sign;
};
constexpr DirSpec kDirs[4] = {
    {Axis::X, HalfRange::Plus},   // differenced on xneg
    {Axis::X, HalfRange::Minus},  // xpos
    {Axis::Y, HalfRange::Plus},   // yneg
    {Axis::Y, HalfRange::Minus},  // ypos
};

// Second-order contribution of one split direction; returns false if a
// corrected state leaves the valid set.
bool accumulate_second_order(const PointCloud& cloud, const SplitStencilLs& st, int p,
                             Axis axis, HalfRange sign, const std::vector<Vec4>& q,
                             const GradientField& g, Vec4& R)
{
    for (std::size_t k = 0; k < st.nbr.size(); ++k) {
        if (st.w[k] == 0.0) continue;
        const int i = st.nbr[k];
        const double dx = cloud.x[i] - cloud.x[p];
        const double dy = cloud.y[i] - cloud.y[p];
        const Vec4 qt_i = q[i] - 0.5 * (dx * g.qx[i] + dy * g.qy[i]);
        const Vec4 qt_0 = q[p] - 0.5 * (dx * g.qx[p] + dy * g.qy[p]);
        if (!(qt_i[3] < 0.0) || !(qt_0[3] < 0.0) || !all_finite(qt_i) ||
            !all_finite(qt_0))
            return false;
        const Vec4 dG = split_flux(primitives_from_q(qt_i), axis, sign) -
                        split_flux(primitives_from_q(qt_0), axis, sign);
        R += st.w[k] * dG;
    }
    return true;
}

void accumulate_first_order(const SplitStencilLs& st, int p, Axis axis, HalfRange sign,
                            const std::vector<Vec4>& q, Vec4& R)
{
    const Vec4 G0 = st.nbr.empty()
                        ? Vec4{}
                        : split_flux(primitives_from_q(q[p], p), axis, sign);
    for (std::size_t k = 0; k < st.nbr.size(); ++k) {
        if (st.w[k] == 0.0) continue;
        const Vec4 Gi = split_flux(primitives_from_q(q[st.nbr[k]]), axis, sign);
        R += st.w[k] * (Gi - G0);
    }
}

}  // namespace

std::vector<Vec4> flux_residual(const PointCloud& cloud, const LsCoefficients& ls,
                                const std::vector<Vec4>& q, const GradientField& grads,
                                ResidualStats* stats, ResidualOrder order)
{
    const int N = cloud.n();
    std::vector<Vec4> R(N, Vec4{});
    std::vector<char> demoted(N, 0);
    int bad_point = -1;

#pragma omp parallel for schedule(static)
    for (int p = 0; p < N; ++p) {
        try {
            Vec4 acc{};
            bool ok = order == ResidualOrder::SecondOrder;
            if (ok) {
                try {
                    for (const DirSpec& d : kDirs) {
                        if (!accumulate_second_order(cloud, ls.split(p, d.axis, d.sign),
                                                     p, d.axis, d.sign, q, grads,
                                                     acc)) {
                            ok = false;
                            break;
                        }
                    }
                } catch (const invalid_state_error&) {
                    ok = false;  // corrected state degenerated; demote the point
                }
            }
            if (!ok) {
                acc = Vec4{};
                if (order == ResidualOrder::SecondOrder) demoted[p] = 1;
                for (const DirSpec& d : kDirs)
                    accumulate_first_order(ls.split(p, d.axis, d.sign), p, d.axis,
                                           d.sign, q, acc);
            }
            R[p] = acc;
        } catch (const invalid_state_error&) {
#pragma omp critical
            if (bad_point < 0 || p < bad_point) bad_point = p;
        }
    }
    if (bad_point >= 0)
        throw invalid_state_error("flux_residual: invalid base state", bad_point);

    if (stats) {
        for (int p = 0; p < N; ++p)
            if (demoted[p]) stats->first_order_points.push_back(p);
    }
    return R;
}

}  // namespace kinfree
