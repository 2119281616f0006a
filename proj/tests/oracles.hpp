// Independent reference implementations used only by tests. None of these
// call into the library's solvers.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

struct Pt {
    double x, y;
};

inline bool num_less(double a, double b)
{
    return !(std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) && a < b;
}

inline bool keys_less(const std::vector<double>& a, const std::vector<double>& b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (num_less(a[k], b[k]))
            return true;
        if (num_less(b[k], a[k]))
            return false;
    }
    return false;
}

// Lexicographic minimum of the functionals `order` over {x : A x <= b} and
// the cube |x_j| <= M on coordinates in box_mask, by enumerating every vertex.
inline std::optional<Eigen::VectorXd> lp_lexmin(std::vector<Eigen::VectorXd> A, std::vector<double> b,
                                                const std::vector<Eigen::VectorXd>& order, unsigned box_mask,
                                                double M = 1e6)
{
    const int d = static_cast<int>(order.front().size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        double n = A[i].norm();
        A[i] /= n;
        b[i] /= n;
    }
    for (int j = 0; j < d; ++j) {
        if (!(box_mask & (1u << j)))
            continue;
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e[j] = 1.0;
        A.push_back(e);
        b.push_back(M);
        A.push_back(-e);
        b.push_back(M);
    }
    auto keys = [&](const Eigen::VectorXd& x) {
        std::vector<double> k;
        for (const auto& f : order)
            k.push_back(f.dot(x));
        return k;
    };
    std::optional<Eigen::VectorXd> best;
    std::vector<double> best_keys;
    const int m = static_cast<int>(A.size());
    std::vector<int> idx(static_cast<std::size_t>(d));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d) {
            Eigen::MatrixXd Ms(d, d);
            Eigen::VectorXd rhs(d);
            for (int i = 0; i < d; ++i) {
                Ms.row(i) = A[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].transpose();
                rhs[i] = b[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(Ms);
            if (lu.rank() < d)
                return;
            Eigen::VectorXd x = lu.solve(rhs);
            double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
            for (int i = 0; i < m; ++i)
                if (A[static_cast<std::size_t>(i)].dot(x) - b[static_cast<std::size_t>(i)] > 1e-8 * scale)
                    return;
            auto k = keys(x);
            if (!best || keys_less(k, best_keys)) {
                best = x;
                best_keys = k;
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

struct Circle {
    Pt c;
    double r;
};

inline double dist(Pt a, Pt b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool in_circle(const Circle& c, Pt p)
{
    return dist(c.c, p) <= c.r * (1.0 + 1e-12) + 1e-12;
}

inline Circle circle2(Pt a, Pt b)
{
    return {{(a.x + b.x) / 2, (a.y + b.y) / 2}, dist(a, b) / 2};
}

inline Circle circle3(Pt a, Pt b, Pt c)
{
    double bx = b.x - a.x, by = b.y - a.y, cx = c.x - a.x, cy = c.y - a.y;
    double d = 2 * (bx * cy - by * cx);
    double ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
    double uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
    Pt o{a.x + ux, a.y + uy};
    return {o, dist(o, a)};
}

// Welzl's move-to-front smallest enclosing circle.
inline Circle min_circle(std::vector<Pt> pts, unsigned seed = 1)
{
    std::mt19937 g(seed);
    std::shuffle(pts.begin(), pts.end(), g);
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (in_circle(c, pts[i]))
            continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_circle(c, pts[j]))
                continue;
            c = circle2(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k)
                if (!in_circle(c, pts[k]))
                    c = circle3(pts[i], pts[j], pts[k]);
        }
    }
    return c;
}

// Minimum width over the edge directions of the convex hull.
inline double min_stripe_width(std::vector<Pt> pts)
{
    std::sort(pts.begin(), pts.end(), [](Pt a, Pt b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    auto cr = [](Pt o, Pt a, Pt b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    std::vector<Pt> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cr(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    double best = 1e300;
    for (std::size_t i = 0; i < h.size(); ++i) {
        Pt a = h[i], b = h[(i + 1) % h.size()];
        double len = dist(a, b);
        double w = 0.0;
        for (auto p : pts)
            w = std::max(w, std::abs(cr(a, b, p)) / len);
        best = std::min(best, w);
    }
    return best;
}

struct AnnulusSol {
    double area; // R^2 - r^2
    Pt center;
    double v;
};

// Four-variable linear program in (c_x, c_y, u, v), solved by vertex enumeration.
inline std::optional<AnnulusSol> min_annulus(const std::vector<Pt>& pts)
{
    std::vector<Eigen::VectorXd> A;
    std::vector<double> b;
    for (auto p : pts) {
        double p2 = p.x * p.x + p.y * p.y;
        Eigen::VectorXd r1(4), r2(4);
        r1 << -2 * p.x, -2 * p.y, -1, 0;
        r2 << 2 * p.x, 2 * p.y, 0, 1;
        A.push_back(r1);
        b.push_back(-p2);
        A.push_back(r2);
        b.push_back(p2);
    }
    std::vector<Eigen::VectorXd> order(4, Eigen::VectorXd::Zero(4));
    order[0] << 0, 0, 1, -1;
    order[1] << 1, 0, 0, 0;
    order[2] << 0, 1, 0, 0;
    order[3] << 0, 0, 0, 1;
    auto x = lp_lexmin(A, b, order, 0b0011);
    if (!x)
        return std::nullopt;
    return AnnulusSol{(*x)[2] - (*x)[3], {(*x)[0], (*x)[1]}, (*x)[3]};
}

} // namespace oracle
