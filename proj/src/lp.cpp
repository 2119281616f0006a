#include "ccon/lp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ccon {

namespace {

struct Row {
    VecD a{};
    double b = 0.0;
    int src = 0; // >= 0: index into the sorted constraint list, < 0: box face
};

double dot(const VecD& a, const VecD& b, std::size_t d)
{
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
        s += a[j] * b[j];
    return s;
}

double norm_inf(const VecD& x, std::size_t d)
{
    double m = 0.0;
    for (std::size_t j = 0; j < d; ++j)
        m = std::max(m, std::abs(x[j]));
    return m;
}

double feas_tol(const VecD& x, std::size_t d)
{
    return 1e-9 * std::max(1.0, norm_inf(x, d));
}

Row normalized(const HalfSpace& h, std::size_t d, int src)
{
    double n = std::sqrt(dot(h.a, h.a, d));
    Row r;
    for (std::size_t j = 0; j < d; ++j)
        r.a[j] = h.a[j] / n;
    r.b = h.b / n;
    r.src = src;
    return r;
}

// Appends the faces of the bounding cube; source ids -1, -2, ... in a fixed order.
void append_box(std::vector<Row>& rows, std::size_t d, const BoxSpec& box)
{
    int id = -1;
    for (std::size_t j = 0; j < d; ++j) {
        if (!(box.mask & (1u << j)))
            continue;
        Row up;
        up.a[j] = 1.0;
        up.b = box.half_width;
        up.src = id--;
        Row down;
        down.a[j] = -1.0;
        down.b = box.half_width;
        down.src = id--;
        rows.push_back(up);
        rows.push_back(down);
    }
}

// Solves M x = rhs for a d x d system by Gaussian elimination with partial
// pivoting. Rows are unit normals, so an absolute pivot threshold is sound.
bool solve(std::array<VecD, kMaxDim> m, VecD rhs, std::size_t d, VecD& x)
{
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col]))
                piv = r;
        if (std::abs(m[piv][col]) < 1e-12)
            return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < d; ++r) {
            double f = m[r][col] / m[col][col];
            if (f == 0.0)
                continue;
            for (std::size_t k = col; k < d; ++k)
                m[r][k] -= f * m[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    x = VecD{};
    for (std::size_t i = d; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t k = i + 1; k < d; ++k)
            s -= m[i][k] * x[k];
        x[i] = s / m[i][i];
    }
    return true;
}

bool vertex_of(const std::vector<Row>& rows, std::span<const std::size_t> idx, std::size_t d, VecD& x)
{
    std::array<VecD, kMaxDim> m{};
    VecD rhs{};
    for (std::size_t i = 0; i < d; ++i) {
        m[i] = rows[idx[i]].a;
        rhs[i] = rows[idx[i]].b;
    }
    return solve(m, rhs, d, x);
}

bool feasible(const std::vector<Row>& rows, const VecD& x, std::size_t d)
{
    const double tol = feas_tol(x, d);
    for (const auto& r : rows)
        if (dot(r.a, x, d) - r.b > tol)
            return false;
    return true;
}

LexValue make_value(const VecD& x, const LexOrder& order, const BoxSpec& box)
{
    LexValue v;
    v.kind = LexKind::Finite;
    v.dim = static_cast<std::uint8_t>(order.dim);
    v.point = x;
    v.nkeys = static_cast<std::uint8_t>(order.rows.size());
    for (std::size_t k = 0; k < order.rows.size(); ++k)
        v.keys[k] = dot(order.rows[k], x, order.dim);
    for (std::size_t j = 0; j < order.dim; ++j)
        if ((box.mask & (1u << j)) && std::abs(x[j]) >= box.half_width * (1.0 - 1e-9))
            v.kind = LexKind::Unbounded;
    return v;
}

LexValue infeasible_value(const LexOrder& order)
{
    LexValue v;
    v.kind = LexKind::Infeasible;
    v.dim = static_cast<std::uint8_t>(order.dim);
    v.nkeys = static_cast<std::uint8_t>(order.rows.size());
    return v;
}

struct Best {
    bool found = false;
    LexValue value;
};

// Lex-min over all feasible vertices; with forced >= 0 only vertices on that row.
Best best_vertex(const std::vector<Row>& rows, const LexOrder& order, const BoxSpec& box, int forced)
{
    const std::size_t d = order.dim;
    Best best;
    std::vector<std::size_t> full(d);
    VecD x{};
    auto consider = [&](std::span<const std::size_t> idx) {
        if (!vertex_of(rows, idx, d, x) || !feasible(rows, x, d))
            return;
        auto v = make_value(x, order, box);
        if (!best.found || compare_lex(v, best.value) < 0) {
            best.found = true;
            best.value = v;
        }
    };
    if (forced < 0) {
        for_each_combination(rows.size(), d, [&](std::span<const std::size_t> idx) {
            consider(idx);
            return false;
        });
        return best;
    }
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (static_cast<int>(i) != forced)
            others.push_back(i);
    for_each_combination(others.size(), d - 1, [&](std::span<const std::size_t> idx) {
        // keep the system in row order so a vertex is solved identically
        // however it is reached
        std::size_t k = 0;
        bool placed = false;
        for (std::size_t i = 0; i < d - 1; ++i) {
            if (!placed && others[idx[i]] > static_cast<std::size_t>(forced)) {
                full[k++] = static_cast<std::size_t>(forced);
                placed = true;
            }
            full[k++] = others[idx[i]];
        }
        if (!placed)
            full[k++] = static_cast<std::size_t>(forced);
        consider(std::span<const std::size_t>(full.data(), d));
        return false;
    });
    return best;
}

std::vector<Row> build_rows(std::span<const HalfSpace> sorted, std::size_t d, const BoxSpec& box)
{
    std::vector<Row> rows;
    rows.reserve(sorted.size() + 2 * d);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        rows.push_back(normalized(sorted[i], d, static_cast<int>(i)));
    append_box(rows, d, box);
    return rows;
}

void check_dims(std::span<const HalfSpace> hs, std::size_t d)
{
    for (const auto& h : hs)
        if (h.dim != d)
            throw DimensionMismatch("half-space dimension does not match the program");
}

// Lexicographic positivity of the key vector of direction r.
bool lex_positive(const VecD& r, const LexOrder& order)
{
    const std::size_t d = order.dim;
    double rn = std::sqrt(dot(r, r, d));
    for (const auto& f : order.rows) {
        double fn = std::sqrt(dot(f, f, d));
        double w = dot(f, r, d);
        if (std::abs(w) > 1e-10 * fn * rn)
            return w > 0.0;
    }
    return false;
}

// Does the vertex determined by rows idx minimize the order over the cone of
// directions feasible for exactly those rows?
bool certifies(const std::vector<Row>& rows, std::span<const std::size_t> idx, const LexOrder& order)
{
    const std::size_t d = order.dim;
    std::array<VecD, kMaxDim> m{};
    for (std::size_t i = 0; i < d; ++i)
        m[i] = rows[idx[i]].a;
    for (std::size_t j = 0; j < d; ++j) {
        VecD rhs{};
        rhs[j] = -1.0;
        VecD r{};
        if (!solve(m, rhs, d, r))
            return false;
        if (!lex_positive(r, order))
            return false;
    }
    return true;
}

} // namespace

HalfSpace HalfSpace::make(std::span<const double> a, double b, bool unit_normal)
{
    if (a.empty() || a.size() > kMaxDim)
        throw DimensionMismatch("half-space dimension must be between 1 and 5");
    HalfSpace h;
    double n2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!std::isfinite(a[j]))
            throw PreconditionError("half-space normal must be finite");
        h.a[j] = a[j];
        n2 += a[j] * a[j];
    }
    if (n2 == 0.0)
        throw PreconditionError("half-space normal must be nonzero");
    if (!std::isfinite(b))
        throw PreconditionError("half-space offset must be finite");
    if (unit_normal && std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw PreconditionError("half-space normal must have unit length");
    h.b = b;
    h.dim = static_cast<std::uint8_t>(a.size());
    return h;
}

HalfSpace HalfSpace::make(std::initializer_list<double> a, double b, bool unit_normal)
{
    return make(std::span<const double>(a.begin(), a.size()), b, unit_normal);
}

double HalfSpace::eval(const VecD& x) const
{
    return dot(a, x, dim) - b;
}

bool HalfSpace::contains(const VecD& x, double tol) const
{
    double n = std::sqrt(dot(a, a, dim));
    return eval(x) <= tol * n * std::max(1.0, norm_inf(x, dim));
}

LexOrder LexOrder::standard(std::size_t d, const VecD& c)
{
    if (d == 0 || d > kMaxDim)
        throw DimensionMismatch("dimension must be between 1 and 5");
    LexOrder o;
    o.dim = d;
    o.rows.push_back(c);
    for (std::size_t j = 0; j < d; ++j) {
        VecD e{};
        e[j] = 1.0;
        o.rows.push_back(e);
    }
    return o;
}

LexOrder LexOrder::rotated(const VecD& c)
{
    LexOrder o;
    o.dim = 2;
    o.rows.push_back(c);
    o.rows.push_back(VecD{-c[1], c[0]});
    o.rows.push_back(VecD{1.0, 0.0});
    o.rows.push_back(VecD{0.0, 1.0});
    return o;
}

const char* to_string(LexKind k)
{
    switch (k) {
    case LexKind::Unbounded:
        return "UNBOUNDED";
    case LexKind::Finite:
        return "FINITE";
    case LexKind::Infeasible:
        return "INFEASIBLE";
    }
    return "?";
}

bool approx_equal(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::weak_ordering compare_lex(const LexValue& a, const LexValue& b, std::size_t keys_to_compare)
{
    const bool ai = a.kind == LexKind::Infeasible;
    const bool bi = b.kind == LexKind::Infeasible;
    if (ai || bi) {
        if (ai && bi)
            return std::weak_ordering::equivalent;
        return ai ? std::weak_ordering::greater : std::weak_ordering::less;
    }
    const std::size_t n = std::min<std::size_t>({a.nkeys, b.nkeys, keys_to_compare});
    for (std::size_t k = 0; k < n; ++k) {
        if (approx_equal(a.keys[k], b.keys[k]))
            continue;
        return a.keys[k] < b.keys[k] ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

LexValue lex_min_point(std::span<const HalfSpace> constraints, const LexOrder& order, const BoxSpec& box)
{
    check_dims(constraints, order.dim);
    std::vector<HalfSpace> sorted(constraints.begin(), constraints.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto rows = build_rows(sorted, order.dim, box);
    auto best = best_vertex(rows, order, box, -1);
    return best.found ? best.value : infeasible_value(order);
}

LexValue lex_min_point(const LinearProgram& lp)
{
    return lex_min_point(lp.constraints, LexOrder::standard(lp.d, lp.c));
}

LpProblem::LpProblem(std::size_t d, const VecD& c)
    : LpProblem(LexOrder::standard(d, c))
{
}

LpProblem::LpProblem(LexOrder order, BoxSpec box, ValueOrder value_order)
    : order_(std::move(order)), box_(box), value_order_(value_order)
{
}

LpProblem::LpProblem(const LinearProgram& lp, ValueOrder value_order)
    : LpProblem(LexOrder::standard(lp.d, lp.c), BoxSpec{}, value_order)
{
}

LexValue LpProblem::evaluate(std::span<const HalfSpace> set) const
{
    return lex_min_point(set, order_, box_);
}

std::weak_ordering LpProblem::compare(const LexValue& a, const LexValue& b) const
{
    return compare_lex(a, b, value_order_ == ValueOrder::CostOnly ? 1 : kMaxDim + 1);
}

bool LpProblem::violates(const Basis<HalfSpace, LexValue>& b, const HalfSpace& h) const
{
    if (value_order_ == ValueOrder::CostOnly)
        return enumerate_violates(*this, b, h);
    if (b.value.kind == LexKind::Infeasible)
        return false;
    if (h.dim != order_.dim)
        throw DimensionMismatch("half-space dimension does not match the program");
    return !h.contains(b.value.point);
}

Basis<HalfSpace, LexValue> LpProblem::basis_computation(const Basis<HalfSpace, LexValue>& b, const HalfSpace& h) const
{
    if (value_order_ == ValueOrder::CostOnly || !violates(b, h))
        return value_order_ == ValueOrder::CostOnly ? enumerate_basis_computation(*this, b, h) : b;

    const std::size_t d = order_.dim;
    auto cand = distinct(b.elements);
    cand.push_back(h);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const int hidx = static_cast<int>(std::lower_bound(cand.begin(), cand.end(), h) - cand.begin());
    auto rows = build_rows(cand, d, box_);

    // The new optimum lies on the boundary of h.
    auto best = best_vertex(rows, order_, box_, hidx);
    if (!best.found)
        return enumerate_basis_computation(*this, b, h);
    const VecD& x = best.value.point;

    std::vector<std::size_t> tight;
    const double tol = feas_tol(x, d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (std::abs(dot(rows[i].a, x, d) - rows[i].b) <= tol)
            tight.push_back(i);

    // Among d-subsets of tight rows whose cone certifies optimality, prefer the
    // fewest real constraints, then the smallest sorted indices. This matches
    // the minimum-cardinality, index-ordered enumeration.
    std::optional<std::vector<int>> chosen;
    std::vector<std::size_t> sub(d);
    for_each_combination(tight.size(), d, [&](std::span<const std::size_t> idx) {
        for (std::size_t i = 0; i < d; ++i)
            sub[i] = tight[idx[i]];
        if (!certifies(rows, sub, order_))
            return false;
        std::vector<int> reals;
        for (auto r : sub)
            if (rows[r].src >= 0)
                reals.push_back(rows[r].src);
        if (!chosen || reals.size() < chosen->size() || (reals.size() == chosen->size() && reals < *chosen))
            chosen = reals;
        return false;
    });
    if (!chosen || chosen->empty())
        return enumerate_basis_computation(*this, b, h);

    Basis<HalfSpace, LexValue> out;
    for (int i : *chosen)
        out.elements.push_back(cand[static_cast<std::size_t>(i)]);
    while (out.elements.size() < d)
        out.elements.push_back(out.elements.back());
    out.value = best.value;
    return out;
}

LinearProgram gen_model_a(std::size_t n, std::size_t d, Rng& rng)
{
    if (n < 1 || d < 2 || d > kMaxDim)
        throw PreconditionError("gen_model_a: need n >= 1 and 2 <= d <= 5");
    std::normal_distribution<double> g(0.0, 1.0);
    LinearProgram lp;
    lp.d = d;
    lp.constraints.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> a(d);
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (auto& v : a) {
                v = g(rng);
                n2 += v * v;
            }
        } while (n2 < 1e-24);
        lp.constraints.push_back(HalfSpace::make(a, std::sqrt(n2)));
    }
    double c2 = 0.0;
    do {
        c2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            lp.c[j] = g(rng);
            c2 += lp.c[j] * lp.c[j];
        }
    } while (c2 < 1e-24);
    return lp;
}

LinearProgram gen_model_b(std::size_t n, std::size_t d, Rng& rng)
{
    if (n < 1 || d < 2 || d > kMaxDim)
        throw PreconditionError("gen_model_b: need n >= 1 and 2 <= d <= 5");
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> b(n), chat(n);
    for (auto& v : b)
        v = u(rng);
    for (auto& v : chat)
        v = u(rng);
    LinearProgram lp;
    lp.d = d;
    lp.constraints.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> a(d);
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (auto& v : a) {
                v = g(rng);
                n2 += v * v;
            }
        } while (n2 < 1e-24);
        lp.constraints.push_back(HalfSpace::make(a, b[i]));
        for (std::size_t j = 0; j < d; ++j)
            lp.c[j] += a[j] * chat[i];
    }
    return lp;
}

std::optional<LinearProgram> find_nonpersistent_lp(Rng& rng, std::size_t max_tries)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_real_distribution<double> off(0.0, 1.0);
    for (std::size_t t = 0; t < max_tries; ++t) {
        double th = angle(rng);
        VecD c{std::cos(th), std::sin(th)};
        std::vector<HalfSpace> hs;
        for (int i = 0; i < 4; ++i) {
            double a = angle(rng);
            hs.push_back(HalfSpace::make({std::cos(a), std::sin(a)}, off(rng)));
        }
        LpProblem p(2, c);
        auto all = brute_force_basis(p, hs);
        if (all.value.kind != LexKind::Finite)
            continue;
        auto top = distinct(all.elements);
        if (top.size() != 2)
            continue;
        for (int flip = 0; flip < 2; ++flip) {
            const HalfSpace& h1 = top[flip];
            const HalfSpace& h2 = top[1 - flip];
            std::vector<HalfSpace> rest;
            for (const auto& h : hs)
                if (!(h == h1) && !(h == h2))
                    rest.push_back(h);
            std::vector<HalfSpace> sub{h2, rest[0], rest[1]};
            auto bs = distinct(brute_force_basis(p, sub).elements);
            if (bs == distinct(rest)) {
                LinearProgram lp;
                lp.d = 2;
                lp.c = c;
                lp.constraints = {h1, h2, rest[0], rest[1]};
                return lp;
            }
        }
    }
    return std::nullopt;
}

} // namespace ccon
