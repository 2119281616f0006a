#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccon/abstract.hpp"
#include "ccon/rng.hpp"

namespace ccon {

inline constexpr std::size_t kMaxDim = 5;
using VecD = std::array<double, kMaxDim>;

// Every LP is solved inside the cube |x_j| <= M; optima that touch it are
// reported as UNBOUNDED.
inline constexpr double kBoxHalfWidth = 1e6;

// {x : a·x <= b}. Comparison is structural on the stored numbers.
struct HalfSpace {
    VecD a{};
    double b = 0.0;
    std::uint8_t dim = 0;

    static HalfSpace make(std::span<const double> a, double b, bool unit_normal = false);
    static HalfSpace make(std::initializer_list<double> a, double b, bool unit_normal = false);

    double eval(const VecD& x) const; // a·x - b
    bool contains(const VecD& x, double tol = 1e-9) const;

    auto operator<=>(const HalfSpace&) const = default;
    bool operator==(const HalfSpace&) const = default;
};

struct LinearProgram {
    std::size_t d = 0;
    VecD c{};
    std::vector<HalfSpace> constraints;
};

// Sequence of linear functionals compared lexicographically. Row 0 is the
// cost; the remaining rows break ties and together span R^d.
struct LexOrder {
    std::size_t dim = 0;
    std::vector<VecD> rows;

    // c, e_1, ..., e_d
    static LexOrder standard(std::size_t d, const VecD& c);
    // c, c rotated a quarter turn counter-clockwise, e_1, e_2 (planar only)
    static LexOrder rotated(const VecD& c);
};

enum class LexKind : std::uint8_t { Unbounded, Finite, Infeasible };

struct LexValue {
    LexKind kind = LexKind::Infeasible;
    std::uint8_t dim = 0;
    std::uint8_t nkeys = 0;
    VecD point{};
    std::array<double, kMaxDim + 1> keys{};

    double cost() const { return keys[0]; }
};

const char* to_string(LexKind k);

// Relative-absolute tolerance used for every value comparison.
inline constexpr double kValueTol = 1e-9;
bool approx_equal(double a, double b, double tol = kValueTol);

std::weak_ordering compare_lex(const LexValue& a, const LexValue& b, std::size_t keys_to_compare = kMaxDim + 1);

struct BoxSpec {
    double half_width = kBoxHalfWidth;
    std::uint32_t mask = ~0u; // which coordinates are boxed
};

// Exact lexicographic minimizer by enumeration of all candidate vertices
// formed by d of the constraints and box faces. Input order is irrelevant.
LexValue lex_min_point(std::span<const HalfSpace> constraints, const LexOrder& order, const BoxSpec& box = {});
LexValue lex_min_point(const LinearProgram& lp);

enum class ValueOrder { Lexicographic, CostOnly };

// Linear program as an LP-type problem over its half-spaces.
class LpProblem {
public:
    using Constraint = HalfSpace;
    using Value = LexValue;

    LpProblem(std::size_t d, const VecD& c);
    LpProblem(LexOrder order, BoxSpec box = {}, ValueOrder value_order = ValueOrder::Lexicographic);
    explicit LpProblem(const LinearProgram& lp, ValueOrder value_order = ValueOrder::Lexicographic);

    std::size_t delta() const { return order_.dim; }
    std::size_t dim() const { return order_.dim; }
    const LexOrder& order() const { return order_; }
    const BoxSpec& box() const { return box_; }

    LexValue evaluate(std::span<const HalfSpace> set) const;
    std::weak_ordering compare(const LexValue& a, const LexValue& b) const;
    bool is_finite(const LexValue& v) const { return v.kind != LexKind::Infeasible; }
    bool violates(const Basis<HalfSpace, LexValue>& b, const HalfSpace& h) const;
    Basis<HalfSpace, LexValue> basis_computation(const Basis<HalfSpace, LexValue>& b, const HalfSpace& h) const;

private:
    LexOrder order_;
    BoxSpec box_;
    ValueOrder value_order_;
};

LinearProgram gen_model_a(std::size_t n, std::size_t d, Rng& rng);
LinearProgram gen_model_b(std::size_t n, std::size_t d, Rng& rng);

// Four planar half-planes h1..h4 (in this order) such that {h1,h2} is the
// basis of all four while {h3,h4} is the basis of {h2,h3,h4}.
std::optional<LinearProgram> find_nonpersistent_lp(Rng& rng, std::size_t max_tries = 100000);

} // namespace ccon
