#pragma once

// Polynomial operators on a two-part space V + W.
//
// A PolyMap is a vector-valued polynomial R^n_vars -> R^n_out stored as a
// sorted list of (key, coefficient) terms. The 64-bit key packs the output
// coordinate and the monomial so that key order is: output, then total
// degree, then lexicographic on the sorted variable tuple.
//
//   bits 63..56  output coordinate      (< 256)
//   bits 55..53  degree                 (<= 7)
//   bits 48..0   seven 7-bit variable slots, smallest variable first
//
// A PolyOperator is a PolyMap from V + W to itself with a grade. V coordinates
// carry weight 1 and W coordinates weight 2; an operator of grade k has only
// monomials of weight 1 + k in its V outputs and 2 + k in its W outputs.
//
// Composition follows (f o g)(u) = Df(u)[g(u)], and [f, g] = f o g - g o f.
// Under f -> -f^i d_i this is the commutator of vector fields.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kantor/linalg.hpp"
#include "kantor/structure_tensor.hpp"

namespace kantor {

namespace mono {

inline constexpr int kMaxDegree = 7;
inline constexpr std::size_t kMaxVars = 127;
inline constexpr std::size_t kMaxOutputs = 256;

struct Monomial {
    int degree = 0;
    std::array<std::uint8_t, kMaxDegree> vars{}; ///< sorted ascending, first `degree` used
};

[[nodiscard]] std::uint64_t pack(std::size_t out, const Monomial& m);
[[nodiscard]] Monomial unpack(std::uint64_t key) noexcept;
[[nodiscard]] inline std::size_t output_of(std::uint64_t key) noexcept { return static_cast<std::size_t>(key >> 56); }
[[nodiscard]] inline int degree_of(std::uint64_t key) noexcept { return static_cast<int>((key >> 53) & 0x7); }
[[nodiscard]] inline std::uint64_t with_output(std::uint64_t key, std::size_t out) noexcept
{
    return (key & ((std::uint64_t{1} << 56) - 1)) | (static_cast<std::uint64_t>(out) << 56);
}
[[nodiscard]] Monomial multiply(const Monomial& a, const Monomial& b);
[[nodiscard]] std::string to_string(const Monomial& m);

} // namespace mono

class DegreeOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class PolyMap {
public:
    using Term = std::pair<std::uint64_t, Scalar>;

    PolyMap() = default;
    PolyMap(std::size_t n_vars, std::size_t n_out);

    /// Sorts, merges duplicate keys and drops zero coefficients.
    static PolyMap from_terms(std::size_t n_vars, std::size_t n_out, std::vector<Term> terms);
    static PolyMap constant(std::size_t n_vars, const VectorQ& value);
    /// Output i equals variable first_var + i, for i < count.
    static PolyMap variables(std::size_t n_vars, std::size_t first_var, std::size_t count);

    [[nodiscard]] std::size_t n_vars() const noexcept { return n_vars_; }
    [[nodiscard]] std::size_t n_out() const noexcept { return n_out_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] int max_degree() const noexcept;

    [[nodiscard]] VectorQ evaluate(const VectorQ& point) const;

    PolyMap& operator+=(const PolyMap& rhs);
    PolyMap& operator-=(const PolyMap& rhs);
    PolyMap& operator*=(const Scalar& s);
    friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
    friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a -= b; }
    friend PolyMap operator*(const Scalar& s, PolyMap a) { return a *= s; }
    PolyMap operator-() const { return Scalar(-1) * *this; }
    friend bool operator==(const PolyMap&, const PolyMap&) = default;

private:
    void check_same_shape(const PolyMap& rhs) const;

    std::size_t n_vars_ = 0;
    std::size_t n_out_ = 0;
    std::vector<Term> terms_;
};

/// Applies a multilinear structure tensor to polynomial arguments, e.g.
/// (P(u), Q(u), R(u)) -> T(P(u), Q(u), R(u)). Arguments must have
/// n_out == t.in_dim(); the result has n_out == t.out_dim().
[[nodiscard]] PolyMap multilinear(const StructureTensor& t, std::span<const PolyMap* const> args);
[[nodiscard]] PolyMap multilinear(const StructureTensor& t, const PolyMap& p);
[[nodiscard]] PolyMap multilinear(const StructureTensor& t, const PolyMap& p, const PolyMap& q);
[[nodiscard]] PolyMap multilinear(const StructureTensor& t, const PolyMap& p, const PolyMap& q, const PolyMap& r);

/// Pointwise product of a scalar polynomial (n_out == 1) with a vector one.
[[nodiscard]] PolyMap scalar_times(const PolyMap& s, const PolyMap& v);

/// Stacks outputs: the result has top.n_out() + bottom.n_out() outputs.
[[nodiscard]] PolyMap stack(const PolyMap& top, const PolyMap& bottom);

/// Directional derivative Df(u)[g(u)]; requires f.n_vars() == g.n_out().
[[nodiscard]] PolyMap directional_compose(const PolyMap& f, const PolyMap& g);

// ---------------------------------------------------------------------------

struct GradedSpace {
    std::size_t dim_v = 0; ///< weight-1 coordinates
    std::size_t dim_w = 0; ///< weight-2 coordinates

    [[nodiscard]] std::size_t dim() const noexcept { return dim_v + dim_w; }
    [[nodiscard]] int weight(std::size_t var) const noexcept { return var < dim_v ? 1 : 2; }
    friend bool operator==(const GradedSpace&, const GradedSpace&) = default;
};

class GradingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PolyOperator {
public:
    PolyOperator() = default;

    /// Validates weighted homogeneity for the given grade.
    PolyOperator(GradedSpace space, int grade, PolyMap map);

    static PolyOperator zero(GradedSpace space, int grade);
    /// V-part has n_out == dim_v, W-part n_out == dim_w; both over all variables.
    static PolyOperator from_parts(GradedSpace space, int grade, const PolyMap& v_part, const PolyMap& w_part);
    /// Linear operator u -> A u.
    static PolyOperator linear(GradedSpace space, const MatrixQ& a);
    /// The Euler operator z + Z -> z + 2Z.
    static PolyOperator euler(GradedSpace space);

    [[nodiscard]] const GradedSpace& space() const noexcept { return space_; }
    [[nodiscard]] int grade() const noexcept { return grade_; }
    [[nodiscard]] const PolyMap& map() const noexcept { return map_; }
    [[nodiscard]] bool is_zero() const noexcept { return map_.is_zero(); }
    [[nodiscard]] std::size_t size() const noexcept { return map_.terms().size(); }

    [[nodiscard]] VectorQ evaluate(const VectorQ& point) const;

    /// Canonical coefficient vector (keys as in PolyMap).
    [[nodiscard]] SparseVec flatten() const { return SparseVec(map_.terms()); }

    /// Matrix of a linear operator (grade 0, or grade -1 with dim_w > 0).
    [[nodiscard]] MatrixQ linear_matrix() const;

    [[nodiscard]] static bool is_weighted_homogeneous(const GradedSpace& space, int grade, const PolyMap& map);

    PolyOperator& operator+=(const PolyOperator& rhs);
    PolyOperator& operator-=(const PolyOperator& rhs);
    PolyOperator& operator*=(const Scalar& s);
    friend PolyOperator operator+(PolyOperator a, const PolyOperator& b) { return a += b; }
    friend PolyOperator operator-(PolyOperator a, const PolyOperator& b) { return a -= b; }
    friend PolyOperator operator*(const Scalar& s, PolyOperator a) { return a *= s; }
    PolyOperator operator-() const { return Scalar(-1) * *this; }

    /// Equality of canonical coefficient vectors on the same space.
    friend bool operator==(const PolyOperator& a, const PolyOperator& b)
    {
        return a.space_ == b.space_ && a.map_ == b.map_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    void merge_grade(const PolyOperator& rhs);

    GradedSpace space_;
    int grade_ = 0;
    PolyMap map_;
};

/// (f o g)(u) = Df(u)[g(u)]; zero when f is constant.
[[nodiscard]] PolyOperator compose_circ(const PolyOperator& f, const PolyOperator& g);

/// [f, g] = f o g - g o f, of grade grade(f) + grade(g).
[[nodiscard]] PolyOperator lie_bracket(const PolyOperator& f, const PolyOperator& g);

} // namespace kantor
