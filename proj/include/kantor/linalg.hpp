#pragma once

// Exact linear algebra over the rationals.
//
// Dense matrices are Eigen matrices over an exact scalar; rank and span
// queries use fraction-free (Bareiss) elimination on a private copy. Sparse
// vectors keyed by 64-bit indices back the span computations over flattened
// polynomial operators, whose index space is far too large for dense storage.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kantor/rational.hpp"

namespace kantor {

using Scalar = Rational;
using MatrixQ = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero())
                return false;
    return true;
}

/// Basis vector e_i of length n.
inline VectorQ unit_vector(Eigen::Index n, Eigen::Index i)
{
    VectorQ v = VectorQ::Zero(n);
    v(i) = 1;
    return v;
}

/// Column-major flattening of a matrix into a vector.
template <typename Derived>
VectorQ flatten_matrix(const Eigen::MatrixBase<Derived>& m)
{
    VectorQ v(m.rows() * m.cols());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            v(k++) = m(i, j);
    return v;
}

namespace detail {

// Scales every row by the lcm of its denominators so all entries are integers.
void clear_row_denominators(MatrixQ& m);

std::size_t bareiss_rank_inplace(MatrixQ& m);

} // namespace detail

/// Rank of a dense matrix by fraction-free Bareiss elimination.
template <typename Derived>
std::size_t rank(const Eigen::MatrixBase<Derived>& m)
{
    MatrixQ work = m;
    detail::clear_row_denominators(work);
    return detail::bareiss_rank_inplace(work);
}

struct SpanResult {
    bool in_span = false;
    VectorQ coordinates; ///< set when in_span: v = sum coordinates(i) * basis[i]
};

/// Decides whether v is a rational combination of the basis vectors.
SpanResult in_span(const VectorQ& v, std::span<const VectorQ> basis);

/// Indices of a maximal linearly independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(std::span<const VectorQ> vectors);

// ---------------------------------------------------------------------------
// Sparse vectors

/// Sparse vector with strictly increasing 64-bit keys and no stored zeros.
class SparseVec {
public:
    using Entry = std::pair<std::uint64_t, Scalar>;

    SparseVec() = default;
    explicit SparseVec(std::vector<Entry> sorted_entries) : entries_(std::move(sorted_entries)) {}

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    static SparseVec from_unsorted(std::vector<Entry> entries);
    static SparseVec from_dense(const VectorQ& v);

    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] Scalar get(std::uint64_t key) const;
    [[nodiscard]] VectorQ to_dense(std::size_t n) const;

    SparseVec& operator+=(const SparseVec& rhs);
    SparseVec& operator-=(const SparseVec& rhs);
    SparseVec& operator*=(const Scalar& s);
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const Scalar& s, SparseVec a) { return a *= s; }
    friend bool operator==(const SparseVec&, const SparseVec&) = default;

    /// this = alpha * this + beta * rhs
    void combine(const Scalar& alpha, const Scalar& beta, const SparseVec& rhs);

    [[nodiscard]] std::size_t hash() const noexcept;

private:
    std::vector<Entry> entries_;
};

/// Incremental row-echelon basis over sparse vectors.
///
/// Rows are kept as primitive integer vectors and new vectors are reduced with
/// fraction-free row operations followed by content removal, so entries never
/// acquire denominators. With coordinate tracking enabled, each row also
/// remembers its expression in terms of the inserted independent vectors.
class SparseEchelon {
public:
    explicit SparseEchelon(bool track_coordinates = false) : track_(track_coordinates) {}

    /// Inserts v; returns true when v was independent of the current rows.
    bool insert(const SparseVec& v);

    [[nodiscard]] bool contains(const SparseVec& v) const;

    /// Coordinates of v with respect to the independent vectors inserted so
    /// far (in insertion order), or nullopt when v is outside the span.
    [[nodiscard]] std::optional<std::vector<Scalar>> coordinates(const SparseVec& v) const;

    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

private:
    struct Row {
        SparseVec vec;              // primitive, integer entries, positive pivot
        std::vector<Scalar> combo;  // vec = sum combo[i] * inserted[i]
    };

    struct Reduced {
        SparseVec vec;
        Scalar scale;               // vec = scale * v + sum combo[i] * inserted[i]
        std::vector<Scalar> combo;
    };

    [[nodiscard]] Reduced reduce(const SparseVec& v, bool stop_when_independent) const;
    [[nodiscard]] const Row* row_for_pivot(std::uint64_t key) const;

    bool track_;
    std::vector<Row> rows_;
    std::vector<std::pair<std::uint64_t, std::size_t>> pivots_; // sorted by key
};

/// Rank of a family of sparse vectors.
std::size_t rank(std::span<const SparseVec> vectors);

} // namespace kantor
