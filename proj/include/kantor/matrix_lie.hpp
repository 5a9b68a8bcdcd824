#pragma once

// Graded matrix Lie algebras sl(n) used as independent oracles.
//
// The basis is the off-diagonal E_ij in lexicographic order followed by the
// Cartan elements H_k = E_kk - E_(k+1)(k+1). Selecting simple roots
// {k_1, ...} grades E_ij (i < j) by the number of selected k with i <= k < j,
// and E_ji by minus that number.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kantor/linalg.hpp"

namespace kantor {

template <typename A, typename B>
MatrixQ commutator(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y)
{
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
        throw DimensionError("commutator: operands must be square of equal size");
    MatrixQ xy = x * y;
    xy -= y * x;
    return xy;
}

struct LieBasisElement {
    MatrixQ matrix;
    std::string label;
    int grade = 0;
};

class MatrixGradedLieAlgebra {
public:
    /// sl(n) graded by the given simple roots (1-based). Throws
    /// std::invalid_argument for bad input and when the grading is wider than
    /// a 5-grading.
    static MatrixGradedLieAlgebra build_sl(std::size_t n, std::vector<std::size_t> roots);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] const std::vector<LieBasisElement>& basis() const noexcept { return basis_; }
    [[nodiscard]] const LieBasisElement& element(std::size_t i) const { return basis_.at(i); }
    [[nodiscard]] const MatrixQ& char_elt() const noexcept { return char_elt_; }
    [[nodiscard]] const std::vector<std::size_t>& roots() const noexcept { return roots_; }
    [[nodiscard]] int max_grade() const noexcept { return nu_; }
    [[nodiscard]] std::string label() const;

    /// Basis indices of grade k, in basis order.
    [[nodiscard]] std::vector<std::size_t> indices_of_grade(int k) const;
    /// Dimensions for grades -nu..nu.
    [[nodiscard]] std::vector<std::size_t> graded_dims() const;

    /// Coordinates of a trace-free matrix in the basis.
    [[nodiscard]] VectorQ coordinates(const MatrixQ& x) const;
    [[nodiscard]] MatrixQ from_coordinates(const VectorQ& c) const;
    /// k with [Z, x] = k x, if x is homogeneous and nonzero.
    [[nodiscard]] std::optional<int> grade_of(const MatrixQ& x) const;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> roots_;
    std::vector<LieBasisElement> basis_;
    MatrixQ char_elt_;
    int nu_ = 0;
};

struct CheckOutcome {
    bool pass = true;
    std::string detail; ///< first failure, empty on success
};

/// [Z,b] = grade(b) b, [g_i,g_j] in g_(i+j), span[g_-1,g_1] = g_0 and the
/// dimension count n^2 - 1.
CheckOutcome verify_grading(const MatrixGradedLieAlgebra& g);

enum class InvolutionKind { Involution, Pseudoinvolution };

/// A linear map on g given by its matrix on basis coordinates.
class GradedInvolution {
public:
    GradedInvolution(MatrixGradedLieAlgebra g, MatrixQ action, InvolutionKind kind);

    [[nodiscard]] const MatrixGradedLieAlgebra& algebra() const noexcept { return g_; }
    [[nodiscard]] const MatrixQ& action() const noexcept { return action_; }
    [[nodiscard]] InvolutionKind kind() const noexcept { return kind_; }

    [[nodiscard]] MatrixQ apply(const MatrixQ& x) const;

private:
    MatrixGradedLieAlgebra g_;
    MatrixQ action_;
    InvolutionKind kind_;
};

/// tau(tau x) = x (or (-1)^k x for a pseudoinvolution), tau[x,y] = [tau x, tau y]
/// on basis pairs, and tau(g_k) = g_-k.
CheckOutcome verify_involution(const GradedInvolution& tau);

class InvolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// x -> -x^T, verified; throws InvolutionError if verification fails.
GradedInvolution chevalley_involution(const MatrixGradedLieAlgebra& g);

} // namespace kantor
