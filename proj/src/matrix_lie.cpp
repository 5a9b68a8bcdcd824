#include "kantor/matrix_lie.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace kantor {

namespace {

MatrixQ elementary(std::size_t n, std::size_t i, std::size_t j)
{
    MatrixQ m = MatrixQ::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1;
    return m;
}

// number of selected roots k (1-based) with lo <= k < hi, positions 1-based
int crossed(const std::vector<std::size_t>& roots, std::size_t lo, std::size_t hi)
{
    return static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](std::size_t k) { return lo <= k && k < hi; }));
}

} // namespace

MatrixGradedLieAlgebra MatrixGradedLieAlgebra::build_sl(std::size_t n, std::vector<std::size_t> roots)
{
    if (n < 2)
        throw std::invalid_argument("build_sl: n must be at least 2");
    if (roots.empty())
        throw std::invalid_argument("build_sl: at least one simple root is needed for a grading");
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (std::size_t r : roots)
        if (r < 1 || r >= n)
            throw std::invalid_argument("build_sl: simple root index " + std::to_string(r) + " outside 1.." +
                                        std::to_string(n - 1));

    MatrixGradedLieAlgebra g;
    g.n_ = n;
    g.roots_ = roots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const int k = i < j ? crossed(roots, i + 1, j + 1) : -crossed(roots, j + 1, i + 1);
            g.basis_.push_back({elementary(n, i, j), "E" + std::to_string(i + 1) + std::to_string(j + 1), k});
            g.nu_ = std::max(g.nu_, std::abs(k));
        }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        MatrixQ h = elementary(n, k, k) - elementary(n, k + 1, k + 1);
        g.basis_.push_back({std::move(h), "H" + std::to_string(k + 1), 0});
    }
    if (g.nu_ > 2)
        throw std::invalid_argument("build_sl: the selected roots give a " + std::to_string(2 * g.nu_ + 1) +
                                    "-grading; at most a 5-grading is supported");

    // Z = diag(z_1..z_n) with z_i - z_j = grade(E_ij), shifted to trace zero
    VectorQ z(static_cast<Eigen::Index>(n));
    Scalar sum(0);
    for (std::size_t i = 0; i < n; ++i) {
        z(static_cast<Eigen::Index>(i)) = -crossed(roots, 1, i + 1);
        sum += z(static_cast<Eigen::Index>(i));
    }
    const Scalar mean = sum / Scalar(static_cast<long long>(n));
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) -= mean;
    g.char_elt_ = z.asDiagonal();
    return g;
}

std::string MatrixGradedLieAlgebra::label() const
{
    std::string s = "sl(" + std::to_string(n_) + ")[roots=";
    for (std::size_t i = 0; i < roots_.size(); ++i)
        s += (i ? "," : "") + std::to_string(roots_[i]);
    return s + "]";
}

std::vector<std::size_t> MatrixGradedLieAlgebra::indices_of_grade(int k) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].grade == k)
            out.push_back(i);
    return out;
}

std::vector<std::size_t> MatrixGradedLieAlgebra::graded_dims() const
{
    std::vector<std::size_t> d;
    for (int k = -nu_; k <= nu_; ++k)
        d.push_back(indices_of_grade(k).size());
    return d;
}

VectorQ MatrixGradedLieAlgebra::coordinates(const MatrixQ& x) const
{
    const auto n = static_cast<Eigen::Index>(n_);
    if (x.rows() != n || x.cols() != n)
        throw DimensionError("coordinates: expected a " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
    if (!x.trace().is_zero())
        throw std::invalid_argument("coordinates: matrix is not trace-free");
    VectorQ c = VectorQ::Zero(static_cast<Eigen::Index>(dim()));
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j)
                c(k++) = x(i, j);
    // diag(d) = sum h_k (e_k - e_(k+1))  =>  h_k = d_1 + ... + d_k
    Scalar h(0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        h += x(i, i);
        c(k++) = h;
    }
    return c;
}

MatrixQ MatrixGradedLieAlgebra::from_coordinates(const VectorQ& c) const
{
    if (static_cast<std::size_t>(c.size()) != dim())
        throw DimensionError("from_coordinates: wrong coordinate count");
    const auto n = static_cast<Eigen::Index>(n_);
    MatrixQ x = MatrixQ::Zero(n, n);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!c(static_cast<Eigen::Index>(i)).is_zero())
            x += c(static_cast<Eigen::Index>(i)) * basis_[i].matrix;
    return x;
}

std::optional<int> MatrixGradedLieAlgebra::grade_of(const MatrixQ& x) const
{
    if (is_zero(x))
        return std::nullopt;
    const MatrixQ zx = commutator(char_elt_, x);
    for (int k = -nu_; k <= nu_; ++k)
        if (zx == Scalar(k) * x)
            return k;
    return std::nullopt;
}

CheckOutcome verify_grading(const MatrixGradedLieAlgebra& g)
{
    const auto& b = g.basis();
    for (const auto& e : b)
        if (commutator(g.char_elt(), e.matrix) != Scalar(e.grade) * e.matrix)
            return {false, "[Z, " + e.label + "] != " + std::to_string(e.grade) + " " + e.label};

    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const VectorQ c = g.coordinates(commutator(b[i].matrix, b[j].matrix));
            for (std::size_t k = 0; k < b.size(); ++k)
                if (!c(static_cast<Eigen::Index>(k)).is_zero() && b[k].grade != b[i].grade + b[j].grade)
                    return {false, "[" + b[i].label + ", " + b[j].label + "] has a component along " + b[k].label};
        }

    std::vector<VectorQ> span0;
    for (std::size_t i : g.indices_of_grade(-1))
        for (std::size_t j : g.indices_of_grade(1))
            span0.push_back(g.coordinates(commutator(b[i].matrix, b[j].matrix)));
    const std::size_t dim0 = g.indices_of_grade(0).size();
    if (independent_subset(span0).size() != dim0)
        return {false, "[g_-1, g_1] does not span g_0"};

    std::size_t total = 0;
    for (std::size_t d : g.graded_dims())
        total += d;
    if (total != g.n() * g.n() - 1)
        return {false, "graded dimensions do not sum to n^2 - 1"};
    return {};
}

GradedInvolution::GradedInvolution(MatrixGradedLieAlgebra g, MatrixQ action, InvolutionKind kind)
    : g_(std::move(g)), action_(std::move(action)), kind_(kind)
{
    const auto d = static_cast<Eigen::Index>(g_.dim());
    if (action_.rows() != d || action_.cols() != d)
        throw DimensionError("GradedInvolution: action must be dim x dim");
}

MatrixQ GradedInvolution::apply(const MatrixQ& x) const
{
    return g_.from_coordinates(action_ * g_.coordinates(x));
}

CheckOutcome verify_involution(const GradedInvolution& tau)
{
    const auto& g = tau.algebra();
    const auto& b = g.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const MatrixQ t = tau.apply(b[i].matrix);
        const int sign = tau.kind() == InvolutionKind::Pseudoinvolution && (b[i].grade % 2 != 0) ? -1 : 1;
        if (tau.apply(t) != Scalar(sign) * b[i].matrix)
            return {false, "tau(tau(" + b[i].label + ")) has the wrong sign or value"};
        const VectorQ c = g.coordinates(t);
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!c(static_cast<Eigen::Index>(k)).is_zero() && b[k].grade != -b[i].grade)
                return {false, "tau(" + b[i].label + ") is not in the opposite grade"};
    }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const MatrixQ lhs = tau.apply(commutator(b[i].matrix, b[j].matrix));
            const MatrixQ rhs = commutator(tau.apply(b[i].matrix), tau.apply(b[j].matrix));
            if (lhs != rhs)
                return {false, "tau does not preserve [" + b[i].label + ", " + b[j].label + "]"};
        }
    return {};
}

GradedInvolution chevalley_involution(const MatrixGradedLieAlgebra& g)
{
    const auto d = static_cast<Eigen::Index>(g.dim());
    MatrixQ action(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        action.col(i) = g.coordinates(-g.element(static_cast<std::size_t>(i)).matrix.transpose());
    GradedInvolution tau(g, std::move(action), InvolutionKind::Involution);
    const auto check = verify_involution(tau);
    if (!check.pass)
        throw InvolutionError("Chevalley involution failed verification: " + check.detail);
    return tau;
}

} // namespace kantor
