#include <doctest.h>

#include "kantor/matrix_lie.hpp"
#include "../support/oracles.hpp"

using namespace kantor;

namespace {

// Grade of E_ij counted directly: the number of chosen simple roots between i and j.
std::vector<std::size_t> counted_dims(std::size_t n, const std::vector<std::size_t>& roots, int nu)
{
    std::vector<std::size_t> dims(static_cast<std::size_t>(2 * nu + 1));
    dims[static_cast<std::size_t>(nu)] = n - 1;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == j)
                continue;
            int k = 0;
            for (std::size_t r : roots)
                if (r >= std::min(i, j) && r < std::max(i, j))
                    ++k;
            if (i > j)
                k = -k;
            ++dims[static_cast<std::size_t>(k + nu)];
        }
    return dims;
}

} // namespace

TEST_SUITE("matrix_lie")
{
    TEST_CASE("graded dimensions match a direct count")
    {
        struct Case {
            std::size_t n;
            std::vector<std::size_t> roots;
            int nu;
        };
        for (const auto& c : std::vector<Case>{{3, {1}, 1}, {3, {1, 2}, 2}, {4, {1, 3}, 2}, {4, {2}, 1}, {5, {2, 3}, 2}}) {
            const auto g = MatrixGradedLieAlgebra::build_sl(c.n, c.roots);
            CHECK(g.max_grade() == c.nu);
            CHECK(g.dim() == c.n * c.n - 1);
            CHECK(g.graded_dims() == counted_dims(c.n, c.roots, c.nu));
            const auto v = verify_grading(g);
            CHECK_MESSAGE(v.pass, v.detail);
        }
        CHECK(MatrixGradedLieAlgebra::build_sl(4, {1, 3}).graded_dims() == std::vector<std::size_t>{1, 4, 5, 4, 1});
    }

    TEST_CASE("bad gradings are rejected")
    {
        CHECK_THROWS(MatrixGradedLieAlgebra::build_sl(3, {}));
        CHECK_THROWS(MatrixGradedLieAlgebra::build_sl(3, {3}));
        CHECK_THROWS(MatrixGradedLieAlgebra::build_sl(4, {1, 2, 3}));
    }

    TEST_CASE("characteristic element grades the basis and coordinates round trip")
    {
        const auto g = MatrixGradedLieAlgebra::build_sl(4, {1, 3});
        CHECK(g.char_elt().trace() == Scalar(0));
        for (std::size_t i = 0; i < g.dim(); ++i) {
            const auto& e = g.element(i);
            CHECK(g.grade_of(e.matrix) == e.grade);
            CHECK(g.coordinates(e.matrix) == unit_vector(static_cast<Eigen::Index>(g.dim()), static_cast<Eigen::Index>(i)));
        }
        MatrixQ x = g.element(0).matrix + Scalar(3, 2) * g.element(5).matrix - g.element(14).matrix;
        CHECK(g.from_coordinates(g.coordinates(x)) == x);
        const MatrixQ mixed = g.element(g.indices_of_grade(1).front()).matrix + g.element(g.indices_of_grade(-2).front()).matrix;
        CHECK_FALSE(g.grade_of(mixed).has_value());
    }

    TEST_CASE("Chevalley involution is a verified graded involution")
    {
        for (const auto& roots : std::vector<std::vector<std::size_t>>{{1}, {1, 2}}) {
            const auto g = MatrixGradedLieAlgebra::build_sl(3, roots);
            const auto tau = chevalley_involution(g);
            const auto v = verify_involution(tau);
            CHECK_MESSAGE(v.pass, v.detail);
            for (const auto& e : g.basis()) {
                CHECK(tau.apply(tau.apply(e.matrix)) == e.matrix);
                CHECK(tau.apply(e.matrix) == MatrixQ(-e.matrix.transpose()));
            }
            const GradedInvolution pseudo(g, tau.action(), InvolutionKind::Pseudoinvolution);
            CHECK_FALSE(verify_involution(pseudo).pass);
        }
    }

    TEST_CASE("matrix commutator")
    {
        const auto g = MatrixGradedLieAlgebra::build_sl(3, {1});
        const MatrixQ e12 = g.element(0).matrix;
        CHECK(commutator(e12, e12).isZero());
        CHECK_THROWS_AS((void)commutator(MatrixQ::Zero(2, 2), MatrixQ::Zero(3, 3)), DimensionError);
    }
}
