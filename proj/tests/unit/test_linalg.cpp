#include <doctest.h>

#include <random>

#include "kantor/linalg.hpp"
#include "../support/oracles.hpp"

using namespace kantor;

namespace {

// Random rows x cols matrix of rank at most r, as a product of random factors.
MatrixQ low_rank(std::size_t rows, std::size_t cols, std::size_t r, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-4, 4);
    MatrixQ a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(r));
    MatrixQ b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a.data()[i] = Scalar(d(rng), 1 + std::abs(d(rng)));
    for (Eigen::Index i = 0; i < b.size(); ++i)
        b.data()[i] = Scalar(d(rng));
    return a * b;
}

oracle::Mat to_mat(const MatrixQ& m)
{
    oracle::Mat out(static_cast<std::size_t>(m.rows()), oracle::Vec(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j).to_mpq();
    return out;
}

} // namespace

TEST_SUITE("linalg")
{
    TEST_CASE("dense and sparse ranks agree with naive elimination")
    {
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t rows = 1 + trial % 9, cols = 1 + (trial * 7) % 11, r = trial % 6;
            const MatrixQ m = low_rank(rows, cols, r, rng);
            const std::size_t expected = oracle::rank(to_mat(m));
            CHECK(rank(m) == expected);
            std::vector<SparseVec> vs;
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                vs.push_back(SparseVec::from_dense(m.row(i).transpose()));
            CHECK(rank(std::span<const SparseVec>(vs)) == expected);
        }
    }

    TEST_CASE("in_span recovers coordinates")
    {
        std::mt19937_64 rng(3);
        const MatrixQ basis_m = low_rank(3, 6, 3, rng);
        std::vector<VectorQ> basis;
        for (Eigen::Index i = 0; i < 3; ++i)
            basis.emplace_back(basis_m.row(i).transpose());
        const VectorQ v = Scalar(2) * basis[0] - Scalar(1, 3) * basis[2];
        const auto res = in_span(v, basis);
        REQUIRE(res.in_span);
        VectorQ rebuilt = VectorQ::Zero(6);
        for (std::size_t i = 0; i < 3; ++i)
            rebuilt += res.coordinates(static_cast<Eigen::Index>(i)) * basis[i];
        CHECK(rebuilt == v);
        VectorQ off = v;
        bool found = false;
        for (Eigen::Index k = 0; k < 6 && !found; ++k) {
            off = v;
            off(k) += 1;
            found = !in_span(off, basis).in_span;
        }
        CHECK(found);
    }

    TEST_CASE("independent_subset is greedy")
    {
        std::vector<VectorQ> vs{unit_vector(3, 0), unit_vector(3, 0) * Scalar(2), unit_vector(3, 1),
                                unit_vector(3, 0) + unit_vector(3, 1), unit_vector(3, 2)};
        CHECK(independent_subset(vs) == std::vector<std::size_t>{0, 2, 4});
    }

    TEST_CASE("sparse echelon tracks coordinates in insertion order")
    {
        SparseEchelon e(true);
        const SparseVec a = SparseVec::from_dense(unit_vector(4, 0) + unit_vector(4, 2));
        const SparseVec b = SparseVec::from_dense(unit_vector(4, 1) - unit_vector(4, 2));
        CHECK(e.insert(a));
        CHECK(e.insert(b));
        CHECK_FALSE(e.insert(a + b));
        const auto c = e.coordinates(Scalar(3) * a - Scalar(1, 2) * b);
        REQUIRE(c);
        CHECK((*c)[0] == Scalar(3));
        CHECK((*c)[1] == Scalar(-1, 2));
        CHECK_FALSE(e.coordinates(SparseVec::from_dense(unit_vector(4, 3))));
        CHECK(e.contains(a - b));
    }

    TEST_CASE("sparse vector arithmetic drops zeros")
    {
        const SparseVec a = SparseVec::from_unsorted({{5, Scalar(1)}, {2, Scalar(3)}, {5, Scalar(-1)}});
        CHECK(a.size() == 1);
        CHECK(a.get(2) == Scalar(3));
        CHECK((a - a).empty());
    }
}
