#include <doctest.h>

#include <random>

#include "kantor/matrix_lie.hpp"
#include "kantor/poly_operator.hpp"
#include "../support/oracles.hpp"

using namespace kantor;

namespace {

const GradedSpace space{3, 2};

struct Triple {
    PolyOperator f, g, h;
};

std::vector<Triple> seeded_triples(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> grade(-2, 2);
    std::vector<Triple> out;
    while (out.size() < count) {
        const int a = grade(rng), b = grade(rng), c = grade(rng);
        if (std::abs(a + b + c) > 4)
            continue;
        out.push_back({oracle::random_operator(space, a, rng), oracle::random_operator(space, b, rng),
                       oracle::random_operator(space, c, rng)});
    }
    return out;
}

MatrixQ block_diagonal(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-3, 3);
    MatrixQ m = MatrixQ::Zero(5, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = d(rng);
    for (int i = 3; i < 5; ++i)
        for (int j = 3; j < 5; ++j)
            m(i, j) = d(rng);
    return m;
}

} // namespace

TEST_SUITE("poly_operator")
{
    TEST_CASE("packed monomial keys round trip and order by output then degree")
    {
        mono::Monomial m;
        m.degree = 3;
        m.vars = {1, 1, 4};
        const auto key = mono::pack(7, m);
        const auto back = mono::unpack(key);
        CHECK(back.degree == 3);
        CHECK(back.vars[0] == 1);
        CHECK(back.vars[2] == 4);
        CHECK(mono::output_of(key) == 7);
        CHECK(mono::degree_of(key) == 3);
        CHECK(mono::pack(0, m) < mono::pack(1, mono::Monomial{}));
        mono::Monomial big;
        big.degree = 4;
        CHECK_THROWS_AS((void)mono::multiply(big, big), DegreeOverflow);
    }

    TEST_CASE("bracket is antisymmetric, grade additive and satisfies Jacobi on seeded triples")
    {
        const auto triples = seeded_triples(200, 11);
        std::size_t nonzero = 0;
        for (const auto& [f, g, h] : triples) {
            const PolyOperator fg = lie_bracket(f, g);
            CHECK(fg == -lie_bracket(g, f));
            CHECK(fg.grade() == f.grade() + g.grade());
            CHECK(PolyOperator::is_weighted_homogeneous(space, fg.grade(), fg.map()));
            const PolyOperator jac =
                lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) + lie_bracket(h, fg);
            CHECK(jac.is_zero());
            nonzero += fg.is_zero() ? 0 : 1;
        }
        CHECK(nonzero > 100);
    }

    TEST_CASE("bracket agrees with the vector field commutator oracle on seeded pairs")
    {
        const auto triples = seeded_triples(200, 12);
        for (const auto& [f, g, h] : triples) {
            (void)h;
            const auto expected = oracle::bracket(oracle::to_field(f.map()), oracle::to_field(g.map()));
            CHECK(oracle::to_field(lie_bracket(f, g).map()) == expected);
        }
    }

    TEST_CASE("composition is the directional derivative")
    {
        std::mt19937_64 rng(13);
        for (int t = 0; t < 50; ++t) {
            const PolyOperator f = oracle::random_operator(space, 1, rng);
            const PolyOperator g = oracle::random_operator(space, -1, rng);
            const PolyOperator fg = compose_circ(f, g);
            VectorQ p(5);
            for (Eigen::Index i = 0; i < 5; ++i)
                p(i) = Scalar(std::uniform_int_distribution<int>(-4, 4)(rng), 3);
            // f is polynomial of degree <= 3, so a 7-point stencil is exact
            const VectorQ gp = g.evaluate(p);
            VectorQ deriv = VectorQ::Zero(5);
            const std::array<Scalar, 7> w{Scalar(-1, 60), Scalar(3, 20), Scalar(-3, 4), Scalar(0),
                                          Scalar(3, 4),  Scalar(-3, 20), Scalar(1, 60)};
            for (int s = -3; s <= 3; ++s)
                deriv += w[static_cast<std::size_t>(s + 3)] * f.evaluate(p + Scalar(s) * gp);
            CHECK(fg.evaluate(p) == deriv);
        }
        const PolyOperator c = PolyOperator::from_parts(space, -2, PolyMap(5, 3), PolyMap::constant(5, unit_vector(2, 0)));
        CHECK(compose_circ(c, oracle::random_operator(space, 1, rng)).is_zero());
    }

    TEST_CASE("linear operators bracket like matrices")
    {
        std::mt19937_64 rng(14);
        for (int t = 0; t < 30; ++t) {
            const MatrixQ a = block_diagonal(rng), b = block_diagonal(rng);
            const PolyOperator la = PolyOperator::linear(space, a), lb = PolyOperator::linear(space, b);
            CHECK(lie_bracket(la, lb).linear_matrix() == commutator(a, b));
        }
    }

    TEST_CASE("Euler operator measures the grade with sign -1")
    {
        std::mt19937_64 rng(15);
        const PolyOperator e = PolyOperator::euler(space);
        for (int k = -2; k <= 2; ++k) {
            const PolyOperator x = oracle::random_operator(space, k, rng);
            CHECK(lie_bracket(e, x) == Scalar(-k) * x);
        }
    }

    TEST_CASE("operators reject non-homogeneous maps and shape mismatches")
    {
        const PolyMap vars = PolyMap::variables(5, 0, 5);
        CHECK_NOTHROW(PolyOperator(space, 0, PolyMap::variables(5, 0, 5)));
        CHECK_THROWS_AS(PolyOperator(space, 1, vars), GradingError);
        CHECK_THROWS_AS(PolyOperator(GradedSpace{2, 2}, 0, vars), DimensionError);
        CHECK_THROWS(vars + PolyMap(4, 5));
    }

    TEST_CASE("evaluation matches substitution")
    {
        // f(x) = (x0 x1, x2^2 - 3, ...)
        std::vector<PolyMap::Term> terms;
        mono::Monomial m01;
        m01.degree = 2;
        m01.vars = {0, 1};
        mono::Monomial m22;
        m22.degree = 2;
        m22.vars = {2, 2};
        terms.emplace_back(mono::pack(0, m01), Scalar(1));
        terms.emplace_back(mono::pack(1, m22), Scalar(1));
        terms.emplace_back(mono::pack(1, mono::Monomial{}), Scalar(-3));
        const PolyMap f = PolyMap::from_terms(3, 2, terms);
        VectorQ p(3);
        p << Scalar(2), Scalar(1, 2), Scalar(-3);
        const VectorQ v = f.evaluate(p);
        CHECK(v(0) == Scalar(1));
        CHECK(v(1) == Scalar(6));
        CHECK(f.max_degree() == 2);
    }
}
