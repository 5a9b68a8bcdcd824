#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kantor/composition.hpp"
#include "kantor/triple_system.hpp"
#include "../support/oracles.hpp"

using namespace kantor;

namespace {

VectorQ random_element(std::size_t dim, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-5, 5);
    VectorQ v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Scalar(d(rng), 1 + std::abs(d(rng)));
    return v;
}

} // namespace

TEST_SUITE("composition")
{
    TEST_CASE("multiplication tables match the recursive doubling oracle")
    {
        for (const auto& name : CompositionAlgebra::standard_names()) {
            CAPTURE(name);
            const auto a = CompositionAlgebra::standard(name);
            const auto o = oracle::standard_cd(name);
            REQUIRE(a.dimension() == o.dim());
            for (std::size_t i = 0; i < a.dimension(); ++i)
                for (std::size_t j = 0; j < a.dimension(); ++j)
                    CHECK(oracle::to_vec(a.multiply(a.basis(i), a.basis(j))) ==
                          o.mul(oracle::to_vec(a.basis(i)), oracle::to_vec(a.basis(j))));
        }
    }

    TEST_CASE("quaternions are associative on all basis triples")
    {
        const auto h = CompositionAlgebra::standard("H");
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    CHECK(h.associator(h.basis(i), h.basis(j), h.basis(k)).isZero());
    }

    TEST_CASE("octonions are alternative on all basis triples but not associative")
    {
        for (const char* name : {"O", "split-O"}) {
            const auto o = CompositionAlgebra::standard(name);
            std::size_t nonassoc = 0;
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j)
                    for (std::size_t k = 0; k < 8; ++k) {
                        const VectorQ x = o.basis(i), y = o.basis(j), z = o.basis(k);
                        const VectorQ a = o.associator(x, y, z);
                        CHECK(a == -o.associator(y, x, z));
                        CHECK(a == -o.associator(x, z, y));
                        nonassoc += a.isZero() ? 0 : 1;
                    }
            CHECK(nonassoc > 0);
        }
    }

    TEST_CASE("norm is multiplicative on seeded rational pairs")
    {
        std::mt19937_64 rng(4);
        for (const auto& name : CompositionAlgebra::standard_names()) {
            CAPTURE(name);
            const auto a = CompositionAlgebra::standard(name);
            for (int t = 0; t < 1000; ++t) {
                const VectorQ x = random_element(a.dimension(), rng), y = random_element(a.dimension(), rng);
                REQUIRE(a.norm(a.multiply(x, y)) == a.norm(x) * a.norm(y));
            }
        }
    }

    TEST_CASE("conjugation reverses products")
    {
        std::mt19937_64 rng(5);
        const auto h = CompositionAlgebra::standard("H");
        for (int t = 0; t < 200; ++t) {
            const VectorQ x = random_element(4, rng), y = random_element(4, rng);
            CHECK(h.conjugate(h.multiply(x, y)) == h.multiply(h.conjugate(y), h.conjugate(x)));
        }
        const auto o = CompositionAlgebra::standard("O");
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                CHECK(o.conjugate(o.multiply(o.basis(i), o.basis(j))) ==
                      o.multiply(o.conjugate(o.basis(j)), o.conjugate(o.basis(i))));
    }

    TEST_CASE("tensor algebra acts factor-wise and conjugation is an involution")
    {
        std::mt19937_64 rng(6);
        const auto t = CompositionAlgebra::tensor(CompositionAlgebra::standard("C"), CompositionAlgebra::standard("O"));
        const oracle::Tensor ot{oracle::standard_cd("C"), oracle::standard_cd("O")};
        REQUIRE(t.dimension() == 16);
        for (int s = 0; s < 50; ++s) {
            const VectorQ x = random_element(16, rng), y = random_element(16, rng);
            CHECK(oracle::to_vec(t.multiply(x, y)) == ot.mul(oracle::to_vec(x), oracle::to_vec(y)));
            CHECK(t.conjugate(t.conjugate(x)) == x);
            CHECK(oracle::to_vec(t.conjugate(x)) == ot.conj(oracle::to_vec(x)));
        }
    }

    TEST_CASE("octonion triples and JSON export")
    {
        const auto o = CompositionAlgebra::standard("O");
        const auto triples = o.imaginary_triples();
        std::set<std::array<std::size_t, 3>> lines;
        for (auto [i, j, k] : triples) {
            CHECK(i < j);
            CHECK(o.multiply(o.basis(i), o.basis(j)) == o.basis(k));
            std::array<std::size_t, 3> line{i, j, k};
            std::sort(line.begin(), line.end());
            lines.insert(line);
        }
        CHECK(lines.size() == 7);
        const auto j = o.to_json();
        CHECK(j.contains("basis"));
        CHECK(j["dimension"] == 8);
    }

    TEST_CASE("element wrapper rejects mixed algebras")
    {
        auto h = std::make_shared<const CompositionAlgebra>(CompositionAlgebra::standard("H"));
        auto c = std::make_shared<const CompositionAlgebra>(CompositionAlgebra::standard("C"));
        const auto i = AlgebraElement::basis(h, 1), j = AlgebraElement::basis(h, 2);
        CHECK((i * j).coeffs() == h->multiply(h->basis(1), h->basis(2)));
        CHECK((i * i).coeffs() == -h->unit());
        CHECK_THROWS_AS((void)(i * AlgebraElement::basis(c, 1)), AlgebraMismatch);
        CHECK_THROWS((void)CompositionAlgebra::standard("Z"));
    }
}
