#include <doctest.h>

#include <random>

#include "kantor/composition.hpp"
#include "kantor/realization.hpp"
#include "../support/oracles.hpp"

using namespace kantor;

namespace {

TripleSystem tensor_system(const std::string& k)
{
    return make_tensor_kts(CompositionAlgebra::standard(k), CompositionAlgebra::standard("O"));
}

bool all_pass(const std::vector<IdentityResult>& xs)
{
    for (const auto& x : xs)
        if (!x.pass()) {
            MESSAGE("failed: " << x.identity);
            return false;
        }
    return !xs.empty();
}

const RealizedAlgebra& r_octonions()
{
    static const RealizedAlgebra r = RealizedAlgebra::build_kts(tensor_system("R"));
    return r;
}

const GradedStructure& r_structure()
{
    static const GradedStructure gs(r_octonions());
    return gs;
}

struct SlSystem {
    MatrixGradedLieAlgebra g;
    GradedInvolution tau;
    RealizedAlgebra r;
};

SlSystem sl_system(std::size_t n, std::vector<std::size_t> roots, SystemKind kind)
{
    auto g = MatrixGradedLieAlgebra::build_sl(n, std::move(roots));
    auto tau = chevalley_involution(g);
    auto r = RealizedAlgebra::build(kind, derive_from_graded(g, tau));
    return {std::move(g), std::move(tau), std::move(r)};
}

} // namespace

TEST_SUITE("realization")
{
    TEST_CASE("generators are graded and antisymmetric where expected")
    {
        const RealizedAlgebra& r = r_octonions();
        CHECK(r.space().dim_v == 8);
        CHECK(r.space().dim_w == 7);
        for (Family f : r.families())
            CHECK(r.op(f, 1, 2).grade() == family_grade(f));
        CHECK(r.op(Family::K, 3, 1) == -r.op(Family::K, 1, 3));
        CHECK(r.op(Family::Kt, 3, 1) == -r.op(Family::Kt, 1, 3));
        CHECK(r.op(Family::K, 2, 2).is_zero());
        CHECK(r.op(Family::S, 1, 2) == r.op(Family::S, r.unit(1), r.unit(2)));
        CHECK(r.generator_indices(Family::K).size() == 28);
        CHECK(r.generator_indices(Family::S).size() == 64);
        CHECK_THROWS((void)r.op(Family::U, 8));
    }

    TEST_CASE("pointwise evaluation matches expanded generators")
    {
        const RealizedAlgebra& r = r_octonions();
        std::mt19937_64 rng(31);
        for (int s = 0; s < 10; ++s) {
            const VectorQ a = sample_vector(8, rng), b = sample_vector(8, rng), p = sample_vector(15, rng);
            for (Family f : r.families())
                CHECK(r.eval(f, a, b, p) == r.op(f, a, b).evaluate(p));
        }
    }

    TEST_CASE("generator brackets agree with the vector field oracle")
    {
        const RealizedAlgebra& r = r_octonions();
        const std::vector<std::pair<Family, Family>> pairs{
            {Family::U, Family::Ut}, {Family::S, Family::K}, {Family::K, Family::Kt}, {Family::S, Family::Ut}};
        for (const auto& [f, g] : pairs) {
            const PolyOperator x = r.op(f, 1, 5), y = r.op(g, 2, 6);
            CHECK(oracle::to_field(lie_bracket(x, y).map()) ==
                  oracle::bracket(oracle::to_field(x.map()), oracle::to_field(y.map())));
        }
    }

    TEST_CASE("L(R (x) O) has graded dimensions 7, 8, 22, 8, 7")
    {
        const GradedDims d = r_structure().dims();
        CHECK(d.dims == std::vector<std::size_t>{7, 8, 22, 8, 7});
        CHECK(d.total() == 52);
        CHECK(d.symmetric());
        CHECK(graded_dims(r_octonions(), RankStrategy::Reduced).dims == d.dims);
        CHECK(graded_dims(r_octonions(), RankStrategy::Full).dims == d.dims);
    }

    TEST_CASE("reduced ranks equal full ranks for H (x) O")
    {
        BuildOptions bo;
        bo.axiom_check = CheckOptions{CheckMode::Sampled, 200, 0};
        const RealizedAlgebra r = RealizedAlgebra::build_kts(tensor_system("H"), bo);
        const GradedDims reduced = graded_dims(r, RankStrategy::Reduced);
        CHECK(reduced.methods == std::vector<std::string>{"full", "full", "full", "projection", "factored"});
        CHECK(reduced.dims == graded_dims(r, RankStrategy::Full).dims);
        CHECK(reduced.total() == 133);
    }

    TEST_CASE("the three verification engines agree on R (x) O")
    {
        const RealizedAlgebra& r = r_octonions();
        const auto exhaustive = verify_commutators(r, {CheckMode::Exhaustive, 0, 0, Engine::Structure}, &r_structure());
        REQUIRE(exhaustive.size() == 13);
        CHECK(all_pass(exhaustive));
        CHECK(exhaustive.front().tuples_checked == 4096);
        CHECK(all_pass(verify_commutators(r, {CheckMode::Sampled, 20, 1, Engine::Direct})));
        CHECK(all_pass(verify_commutators(r, {CheckMode::Sampled, 20, 2, Engine::Pointwise})));
        CHECK(all_pass(verify_commutators(r, {CheckMode::Sampled, 20, 3, Engine::Structure}, &r_structure())));
    }

    TEST_CASE("every engine detects a mutated structure constant")
    {
        BuildOptions bo;
        bo.verify_axioms = false;
        const RealizedAlgebra r =
            RealizedAlgebra::build_kts(mutate_structure_constant(tensor_system("R"), 1, 2, 3, 4, Scalar(1)), bo);
        const GradedStructure gs(r);
        auto failures = [](const std::vector<IdentityResult>& xs) {
            std::size_t n = 0;
            for (const auto& x : xs)
                n += x.pass() ? 0 : 1;
            return n;
        };
        CHECK(failures(verify_commutators(r, {CheckMode::Exhaustive, 0, 0, Engine::Structure}, &gs)) > 0);
        CHECK(failures(verify_commutators(r, {CheckMode::Sampled, 30, 0, Engine::Direct})) > 0);
        CHECK(failures(verify_commutators(r, {CheckMode::Sampled, 30, 0, Engine::Pointwise})) > 0);
        CHECK_THROWS_AS(RealizedAlgebra::build_kts(mutate_structure_constant(tensor_system("R"), 1, 2, 3, 4, Scalar(1))),
                        AxiomError);
    }

    TEST_CASE("closure, Jacobi, well-definedness and the Kt rewrite on R (x) O")
    {
        const RealizedAlgebra& r = r_octonions();
        const IdentityResult closure = verify_closure(r_structure());
        CHECK(closure.pass());
        CHECK(closure.tuples_checked == 1326);
        CHECK(verify_jacobi(r, 10, 0, Engine::Direct).pass());
        CHECK(verify_jacobi(r, 3, 0, Engine::Pointwise).pass());
        CHECK(check_well_definedness(r, Family::K, 100, 0).pass());
        const IdentityResult kt = check_well_definedness(r, Family::Kt, 100, 0);
        CHECK(kt.pass());
        CHECK(kt.tuples_checked >= 100);
        CHECK(check_kt_rewrite(r, {CheckMode::Exhaustive}).pass());
    }

    TEST_CASE("Euler operator grades every generator with one sign")
    {
        const EulerReport e = euler_grading_check(r_octonions(), &r_structure());
        CHECK(e.pass());
        CHECK(e.sign == -1);
        CHECK(e.generators_checked == 136);
        CHECK(e.in_grade0_span == true);
    }

    TEST_CASE("Jordan path: sl(3) with root 1")
    {
        const auto s = sl_system(3, {1}, SystemKind::Jts);
        CHECK(s.r.kind() == SystemKind::Jts);
        CHECK(s.r.space().dim_w == 0);
        const GradedStructure gs(s.r);
        CHECK(gs.dims().dims == std::vector<std::size_t>{2, 4, 2});
        const auto rel = verify_commutators(s.r, {CheckMode::Exhaustive}, &gs);
        CHECK(rel.size() == 6);
        CHECK(all_pass(rel));
        CHECK(all_pass(verify_commutators(s.r, {CheckMode::Sampled, 30, 0, Engine::Pointwise})));
        const IsomorphismReport iso = oracle_isomorphism_check(s.g, s.tau, s.r);
        CHECK(iso.pass());
        CHECK(iso.rank == 8);
        CHECK(euler_grading_check(s.r, &gs).pass());
    }

    TEST_CASE("Kantor oracle path: sl(4) with roots 1 and 3")
    {
        const auto s = sl_system(4, {1, 3}, SystemKind::Kts);
        const GradedStructure gs(s.r);
        CHECK(gs.dims().dims == std::vector<std::size_t>{1, 4, 5, 4, 1});
        CHECK(all_pass(verify_commutators(s.r, {CheckMode::Exhaustive}, &gs)));
        CHECK(verify_closure(gs).pass());
        const IsomorphismReport iso = oracle_isomorphism_check(s.g, s.tau, s.r);
        CHECK(iso.pass());
        CHECK(iso.rank == 15);
        CHECK(iso.pairs_checked == 15 * 15);
        const EulerReport e = euler_grading_check(s.r, &gs);
        CHECK(e.pass());
        CHECK(e.in_grade0_span == true);
    }

    TEST_CASE("the oracle rejects a mismatched algebra")
    {
        const auto s = sl_system(4, {1, 3}, SystemKind::Kts);
        const auto g3 = MatrixGradedLieAlgebra::build_sl(3, {1, 2});
        const auto tau3 = chevalley_involution(g3);
        IsomorphismReport iso;
        try {
            iso = oracle_isomorphism_check(g3, tau3, s.r);
        } catch (const std::exception&) {
            iso = {};
        }
        CHECK_FALSE(iso.pass());
    }

    TEST_CASE("Freudenthal path: sl(3) with roots 1 and 2")
    {
        const auto g = MatrixGradedLieAlgebra::build_sl(3, {1, 2});
        const RealizedAlgebra r = RealizedAlgebra::build_fts(derive_fts(g, g.element(1).matrix));
        CHECK(r.space().dim_w == 1);
        const GradedStructure gs(r);
        CHECK(gs.dims().dims == std::vector<std::size_t>{1, 2, 2, 2, 1});
        const auto rel = verify_commutators(r, {CheckMode::Exhaustive}, &gs);
        CHECK(all_pass(rel));
        bool has_fts_sign = false;
        for (const auto& x : rel)
            has_fts_sign = has_fts_sign || x.identity == "[S_ab,S_cd] = S_(abc)d + S_c(bad)";
        CHECK(has_fts_sign);
        CHECK(all_pass(verify_commutators(r, {CheckMode::Sampled, 30, 0, Engine::Pointwise})));
        CHECK(verify_jacobi(r, 10, 0, Engine::Direct).pass());
        CHECK(euler_grading_check(r, &gs).pass());
    }

    TEST_CASE("dimension table collects per-system errors")
    {
        const auto rows = dimension_table({tensor_system("R"), mutate_structure_constant(tensor_system("R"), 0, 0, 0, 1, Scalar(1))}, false);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].total_dim() == 52);
        CHECK(rows[0].pass());
        CHECK_FALSE(rows[1].pass());
        CHECK_FALSE(rows[1].errors.empty());
    }
}
