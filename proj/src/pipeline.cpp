#include "kantor/pipeline.hpp"

#include <algorithm>
#include <chrono>

namespace kantor {

namespace {

constexpr std::size_t small_dim = 8;
constexpr std::size_t default_samples = 500;
constexpr std::size_t default_large_samples = 50;
constexpr std::size_t axiom_samples = 2000;
constexpr std::size_t jacobi_samples = 20;
constexpr std::size_t large_jacobi_samples = 5;
constexpr std::size_t well_defined_samples = 100;
constexpr std::size_t altid_samples = 500;

CheckOptions axiom_options(std::size_t dim, const RunOptions& opts)
{
    const CheckMode mode = opts.mode.value_or(default_mode(dim));
    return {mode, std::max(axiom_samples, opts.samples.value_or(0)), opts.seed};
}

} // namespace

CheckMode default_mode(std::size_t dim)
{
    return dim <= small_dim ? CheckMode::Exhaustive : CheckMode::Sampled;
}

AxiomReport run_axioms(const TripleSystem& t, SystemKind check, const RunOptions& opts)
{
    const CheckOptions co = axiom_options(t.dim(), opts);
    switch (check) {
    case SystemKind::Jts:
        return check_jts(t, co);
    case SystemKind::Kts:
        return check_kts(t, co);
    case SystemKind::Fts:
        return check_fts(t, co);
    }
    return {};
}

GradedAlgebraReport run_build(const ResolvedSystem& sys, const RunOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    const std::size_t dim = sys.system.dim();
    const CheckMode mode = opts.mode.value_or(default_mode(dim));
    const std::size_t samples = opts.samples.value_or(opts.large ? default_large_samples : default_samples);

    GradedAlgebraReport rep;
    rep.system = sys.spec.text;
    rep.kind = to_string(sys.kind);
    rep.mode = opts.large ? "large" : to_string(mode);
    rep.t_scale = sys.t_scale;

    try {
        BuildOptions bo;
        bo.large = opts.large;
        bo.axiom_check = axiom_options(dim, opts);
        const RealizedAlgebra r = RealizedAlgebra::build(sys.kind, sys.system, bo);
        rep.axioms = r.axiom_report();

        const VerifyOptions vo{opts.large ? CheckMode::Sampled : mode, samples, opts.seed, Engine::Auto};
        std::optional<GradedStructure> gs;
        if (opts.large) {
            rep.dims = graded_dims(r);
            rep.relations = verify_commutators(r, vo, nullptr);
            rep.identities.push_back(verify_jacobi(r, large_jacobi_samples, opts.seed, Engine::Auto));
        } else {
            gs.emplace(r);
            rep.dims = gs->dims();
            rep.relations = verify_commutators(r, vo, &*gs);
            rep.identities.push_back(verify_closure(*gs));
            rep.identities.push_back(verify_jacobi(r, jacobi_samples, opts.seed, Engine::Auto));
        }
        if (sys.kind == SystemKind::Kts) {
            rep.identities.push_back(check_well_definedness(r, Family::K, well_defined_samples, opts.seed));
            rep.identities.push_back(check_well_definedness(r, Family::Kt, well_defined_samples, opts.seed));
            if (!opts.large)
                rep.identities.push_back(check_kt_rewrite(r, {mode, samples, opts.seed}));
            const CheckOptions alt{CheckMode::Sampled, altid_samples, opts.seed};
            rep.identities.push_back(check_altid1(sys.system, alt));
            rep.identities.push_back(check_altid2(sys.system, alt));
        }
        rep.euler = euler_grading_check(r, gs ? &*gs : nullptr, 20, opts.seed);
        if (opts.oracle_check) {
            if (sys.g && sys.tau)
                rep.oracle = oracle_isomorphism_check(*sys.g, *sys.tau, r);
            else
                rep.errors.emplace_back("the oracle check needs a system derived from sl(n) with an involution");
        }
    } catch (const AxiomError& e) {
        rep.axioms = e.report();
        rep.errors.emplace_back(e.what());
    } catch (const std::exception& e) {
        rep.errors.emplace_back(e.what());
    }
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<GradedAlgebraReport> run_table(bool large)
{
    std::vector<TripleSystem> systems;
    const auto specs = exceptional_table_specs(large);
    for (const auto& s : specs)
        systems.push_back(resolve_system(parse_system_spec(s)).system);
    auto reps = dimension_table(systems, large);
    for (std::size_t i = 0; i < reps.size(); ++i)
        reps[i].system = specs[i];
    return reps;
}

} // namespace kantor
