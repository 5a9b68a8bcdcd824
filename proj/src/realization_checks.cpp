#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kantor/parallel.hpp"
#include "kantor/realization.hpp"

namespace kantor {

namespace {

using Field = std::function<VectorQ(const VectorQ&)>;

std::size_t index_count(Family f)
{
    return is_pair_family(f) ? 2 : 1;
}

// d/dt f(p + t v) at t = 0 from the values at t = -m..m, exact for
// polynomials of degree <= 2m.
VectorQ derivative(const Field& f, const VectorQ& p, const VectorQ& v, int degree)
{
    const int m = std::max(1, (degree + 1) / 2);
    VectorQ acc;
    for (int k = -m; k <= m; ++k) {
        if (k == 0)
            continue;
        Scalar num(1);
        Scalar den(1);
        for (int j = -m; j <= m; ++j) {
            if (j == k)
                continue;
            den *= Scalar(k - j);
            if (j != 0)
                num *= Scalar(-j);
        }
        const Scalar w = num / den;
        const VectorQ val = f(p + Scalar(k) * v);
        if (acc.size() == 0)
            acc = w * val;
        else
            acc += w * val;
    }
    return acc;
}

// [f, g](p) = Df(p)[g(p)] - Dg(p)[f(p)]; degree bounds the fields' degrees.
VectorQ bracket_at(const Field& f, const Field& g, const VectorQ& p, int degree)
{
    return derivative(f, p, g(p), degree) - derivative(g, p, f(p), degree);
}

VectorQ random_point(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    VectorQ v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = coeff(rng);
    return v;
}

std::uint64_t tuple_seed(std::uint64_t seed, std::span<const VectorQ> tuple)
{
    std::uint64_t h = seed * 0x9e3779b97f4a7c15ULL + 1;
    for (const auto& v : tuple)
        for (Eigen::Index i = 0; i < v.size(); ++i)
            h = (h ^ std::hash<Rational>{}(v(i))) * 0x100000001b3ULL;
    return h;
}

std::string generator_label(SystemKind kind, Family f, std::size_t a, std::size_t b)
{
    std::string s = family_name(kind, f) + "_(" + std::to_string(a);
    if (is_pair_family(f))
        s += "," + std::to_string(b);
    return s + ")";
}

PolyOperator combination(const RealizedAlgebra& r, const std::vector<GenTerm>& terms, int grade)
{
    PolyOperator out = PolyOperator::zero(r.space(), grade);
    for (const auto& t : terms)
        if (!t.coeff.is_zero())
            out += t.coeff * r.op(t.family, t.a, t.b);
    return out;
}

Field generator_field(const RealizedAlgebra& r, Family f, const VectorQ& a, const VectorQ& b)
{
    return [&r, f, a, b](const VectorQ& p) { return r.eval(f, a, b, p); };
}

/// Aggregates per-instance outcomes like check_identity.
IdentityResult collect(std::string name, CheckMode mode, const std::vector<char>& ok,
                       const std::function<std::vector<std::string>(std::size_t)>& describe)
{
    IdentityResult res;
    res.identity = std::move(name);
    res.mode = mode;
    res.tuples_checked = ok.size();
    for (std::size_t i = 0; i < ok.size(); ++i)
        if (!ok[i] && res.failures++ == 0)
            res.counterexample = describe(i);
    return res;
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<RelationSpec> commutation_relations(const RealizedAlgebra& r)
{
    const TripleSystem* t = &r.system();
    auto p = [t](const VectorQ& x, const VectorQ& y, const VectorQ& z) { return t->triple(x, y, z); };
    auto br = [t](const VectorQ& x, const VectorQ& y, const VectorQ& z) { return bracket_apply(*t, x, y, z); };
    auto form = [t](const VectorQ& x, const VectorQ& y) { return t->form_value(x, y); };
    using E = std::span<const VectorQ>;
    using V = std::vector<GenTerm>;
    const Scalar one(1);
    const Scalar minus(-1);
    const VectorQ none;

    std::vector<RelationSpec> out;
    switch (r.kind()) {
    case SystemKind::Jts:
        out = {
            {"[s_ab,s_cd] = s_(abc)d - s_c(bad)", Family::S, Family::S,
             [=](E e) { return V{{one, Family::S, p(e[0], e[1], e[2]), e[3]}, {minus, Family::S, e[2], p(e[1], e[0], e[3])}}; }},
            {"[s_ab,u_c] = u_(abc)", Family::S, Family::U,
             [=](E e) { return V{{one, Family::U, p(e[0], e[1], e[2]), none}}; }},
            {"[s_ab,ut_c] = -ut_(bac)", Family::S, Family::Ut,
             [=](E e) { return V{{minus, Family::Ut, p(e[1], e[0], e[2]), none}}; }},
            {"[u_a,ut_b] = s_ab", Family::U, Family::Ut, [=](E e) { return V{{one, Family::S, e[0], e[1]}}; }},
            {"[ut_a,ut_b] = 0", Family::Ut, Family::Ut, [](E) { return V{}; }},
            {"[u_a,u_b] = 0", Family::U, Family::U, [](E) { return V{}; }},
        };
        break;
    case SystemKind::Kts:
        out = {
            {"[S_ab,S_cd] = S_(abc)d - S_c(bad)", Family::S, Family::S,
             [=](E e) { return V{{one, Family::S, p(e[0], e[1], e[2]), e[3]}, {minus, Family::S, e[2], p(e[1], e[0], e[3])}}; }},
            {"[S_ab,U_c] = U_(abc)", Family::S, Family::U,
             [=](E e) { return V{{one, Family::U, p(e[0], e[1], e[2]), none}}; }},
            {"[S_ab,K_cd] = K_<c,d>(b)a", Family::S, Family::K,
             [=](E e) { return V{{one, Family::K, br(e[2], e[3], e[1]), e[0]}}; }},
            {"[U_a,U_b] = K_ab", Family::U, Family::U, [=](E e) { return V{{one, Family::K, e[0], e[1]}}; }},
            {"[S_ab,Ut_c] = -Ut_(bac)", Family::S, Family::Ut,
             [=](E e) { return V{{minus, Family::Ut, p(e[1], e[0], e[2]), none}}; }},
            {"[S_ab,Kt_cd] = -Kt_<c,d>(a)b", Family::S, Family::Kt,
             [=](E e) { return V{{minus, Family::Kt, br(e[2], e[3], e[0]), e[1]}}; }},
            {"[U_a,Ut_b] = S_ab", Family::U, Family::Ut, [=](E e) { return V{{one, Family::S, e[0], e[1]}}; }},
            {"[U_a,Kt_cd] = -Ut_<c,d>(a)", Family::U, Family::Kt,
             [=](E e) { return V{{minus, Family::Ut, br(e[1], e[2], e[0]), none}}; }},
            {"[K_ab,Ut_c] = U_<a,b>(c)", Family::K, Family::Ut,
             [=](E e) { return V{{one, Family::U, br(e[0], e[1], e[2]), none}}; }},
            {"[K_ab,Kt_cd] = S_<a,b>(c)d - S_<a,b>(d)c", Family::K, Family::Kt,
             [=](E e) {
                 return V{{one, Family::S, br(e[0], e[1], e[2]), e[3]}, {minus, Family::S, br(e[0], e[1], e[3]), e[2]}};
             }},
            {"[Ut_a,Ut_b] = Kt_ab", Family::Ut, Family::Ut, [=](E e) { return V{{one, Family::Kt, e[0], e[1]}}; }},
            {"[Kt_ab,Kt_cd] = 0", Family::Kt, Family::Kt, [](E) { return V{}; }},
            {"[Kt_ab,Ut_c] = 0", Family::Kt, Family::Ut, [](E) { return V{}; }},
        };
        break;
    case SystemKind::Fts:
        out = {
            {"[S_ab,S_cd] = S_(abc)d + S_c(bad)", Family::S, Family::S,
             [=](E e) { return V{{one, Family::S, p(e[0], e[1], e[2]), e[3]}, {one, Family::S, e[2], p(e[1], e[0], e[3])}}; }},
            {"[S_ab,U_c] = U_(abc)", Family::S, Family::U,
             [=](E e) { return V{{one, Family::U, p(e[0], e[1], e[2]), none}}; }},
            {"[S_ab,K_cd] = <c,d> K_ba", Family::S, Family::K,
             [=](E e) { return V{{form(e[2], e[3]), Family::K, e[1], e[0]}}; }},
            {"[U_a,U_b] = K_ab", Family::U, Family::U, [=](E e) { return V{{one, Family::K, e[0], e[1]}}; }},
            {"[S_ab,Ut_c] = Ut_(bac)", Family::S, Family::Ut,
             [=](E e) { return V{{one, Family::Ut, p(e[1], e[0], e[2]), none}}; }},
            {"[S_ab,Kt_cd] = <c,d> Kt_ab", Family::S, Family::Kt,
             [=](E e) { return V{{form(e[2], e[3]), Family::Kt, e[0], e[1]}}; }},
            {"[U_a,Ut_b] = S_ab", Family::U, Family::Ut, [=](E e) { return V{{one, Family::S, e[0], e[1]}}; }},
            {"[U_a,Kt_cd] = <c,d> Ut_a", Family::U, Family::Kt,
             [=](E e) { return V{{form(e[1], e[2]), Family::Ut, e[0], none}}; }},
            {"[K_ab,Ut_c] = <a,b> U_c", Family::K, Family::Ut,
             [=](E e) { return V{{form(e[0], e[1]), Family::U, e[2], none}}; }},
            {"[K_ab,Kt_cd] = <a,b> (S_cd - S_dc)", Family::K, Family::Kt,
             [=](E e) {
                 const Scalar ab = form(e[0], e[1]);
                 return V{{ab, Family::S, e[2], e[3]}, {-ab, Family::S, e[3], e[2]}};
             }},
            {"[Ut_a,Ut_b] = Kt_ab", Family::Ut, Family::Ut, [=](E e) { return V{{one, Family::Kt, e[0], e[1]}}; }},
            {"[Kt_ab,Kt_cd] = 0", Family::Kt, Family::Kt, [](E) { return V{}; }},
            {"[Kt_ab,Ut_c] = 0", Family::Kt, Family::Ut, [](E) { return V{}; }},
        };
        break;
    }
    return out;
}

std::vector<IdentityResult> verify_commutators(const RealizedAlgebra& r, const VerifyOptions& opts,
                                               const GradedStructure* gs)
{
    Engine engine = opts.engine;
    if (engine == Engine::Auto)
        engine = r.large() ? Engine::Pointwise : Engine::Structure;
    std::optional<GradedStructure> local;
    if (engine == Engine::Structure && !gs) {
        local.emplace(r);
        gs = &*local;
    }
    const int degree = r.kind() == SystemKind::Jts ? 2 : 4;

    std::vector<IdentityResult> out;
    const auto specs = commutation_relations(r);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const RelationSpec& spec = specs[s];
        const std::size_t n1 = index_count(spec.left);
        const std::size_t arity = n1 + index_count(spec.right);
        const auto target = family_of_grade(r.kind(), family_grade(spec.left) + family_grade(spec.right));
        const CheckOptions co{opts.mode, opts.samples, opts.seed + s};

        auto holds = [&](std::span<const VectorQ> e) -> bool {
            const VectorQ none;
            const VectorQ& la = e[0];
            const VectorQ& lb = n1 == 2 ? e[1] : none;
            const VectorQ& ra = e[n1];
            const VectorQ& rb = arity - n1 == 2 ? e[n1 + 1] : none;
            const auto rhs = spec.rhs(e);
            if (!target && !rhs.empty())
                throw std::logic_error("relation with a right side outside the grading");
            switch (engine) {
            case Engine::Structure: {
                const VectorQ x = gs->coords(spec.left, {GenTerm{Scalar(1), spec.left, la, lb}});
                const VectorQ y = gs->coords(spec.right, {GenTerm{Scalar(1), spec.right, ra, rb}});
                const auto lhs = gs->bracket_coords(spec.left, x, spec.right, y);
                if (!lhs)
                    return false;
                const VectorQ want = target ? gs->coords(*target, rhs) : VectorQ();
                return *lhs == want;
            }
            case Engine::Direct: {
                const PolyOperator lhs = lie_bracket(r.op(spec.left, la, lb), r.op(spec.right, ra, rb));
                return lhs == combination(r, rhs, lhs.grade());
            }
            default: {
                std::mt19937_64 rng(tuple_seed(opts.seed, e));
                const VectorQ pt = random_point(r.space().dim(), rng);
                const VectorQ lhs = bracket_at(generator_field(r, spec.left, la, lb),
                                               generator_field(r, spec.right, ra, rb), pt, degree);
                return lhs == r.eval(rhs, pt);
            }
            }
        };
        out.push_back(check_identity(spec.name, r.dim_k(), arity, co, holds));
    }
    return out;
}

IdentityResult verify_closure(const GradedStructure& gs)
{
    const RealizedAlgebra& r = gs.algebra();
    struct Pair {
        Family f;
        std::size_t i;
        Family g;
        std::size_t j;
    };
    std::vector<Pair> pairs;
    const auto& fams = r.families();
    for (std::size_t a = 0; a < fams.size(); ++a)
        for (std::size_t b = a; b < fams.size(); ++b)
            for (std::size_t i = 0; i < gs.span(fams[a]).rank(); ++i)
                for (std::size_t j = a == b ? i + 1 : 0; j < gs.span(fams[b]).rank(); ++j)
                    pairs.push_back({fams[a], i, fams[b], j});
    std::vector<char> ok(pairs.size(), 1);
    parallel_for(pairs.size(), [&](std::size_t k) {
        const Pair& q = pairs[k];
        ok[k] = gs.basis_bracket(q.f, q.i, q.g, q.j).closed ? 1 : 0;
    });
    return collect("closure", CheckMode::Exhaustive, ok, [&](std::size_t k) {
        const Pair& q = pairs[k];
        const auto& bi = gs.span(q.f).basis[q.i];
        const auto& bj = gs.span(q.g).basis[q.j];
        return std::vector<std::string>{generator_label(r.kind(), q.f, bi.first, bi.second),
                                        generator_label(r.kind(), q.g, bj.first, bj.second)};
    });
}

IdentityResult verify_jacobi(const RealizedAlgebra& r, std::size_t samples, std::uint64_t seed, Engine engine)
{
    if (engine == Engine::Auto || engine == Engine::Structure)
        engine = !r.large() && r.dim_k() <= 8 ? Engine::Direct : Engine::Pointwise;
    struct Gen {
        Family f;
        VectorQ a;
        VectorQ b;
    };
    struct Triple {
        std::array<Gen, 3> g;
        VectorQ point;
    };
    std::mt19937_64 rng(seed);
    const auto& fams = r.families();
    std::uniform_int_distribution<std::size_t> pick(0, fams.size() - 1);
    std::vector<Triple> triples(samples);
    for (auto& t : triples) {
        for (auto& g : t.g) {
            g.f = fams[pick(rng)];
            g.a = sample_vector(r.dim_k(), rng);
            g.b = is_pair_family(g.f) ? sample_vector(r.dim_k(), rng) : VectorQ();
        }
        t.point = random_point(r.space().dim(), rng);
    }

    std::vector<char> ok(samples, 1);
    parallel_for(samples, [&](std::size_t k) {
        const auto& t = triples[k];
        if (engine == Engine::Direct) {
            std::array<PolyOperator, 3> x;
            for (std::size_t i = 0; i < 3; ++i)
                x[i] = r.op(t.g[i].f, t.g[i].a, t.g[i].b);
            PolyOperator sum = lie_bracket(lie_bracket(x[0], x[1]), x[2]);
            sum += lie_bracket(lie_bracket(x[1], x[2]), x[0]);
            sum += lie_bracket(lie_bracket(x[2], x[0]), x[1]);
            ok[k] = sum.is_zero() ? 1 : 0;
            return;
        }
        std::array<Field, 3> x;
        for (std::size_t i = 0; i < 3; ++i)
            x[i] = generator_field(r, t.g[i].f, t.g[i].a, t.g[i].b);
        const int deg = r.kind() == SystemKind::Jts ? 2 : 4;
        auto outer = [&](const Field& f, const Field& g, const Field& h) -> VectorQ {
            Field fg = [&](const VectorQ& q) { return bracket_at(f, g, q, deg); };
            return derivative(fg, t.point, h(t.point), 2 * deg) - derivative(h, t.point, fg(t.point), deg);
        };
        const VectorQ sum = outer(x[0], x[1], x[2]) + outer(x[1], x[2], x[0]) + outer(x[2], x[0], x[1]);
        ok[k] = is_zero(sum) ? 1 : 0;
    });
    const CheckMode mode = CheckMode::Sampled;
    return collect(engine == Engine::Direct ? "jacobi" : "jacobi (pointwise)", mode, ok, [&](std::size_t k) {
        std::vector<std::string> out;
        for (const auto& g : triples[k].g)
            out.push_back(family_name(r.kind(), g.f));
        return out;
    });
}

IdentityResult check_well_definedness(const RealizedAlgebra& r, Family f, std::size_t samples, std::uint64_t seed)
{
    if (r.kind() != SystemKind::Kts)
        throw std::invalid_argument("check_well_definedness: only defined for Kantor systems");
    if (f != Family::K && f != Family::Kt)
        throw std::invalid_argument("check_well_definedness: only K and Kt depend on <a,b> alone");
    const BracketSpace& bs = r.bracket_space();
    std::vector<VectorQ> basis;
    for (const auto& m : bs.basis())
        basis.push_back(flatten_matrix(m));
    const bool pointwise = r.large();
    const CheckOptions co{CheckMode::Sampled, samples, seed};
    const std::string name = family_name(r.kind(), f) + "_uv = sum lambda_m " + family_name(r.kind(), f) +
                             "_(i_m j_m) when <u,v> = sum lambda_m B_m";
    return check_identity(name, r.dim_k(), 2, co, [&](std::span<const VectorQ> e) {
        const SpanResult sr = in_span(flatten_matrix(bracket_op(r.system(), e[0], e[1])), basis);
        if (!sr.in_span)
            return false;
        std::vector<GenTerm> rhs;
        for (std::size_t m = 0; m < bs.dim(); ++m) {
            const Scalar& c = sr.coordinates(static_cast<Eigen::Index>(m));
            if (!c.is_zero())
                rhs.push_back({c, f, r.unit(bs.basis_pairs()[m].first), r.unit(bs.basis_pairs()[m].second)});
        }
        if (pointwise) {
            std::mt19937_64 rng(tuple_seed(seed, e));
            const VectorQ pt = random_point(r.space().dim(), rng);
            return r.eval(f, e[0], e[1], pt) == r.eval(rhs, pt);
        }
        return r.op(f, e[0], e[1]) == combination(r, rhs, family_grade(f));
    });
}

IdentityResult check_kt_rewrite(const RealizedAlgebra& r, const CheckOptions& opts)
{
    if (r.kind() != SystemKind::Kts)
        throw std::invalid_argument("check_kt_rewrite: only defined for Kantor systems");
    const BracketSpace& bs = r.bracket_space();
    const TripleSystem& t = r.system();
    const std::size_t dv = r.space().dim_v;
    const std::size_t dl = bs.dim();
    const std::size_t n = r.space().dim();
    const PolyMap zeta = PolyMap::variables(n, dv, dl);
    std::vector<VectorQ> units;
    for (std::size_t i = 0; i < t.dim(); ++i)
        units.push_back(r.unit(i));

    return check_identity("<Z(a),Z(b)> rewritten by altid2", t.dim(), 2, opts, [&](std::span<const VectorQ> e) {
        const VectorQ& a = e[0];
        const VectorQ& b = e[1];
        const PolyMap direct =
            Scalar(1, 2) * multilinear(bs.coords(), multilinear(bs.action(), zeta, PolyMap::constant(n, a)),
                                       multilinear(bs.action(), zeta, PolyMap::constant(n, b)));
        std::vector<PolyMap::Term> terms;
        for (std::size_t m = 0; m < dl; ++m)
            for (std::size_t q = 0; q < dl; ++q) {
                const VectorQ& u = units[bs.basis_pairs()[m].first];
                const VectorQ& v = units[bs.basis_pairs()[m].second];
                const VectorQ& x = units[bs.basis_pairs()[q].first];
                const VectorQ& y = units[bs.basis_pairs()[q].second];
                const VectorQ aby = bracket_apply(t, a, b, y);
                const VectorQ abx = bracket_apply(t, a, b, x);
                const VectorQ w = bs.coordinates_of(t.triple(x, aby, u), v) - bs.coordinates_of(t.triple(y, abx, u), v) +
                                  bs.coordinates_of(t.triple(y, abx, v), u) - bs.coordinates_of(t.triple(x, aby, v), u);
                mono::Monomial mo;
                mo.degree = 2;
                mo.vars[0] = static_cast<std::uint8_t>(dv + std::min(m, q));
                mo.vars[1] = static_cast<std::uint8_t>(dv + std::max(m, q));
                for (std::size_t l = 0; l < dl; ++l)
                    if (!w(static_cast<Eigen::Index>(l)).is_zero())
                        terms.emplace_back(mono::pack(l, mo), Scalar(1, 4) * w(static_cast<Eigen::Index>(l)));
            }
        return PolyMap::from_terms(n, dl, std::move(terms)) == direct;
    });
}

EulerReport euler_grading_check(const RealizedAlgebra& r, const GradedStructure* gs, std::size_t large_samples,
                                std::uint64_t seed)
{
    struct Item {
        Family f;
        std::size_t a;
        std::size_t b;
    };
    std::vector<Item> items;
    std::mt19937_64 rng(seed);
    for (Family f : r.families()) {
        const auto idx = r.generator_indices(f);
        if (!r.large() || idx.size() <= large_samples) {
            for (const auto& [a, b] : idx)
                items.push_back({f, a, b});
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
        for (std::size_t s = 0; s < large_samples; ++s) {
            const auto& [a, b] = idx[pick(rng)];
            items.push_back({f, a, b});
        }
    }

    // [E, X] = lambda X, with lambda recorded per item (nullopt: not proportional)
    struct Outcome {
        bool zero = false;
        std::optional<Scalar> lambda;
    };
    const PolyOperator euler = PolyOperator::euler(r.space());
    const std::size_t nw = r.space().dim_w;
    const Field e_field = [nw](const VectorQ& p) {
        VectorQ out = p;
        out.tail(static_cast<Eigen::Index>(nw)) *= Scalar(2);
        return out;
    };
    std::vector<Outcome> outcome(items.size());
    std::vector<VectorQ> points(items.size());
    for (auto& pt : points)
        pt = random_point(r.space().dim(), rng);
    parallel_for(items.size(), [&](std::size_t k) {
        const Item& it = items[k];
        const VectorQ a = r.unit(it.a);
        const VectorQ b = is_pair_family(it.f) ? r.unit(it.b) : VectorQ();
        if (!r.large()) {
            const PolyOperator x = r.op(it.f, it.a, it.b);
            if (x.is_zero()) {
                outcome[k].zero = true;
                return;
            }
            const PolyOperator ex = lie_bracket(euler, x);
            const auto& first = x.map().terms().front();
            const Scalar lambda = ex.flatten().get(first.first) / first.second;
            if (ex == lambda * x)
                outcome[k].lambda = lambda;
            return;
        }
        const VectorQ x = r.eval(it.f, a, b, points[k]);
        if (is_zero(x)) {
            outcome[k].zero = true;
            return;
        }
        const VectorQ ex = bracket_at(e_field, generator_field(r, it.f, a, b), points[k], 4);
        Eigen::Index i = 0;
        while (x(i).is_zero())
            ++i;
        const Scalar lambda = ex(i) / x(i);
        if (ex == lambda * x)
            outcome[k].lambda = lambda;
    });

    EulerReport rep;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (outcome[k].zero)
            continue;
        ++rep.generators_checked;
        const int grade = family_grade(items[k].f);
        bool ok = outcome[k].lambda.has_value();
        if (ok && grade != 0 && rep.sign == 0) {
            const Scalar s = *outcome[k].lambda / Scalar(grade);
            if (s == Scalar(1) || s == Scalar(-1))
                rep.sign = s.sign();
            else
                ok = false;
        }
        if (ok && rep.sign != 0)
            ok = *outcome[k].lambda == Scalar(rep.sign * grade);
        if (ok && grade == 0)
            ok = outcome[k].lambda->is_zero();
        if (!ok && rep.failures++ == 0)
            rep.counterexample = generator_label(r.kind(), items[k].f, items[k].a, items[k].b);
    }
    if (rep.sign == 0 && rep.failures == 0)
        rep.counterexample = "no generator of nonzero grade fixes the sign";

    if (gs)
        rep.in_grade0_span = gs->coords_of(Family::S, euler).has_value();
    else
        rep.in_grade0_span = family_span(r, Family::S).echelon->contains(euler.flatten());
    return rep;
}

// ---------------------------------------------------------------------------

IsomorphismReport oracle_isomorphism_check(const MatrixGradedLieAlgebra& g, const GradedInvolution& tau,
                                           const RealizedAlgebra& r)
{
    if (r.kind() == SystemKind::Fts)
        throw std::invalid_argument("oracle_isomorphism_check: Freudenthal systems are not covered");
    IsomorphismReport rep;
    rep.dim_g = g.dim();
    const auto minus1 = g.indices_of_grade(-1);
    if (minus1.size() != r.dim_k())
        throw DimensionError("oracle_isomorphism_check: g_-1 and the triple system differ in dimension");
    std::vector<MatrixQ> a;
    std::vector<MatrixQ> ta;
    for (std::size_t i : minus1) {
        a.push_back(g.element(i).matrix);
        ta.push_back(tau.apply(g.element(i).matrix));
    }
    const std::size_t d = a.size();

    struct Spanning {
        VectorQ coords;
        PolyOperator image;
        std::string label;
    };
    std::map<int, std::vector<Spanning>> rows;
    for (std::size_t i = 0; i < d; ++i) {
        const std::string si = std::to_string(i);
        rows[-1].push_back({g.coordinates(a[i]), r.op(Family::U, i), "a" + si});
        rows[1].push_back({g.coordinates(ta[i]), r.op(Family::Ut, i), "tau a" + si});
        for (std::size_t j = 0; j < d; ++j) {
            const std::string sj = std::to_string(j);
            rows[0].push_back({g.coordinates(commutator(a[i], ta[j])), r.op(Family::S, i, j),
                               "[a" + si + ", tau a" + sj + "]"});
            if (r.kind() == SystemKind::Kts && i < j) {
                rows[-2].push_back({g.coordinates(commutator(a[i], a[j])), r.op(Family::K, i, j),
                                    "[a" + si + ", a" + sj + "]"});
                rows[2].push_back({g.coordinates(commutator(ta[i], ta[j])), r.op(Family::Kt, i, j),
                                   "[tau a" + si + ", tau a" + sj + "]"});
            }
        }
    }

    // phi on the basis of g, grade by grade
    std::vector<std::optional<PolyOperator>> phi(g.dim());
    rep.well_defined = true;
    rep.grades_preserved = true;
    for (auto& [k, span] : rows) {
        std::vector<VectorQ> vecs;
        for (const auto& s : span) {
            vecs.push_back(s.coords);
            for (std::size_t i : support(s.coords))
                if (g.element(i).grade != k) {
                    rep.grades_preserved = false;
                    rep.witness = s.label + " is not of grade " + std::to_string(k);
                }
            if (!s.image.is_zero() && s.image.grade() != k) {
                rep.grades_preserved = false;
                rep.witness = "the image of " + s.label + " is not of grade " + std::to_string(k);
            }
        }
        const auto indep = independent_subset(vecs);
        std::vector<VectorQ> basis;
        for (std::size_t i : indep)
            basis.push_back(vecs[i]);
        auto image_of = [&](const VectorQ& c) {
            PolyOperator out = PolyOperator::zero(r.space(), k);
            for (std::size_t i = 0; i < indep.size(); ++i)
                if (!c(static_cast<Eigen::Index>(i)).is_zero())
                    out += c(static_cast<Eigen::Index>(i)) * span[indep[i]].image;
            return out;
        };
        std::vector<char> ok(span.size(), 1);
        parallel_for(span.size(), [&](std::size_t t) {
            const SpanResult sr = in_span(vecs[t], basis);
            ok[t] = sr.in_span && image_of(sr.coordinates) == span[t].image ? 1 : 0;
        });
        rep.spanning_checked += span.size();
        for (std::size_t t = 0; t < span.size(); ++t)
            if (!ok[t] && rep.well_defined) {
                rep.well_defined = false;
                rep.witness = "phi is not well defined on " + span[t].label;
            }
        for (std::size_t i : g.indices_of_grade(k)) {
            const SpanResult sr = in_span(unit_vector(static_cast<Eigen::Index>(g.dim()), static_cast<Eigen::Index>(i)),
                                          basis);
            if (!sr.in_span) {
                rep.well_defined = false;
                rep.witness = g.element(i).label + " is not in the span of the grade " + std::to_string(k) + " row";
                continue;
            }
            phi[i] = image_of(sr.coordinates);
        }
    }
    for (std::size_t i = 0; i < g.dim(); ++i)
        if (!phi[i]) {
            rep.well_defined = false;
            if (!rep.witness)
                rep.witness = g.element(i).label + " has no image";
            phi[i] = PolyOperator::zero(r.space(), g.element(i).grade);
        }

    SparseEchelon ech;
    for (const auto& p : phi)
        ech.insert(p->flatten());
    rep.rank = ech.rank();
    rep.bijective = rep.rank == g.dim();
    if (!rep.bijective && !rep.witness)
        rep.witness = "rank " + std::to_string(rep.rank) + " < " + std::to_string(g.dim());

    const std::size_t n = g.dim();
    std::vector<char> ok(n * n, 1);
    parallel_for(n * n, [&](std::size_t k) {
        const std::size_t i = k / n;
        const std::size_t j = k % n;
        const VectorQ c = g.coordinates(commutator(g.element(i).matrix, g.element(j).matrix));
        PolyOperator lhs = PolyOperator::zero(r.space(), g.element(i).grade + g.element(j).grade);
        for (std::size_t l : support(c))
            lhs += c(static_cast<Eigen::Index>(l)) * *phi[l];
        ok[k] = lhs == lie_bracket(*phi[i], *phi[j]) ? 1 : 0;
    });
    rep.pairs_checked = n * n;
    rep.homomorphism = true;
    for (std::size_t k = 0; k < n * n; ++k)
        if (!ok[k]) {
            rep.homomorphism = false;
            if (!rep.witness)
                rep.witness = "phi[" + g.element(k / n).label + ", " + g.element(k % n).label +
                              "] != [phi " + g.element(k / n).label + ", phi " + g.element(k % n).label + "]";
            break;
        }
    return rep;
}

// ---------------------------------------------------------------------------

std::size_t GradedAlgebraReport::relations_verified() const
{
    return static_cast<std::size_t>(std::count_if(relations.begin(), relations.end(), [](const auto& x) { return x.pass(); }));
}

bool GradedAlgebraReport::pass() const
{
    if (!errors.empty())
        return false;
    if (axioms && !axioms->pass())
        return false;
    for (const auto& x : relations)
        if (!x.pass())
            return false;
    for (const auto& x : identities)
        if (!x.pass())
            return false;
    if (euler && !euler->pass())
        return false;
    if (oracle && !oracle->pass())
        return false;
    return dims.symmetric();
}

std::vector<GradedAlgebraReport> dimension_table(const std::vector<TripleSystem>& systems, bool large)
{
    std::vector<GradedAlgebraReport> out;
    for (const auto& t : systems) {
        const auto start = std::chrono::steady_clock::now();
        GradedAlgebraReport rep;
        rep.system = t.label();
        rep.kind = "kts";
        rep.mode = large ? "large" : "standard";
        try {
            BuildOptions bo;
            bo.large = large;
            const RealizedAlgebra r = RealizedAlgebra::build_kts(t, bo);
            rep.axioms = r.axiom_report();
            rep.dims = graded_dims(r);
        } catch (const AxiomError& e) {
            rep.axioms = e.report();
            rep.errors.emplace_back(e.what());
        } catch (const std::exception& e) {
            rep.errors.emplace_back(e.what());
        }
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace kantor
