#include "kantor/realization.hpp"

#include <algorithm>
#include <stdexcept>

#include "kantor/parallel.hpp"

namespace kantor {

std::string to_string(SystemKind k)
{
    switch (k) {
    case SystemKind::Jts:
        return "jts";
    case SystemKind::Kts:
        return "kts";
    case SystemKind::Fts:
        return "fts";
    }
    return "?";
}

int family_grade(Family f) noexcept
{
    switch (f) {
    case Family::K:
        return -2;
    case Family::U:
        return -1;
    case Family::S:
        return 0;
    case Family::Ut:
        return 1;
    case Family::Kt:
        return 2;
    }
    return 0;
}

bool is_pair_family(Family f) noexcept
{
    return f == Family::K || f == Family::S || f == Family::Kt;
}

std::string family_name(SystemKind kind, Family f)
{
    const bool jordan = kind == SystemKind::Jts;
    switch (f) {
    case Family::K:
        return "K";
    case Family::U:
        return jordan ? "u" : "U";
    case Family::S:
        return jordan ? "s" : "S";
    case Family::Ut:
        return jordan ? "ut" : "Ut";
    case Family::Kt:
        return "Kt";
    }
    return "?";
}

std::optional<Family> family_of_grade(SystemKind kind, int grade)
{
    const int top = kind == SystemKind::Jts ? 1 : 2;
    if (grade < -top || grade > top)
        return std::nullopt;
    static constexpr Family by_grade[] = {Family::K, Family::U, Family::S, Family::Ut, Family::Kt};
    return by_grade[grade + 2];
}

namespace {

bool antisymmetric(Family f)
{
    return f == Family::K || f == Family::Kt;
}

VectorQ head(const VectorQ& p, std::size_t n)
{
    return p.head(static_cast<Eigen::Index>(n));
}

VectorQ tail(const VectorQ& p, std::size_t n)
{
    return p.tail(static_cast<Eigen::Index>(n));
}

VectorQ join(const VectorQ& v, const VectorQ& w)
{
    VectorQ out(v.size() + w.size());
    out << v, w;
    return out;
}

VectorQ scalar_vector(const Scalar& s)
{
    VectorQ v(1);
    v(0) = s;
    return v;
}

} // namespace

// ---------------------------------------------------------------------------

RealizedAlgebra RealizedAlgebra::build(SystemKind kind, TripleSystem t, const BuildOptions& opts)
{
    CheckOptions check;
    if (opts.axiom_check)
        check = *opts.axiom_check;
    else if (t.dim() > 8)
        check.mode = CheckMode::Sampled;

    RealizedAlgebra r;
    r.kind_ = kind;
    r.large_ = opts.large;
    if (opts.verify_axioms) {
        AxiomReport rep = kind == SystemKind::Jts   ? check_jts(t, check)
                          : kind == SystemKind::Kts ? check_kts(t, check)
                                                    : check_fts(t, check);
        if (!rep.pass())
            throw AxiomError(t.label() + " fails the " + rep.check + " axioms", rep);
        r.axioms_ = std::move(rep);
    }
    if (kind == SystemKind::Fts && !t.has_form())
        throw std::invalid_argument("build_fts: the triple system has no form");

    switch (kind) {
    case SystemKind::Jts:
        r.families_ = {Family::U, Family::S, Family::Ut};
        r.bracket_ = BracketSpace();
        r.space_ = {t.dim(), 0};
        break;
    case SystemKind::Kts:
        r.families_ = {Family::K, Family::U, Family::S, Family::Ut, Family::Kt};
        r.bracket_ = compute_bracket_space(t);
        r.space_ = {t.dim(), r.bracket_.dim()};
        break;
    case SystemKind::Fts:
        r.families_ = {Family::K, Family::U, Family::S, Family::Ut, Family::Kt};
        r.bracket_ = scalar_bracket_space(t);
        r.space_ = {t.dim(), 1};
        break;
    }
    if (r.space_.dim() > mono::kMaxVars || std::max(r.space_.dim_v, r.space_.dim_w) > mono::kMaxOutputs)
        throw std::invalid_argument("the operator space is too large for the polynomial encoding");
    r.system_ = std::move(t);
    return r;
}

RealizedAlgebra RealizedAlgebra::build_jts(TripleSystem t, const BuildOptions& opts)
{
    return build(SystemKind::Jts, std::move(t), opts);
}

RealizedAlgebra RealizedAlgebra::build_kts(TripleSystem t, const BuildOptions& opts)
{
    return build(SystemKind::Kts, std::move(t), opts);
}

RealizedAlgebra RealizedAlgebra::build_fts(TripleSystem t, const BuildOptions& opts)
{
    return build(SystemKind::Fts, std::move(t), opts);
}

VectorQ RealizedAlgebra::unit(std::size_t i) const
{
    return unit_vector(static_cast<Eigen::Index>(dim_k()), static_cast<Eigen::Index>(i));
}

std::vector<std::pair<std::size_t, std::size_t>> RealizedAlgebra::generator_indices(Family f) const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t d = dim_k();
    if (!is_pair_family(f)) {
        for (std::size_t a = 0; a < d; ++a)
            out.emplace_back(a, 0);
    } else if (antisymmetric(f)) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a + 1; b < d; ++b)
                out.emplace_back(a, b);
    } else {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                out.emplace_back(a, b);
    }
    return out;
}

PolyOperator RealizedAlgebra::op(Family f, std::size_t a, std::size_t b) const
{
    if (std::find(families_.begin(), families_.end(), f) == families_.end())
        throw std::invalid_argument("op: family " + family_name(kind_, f) + " is not part of this algebra");
    if (a >= dim_k() || (is_pair_family(f) && b >= dim_k()))
        throw std::out_of_range("op: generator index out of range");
    if (!is_pair_family(f))
        b = 0;
    if (antisymmetric(f)) {
        if (a == b)
            return PolyOperator::zero(space_, family_grade(f));
        if (a > b)
            return -op(f, b, a);
    }
    const auto key = std::make_tuple(static_cast<int>(f), a, b);
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->ops.find(key); it != cache_->ops.end())
            return *it->second;
    }
    auto built = std::make_shared<const PolyOperator>(build_op(f, unit(a), is_pair_family(f) ? unit(b) : VectorQ()));
    std::lock_guard lock(cache_->mutex);
    return *cache_->ops.emplace(key, std::move(built)).first->second;
}

PolyOperator RealizedAlgebra::op(Family f, const VectorQ& a, const VectorQ& b) const
{
    if (std::find(families_.begin(), families_.end(), f) == families_.end())
        throw std::invalid_argument("op: family " + family_name(kind_, f) + " is not part of this algebra");
    return build_op(f, a, b);
}

PolyOperator RealizedAlgebra::build_op(Family f, const VectorQ& a, const VectorQ& b) const
{
    const std::size_t dv = space_.dim_v;
    const std::size_t dw = space_.dim_w;
    const std::size_t n = space_.dim();
    const int grade = family_grade(f);
    const StructureTensor& p = system_.product();
    const PolyMap z = PolyMap::variables(n, 0, dv);
    const PolyMap zero_v(n, dv);
    const PolyMap zero_w(n, dw);
    auto cst = [&](const VectorQ& v) { return PolyMap::constant(n, v); };
    const Scalar half(1, 2);
    const Scalar sixth(1, 6);
    const Scalar twelfth(1, 12);

    if (kind_ == SystemKind::Jts) {
        switch (f) {
        case Family::U:
            return PolyOperator::from_parts(space_, grade, cst(a), zero_w);
        case Family::S:
            return PolyOperator::from_parts(space_, grade, multilinear(p, cst(a), cst(b), z), zero_w);
        case Family::Ut:
            return PolyOperator::from_parts(space_, grade, -half * multilinear(p, z, cst(a), z), zero_w);
        default:
            throw std::invalid_argument("op: a Jordan system has only the u, s and ut families");
        }
    }

    const StructureTensor& c = bracket_.coords();
    const StructureTensor& act = bracket_.action();
    const PolyMap zeta = PolyMap::variables(n, dv, dw);

    if (kind_ == SystemKind::Kts) {
        switch (f) {
        case Family::K:
            return PolyOperator::from_parts(space_, grade, zero_v, Scalar(2) * cst(c.apply(a, b)));
        case Family::U:
            return PolyOperator::from_parts(space_, grade, cst(a), multilinear(c, cst(a), z));
        case Family::S:
            return PolyOperator::from_parts(space_, grade, multilinear(p, cst(a), cst(b), z),
                                            -multilinear(c, cst(a), multilinear(act, zeta, cst(b))));
        case Family::Ut: {
            const PolyMap zaz = multilinear(p, z, cst(a), z);
            const PolyMap za = multilinear(act, zeta, cst(a));
            return PolyOperator::from_parts(space_, grade, -half * zaz - half * za,
                                            sixth * multilinear(c, zaz, z) - half * multilinear(c, za, z));
        }
        case Family::Kt: {
            const PolyMap w = multilinear(act, cst(c.apply(a, b)), z);
            const PolyMap zwz = multilinear(p, z, w, z);
            const PolyMap v_part = -sixth * zwz - half * multilinear(act, zeta, w);
            const PolyMap w_part = twelfth * multilinear(c, zwz, z) +
                                   half * multilinear(c, multilinear(act, zeta, cst(a)), multilinear(act, zeta, cst(b)));
            return PolyOperator::from_parts(space_, grade, v_part, w_part);
        }
        }
    }

    // Freudenthal: L is the line of the form, zeta a single coordinate
    switch (f) {
    case Family::K:
        return PolyOperator::from_parts(space_, grade, zero_v, cst(scalar_vector(Scalar(2) * system_.form_value(a, b))));
    case Family::U:
        return PolyOperator::from_parts(space_, grade, cst(a), multilinear(c, cst(a), z));
    case Family::S:
        return PolyOperator::from_parts(space_, grade, multilinear(p, cst(a), cst(b), z),
                                        -system_.form_value(a, b) * zeta);
    case Family::Ut: {
        const PolyMap zaz = multilinear(p, z, cst(a), z);
        const PolyMap zzz = multilinear(p, z, z, z);
        return PolyOperator::from_parts(space_, grade, -half * zaz - half * scalar_times(zeta, cst(a)),
                                        sixth * multilinear(c, zzz, cst(a)) -
                                            half * scalar_times(zeta, multilinear(c, cst(a), z)));
    }
    case Family::Kt: {
        const Scalar alpha = system_.form_value(a, b);
        const PolyMap zzz = multilinear(p, z, z, z);
        return PolyOperator::from_parts(space_, grade, alpha * (sixth * zzz + half * scalar_times(zeta, z)),
                                        alpha * (-twelfth * multilinear(c, zzz, z) + half * scalar_times(zeta, zeta)));
    }
    }
    throw std::invalid_argument("op: unknown family");
}

PolyMap RealizedAlgebra::ut_v_part(const VectorQ& a) const
{
    const std::size_t dv = space_.dim_v;
    const std::size_t n = space_.dim();
    const Scalar half(1, 2);
    const PolyMap z = PolyMap::variables(n, 0, dv);
    PolyMap out = -half * multilinear(system_.product(), z, PolyMap::constant(n, a), z);
    if (kind_ == SystemKind::Kts)
        out -= half * multilinear(bracket_.action(), PolyMap::variables(n, dv, space_.dim_w), PolyMap::constant(n, a));
    else if (kind_ == SystemKind::Fts)
        out -= half * scalar_times(PolyMap::variables(n, dv, 1), PolyMap::constant(n, a));
    return out;
}

VectorQ RealizedAlgebra::eval(Family f, const VectorQ& a, const VectorQ& b, const VectorQ& pt) const
{
    const std::size_t dv = space_.dim_v;
    const std::size_t dw = space_.dim_w;
    if (static_cast<std::size_t>(pt.size()) != space_.dim())
        throw DimensionError("eval: point has the wrong dimension");
    const VectorQ z = head(pt, dv);
    const VectorQ zeta = tail(pt, dw);
    const StructureTensor& p = system_.product();
    const Scalar half(1, 2);
    const Scalar sixth(1, 6);
    const Scalar twelfth(1, 12);
    const VectorQ zero_v = VectorQ::Zero(static_cast<Eigen::Index>(dv));

    if (kind_ == SystemKind::Jts) {
        switch (f) {
        case Family::U:
            return a;
        case Family::S:
            return p.apply(a, b, z);
        case Family::Ut:
            return -half * p.apply(z, a, z);
        default:
            throw std::invalid_argument("eval: a Jordan system has only the u, s and ut families");
        }
    }

    const StructureTensor& c = bracket_.coords();
    const StructureTensor& act = bracket_.action();

    if (kind_ == SystemKind::Kts) {
        switch (f) {
        case Family::K:
            return join(zero_v, Scalar(2) * c.apply(a, b));
        case Family::U:
            return join(a, c.apply(a, z));
        case Family::S:
            return join(p.apply(a, b, z), -c.apply(a, act.apply(zeta, b)));
        case Family::Ut: {
            const VectorQ zaz = p.apply(z, a, z);
            const VectorQ za = act.apply(zeta, a);
            return join(-half * zaz - half * za, sixth * c.apply(zaz, z) - half * c.apply(za, z));
        }
        case Family::Kt: {
            const VectorQ w = act.apply(c.apply(a, b), z);
            const VectorQ zwz = p.apply(z, w, z);
            return join(-sixth * zwz - half * act.apply(zeta, w),
                        twelfth * c.apply(zwz, z) + half * c.apply(act.apply(zeta, a), act.apply(zeta, b)));
        }
        }
    }

    const Scalar s = zeta(0);
    switch (f) {
    case Family::K:
        return join(zero_v, scalar_vector(Scalar(2) * system_.form_value(a, b)));
    case Family::U:
        return join(a, scalar_vector(system_.form_value(a, z)));
    case Family::S:
        return join(p.apply(a, b, z), scalar_vector(-s * system_.form_value(a, b)));
    case Family::Ut: {
        const VectorQ zzz = p.apply(z, z, z);
        return join(-half * p.apply(z, a, z) - half * s * a,
                    scalar_vector(sixth * system_.form_value(zzz, a) - half * s * system_.form_value(a, z)));
    }
    case Family::Kt: {
        const Scalar alpha = system_.form_value(a, b);
        const VectorQ zzz = p.apply(z, z, z);
        return join(alpha * (sixth * zzz + half * s * z),
                    scalar_vector(alpha * (-twelfth * system_.form_value(zzz, z) + half * s * s)));
    }
    }
    throw std::invalid_argument("eval: unknown family");
}

VectorQ RealizedAlgebra::eval(const std::vector<GenTerm>& terms, const VectorQ& p) const
{
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(space_.dim()));
    for (const auto& t : terms)
        if (!t.coeff.is_zero())
            out += t.coeff * eval(t.family, t.a, t.b, p);
    return out;
}

} // namespace kantor
