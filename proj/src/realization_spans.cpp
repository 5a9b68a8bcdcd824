#include <algorithm>
#include <stdexcept>

#include "kantor/parallel.hpp"
#include "kantor/realization.hpp"

namespace kantor {

std::size_t GradedDims::total() const
{
    std::size_t t = 0;
    for (std::size_t d : dims)
        t += d;
    return t;
}

std::size_t GradedDims::dim(int grade) const
{
    for (std::size_t i = 0; i < grades.size(); ++i)
        if (grades[i] == grade)
            return dims[i];
    return 0;
}

bool GradedDims::symmetric() const
{
    for (int g : grades)
        if (dim(g) != dim(-g))
            return false;
    return true;
}

namespace {

VectorQ to_vector(const std::vector<Scalar>& v)
{
    VectorQ out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

} // namespace

FamilySpan family_span(const RealizedAlgebra& r, Family f, bool track)
{
    const auto idx = r.generator_indices(f);
    std::vector<SparseVec> flats(idx.size());
    parallel_for(idx.size(), [&](std::size_t i) { flats[i] = r.op(f, idx[i].first, idx[i].second).flatten(); });
    FamilySpan span;
    span.family = f;
    span.echelon = std::make_shared<SparseEchelon>(track);
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (span.echelon->insert(flats[i]))
            span.basis.push_back(idx[i]);
    return span;
}

namespace {

std::size_t echelon_rank(const std::vector<SparseVec>& vecs)
{
    SparseEchelon e;
    for (const auto& v : vecs)
        e.insert(v);
    return e.rank();
}

// Ut_a restricted to its V outputs; when these are independent so are the Ut_a.
std::optional<std::size_t> projected_ut_rank(const RealizedAlgebra& r)
{
    const std::size_t d = r.dim_k();
    std::vector<SparseVec> flats(d);
    parallel_for(d, [&](std::size_t a) { flats[a] = SparseVec(r.ut_v_part(r.unit(a)).terms()); });
    const std::size_t rk = echelon_rank(flats);
    if (rk == d)
        return rk;
    return std::nullopt;
}

// Kt_ab = Phi(<a,b>) + Q_ab where Phi: L -> operators is linear and Q_ab is
// the 1/2 <Z(a),Z(b)> term, whose monomials (zeta zeta in W outputs) never
// occur in the image of Phi. If Phi is injective then the relations among
// the Kt_ab are exactly those among the pairs (<a,b>, Q_ab).
std::optional<std::size_t> factored_kt_rank(const RealizedAlgebra& r)
{
    const BracketSpace& bs = r.bracket_space();
    const std::size_t dl = bs.dim();
    const std::size_t dv = r.space().dim_v;
    const std::size_t n = r.space().dim();
    const PolyMap z = PolyMap::variables(n, 0, dv);
    const PolyMap zeta = PolyMap::variables(n, dv, dl);

    // injectivity of Phi, seen on its -1/2 Z(B(z)) component
    std::vector<SparseVec> phi(dl);
    parallel_for(dl, [&](std::size_t m) {
        const VectorQ em = unit_vector(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(m));
        const PolyMap bz = multilinear(bs.action(), PolyMap::constant(n, em), z);
        phi[m] = SparseVec(multilinear(bs.action(), zeta, bz).terms());
    });
    if (echelon_rank(phi) != dl)
        return std::nullopt;

    const auto idx = r.generator_indices(Family::Kt);
    std::vector<SparseVec> rows(idx.size());
    parallel_for(idx.size(), [&](std::size_t i) {
        const VectorQ a = r.unit(idx[i].first);
        const VectorQ b = r.unit(idx[i].second);
        const PolyMap q = multilinear(bs.coords(), multilinear(bs.action(), zeta, PolyMap::constant(n, a)),
                                      multilinear(bs.action(), zeta, PolyMap::constant(n, b)));
        std::vector<SparseVec::Entry> entries(q.terms().begin(), q.terms().end());
        const VectorQ lambda = bs.coordinates_of(a, b);
        for (std::size_t m = 0; m < dl; ++m)
            if (!lambda(static_cast<Eigen::Index>(m)).is_zero())
                entries.emplace_back(mono::pack(m, mono::Monomial{}), lambda(static_cast<Eigen::Index>(m)));
        rows[i] = SparseVec::from_unsorted(std::move(entries));
    });
    return echelon_rank(rows);
}

} // namespace

GradedDims graded_dims(const RealizedAlgebra& r, RankStrategy strategy)
{
    const bool reduced = strategy == RankStrategy::Reduced || (strategy == RankStrategy::Auto && r.large());
    GradedDims out;
    for (Family f : r.families()) {
        out.grades.push_back(family_grade(f));
        std::optional<std::size_t> d;
        std::string method = "full";
        if (reduced && f == Family::Ut) {
            d = projected_ut_rank(r);
            method = "projection";
        } else if (reduced && f == Family::Kt && r.kind() == SystemKind::Kts) {
            d = factored_kt_rank(r);
            method = "factored";
        }
        if (!d) {
            d = family_span(r, f, false).rank();
            method = "full";
        }
        out.dims.push_back(*d);
        out.methods.push_back(method);
    }
    return out;
}

// ---------------------------------------------------------------------------

GradedStructure::GradedStructure(const RealizedAlgebra& r) : r_(r)
{
    for (Family f : r.families())
        spans_.emplace(f, family_span(r, f, true));
}

const FamilySpan& GradedStructure::span(Family f) const
{
    const auto it = spans_.find(f);
    if (it == spans_.end())
        throw std::invalid_argument("span: family " + family_name(r_.kind(), f) + " is not part of this algebra");
    return it->second;
}

GradedDims GradedStructure::dims() const
{
    GradedDims out;
    for (Family f : r_.families()) {
        out.grades.push_back(family_grade(f));
        out.dims.push_back(span(f).rank());
        out.methods.emplace_back("full");
    }
    return out;
}

VectorQ GradedStructure::coords(Family f, std::size_t a, std::size_t b) const
{
    const FamilySpan& sp = span(f);
    if (!is_pair_family(f))
        b = 0;
    if (f == Family::K || f == Family::Kt) {
        if (a == b)
            return VectorQ::Zero(static_cast<Eigen::Index>(sp.rank()));
        if (a > b)
            return -coords(f, b, a);
    }
    const auto key = std::make_tuple(static_cast<int>(f), a, b);
    {
        std::lock_guard lock(shared_->mutex);
        if (auto it = shared_->coords.find(key); it != shared_->coords.end())
            return it->second;
    }
    const auto c = sp.echelon->coordinates(r_.op(f, a, b).flatten());
    if (!c)
        throw std::logic_error("coords: a generator lies outside its own family span");
    VectorQ v = to_vector(*c);
    std::lock_guard lock(shared_->mutex);
    return shared_->coords.emplace(key, std::move(v)).first->second;
}

VectorQ GradedStructure::coords(Family target, const std::vector<GenTerm>& terms) const
{
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(span(target).rank()));
    for (const auto& t : terms) {
        if (t.family != target)
            throw std::invalid_argument("coords: term outside the target family");
        if (t.coeff.is_zero())
            continue;
        for (std::size_t i : support(t.a)) {
            const Scalar ai = t.coeff * t.a(static_cast<Eigen::Index>(i));
            if (!is_pair_family(t.family)) {
                out += ai * coords(t.family, i);
                continue;
            }
            for (std::size_t j : support(t.b))
                out += (ai * t.b(static_cast<Eigen::Index>(j))) * coords(t.family, i, j);
        }
    }
    return out;
}

std::optional<VectorQ> GradedStructure::coords_of(Family f, const PolyOperator& op) const
{
    const auto c = span(f).echelon->coordinates(op.flatten());
    if (!c)
        return std::nullopt;
    return to_vector(*c);
}

const GradedStructure::BracketEntry& GradedStructure::basis_bracket(Family f, std::size_t i, Family g,
                                                                    std::size_t j) const
{
    const auto key = std::make_tuple(static_cast<int>(f), i, static_cast<int>(g), j);
    {
        std::lock_guard lock(shared_->mutex);
        if (auto it = shared_->brackets.find(key); it != shared_->brackets.end())
            return *it->second;
    }
    const auto& bi = span(f).basis.at(i);
    const auto& bj = span(g).basis.at(j);
    const PolyOperator br = lie_bracket(r_.op(f, bi.first, bi.second), r_.op(g, bj.first, bj.second));
    auto entry = std::make_shared<BracketEntry>();
    if (const auto target = family_of_grade(r_.kind(), family_grade(f) + family_grade(g))) {
        if (auto c = coords_of(*target, br))
            entry->coords = std::move(*c);
        else
            entry->closed = false;
    } else {
        entry->closed = br.is_zero();
    }
    std::lock_guard lock(shared_->mutex);
    return *shared_->brackets.emplace(key, std::move(entry)).first->second;
}

std::optional<VectorQ> GradedStructure::bracket_coords(Family f, const VectorQ& x, Family g, const VectorQ& y) const
{
    const auto target = family_of_grade(r_.kind(), family_grade(f) + family_grade(g));
    VectorQ out = VectorQ::Zero(target ? static_cast<Eigen::Index>(span(*target).rank()) : 0);
    for (std::size_t i : support(x))
        for (std::size_t j : support(y)) {
            const BracketEntry& e = basis_bracket(f, i, g, j);
            if (!e.closed)
                return std::nullopt;
            if (target)
                out += (x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j))) * e.coords;
        }
    return out;
}

} // namespace kantor
