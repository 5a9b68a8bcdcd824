#include "kantor/poly_operator.hpp"

#include <algorithm>
#include <sstream>

namespace kantor {

namespace mono {

std::uint64_t pack(std::size_t out, const Monomial& m)
{
    if (m.degree > kMaxDegree)
        throw DegreeOverflow("monomial degree exceeds " + std::to_string(kMaxDegree));
    if (out >= kMaxOutputs)
        throw std::out_of_range("output coordinate exceeds packed range");
    std::uint64_t key = (static_cast<std::uint64_t>(out) << 56) | (static_cast<std::uint64_t>(m.degree) << 53);
    for (int s = 0; s < m.degree; ++s) {
        if (m.vars[static_cast<std::size_t>(s)] > kMaxVars)
            throw std::out_of_range("variable index exceeds packed range");
        key |= static_cast<std::uint64_t>(m.vars[static_cast<std::size_t>(s)]) << (42 - 7 * s);
    }
    return key;
}

Monomial unpack(std::uint64_t key) noexcept
{
    Monomial m;
    m.degree = degree_of(key);
    for (int s = 0; s < m.degree; ++s)
        m.vars[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>((key >> (42 - 7 * s)) & 0x7F);
    return m;
}

Monomial multiply(const Monomial& a, const Monomial& b)
{
    if (a.degree + b.degree > kMaxDegree)
        throw DegreeOverflow("product monomial degree exceeds " + std::to_string(kMaxDegree));
    Monomial m;
    m.degree = a.degree + b.degree;
    int i = 0, j = 0, k = 0;
    while (i < a.degree && j < b.degree) {
        if (a.vars[static_cast<std::size_t>(i)] <= b.vars[static_cast<std::size_t>(j)])
            m.vars[static_cast<std::size_t>(k++)] = a.vars[static_cast<std::size_t>(i++)];
        else
            m.vars[static_cast<std::size_t>(k++)] = b.vars[static_cast<std::size_t>(j++)];
    }
    while (i < a.degree)
        m.vars[static_cast<std::size_t>(k++)] = a.vars[static_cast<std::size_t>(i++)];
    while (j < b.degree)
        m.vars[static_cast<std::size_t>(k++)] = b.vars[static_cast<std::size_t>(j++)];
    return m;
}

std::string to_string(const Monomial& m)
{
    if (m.degree == 0)
        return "1";
    std::string s;
    for (int i = 0; i < m.degree; ++i) {
        if (i)
            s += "*";
        s += "x" + std::to_string(m.vars[static_cast<std::size_t>(i)]);
    }
    return s;
}

} // namespace mono

namespace {

using Term = PolyMap::Term;

// offsets[o] .. offsets[o+1] are the terms with output o
std::vector<std::size_t> output_offsets(const PolyMap& p)
{
    std::vector<std::size_t> off(p.n_out() + 1, 0);
    for (const auto& t : p.terms())
        ++off[mono::output_of(t.first) + 1];
    for (std::size_t o = 0; o < p.n_out(); ++o)
        off[o + 1] += off[o];
    return off;
}

std::vector<mono::Monomial> unpack_all(const PolyMap& p)
{
    std::vector<mono::Monomial> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms())
        out.push_back(mono::unpack(t.first));
    return out;
}

std::vector<std::size_t> nonempty_outputs(const std::vector<std::size_t>& off)
{
    std::vector<std::size_t> v;
    for (std::size_t o = 0; o + 1 < off.size(); ++o)
        if (off[o + 1] > off[o])
            v.push_back(o);
    return v;
}

void check_args(const StructureTensor& t, std::span<const PolyMap* const> args)
{
    if (args.size() != t.arity())
        throw DimensionError("multilinear: wrong number of arguments");
    for (std::size_t s = 0; s < args.size(); ++s) {
        const auto* a = args[s];
        if (a->n_out() != t.in_dim(s))
            throw DimensionError("multilinear: argument output dimension mismatch");
        if (a->n_vars() != args[0]->n_vars())
            throw DimensionError("multilinear: arguments over different variables");
    }
}

} // namespace

PolyMap::PolyMap(std::size_t n_vars, std::size_t n_out) : n_vars_(n_vars), n_out_(n_out)
{
    if (n_vars > mono::kMaxVars + 1 || n_out > mono::kMaxOutputs)
        throw std::out_of_range("PolyMap: too many variables or outputs for packed keys");
}

PolyMap PolyMap::from_terms(std::size_t n_vars, std::size_t n_out, std::vector<Term> terms)
{
    PolyMap p(n_vars, n_out);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second.is_zero())
                p.terms_.pop_back();
            if (mono::output_of(t.first) >= n_out)
                throw DimensionError("PolyMap: term output out of range");
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero())
        p.terms_.pop_back();
    return p;
}

PolyMap PolyMap::constant(std::size_t n_vars, const VectorQ& value)
{
    std::vector<Term> t;
    for (Eigen::Index i = 0; i < value.size(); ++i)
        if (!value(i).is_zero())
            t.emplace_back(mono::pack(static_cast<std::size_t>(i), {}), value(i));
    return from_terms(n_vars, static_cast<std::size_t>(value.size()), std::move(t));
}

PolyMap PolyMap::variables(std::size_t n_vars, std::size_t first_var, std::size_t count)
{
    if (first_var + count > n_vars)
        throw DimensionError("PolyMap::variables: range exceeds variable count");
    std::vector<Term> t;
    for (std::size_t i = 0; i < count; ++i) {
        mono::Monomial m;
        m.degree = 1;
        m.vars[0] = static_cast<std::uint8_t>(first_var + i);
        t.emplace_back(mono::pack(i, m), Scalar(1));
    }
    return from_terms(n_vars, count, std::move(t));
}

int PolyMap::max_degree() const noexcept
{
    int d = -1;
    for (const auto& t : terms_)
        d = std::max(d, mono::degree_of(t.first));
    return d;
}

VectorQ PolyMap::evaluate(const VectorQ& point) const
{
    if (static_cast<std::size_t>(point.size()) != n_vars_)
        throw DimensionError("PolyMap::evaluate: point length " + std::to_string(point.size()) + " != " +
                             std::to_string(n_vars_));
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(n_out_));
    for (const auto& [key, c] : terms_) {
        const auto m = mono::unpack(key);
        Scalar v = c;
        for (int s = 0; s < m.degree && !v.is_zero(); ++s)
            v *= point(m.vars[static_cast<std::size_t>(s)]);
        out(static_cast<Eigen::Index>(mono::output_of(key))) += v;
    }
    return out;
}

void PolyMap::check_same_shape(const PolyMap& rhs) const
{
    if (n_vars_ != rhs.n_vars_ || n_out_ != rhs.n_out_)
        throw DimensionError("PolyMap: shape mismatch");
}

PolyMap& PolyMap::operator+=(const PolyMap& rhs)
{
    check_same_shape(rhs);
    SparseVec a(std::move(terms_));
    a += SparseVec(rhs.terms_);
    terms_ = a.entries();
    return *this;
}

PolyMap& PolyMap::operator-=(const PolyMap& rhs)
{
    check_same_shape(rhs);
    SparseVec a(std::move(terms_));
    a -= SparseVec(rhs.terms_);
    terms_ = a.entries();
    return *this;
}

PolyMap& PolyMap::operator*=(const Scalar& s)
{
    if (s.is_zero())
        terms_.clear();
    for (auto& t : terms_)
        t.second *= s;
    return *this;
}

PolyMap multilinear(const StructureTensor& t, std::span<const PolyMap* const> args)
{
    check_args(t, args);
    const std::size_t n_vars = args[0]->n_vars();
    std::vector<Term> out;

    std::vector<std::vector<std::size_t>> off;
    std::vector<std::vector<mono::Monomial>> monos;
    std::vector<std::vector<std::size_t>> outs;
    for (const auto* a : args) {
        off.push_back(output_offsets(*a));
        monos.push_back(unpack_all(*a));
        outs.push_back(nonempty_outputs(off.back()));
    }

    auto emit = [&](std::span<const StructureTensor::Entry> ent, const mono::Monomial& m, const Scalar& c) {
        for (const auto& [l, tc] : ent)
            out.emplace_back(mono::pack(l, m), c * tc);
    };

    switch (t.arity()) {
    case 1: {
        const auto& P = args[0]->terms();
        for (std::size_t i : outs[0]) {
            const auto ent = t.at(i);
            if (ent.empty())
                continue;
            for (std::size_t p = off[0][i]; p < off[0][i + 1]; ++p)
                emit(ent, monos[0][p], P[p].second);
        }
        break;
    }
    case 2: {
        const auto& P = args[0]->terms();
        const auto& Q = args[1]->terms();
        for (std::size_t i : outs[0])
            for (std::size_t j : outs[1]) {
                const auto ent = t.at(i, j);
                if (ent.empty())
                    continue;
                for (std::size_t p = off[0][i]; p < off[0][i + 1]; ++p)
                    for (std::size_t q = off[1][j]; q < off[1][j + 1]; ++q)
                        emit(ent, mono::multiply(monos[0][p], monos[1][q]), P[p].second * Q[q].second);
            }
        break;
    }
    case 3: {
        const auto& P = args[0]->terms();
        const auto& Q = args[1]->terms();
        const auto& R = args[2]->terms();
        for (std::size_t i : outs[0])
            for (std::size_t j : outs[1])
                for (std::size_t k : outs[2]) {
                    const auto ent = t.at(i, j, k);
                    if (ent.empty())
                        continue;
                    for (std::size_t p = off[0][i]; p < off[0][i + 1]; ++p)
                        for (std::size_t q = off[1][j]; q < off[1][j + 1]; ++q) {
                            const auto pq = mono::multiply(monos[0][p], monos[1][q]);
                            const Scalar cpq = P[p].second * Q[q].second;
                            for (std::size_t r = off[2][k]; r < off[2][k + 1]; ++r)
                                emit(ent, mono::multiply(pq, monos[2][r]), cpq * R[r].second);
                        }
                }
        break;
    }
    default:
        throw std::invalid_argument("multilinear: arity must be 1, 2 or 3");
    }
    return PolyMap::from_terms(n_vars, t.out_dim(), std::move(out));
}

PolyMap multilinear(const StructureTensor& t, const PolyMap& p)
{
    const PolyMap* a[] = {&p};
    return multilinear(t, a);
}

PolyMap multilinear(const StructureTensor& t, const PolyMap& p, const PolyMap& q)
{
    const PolyMap* a[] = {&p, &q};
    return multilinear(t, a);
}

PolyMap multilinear(const StructureTensor& t, const PolyMap& p, const PolyMap& q, const PolyMap& r)
{
    const PolyMap* a[] = {&p, &q, &r};
    return multilinear(t, a);
}

PolyMap scalar_times(const PolyMap& s, const PolyMap& v)
{
    if (s.n_out() != 1 || s.n_vars() != v.n_vars())
        throw DimensionError("scalar_times: expected a scalar polynomial over the same variables");
    std::vector<Term> out;
    out.reserve(s.terms().size() * v.terms().size());
    for (const auto& [ks, cs] : s.terms()) {
        const auto ms = mono::unpack(ks);
        for (const auto& [kv, cv] : v.terms())
            out.emplace_back(mono::pack(mono::output_of(kv), mono::multiply(ms, mono::unpack(kv))), cs * cv);
    }
    return PolyMap::from_terms(v.n_vars(), v.n_out(), std::move(out));
}

PolyMap stack(const PolyMap& top, const PolyMap& bottom)
{
    if (top.n_vars() != bottom.n_vars())
        throw DimensionError("stack: variable count mismatch");
    std::vector<Term> t = top.terms();
    for (const auto& [k, c] : bottom.terms())
        t.emplace_back(mono::with_output(k, mono::output_of(k) + top.n_out()), c);
    return PolyMap::from_terms(top.n_vars(), top.n_out() + bottom.n_out(), std::move(t));
}

PolyMap directional_compose(const PolyMap& f, const PolyMap& g)
{
    if (f.n_vars() != g.n_out())
        throw DimensionError("directional_compose: f's variables must match g's outputs");
    const auto goff = output_offsets(g);
    const auto gmono = unpack_all(g);
    const auto& G = g.terms();
    // merge in chunks so peak memory follows the merged size
    constexpr std::size_t chunk = std::size_t{1} << 22;
    PolyMap acc(g.n_vars(), f.n_out());
    std::vector<Term> out;
    for (const auto& [key, c] : f.terms()) {
        if (out.size() > chunk) {
            acc += PolyMap::from_terms(g.n_vars(), f.n_out(), std::move(out));
            out.clear();
        }
        const auto m = mono::unpack(key);
        const std::size_t o = mono::output_of(key);
        for (int s = 0; s < m.degree;) {
            const std::uint8_t v = m.vars[static_cast<std::size_t>(s)];
            int mult = 0;
            while (s < m.degree && m.vars[static_cast<std::size_t>(s)] == v) {
                ++mult;
                ++s;
            }
            if (goff[v] == goff[v + 1u])
                continue;
            // m with one factor of v removed
            mono::Monomial reduced;
            reduced.degree = m.degree - 1;
            bool removed = false;
            for (int r = 0, w = 0; r < m.degree; ++r) {
                if (!removed && m.vars[static_cast<std::size_t>(r)] == v) {
                    removed = true;
                    continue;
                }
                reduced.vars[static_cast<std::size_t>(w++)] = m.vars[static_cast<std::size_t>(r)];
            }
            const Scalar cm = c * Scalar(mult);
            for (std::size_t q = goff[v]; q < goff[v + 1u]; ++q)
                out.emplace_back(mono::pack(o, mono::multiply(reduced, gmono[q])), cm * G[q].second);
        }
    }
    acc += PolyMap::from_terms(g.n_vars(), f.n_out(), std::move(out));
    return acc;
}

// ---------------------------------------------------------------------------

bool PolyOperator::is_weighted_homogeneous(const GradedSpace& space, int grade, const PolyMap& map)
{
    for (const auto& t : map.terms()) {
        const std::size_t o = mono::output_of(t.first);
        const auto m = mono::unpack(t.first);
        int w = 0;
        for (int s = 0; s < m.degree; ++s)
            w += space.weight(m.vars[static_cast<std::size_t>(s)]);
        if (w != space.weight(o) + grade)
            return false;
    }
    return true;
}

PolyOperator::PolyOperator(GradedSpace space, int grade, PolyMap map) : space_(space), grade_(grade), map_(std::move(map))
{
    if (map_.n_vars() != space_.dim() || map_.n_out() != space_.dim())
        throw DimensionError("PolyOperator: map shape does not match the graded space");
    if (!is_weighted_homogeneous(space_, grade_, map_))
        throw GradingError("PolyOperator: map is not weighted-homogeneous of grade " + std::to_string(grade_));
}

PolyOperator PolyOperator::zero(GradedSpace space, int grade)
{
    return PolyOperator(space, grade, PolyMap(space.dim(), space.dim()));
}

PolyOperator PolyOperator::from_parts(GradedSpace space, int grade, const PolyMap& v_part, const PolyMap& w_part)
{
    if (v_part.n_out() != space.dim_v || w_part.n_out() != space.dim_w)
        throw DimensionError("PolyOperator::from_parts: part output dimensions do not match the space");
    return PolyOperator(space, grade, stack(v_part, w_part));
}

PolyOperator PolyOperator::linear(GradedSpace space, const MatrixQ& a)
{
    if (static_cast<std::size_t>(a.rows()) != space.dim() || static_cast<std::size_t>(a.cols()) != space.dim())
        throw DimensionError("PolyOperator::linear: matrix shape mismatch");
    std::vector<Term> t;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) {
                mono::Monomial m;
                m.degree = 1;
                m.vars[0] = static_cast<std::uint8_t>(j);
                t.emplace_back(mono::pack(static_cast<std::size_t>(i), m), a(i, j));
            }
    return PolyOperator(space, 0, PolyMap::from_terms(space.dim(), space.dim(), std::move(t)));
}

PolyOperator PolyOperator::euler(GradedSpace space)
{
    MatrixQ e = MatrixQ::Zero(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < space.dim(); ++i)
        e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = space.weight(i);
    return linear(space, e);
}

VectorQ PolyOperator::evaluate(const VectorQ& point) const { return map_.evaluate(point); }

MatrixQ PolyOperator::linear_matrix() const
{
    const auto n = static_cast<Eigen::Index>(space_.dim());
    MatrixQ a = MatrixQ::Zero(n, n);
    for (const auto& [k, c] : map_.terms()) {
        const auto m = mono::unpack(k);
        if (m.degree != 1)
            throw std::logic_error("linear_matrix: operator is not linear");
        a(static_cast<Eigen::Index>(mono::output_of(k)), m.vars[0]) = c;
    }
    return a;
}

void PolyOperator::merge_grade(const PolyOperator& rhs)
{
    if (space_ != rhs.space_)
        throw DimensionError("PolyOperator: operands live on different spaces");
    if (grade_ != rhs.grade_) {
        if (rhs.is_zero())
            return;
        if (!is_zero())
            throw GradingError("PolyOperator: cannot add operators of grades " + std::to_string(grade_) + " and " +
                               std::to_string(rhs.grade_));
        grade_ = rhs.grade_;
    }
}

PolyOperator& PolyOperator::operator+=(const PolyOperator& rhs)
{
    merge_grade(rhs);
    map_ += rhs.map_;
    return *this;
}

PolyOperator& PolyOperator::operator-=(const PolyOperator& rhs)
{
    merge_grade(rhs);
    map_ -= rhs.map_;
    return *this;
}

PolyOperator& PolyOperator::operator*=(const Scalar& s)
{
    map_ *= s;
    return *this;
}

std::string PolyOperator::to_string() const
{
    std::ostringstream os;
    os << "grade " << grade_ << ":";
    if (map_.is_zero())
        os << " 0";
    for (const auto& [k, c] : map_.terms())
        os << " [" << mono::output_of(k) << "] " << c << "*" << mono::to_string(mono::unpack(k));
    return os.str();
}

PolyOperator compose_circ(const PolyOperator& f, const PolyOperator& g)
{
    if (f.space() != g.space())
        throw DimensionError("compose_circ: operators live on different spaces");
    return PolyOperator(f.space(), f.grade() + g.grade(), directional_compose(f.map(), g.map()));
}

PolyOperator lie_bracket(const PolyOperator& f, const PolyOperator& g)
{
    if (f.space() != g.space())
        throw DimensionError("lie_bracket: operators live on different spaces");
    PolyMap m = directional_compose(f.map(), g.map());
    m -= directional_compose(g.map(), f.map());
    return PolyOperator(f.space(), f.grade() + g.grade(), std::move(m));
}

} // namespace kantor
