#include "kantor/triple_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "kantor/parallel.hpp"

namespace kantor {

TripleSystem::TripleSystem(std::string label, StructureTensor product, std::optional<MatrixQ> form)
    : label_(std::move(label)), product_(std::move(product)), form_(std::move(form))
{
    if (product_.arity() != 3)
        throw DimensionError("TripleSystem: product must be trilinear");
    const std::size_t d = product_.out_dim();
    for (std::size_t a = 0; a < 3; ++a)
        if (product_.in_dim(a) != d)
            throw DimensionError("TripleSystem: product must map K x K x K -> K");
    if (form_) {
        const auto n = static_cast<Eigen::Index>(d);
        if (form_->rows() != n || form_->cols() != n)
            throw DimensionError("TripleSystem: form must be dim x dim");
        if (*form_ != MatrixQ(-form_->transpose()))
            throw std::invalid_argument("TripleSystem: form is not antisymmetric");
    }
}

TripleSystem TripleSystem::tabulate(std::string label, std::size_t dim, const BasisProduct& basis_product,
                                    std::optional<MatrixQ> form)
{
    auto table = StructureTensor::tabulate(3, dim, dim, [&](StructureTensor::Tuple t) {
        return basis_product(t[0], t[1], t[2]);
    });
    return {std::move(label), std::move(table), std::move(form)};
}

const MatrixQ& TripleSystem::form() const
{
    if (!form_)
        throw std::invalid_argument("triple system " + label_ + " has no bilinear form");
    return *form_;
}

Scalar TripleSystem::form_value(const VectorQ& x, const VectorQ& y) const
{
    return x.dot(form() * y);
}

TripleSystem TripleSystem::with_product(StructureTensor product) const
{
    return {label_, std::move(product), form_};
}

TripleSystem TripleSystem::with_form(std::optional<MatrixQ> form) const
{
    return {label_, product_, std::move(form)};
}

TripleSystem TripleSystem::with_label(std::string label) const
{
    return {std::move(label), product_, form_};
}

VectorQ triple_product(const TripleSystem& t, const VectorQ& x, const VectorQ& y, const VectorQ& z)
{
    return t.triple(x, y, z);
}

VectorQ bracket_apply(const TripleSystem& t, const VectorQ& u, const VectorQ& v, const VectorQ& z)
{
    return t.triple(u, z, v) - t.triple(v, z, u);
}

MatrixQ bracket_op(const TripleSystem& t, const VectorQ& u, const VectorQ& v)
{
    const auto n = static_cast<Eigen::Index>(t.dim());
    MatrixQ m(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        m.col(k) = bracket_apply(t, u, v, unit_vector(n, k));
    return m;
}

TripleSystem make_tensor_kts(const CompositionAlgebra& k, const CompositionAlgebra& o)
{
    const auto a = CompositionAlgebra::tensor(k, o);
    const std::size_t d = a.dimension();
    std::vector<VectorQ> conj(d);
    for (std::size_t i = 0; i < d; ++i)
        conj[i] = a.conjugate(a.basis(i));
    return TripleSystem::tabulate(a.label(), d, [&](std::size_t x, std::size_t y, std::size_t z) {
        const VectorQ ex = a.basis(x), ez = a.basis(z);
        return VectorQ(a.multiply(ex, a.multiply(conj[y], ez)) + a.multiply(ez, a.multiply(conj[y], ex)) -
                       a.multiply(a.basis(y), a.multiply(conj[x], ez)));
    });
}

TripleSystem mutate_structure_constant(const TripleSystem& t, std::size_t i, std::size_t j, std::size_t k,
                                       std::size_t l, const Scalar& delta)
{
    const std::size_t d = t.dim();
    if (i >= d || j >= d || k >= d || l >= d)
        throw std::out_of_range("mutate_structure_constant: index out of range");
    const std::size_t flat = (i * d + j) * d + k;
    const Scalar old = t.product().coefficient(flat, l);
    return t.with_product(t.product().with_coefficient(flat, l, old + delta)).with_label(t.label() + " (mutated)");
}

// ---------------------------------------------------------------------------

BracketSpace::BracketSpace(std::size_t dim_k, std::vector<MatrixQ> basis,
                           std::vector<std::pair<std::size_t, std::size_t>> pairs, StructureTensor coords)
    : dim_k_(dim_k), basis_(std::move(basis)), pairs_(std::move(pairs)), coords_(std::move(coords))
{
    const std::size_t m = basis_.size();
    action_ = StructureTensor::tabulate({m, dim_k_}, dim_k_, [&](StructureTensor::Tuple t) {
        return VectorQ(basis_[t[0]].col(static_cast<Eigen::Index>(t[1])));
    });
}

MatrixQ BracketSpace::operator_of(const VectorQ& zeta) const
{
    if (static_cast<std::size_t>(zeta.size()) != dim())
        throw DimensionError("BracketSpace::operator_of: wrong coordinate count");
    const auto n = static_cast<Eigen::Index>(dim_k_);
    MatrixQ m = MatrixQ::Zero(n, n);
    for (std::size_t i = 0; i < dim(); ++i)
        if (!zeta(static_cast<Eigen::Index>(i)).is_zero())
            m += zeta(static_cast<Eigen::Index>(i)) * basis_[i];
    return m;
}

std::optional<VectorQ> BracketSpace::coordinates_of_matrix(const MatrixQ& m) const
{
    std::vector<VectorQ> flat;
    flat.reserve(basis_.size());
    for (const auto& b : basis_)
        flat.push_back(flatten_matrix(b));
    auto r = in_span(flatten_matrix(m), flat);
    if (!r.in_span)
        return std::nullopt;
    return r.coordinates;
}

namespace {

// <e_i, e_j> flattened with key k * dim + l for the matrix entry (l, k)
SparseVec flat_bracket(const TripleSystem& t, std::size_t i, std::size_t j)
{
    const std::size_t d = t.dim();
    const auto& p = t.product();
    std::vector<SparseVec::Entry> e;
    for (std::size_t k = 0; k < d; ++k) {
        for (const auto& [l, c] : p.at(i, k, j))
            e.emplace_back(k * d + l, c);
        for (const auto& [l, c] : p.at(j, k, i))
            e.emplace_back(k * d + l, -c);
    }
    return SparseVec::from_unsorted(std::move(e));
}

} // namespace

BracketSpace compute_bracket_space(const TripleSystem& t)
{
    const std::size_t d = t.dim();
    SparseEchelon ech(true);
    std::vector<SparseVec> flats(d * d);
    std::vector<MatrixQ> basis;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            flats[i * d + j] = flat_bracket(t, i, j);
            if (ech.insert(flats[i * d + j])) {
                basis.push_back(bracket_op(t, unit_vector(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)),
                                           unit_vector(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j))));
                pairs.emplace_back(i, j);
            }
        }
    const std::size_t m = basis.size();
    std::vector<VectorQ> upper(d * d);
    parallel_for(d * d, [&](std::size_t f) {
        const std::size_t i = f / d, j = f % d;
        if (i >= j)
            return;
        const auto c = ech.coordinates(flats[f]);
        if (!c)
            throw std::logic_error("compute_bracket_space: bracket outside its own span");
        VectorQ v(static_cast<Eigen::Index>(m));
        for (std::size_t r = 0; r < m; ++r)
            v(static_cast<Eigen::Index>(r)) = r < c->size() ? (*c)[r] : Scalar(0);
        upper[f] = std::move(v);
    });
    auto coords = StructureTensor::tabulate({d, d}, m, [&](StructureTensor::Tuple ij) {
        const std::size_t i = ij[0], j = ij[1];
        if (i == j)
            return VectorQ(VectorQ::Zero(static_cast<Eigen::Index>(m)));
        return i < j ? upper[i * d + j] : VectorQ(-upper[j * d + i]);
    });
    return {d, std::move(basis), std::move(pairs), std::move(coords)};
}

BracketSpace scalar_bracket_space(const TripleSystem& t)
{
    const MatrixQ& f = t.form();
    const std::size_t d = t.dim();
    const auto n = static_cast<Eigen::Index>(d);
    auto coords = StructureTensor::tabulate({d, d}, 1, [&](StructureTensor::Tuple ij) {
        VectorQ v(1);
        v(0) = f(static_cast<Eigen::Index>(ij[0]), static_cast<Eigen::Index>(ij[1]));
        return v;
    });
    return {d, {MatrixQ::Identity(n, n)}, {}, std::move(coords)};
}

// ---------------------------------------------------------------------------

std::string to_string(CheckMode m)
{
    return m == CheckMode::Exhaustive ? "exhaustive" : "sampled";
}

bool AxiomReport::pass() const noexcept
{
    return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass(); });
}

const IdentityResult* AxiomReport::find(std::string_view identity) const
{
    for (const auto& r : identities)
        if (r.identity == identity)
            return &r;
    return nullptr;
}

VectorQ sample_vector(std::size_t dim, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    VectorQ v = VectorQ::Zero(static_cast<Eigen::Index>(dim));
    if (dim <= 16) {
        for (std::size_t i = 0; i < dim; ++i)
            v(static_cast<Eigen::Index>(i)) = coeff(rng);
        return v;
    }
    std::uniform_int_distribution<std::size_t> pos(0, dim - 1);
    std::uniform_int_distribution<int> nonzero(1, 3);
    for (int s = 0; s < 4; ++s) {
        const int c = nonzero(rng) * (rng() & 1 ? 1 : -1);
        v(static_cast<Eigen::Index>(pos(rng))) = c;
    }
    return v;
}

namespace {

std::string render(const VectorQ& v)
{
    std::ostringstream os;
    bool first = true;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i).is_zero())
            continue;
        const Scalar& c = v(i);
        if (!first)
            os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0)
            os << "-";
        const Scalar a = c.abs();
        if (!a.is_one())
            os << a << "*";
        os << "e" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace

IdentityResult check_identity(std::string name, std::size_t dim, std::size_t arity, const CheckOptions& opts,
                              const std::function<bool(std::span<const VectorQ>)>& holds)
{
    IdentityResult res;
    res.identity = std::move(name);
    res.mode = opts.mode;

    std::size_t count = 0;
    std::function<std::vector<VectorQ>(std::size_t)> tuple_at;
    std::vector<VectorQ> samples;
    std::vector<VectorQ> units;
    if (opts.mode == CheckMode::Exhaustive) {
        count = 1;
        for (std::size_t a = 0; a < arity; ++a)
            count *= dim;
        if (dim == 0)
            count = 0;
        for (std::size_t i = 0; i < dim; ++i)
            units.push_back(unit_vector(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(i)));
        tuple_at = [&](std::size_t idx) {
            std::vector<VectorQ> t(arity);
            for (std::size_t a = arity; a-- > 0;) {
                t[a] = units[idx % dim];
                idx /= dim;
            }
            return t;
        };
    } else {
        count = opts.samples;
        std::mt19937_64 rng(opts.seed);
        samples.reserve(count * arity);
        for (std::size_t s = 0; s < count * arity; ++s)
            samples.push_back(sample_vector(dim, rng));
        tuple_at = [&](std::size_t idx) {
            return std::vector<VectorQ>(samples.begin() + static_cast<std::ptrdiff_t>(idx * arity),
                                        samples.begin() + static_cast<std::ptrdiff_t>((idx + 1) * arity));
        };
    }

    std::vector<char> ok(count, 1);
    parallel_for(count, [&](std::size_t idx) {
        const auto t = tuple_at(idx);
        ok[idx] = holds(t) ? 1 : 0;
    });
    res.tuples_checked = count;
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (ok[idx])
            continue;
        if (res.failures++ == 0) {
            std::vector<std::string> ce;
            for (const auto& v : tuple_at(idx))
                ce.push_back(render(v));
            res.counterexample = std::move(ce);
        }
    }
    return res;
}

IdentityResult check_ktsdef1(const TripleSystem& t, const CheckOptions& opts, std::string name)
{
    return check_identity(std::move(name), t.dim(), 5, opts, [&](std::span<const VectorQ> a) {
        const auto &u = a[0], &v = a[1], &x = a[2], &y = a[3], &z = a[4];
        const VectorQ lhs = t.triple(u, v, t.triple(x, y, z)) - t.triple(x, y, t.triple(u, v, z));
        const VectorQ rhs = t.triple(t.triple(u, v, x), y, z) - t.triple(x, t.triple(v, u, y), z);
        return lhs == rhs;
    });
}

IdentityResult check_ktsdef2(const TripleSystem& t, const CheckOptions& opts)
{
    const auto n = static_cast<Eigen::Index>(t.dim());
    return check_identity("ktsdef2", t.dim(), 4, opts, [&](std::span<const VectorQ> a) {
        const auto &u = a[0], &v = a[1], &x = a[2], &y = a[3];
        const VectorQ p = bracket_apply(t, u, v, x);
        const VectorQ yxu = t.triple(y, x, u);
        const VectorQ yxv = t.triple(y, x, v);
        for (Eigen::Index k = 0; k < n; ++k) {
            const VectorQ e = unit_vector(n, k);
            if (bracket_apply(t, p, y, e) != bracket_apply(t, yxu, v, e) - bracket_apply(t, yxv, u, e))
                return false;
        }
        return true;
    });
}

IdentityResult check_bracket_vanishes(const TripleSystem& t, const CheckOptions& opts)
{
    return check_identity("jtsdef2", t.dim(), 3, opts, [&](std::span<const VectorQ> a) {
        return is_zero(bracket_apply(t, a[0], a[1], a[2]));
    });
}

IdentityResult check_fts1(const TripleSystem& t, const CheckOptions& opts, Fts1Signs signs)
{
    const Scalar m(signs.middle), l(signs.last);
    return check_identity("fts1", t.dim(), 5, opts, [&](std::span<const VectorQ> a) {
        const auto &u = a[0], &v = a[1], &x = a[2], &y = a[3], &z = a[4];
        const VectorQ lhs = t.triple(u, v, t.triple(x, y, z));
        const VectorQ rhs = t.triple(t.triple(u, v, x), y, z) + m * t.triple(x, t.triple(v, u, y), z) +
                            l * t.triple(x, y, t.triple(u, v, z));
        return lhs == rhs;
    });
}

IdentityResult check_altid1(const TripleSystem& t, const CheckOptions& opts)
{
    return check_identity("altid1", t.dim(), 3, opts, [&](std::span<const VectorQ> s) {
        const auto &z = s[0], &a = s[1], &b = s[2];
        auto f = [&](const VectorQ& p, const VectorQ& q) {
            const VectorQ zqz = t.triple(z, q, z);
            return VectorQ(t.triple(zqz, p, z) + Scalar(2) * t.triple(z, p, zqz));
        };
        const VectorQ lhs = f(a, b) - f(b, a);
        const VectorQ rhs = t.triple(z, bracket_apply(t, b, a, z), z);
        return lhs == rhs;
    });
}

IdentityResult check_altid2(const TripleSystem& t, const CheckOptions& opts)
{
    return check_identity("altid2", t.dim(), 5, opts, [&](std::span<const VectorQ> s) {
        const auto &x = s[0], &y = s[1], &a = s[2], &b = s[3], &z = s[4];
        const VectorQ lhs = t.triple(bracket_apply(t, x, y, b), a, z) - t.triple(bracket_apply(t, x, y, a), b, z);
        const VectorQ rhs = t.triple(x, bracket_apply(t, a, b, y), z) - t.triple(y, bracket_apply(t, a, b, x), z);
        return lhs == rhs;
    });
}

AxiomReport check_jts(const TripleSystem& t, const CheckOptions& opts)
{
    AxiomReport r{t.label(), "jts", {}};
    r.identities.push_back(check_ktsdef1(t, opts, "jtsdef1"));
    r.identities.push_back(check_bracket_vanishes(t, opts));
    return r;
}

AxiomReport check_kts(const TripleSystem& t, const CheckOptions& opts)
{
    AxiomReport r{t.label(), "kts", {}};
    r.identities.push_back(check_ktsdef1(t, opts));
    r.identities.push_back(check_ktsdef2(t, opts));
    return r;
}

AxiomReport check_fts(const TripleSystem& t, const CheckOptions& opts, Fts1Signs signs)
{
    if (!t.has_form())
        throw std::invalid_argument("check_fts: triple system " + t.label() + " has no bilinear form");
    AxiomReport r{t.label(), "fts", {}};
    r.identities.push_back(check_identity("form_antisymmetry", t.dim(), 2, opts, [&](std::span<const VectorQ> a) {
        return t.form_value(a[0], a[1]) == -t.form_value(a[1], a[0]);
    }));
    r.identities.push_back(check_fts1(t, opts, signs));
    r.identities.push_back(check_identity("fts2a", t.dim(), 3, opts, [&](std::span<const VectorQ> a) {
        const auto &x = a[0], &y = a[1], &z = a[2];
        return VectorQ(t.form_value(x, y) * z) == VectorQ(t.triple(x, z, y) - t.triple(y, z, x));
    }));
    r.identities.push_back(check_identity("fts2b", t.dim(), 3, opts, [&](std::span<const VectorQ> a) {
        const auto &x = a[0], &y = a[1], &z = a[2];
        return VectorQ(t.form_value(x, y) * z) == VectorQ(t.triple(y, x, z) - t.triple(x, y, z));
    }));
    r.identities.push_back(check_identity("fts3", t.dim(), 4, opts, [&](std::span<const VectorQ> a) {
        const auto &u = a[0], &v = a[1], &x = a[2], &y = a[3];
        return t.form_value(u, v) * t.form_value(x, y) ==
               t.form_value(t.triple(y, x, u), v) - t.form_value(t.triple(y, x, v), u);
    }));
    return r;
}

// ---------------------------------------------------------------------------

VectorQ to_g_minus1_coords(const MatrixGradedLieAlgebra& g, const MatrixQ& x)
{
    const VectorQ c = g.coordinates(x);
    const auto idx = g.indices_of_grade(-1);
    VectorQ out(static_cast<Eigen::Index>(idx.size()));
    std::size_t r = 0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const Scalar& ci = c(static_cast<Eigen::Index>(i));
        if (g.element(i).grade == -1)
            out(static_cast<Eigen::Index>(r++)) = ci;
        else if (!ci.is_zero())
            throw std::invalid_argument("element has a component outside g_-1");
    }
    return out;
}

MatrixQ from_g_minus1_coords(const MatrixGradedLieAlgebra& g, const VectorQ& c)
{
    const auto idx = g.indices_of_grade(-1);
    if (static_cast<std::size_t>(c.size()) != idx.size())
        throw DimensionError("from_g_minus1_coords: wrong coordinate count");
    const auto n = static_cast<Eigen::Index>(g.n());
    MatrixQ x = MatrixQ::Zero(n, n);
    for (std::size_t r = 0; r < idx.size(); ++r)
        if (!c(static_cast<Eigen::Index>(r)).is_zero())
            x += c(static_cast<Eigen::Index>(r)) * g.element(idx[r]).matrix;
    return x;
}

TripleSystem derive_from_graded(const MatrixGradedLieAlgebra& g, const GradedInvolution& tau)
{
    if (g.max_grade() < 1 || g.max_grade() > 2)
        throw std::invalid_argument("derive_from_graded: g must be 3- or 5-graded");
    if (tau.algebra().n() != g.n() || tau.algebra().roots() != g.roots())
        throw std::invalid_argument("derive_from_graded: involution belongs to a different algebra");
    if (tau.kind() != InvolutionKind::Involution)
        throw InvolutionError("derive_from_graded: a graded involution is required");
    const auto check = verify_involution(tau);
    if (!check.pass)
        throw InvolutionError("derive_from_graded: " + check.detail);
    const auto idx = g.indices_of_grade(-1);
    std::vector<MatrixQ> tau_e;
    for (std::size_t i : idx)
        tau_e.push_back(tau.apply(g.element(i).matrix));
    return TripleSystem::tabulate(g.label() + " derived", idx.size(), [&](std::size_t x, std::size_t y, std::size_t z) {
        const MatrixQ& mx = g.element(idx[x]).matrix;
        const MatrixQ& mz = g.element(idx[z]).matrix;
        return to_g_minus1_coords(g, commutator(commutator(mx, tau_e[y]), mz));
    });
}

TripleSystem derive_fts(const MatrixGradedLieAlgebra& g, const MatrixQ& t_elt)
{
    if (g.max_grade() != 2 || g.indices_of_grade(2).size() != 1 || g.indices_of_grade(-2).size() != 1)
        throw std::invalid_argument("derive_fts: g must be 5-graded with one-dimensional g_2 and g_-2");
    if (g.grade_of(t_elt) != 2)
        throw std::invalid_argument("derive_fts: T must be a nonzero element of g_2");
    const auto idx = g.indices_of_grade(-1);
    const std::size_t d = idx.size();
    std::vector<MatrixQ> te;
    for (std::size_t i : idx)
        te.push_back(commutator(t_elt, g.element(i).matrix));
    auto product = StructureTensor::tabulate(3, d, d, [&](StructureTensor::Tuple t) {
        const MatrixQ& mx = g.element(idx[t[0]]).matrix;
        const MatrixQ& mz = g.element(idx[t[2]]).matrix;
        return to_g_minus1_coords(g, commutator(commutator(mx, te[t[1]]), mz));
    });
    TripleSystem sys(g.label() + " fts", std::move(product));

    const auto n = static_cast<Eigen::Index>(d);
    MatrixQ form = MatrixQ::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const MatrixQ b = bracket_op(sys, unit_vector(n, i), unit_vector(n, j));
            const Scalar alpha = b(0, 0);
            if (b != MatrixQ(alpha * MatrixQ::Identity(n, n)))
                throw std::invalid_argument("derive_fts: <e" + std::to_string(i) + ", e" + std::to_string(j) +
                                            "> is not a scalar operator");
            form(i, j) = alpha;
        }
    return sys.with_form(std::move(form));
}

} // namespace kantor
