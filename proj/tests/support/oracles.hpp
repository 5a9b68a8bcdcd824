#pragma once

// Independent reference implementations used to cross-check the library.
// They work on plain mpq_class values and share no code with it.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "kantor/poly_operator.hpp"

namespace oracle {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

inline Q to_q(const kantor::Scalar& s) { return s.to_mpq(); }

inline Vec to_vec(const kantor::VectorQ& v)
{
    Vec out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(to_q(v(i)));
    return out;
}

inline kantor::VectorQ from_vec(const Vec& v)
{
    kantor::VectorQ out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = kantor::Scalar(v[i]);
    return out;
}

/// Rank by textbook Gaussian elimination over Q.
inline std::size_t rank(Mat m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            const Q f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Cayley-Dickson doubling on nested pairs: (a,b)(c,d) = (ac + g d*b, da + b c*).

struct CayleyDickson {
    std::vector<Q> gammas; ///< one per doubling step

    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << gammas.size(); }

    [[nodiscard]] Vec conj(const Vec& x) const
    {
        Vec out(x.size());
        out[0] = x[0];
        for (std::size_t i = 1; i < x.size(); ++i)
            out[i] = -x[i];
        return out;
    }

    [[nodiscard]] Vec mul(const Vec& x, const Vec& y) const { return mul(x, y, gammas.size()); }

    [[nodiscard]] Vec mul(const Vec& x, const Vec& y, std::size_t level) const
    {
        if (level == 0)
            return {x[0] * y[0]};
        const std::size_t h = x.size() / 2;
        const Vec a(x.begin(), x.begin() + static_cast<long>(h)), b(x.begin() + static_cast<long>(h), x.end());
        const Vec c(y.begin(), y.begin() + static_cast<long>(h)), d(y.begin() + static_cast<long>(h), y.end());
        const Q& g = gammas[level - 1];
        const Vec ac = mul(a, c, level - 1), dsb = mul(conj(d), b, level - 1);
        const Vec da = mul(d, a, level - 1), bcs = mul(b, conj(c), level - 1);
        Vec out(x.size());
        for (std::size_t i = 0; i < h; ++i) {
            out[i] = ac[i] + g * dsb[i];
            out[h + i] = da[i] + bcs[i];
        }
        return out;
    }

    [[nodiscard]] Q norm(const Vec& x) const { return mul(x, conj(x))[0]; }
};

/// Tensor product of two Cayley-Dickson algebras, basis index i * dim(o) + j.
struct Tensor {
    CayleyDickson k, o;

    [[nodiscard]] std::size_t dim() const { return k.dim() * o.dim(); }

    [[nodiscard]] Vec mul(const Vec& x, const Vec& y) const
    {
        Vec out(dim());
        const std::size_t dk = k.dim(), d_o = o.dim();
        for (std::size_t i1 = 0; i1 < dk; ++i1)
            for (std::size_t j1 = 0; j1 < d_o; ++j1) {
                const Q& xv = x[i1 * d_o + j1];
                if (xv == 0)
                    continue;
                for (std::size_t i2 = 0; i2 < dk; ++i2)
                    for (std::size_t j2 = 0; j2 < d_o; ++j2) {
                        const Q& yv = y[i2 * d_o + j2];
                        if (yv == 0)
                            continue;
                        Vec ek(dk), fk(dk), eo(d_o), fo(d_o);
                        ek[i1] = 1;
                        fk[i2] = 1;
                        eo[j1] = 1;
                        fo[j2] = 1;
                        const Vec pk = k.mul(ek, fk), po = o.mul(eo, fo);
                        for (std::size_t a = 0; a < dk; ++a)
                            for (std::size_t b = 0; b < d_o; ++b)
                                out[a * d_o + b] += xv * yv * pk[a] * po[b];
                    }
            }
        return out;
    }

    [[nodiscard]] Vec conj(const Vec& x) const
    {
        Vec out(dim());
        const std::size_t d_o = o.dim();
        for (std::size_t i = 0; i < k.dim(); ++i)
            for (std::size_t j = 0; j < d_o; ++j)
                out[i * d_o + j] = x[i * d_o + j] * ((i == 0 ? 1 : -1) * (j == 0 ? 1 : -1));
        return out;
    }

    /// (xyz) = x(y*z) + z(y*x) - y(x*z).
    [[nodiscard]] Vec triple(const Vec& x, const Vec& y, const Vec& z) const
    {
        const Vec a = mul(x, mul(conj(y), z)), b = mul(z, mul(conj(y), x)), c = mul(y, mul(conj(x), z));
        Vec out(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            out[i] = a[i] + b[i] - c[i];
        return out;
    }
};

inline CayleyDickson standard_cd(const std::string& name)
{
    if (name == "R")
        return {{}};
    if (name == "C")
        return {{-1}};
    if (name == "H")
        return {{-1, -1}};
    if (name == "O")
        return {{-1, -1, -1}};
    if (name == "split-C")
        return {{1}};
    if (name == "split-H")
        return {{-1, 1}};
    return {{-1, -1, 1}};
}

// ---------------------------------------------------------------------------
// Polynomial vector fields with exponent-vector monomials.

using Exps = std::vector<int>;
using Poly = std::map<Exps, Q>;
using Field = std::vector<Poly>;

inline void add_to(Poly& p, const Exps& e, const Q& c)
{
    Q& slot = p[e];
    slot += c;
    if (slot == 0)
        p.erase(e);
}

inline Poly mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            add_to(out, e, ca * cb);
        }
    return out;
}

inline Poly diff(const Poly& p, std::size_t var)
{
    Poly out;
    for (const auto& [e, c] : p) {
        if (e[var] == 0)
            continue;
        Exps d = e;
        --d[var];
        add_to(out, d, c * e[var]);
    }
    return out;
}

/// [f,g]^i = sum_j g^j d_j f^i - f^j d_j g^i, the bracket of the library's
/// composition convention (f o g)^i = sum_j g^j d_j f^i.
inline Field bracket(const Field& f, const Field& g)
{
    const std::size_t n = f.size();
    Field out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& [e, c] : mul(g[j], diff(f[i], j)))
                add_to(out[i], e, c);
            for (const auto& [e, c] : mul(f[j], diff(g[i], j)))
                add_to(out[i], e, -c);
        }
    return out;
}

inline Field to_field(const kantor::PolyMap& m)
{
    Field out(m.n_out());
    for (const auto& [key, c] : m.terms()) {
        const auto mono = kantor::mono::unpack(key);
        Exps e(m.n_vars());
        for (int d = 0; d < mono.degree; ++d)
            ++e[mono.vars[static_cast<std::size_t>(d)]];
        add_to(out[kantor::mono::output_of(key)], e, to_q(c));
    }
    return out;
}

/// Random weighted-homogeneous operator of the given grade: V outputs have
/// weight 1 + grade, W outputs weight 2 + grade.
inline kantor::PolyOperator random_operator(const kantor::GradedSpace& sp, int grade, std::mt19937_64& rng,
                                            int max_terms = 6)
{
    using kantor::mono::Monomial;
    std::vector<std::vector<Monomial>> by_weight(8);
    const std::size_t n = sp.dim();
    // monomials of degree <= 4, by total weight
    std::vector<Monomial> frontier{Monomial{}};
    by_weight[0].push_back(Monomial{});
    for (int deg = 1; deg <= 4; ++deg) {
        std::vector<Monomial> next;
        for (const auto& m : frontier) {
            const std::size_t start = m.degree == 0 ? 0 : m.vars[static_cast<std::size_t>(m.degree - 1)];
            for (std::size_t v = start; v < n; ++v) {
                Monomial x = m;
                x.vars[static_cast<std::size_t>(deg - 1)] = static_cast<std::uint8_t>(v);
                x.degree = deg;
                int w = 0;
                for (int d = 0; d < deg; ++d)
                    w += sp.weight(x.vars[static_cast<std::size_t>(d)]);
                if (w < 8)
                    by_weight[static_cast<std::size_t>(w)].push_back(x);
                next.push_back(x);
            }
        }
        frontier = std::move(next);
    }
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> out_pick(0, n - 1);
    std::vector<kantor::PolyMap::Term> terms;
    const int count = std::uniform_int_distribution<int>(1, max_terms)(rng);
    for (int t = 0; t < count; ++t) {
        const std::size_t out = out_pick(rng);
        const int w = static_cast<int>(sp.weight(out)) + grade;
        if (w < 0 || w >= 8 || by_weight[static_cast<std::size_t>(w)].empty())
            continue;
        const auto& pool = by_weight[static_cast<std::size_t>(w)];
        const auto& m = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        const int c = coeff(rng);
        if (c != 0)
            terms.emplace_back(kantor::mono::pack(out, m), kantor::Scalar(c));
    }
    return {sp, grade, kantor::PolyMap::from_terms(n, n, std::move(terms))};
}

} // namespace oracle
