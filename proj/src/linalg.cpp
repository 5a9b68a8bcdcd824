#include "kantor/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace kantor {

namespace detail {

namespace {

Rational lcm_of_denominators(const MatrixQ& m, Eigen::Index row)
{
    mpz_class l = 1;
    bool all_small_int = true;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!m(row, j).is_integer()) {
            all_small_int = false;
            break;
        }
    }
    if (all_small_int)
        return Rational(1);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(row, j).denominator().get_mpz_t());
    return Rational(mpq_class(l));
}

} // namespace

void clear_row_denominators(MatrixQ& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const Rational l = lcm_of_denominators(m, i);
        if (!l.is_one())
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                m(i, j) *= l;
    }
}

std::size_t bareiss_rank_inplace(MatrixQ& m)
{
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Rational prev = 1;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            m.row(p).swap(m.row(r));
        const Rational pivot = m(r, c);
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            const Rational lead = m(i, c);
            for (Eigen::Index j = c + 1; j < cols; ++j) {
                Rational v = pivot * m(i, j);
                if (!lead.is_zero())
                    v -= lead * m(r, j);
                if (!prev.is_one())
                    v /= prev;
                m(i, j) = std::move(v);
            }
            m(i, c) = 0;
        }
        prev = pivot;
        ++r;
    }
    return static_cast<std::size_t>(r);
}

} // namespace detail

SpanResult in_span(const VectorQ& v, std::span<const VectorQ> basis)
{
    const Eigen::Index n = v.size();
    const auto k = static_cast<Eigen::Index>(basis.size());
    for (const auto& b : basis)
        if (b.size() != n)
            throw DimensionError("in_span: vector length mismatch");

    // Gauss-Jordan on [b_0 ... b_{k-1} | v]; exact rational pivots.
    MatrixQ a(n, k + 1);
    for (Eigen::Index j = 0; j < k; ++j)
        a.col(j) = basis[static_cast<std::size_t>(j)];
    a.col(k) = v;

    std::vector<Eigen::Index> pivot_col;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < k && r < n; ++c) {
        Eigen::Index p = r;
        while (p < n && a(p, c).is_zero())
            ++p;
        if (p == n)
            continue;
        if (p != r)
            a.row(p).swap(a.row(r));
        const Rational inv = a(r, c).inverse();
        for (Eigen::Index j = c; j <= k; ++j)
            a(r, j) *= inv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == r || a(i, c).is_zero())
                continue;
            const Rational f = a(i, c);
            for (Eigen::Index j = c; j <= k; ++j)
                if (!a(r, j).is_zero())
                    a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (Eigen::Index i = r; i < n; ++i)
        if (!a(i, k).is_zero())
            return {false, {}};

    SpanResult out;
    out.in_span = true;
    out.coordinates = VectorQ::Zero(k);
    for (Eigen::Index i = 0; i < r; ++i)
        out.coordinates(pivot_col[static_cast<std::size_t>(i)]) = a(i, k);
    return out;
}

std::vector<std::size_t> independent_subset(std::span<const VectorQ> vectors)
{
    SparseEchelon ech;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (ech.insert(SparseVec::from_dense(vectors[i])))
            keep.push_back(i);
    return keep;
}

// ---------------------------------------------------------------------------

SparseVec SparseVec::from_unsorted(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> out;
    out.reserve(entries.size());
    for (auto& e : entries) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else {
            if (!out.empty() && out.back().second.is_zero())
                out.pop_back();
            out.push_back(std::move(e));
        }
    }
    if (!out.empty() && out.back().second.is_zero())
        out.pop_back();
    return SparseVec(std::move(out));
}

SparseVec SparseVec::from_dense(const VectorQ& v)
{
    std::vector<Entry> e;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero())
            e.emplace_back(static_cast<std::uint64_t>(i), v(i));
    return SparseVec(std::move(e));
}

Scalar SparseVec::get(std::uint64_t key) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, std::uint64_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == key)
        return it->second;
    return Scalar(0);
}

VectorQ SparseVec::to_dense(std::size_t n) const
{
    VectorQ v = VectorQ::Zero(static_cast<Eigen::Index>(n));
    for (const auto& [k, c] : entries_) {
        if (k >= n)
            throw DimensionError("SparseVec::to_dense: key out of range");
        v(static_cast<Eigen::Index>(k)) = c;
    }
    return v;
}

void SparseVec::combine(const Scalar& alpha, const Scalar& beta, const SparseVec& rhs)
{
    std::vector<Entry> out;
    out.reserve(entries_.size() + rhs.entries_.size());
    auto a = entries_.begin();
    auto b = rhs.entries_.begin();
    const bool alpha_one = alpha.is_one();
    while (a != entries_.end() || b != rhs.entries_.end()) {
        if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            if (alpha_one)
                out.push_back(std::move(*a));
            else
                out.emplace_back(a->first, alpha * a->second);
            ++a;
        } else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, beta * b->second);
            ++b;
        } else {
            Scalar v = alpha_one ? std::move(a->second) : alpha * a->second;
            v += beta * b->second;
            if (!v.is_zero())
                out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    if (alpha.is_zero())
        std::erase_if(out, [](const Entry& e) { return e.second.is_zero(); });
    entries_ = std::move(out);
}

SparseVec& SparseVec::operator+=(const SparseVec& rhs)
{
    combine(1, 1, rhs);
    return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& rhs)
{
    combine(1, -1, rhs);
    return *this;
}

SparseVec& SparseVec::operator*=(const Scalar& s)
{
    if (s.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto& e : entries_)
        e.second *= s;
    return *this;
}

std::size_t SparseVec::hash() const noexcept
{
    std::size_t h = entries_.size();
    for (const auto& [k, c] : entries_) {
        h ^= std::hash<std::uint64_t>{}(k) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= c.hash() + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// ---------------------------------------------------------------------------

namespace {

Rational denominator_lcm(const SparseVec& v)
{
    bool integral = true;
    for (const auto& e : v.entries())
        if (!e.second.is_integer()) {
            integral = false;
            break;
        }
    if (integral)
        return Rational(1);
    mpz_class l = 1;
    for (const auto& e : v.entries())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.denominator().get_mpz_t());
    return Rational(mpq_class(l));
}

// gcd of the (integer) entries; 1 for the empty vector
Rational content(const SparseVec& v)
{
    std::uint64_t g = 0;
    bool small = true;
    for (const auto& e : v.entries()) {
        if (!e.second.is_small()) {
            small = false;
            break;
        }
        const auto n = e.second.numerator().get_si();
        g = std::gcd(g, static_cast<std::uint64_t>(n < 0 ? -n : n));
        if (g == 1)
            return Rational(1);
    }
    if (small)
        return g == 0 ? Rational(1) : Rational(static_cast<long long>(g));
    mpz_class G = 0;
    for (const auto& e : v.entries()) {
        mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), e.second.numerator().get_mpz_t());
        if (G == 1)
            break;
    }
    return G == 0 ? Rational(1) : Rational(mpq_class(G));
}

} // namespace

const SparseEchelon::Row* SparseEchelon::row_for_pivot(std::uint64_t key) const
{
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), key,
                               [](const auto& p, std::uint64_t k) { return p.first < k; });
    if (it != pivots_.end() && it->first == key)
        return &rows_[it->second];
    return nullptr;
}

SparseEchelon::Reduced SparseEchelon::reduce(const SparseVec& v, bool /*stop_when_independent*/) const
{
    Reduced r{v, Rational(1), {}};
    if (track_)
        r.combo.assign(rows_.size(), Rational(0));
    const Rational l = denominator_lcm(r.vec);
    if (!l.is_one()) {
        r.vec *= l;
        r.scale = l;
    }
    while (!r.vec.empty()) {
        const auto& lead = r.vec.entries().front();
        const Row* row = row_for_pivot(lead.first);
        if (!row)
            break; // leading key is not a pivot: v lies outside the span
        const Rational p = row->vec.entries().front().second;
        const Rational a = lead.second;
        r.vec.combine(p, -a, row->vec);
        if (track_) {
            r.scale *= p;
            for (auto& c : r.combo)
                c *= p;
            for (std::size_t i = 0; i < row->combo.size(); ++i)
                r.combo[i] -= a * row->combo[i];
        }
        const Rational g = content(r.vec);
        if (!g.is_one()) {
            r.vec *= g.inverse();
            if (track_) {
                r.scale /= g;
                for (auto& c : r.combo)
                    c /= g;
            }
        }
    }
    return r;
}

bool SparseEchelon::insert(const SparseVec& v)
{
    Reduced r = reduce(v, true);
    if (r.vec.empty())
        return false;
    if (r.vec.entries().front().second.sign() < 0) {
        r.vec *= Rational(-1);
        r.scale = -r.scale;
        for (auto& c : r.combo)
            c = -c;
    }
    Row row;
    row.vec = std::move(r.vec);
    if (track_) {
        row.combo = std::move(r.combo);
        row.combo.push_back(r.scale);
    }
    const std::uint64_t key = row.vec.entries().front().first;
    rows_.push_back(std::move(row));
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), key,
                               [](const auto& p, std::uint64_t k) { return p.first < k; });
    pivots_.insert(it, {key, rows_.size() - 1});
    return true;
}

bool SparseEchelon::contains(const SparseVec& v) const { return reduce(v, true).vec.empty(); }

std::optional<std::vector<Scalar>> SparseEchelon::coordinates(const SparseVec& v) const
{
    if (!track_)
        throw std::logic_error("SparseEchelon::coordinates requires coordinate tracking");
    Reduced r = reduce(v, true);
    if (!r.vec.empty())
        return std::nullopt;
    // 0 = scale * v + sum combo_i * inserted_i
    std::vector<Scalar> out(rows_.size(), Scalar(0));
    const Rational inv = -r.scale.inverse();
    for (std::size_t i = 0; i < r.combo.size(); ++i)
        out[i] = r.combo[i] * inv;
    return out;
}

std::size_t rank(std::span<const SparseVec> vectors)
{
    SparseEchelon ech;
    for (const auto& v : vectors)
        ech.insert(v);
    return ech.rank();
}

} // namespace kantor
