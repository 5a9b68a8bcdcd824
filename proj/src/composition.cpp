#include "kantor/composition.hpp"

#include <stdexcept>

namespace kantor {

CompositionAlgebra CompositionAlgebra::reals()
{
    CompositionAlgebra r;
    r.dim_ = 1;
    r.label_ = "R";
    r.basis_labels_ = {"1"};
    r.conj_signs_ = {1};
    r.table_ = StructureTensor::tabulate(2, 1, 1, [](StructureTensor::Tuple) { return unit_vector(1, 0); });
    return r;
}

CompositionAlgebra CompositionAlgebra::cayley_dickson_double(const CompositionAlgebra& a, const Scalar& gamma,
                                                             std::string label)
{
    if (!a.chain_)
        throw std::invalid_argument("cayley_dickson_double: argument must come from the doubling chain");
    if (gamma != Scalar(1) && gamma != Scalar(-1))
        throw std::invalid_argument("cayley_dickson_double: gamma must be +1 or -1");

    const std::size_t n = a.dim_;
    const auto en = static_cast<Eigen::Index>(n);
    CompositionAlgebra d;
    d.dim_ = 2 * n;
    d.label_ = label.empty() ? "CD(" + a.label_ + ")" : std::move(label);
    d.basis_labels_.push_back("1");
    for (std::size_t i = 1; i < 2 * n; ++i)
        d.basis_labels_.push_back("e" + std::to_string(i));
    d.conj_signs_ = a.conj_signs_;
    d.conj_signs_.resize(2 * n, -1);

    d.table_ = StructureTensor::tabulate(2, 2 * n, 2 * n, [&](StructureTensor::Tuple t) {
        const VectorQ x = unit_vector(2 * en, static_cast<Eigen::Index>(t[0]));
        const VectorQ y = unit_vector(2 * en, static_cast<Eigen::Index>(t[1]));
        const VectorQ pa = x.head(en), pb = x.tail(en);
        const VectorQ qc = y.head(en), qd = y.tail(en);
        VectorQ out(2 * en);
        out.head(en) = a.multiply(pa, qc) + a.multiply(a.conjugate(qd), pb) * gamma;
        out.tail(en) = a.multiply(qd, pa) + a.multiply(pb, a.conjugate(qc));
        return out;
    });
    return d;
}

CompositionAlgebra CompositionAlgebra::tensor(const CompositionAlgebra& k, const CompositionAlgebra& o)
{
    CompositionAlgebra t;
    const std::size_t nk = k.dim_, no = o.dim_;
    t.dim_ = nk * no;
    t.label_ = k.label_ + "(x)" + o.label_;
    t.chain_ = false;
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < no; ++j) {
            t.basis_labels_.push_back(k.basis_labels_[i] + "⊗" + o.basis_labels_[j]);
            t.conj_signs_.push_back(k.conj_signs_[i] * o.conj_signs_[j]);
        }
    t.table_ = StructureTensor::tabulate(2, nk * no, nk * no, [&](StructureTensor::Tuple tp) {
        const std::size_t i1 = tp[0] / no, j1 = tp[0] % no;
        const std::size_t i2 = tp[1] / no, j2 = tp[1] % no;
        VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(nk * no));
        for (const auto& [a, ca] : k.table_.at(i1, i2))
            for (const auto& [b, cb] : o.table_.at(j1, j2))
                out(static_cast<Eigen::Index>(a * no + b)) += ca * cb;
        return out;
    });
    return t;
}

const std::vector<std::string>& CompositionAlgebra::standard_names()
{
    static const std::vector<std::string> names = {"R", "C", "H", "O", "split-C", "split-H", "split-O"};
    return names;
}

CompositionAlgebra CompositionAlgebra::standard(std::string_view name)
{
    const CompositionAlgebra r = reals();
    if (name == "R")
        return r;
    const CompositionAlgebra c = cayley_dickson_double(r, -1, "C");
    if (name == "C")
        return c;
    if (name == "split-C")
        return cayley_dickson_double(r, 1, "split-C");
    const CompositionAlgebra h = cayley_dickson_double(c, -1, "H");
    if (name == "H")
        return h;
    if (name == "split-H")
        return cayley_dickson_double(c, 1, "split-H");
    if (name == "O")
        return cayley_dickson_double(h, -1, "O");
    if (name == "split-O")
        return cayley_dickson_double(h, 1, "split-O");
    throw std::invalid_argument("unknown composition algebra '" + std::string(name) + "'");
}

void CompositionAlgebra::check(const VectorQ& x) const
{
    if (static_cast<std::size_t>(x.size()) != dim_)
        throw DimensionError("composition algebra " + label_ + ": element length mismatch");
}

VectorQ CompositionAlgebra::multiply(const VectorQ& x, const VectorQ& y) const
{
    check(x);
    check(y);
    return table_.apply(x, y);
}

VectorQ CompositionAlgebra::conjugate(const VectorQ& x) const
{
    check(x);
    VectorQ out = x;
    for (std::size_t i = 0; i < dim_; ++i)
        if (conj_signs_[i] < 0)
            out(static_cast<Eigen::Index>(i)) = -out(static_cast<Eigen::Index>(i));
    return out;
}

Scalar CompositionAlgebra::norm(const VectorQ& x) const
{
    if (!chain_)
        throw std::domain_error("norm_form is only defined for doubling-chain algebras, not " + label_);
    return multiply(x, conjugate(x))(0);
}

VectorQ CompositionAlgebra::associator(const VectorQ& x, const VectorQ& y, const VectorQ& z) const
{
    return multiply(multiply(x, y), z) - multiply(x, multiply(y, z));
}

std::vector<std::array<std::size_t, 3>> CompositionAlgebra::imaginary_triples() const
{
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t i = 1; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const auto e = table_.at(i, j);
            if (e.size() == 1 && e[0].second == Scalar(1) && e[0].first != 0)
                out.push_back({i, j, e[0].first});
        }
    return out;
}

nlohmann::ordered_json CompositionAlgebra::to_json() const
{
    nlohmann::ordered_json j;
    j["label"] = label_;
    j["dimension"] = dim_;
    j["basis"] = basis_labels_;
    j["conj_signs"] = conj_signs_;
    auto products = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < dim_; ++a)
        for (std::size_t b = 0; b < dim_; ++b) {
            auto terms = nlohmann::ordered_json::array();
            for (const auto& [k, c] : table_.at(a, b))
                terms.push_back({{"k", k}, {"coeff", c.to_string()}});
            products.push_back({{"i", a}, {"j", b}, {"terms", terms}});
        }
    j["products"] = products;
    return j;
}

AlgebraElement::AlgebraElement(std::shared_ptr<const CompositionAlgebra> algebra, VectorQ coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs))
{
    if (!algebra_)
        throw std::invalid_argument("AlgebraElement: null algebra");
    if (static_cast<std::size_t>(coeffs_.size()) != algebra_->dimension())
        throw DimensionError("AlgebraElement: coefficient length mismatch");
}

AlgebraElement AlgebraElement::basis(std::shared_ptr<const CompositionAlgebra> algebra, std::size_t i)
{
    VectorQ v = algebra->basis(i);
    return {std::move(algebra), std::move(v)};
}

void AlgebraElement::same_algebra(const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.algebra_ != y.algebra_)
        throw AlgebraMismatch("elements belong to different algebras (" + x.algebra_->label() + ", " +
                              y.algebra_->label() + ")");
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y)
{
    AlgebraElement::same_algebra(x, y);
    return {x.algebra_, x.algebra_->multiply(x.coeffs_, y.coeffs_)};
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y)
{
    AlgebraElement::same_algebra(x, y);
    return {x.algebra_, VectorQ(x.coeffs_ + y.coeffs_)};
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y)
{
    AlgebraElement::same_algebra(x, y);
    return {x.algebra_, VectorQ(x.coeffs_ - y.coeffs_)};
}

} // namespace kantor
