#include "kantor/structure_tensor.hpp"

#include <algorithm>
#include <string>

namespace kantor {

std::vector<std::size_t> support(const VectorQ& v)
{
    std::vector<std::size_t> s;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero())
            s.push_back(static_cast<std::size_t>(i));
    return s;
}

StructureTensor StructureTensor::tabulate(std::size_t arity, std::size_t in_dim, std::size_t out_dim,
                                          const std::function<VectorQ(Tuple)>& fn)
{
    return tabulate(std::vector<std::size_t>(arity, in_dim), out_dim, fn);
}

StructureTensor StructureTensor::tabulate(std::vector<std::size_t> in_dims, std::size_t out_dim,
                                          const std::function<VectorQ(Tuple)>& fn)
{
    StructureTensor t;
    const std::size_t arity = in_dims.size();
    t.arity_ = arity;
    t.in_dims_ = std::move(in_dims);
    t.out_dim_ = out_dim;
    std::size_t count = 1;
    for (std::size_t a = 0; a < arity; ++a)
        count *= t.in_dims_[a];
    t.offsets_.reserve(count + 1);
    t.offsets_.push_back(0);
    std::vector<std::size_t> tuple(arity, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = arity; a-- > 0;) {
            tuple[a] = rem % t.in_dims_[a];
            rem /= t.in_dims_[a];
        }
        const VectorQ out = fn(tuple);
        if (static_cast<std::size_t>(out.size()) != out_dim)
            throw DimensionError("StructureTensor::tabulate: output length mismatch");
        for (Eigen::Index l = 0; l < out.size(); ++l)
            if (!out(l).is_zero())
                t.entries_.emplace_back(static_cast<std::uint32_t>(l), out(l));
        t.offsets_.push_back(static_cast<std::uint32_t>(t.entries_.size()));
    }
    return t;
}

Scalar StructureTensor::coefficient(std::size_t flat_index, std::size_t l) const
{
    for (const auto& [o, c] : at(flat_index))
        if (o == l)
            return c;
    return Scalar(0);
}

void StructureTensor::check_arity(std::size_t n) const
{
    if (n != arity_)
        throw DimensionError("StructureTensor: expected " + std::to_string(arity_) + " arguments, got " +
                             std::to_string(n));
}

void StructureTensor::check_len(const VectorQ& v, std::size_t slot) const
{
    if (static_cast<std::size_t>(v.size()) != in_dims_[slot])
        throw DimensionError("StructureTensor: argument length " + std::to_string(v.size()) + " != " +
                             std::to_string(in_dims_[slot]));
}

VectorQ StructureTensor::apply(const VectorQ& x) const
{
    check_arity(1);
    check_len(x, 0);
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(out_dim_));
    for (std::size_t i : support(x))
        for (const auto& [l, c] : at(i))
            out(l) += x(static_cast<Eigen::Index>(i)) * c;
    return out;
}

VectorQ StructureTensor::apply(const VectorQ& x, const VectorQ& y) const
{
    check_arity(2);
    check_len(x, 0);
    check_len(y, 1);
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(out_dim_));
    const auto sy = support(y);
    for (std::size_t i : support(x))
        for (std::size_t j : sy) {
            const Scalar xy = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
            for (const auto& [l, c] : at(i, j))
                out(l) += xy * c;
        }
    return out;
}

VectorQ StructureTensor::apply(const VectorQ& x, const VectorQ& y, const VectorQ& z) const
{
    check_arity(3);
    check_len(x, 0);
    check_len(y, 1);
    check_len(z, 2);
    VectorQ out = VectorQ::Zero(static_cast<Eigen::Index>(out_dim_));
    const auto sy = support(y);
    const auto sz = support(z);
    for (std::size_t i : support(x))
        for (std::size_t j : sy) {
            const Scalar xy = x(static_cast<Eigen::Index>(i)) * y(static_cast<Eigen::Index>(j));
            for (std::size_t k : sz) {
                const Scalar xyz = xy * z(static_cast<Eigen::Index>(k));
                for (const auto& [l, c] : at(i, j, k))
                    out(l) += xyz * c;
            }
        }
    return out;
}

StructureTensor StructureTensor::with_coefficient(std::size_t flat_index, std::size_t l, const Scalar& value) const
{
    StructureTensor t;
    t.arity_ = arity_;
    t.in_dims_ = in_dims_;
    t.out_dim_ = out_dim_;
    t.offsets_.push_back(0);
    const std::size_t count = offsets_.size() - 1;
    for (std::size_t f = 0; f < count; ++f) {
        std::vector<Entry> row(at(f).begin(), at(f).end());
        if (f == flat_index) {
            auto it = std::find_if(row.begin(), row.end(), [&](const Entry& e) { return e.first == l; });
            if (it != row.end())
                it->second = value;
            else
                row.emplace_back(static_cast<std::uint32_t>(l), value);
            std::erase_if(row, [](const Entry& e) { return e.second.is_zero(); });
            std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        }
        for (auto& e : row)
            t.entries_.push_back(std::move(e));
        t.offsets_.push_back(static_cast<std::uint32_t>(t.entries_.size()));
    }
    return t;
}

} // namespace kantor
