#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kantor/linalg.hpp"

namespace kantor {

/// Sparse table of structure constants for a multilinear map
/// V_1 x ... x V_arity -> W, stored per basis input tuple (row-major over the
/// inputs). Inputs usually share one dimension but need not.
class StructureTensor {
public:
    using Entry = std::pair<std::uint32_t, Scalar>;
    using Tuple = std::span<const std::size_t>;

    StructureTensor() = default;

    /// Evaluates fn on every basis tuple in lexicographic order and records
    /// the nonzero output coordinates.
    static StructureTensor tabulate(std::size_t arity, std::size_t in_dim, std::size_t out_dim,
                                    const std::function<VectorQ(Tuple)>& fn);
    static StructureTensor tabulate(std::vector<std::size_t> in_dims, std::size_t out_dim,
                                    const std::function<VectorQ(Tuple)>& fn);

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    /// Dimension of input slot a.
    [[nodiscard]] std::size_t in_dim(std::size_t a = 0) const noexcept { return in_dims_[a]; }
    [[nodiscard]] std::size_t out_dim() const noexcept { return out_dim_; }
    [[nodiscard]] std::size_t nonzeros() const noexcept { return entries_.size(); }

    [[nodiscard]] std::span<const Entry> at(std::size_t flat_index) const
    {
        return {entries_.data() + offsets_[flat_index], entries_.data() + offsets_[flat_index + 1]};
    }
    [[nodiscard]] std::span<const Entry> at(std::size_t i, std::size_t j) const { return at(i * in_dims_[1] + j); }
    [[nodiscard]] std::span<const Entry> at(std::size_t i, std::size_t j, std::size_t k) const
    {
        return at((i * in_dims_[1] + j) * in_dims_[2] + k);
    }

    /// Coefficient of output l on a basis tuple.
    [[nodiscard]] Scalar coefficient(std::size_t flat_index, std::size_t l) const;

    /// Multilinear evaluation on arbitrary vectors (arity 1, 2 or 3).
    [[nodiscard]] VectorQ apply(const VectorQ& x) const;
    [[nodiscard]] VectorQ apply(const VectorQ& x, const VectorQ& y) const;
    [[nodiscard]] VectorQ apply(const VectorQ& x, const VectorQ& y, const VectorQ& z) const;

    /// Replaces a single structure constant (used for mutation tests).
    [[nodiscard]] StructureTensor with_coefficient(std::size_t flat_index, std::size_t l, const Scalar& value) const;

    friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

private:
    void check_arity(std::size_t n) const;
    void check_len(const VectorQ& v, std::size_t slot) const;

    std::size_t arity_ = 0;
    std::vector<std::size_t> in_dims_;
    std::size_t out_dim_ = 0;
    std::vector<std::uint32_t> offsets_;
    std::vector<Entry> entries_;
};

/// Nonzero positions of a dense vector.
std::vector<std::size_t> support(const VectorQ& v);

} // namespace kantor
