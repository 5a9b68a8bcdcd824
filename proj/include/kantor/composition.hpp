#pragma once

// Composition algebras built by Cayley-Dickson doubling, and their tensor
// products.
//
// Doubling convention, with gamma = -1 for the division algebras and
// gamma = +1 for the split forms:
//
//     (a, b)(c, d) = (ac + gamma d*b, da + bc*),     (a, b)* = (a*, -b)
//
// Basis index bits record the doubling history: in a doubled algebra of
// dimension 2n, index i < n is (e_i, 0) and index n + i is (0, e_i). For the
// division octonions this gives e1 e2 = e3, e1 e4 = e5, e2 e4 = e6, e3 e4 = e7
// (and cyclic consequences); `imaginary_triples` lists the full table.

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kantor/linalg.hpp"
#include "kantor/structure_tensor.hpp"

namespace kantor {

class CompositionAlgebra {
public:
    /// The one-dimensional algebra of rationals.
    static CompositionAlgebra reals();

    static CompositionAlgebra cayley_dickson_double(const CompositionAlgebra& a, const Scalar& gamma,
                                                    std::string label = {});

    /// Tensor product algebra; product and conjugation act factor-wise.
    static CompositionAlgebra tensor(const CompositionAlgebra& k, const CompositionAlgebra& o);

    /// One of "R", "C", "H", "O", "split-C", "split-H", "split-O".
    static CompositionAlgebra standard(std::string_view name);
    static const std::vector<std::string>& standard_names();

    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const std::vector<std::string>& basis_labels() const noexcept { return basis_labels_; }
    [[nodiscard]] const StructureTensor& table() const noexcept { return table_; }
    [[nodiscard]] const std::vector<int>& conj_signs() const noexcept { return conj_signs_; }
    [[nodiscard]] bool in_doubling_chain() const noexcept { return chain_; }

    [[nodiscard]] VectorQ unit() const { return unit_vector(static_cast<Eigen::Index>(dim_), 0); }
    [[nodiscard]] VectorQ basis(std::size_t i) const { return unit_vector(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(i)); }

    [[nodiscard]] VectorQ multiply(const VectorQ& x, const VectorQ& y) const;
    [[nodiscard]] VectorQ conjugate(const VectorQ& x) const;

    /// N(x) = unit coefficient of x x*. Only defined along the doubling chain.
    [[nodiscard]] Scalar norm(const VectorQ& x) const;

    /// Associator (xy)z - x(yz).
    [[nodiscard]] VectorQ associator(const VectorQ& x, const VectorQ& y, const VectorQ& z) const;

    /// Triples (i, j, k) of imaginary units with e_i e_j = +e_k, i < j.
    [[nodiscard]] std::vector<std::array<std::size_t, 3>> imaginary_triples() const;

    [[nodiscard]] nlohmann::ordered_json to_json() const;

private:
    CompositionAlgebra() = default;
    void check(const VectorQ& x) const;

    std::size_t dim_ = 0;
    std::string label_;
    std::vector<std::string> basis_labels_;
    StructureTensor table_;
    std::vector<int> conj_signs_;
    bool chain_ = true;
};

class AlgebraMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Element of a composition algebra; arithmetic is closed in that algebra.
class AlgebraElement {
public:
    AlgebraElement(std::shared_ptr<const CompositionAlgebra> algebra, VectorQ coeffs);

    static AlgebraElement basis(std::shared_ptr<const CompositionAlgebra> algebra, std::size_t i);

    [[nodiscard]] const CompositionAlgebra& algebra() const noexcept { return *algebra_; }
    [[nodiscard]] const VectorQ& coeffs() const noexcept { return coeffs_; }

    [[nodiscard]] AlgebraElement conjugate() const { return {algebra_, algebra_->conjugate(coeffs_)}; }
    [[nodiscard]] Scalar norm() const { return algebra_->norm(coeffs_); }

    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
    friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& x) { return {x.algebra_, VectorQ(x.coeffs_ * s)}; }
    friend bool operator==(const AlgebraElement& x, const AlgebraElement& y)
    {
        return x.algebra_ == y.algebra_ && x.coeffs_ == y.coeffs_;
    }

private:
    static void same_algebra(const AlgebraElement& x, const AlgebraElement& y);

    std::shared_ptr<const CompositionAlgebra> algebra_;
    VectorQ coeffs_;
};

} // namespace kantor
