#pragma once

// Triple systems (xyz), the bracket operators <u,v>(z) = (uzv) - (vzu), the
// space L they span, and the Jordan, Kantor and Freudenthal axiom suites.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kantor/composition.hpp"
#include "kantor/linalg.hpp"
#include "kantor/matrix_lie.hpp"
#include "kantor/structure_tensor.hpp"

namespace kantor {

class TripleSystem {
public:
    using BasisProduct = std::function<VectorQ(std::size_t, std::size_t, std::size_t)>;

    TripleSystem() = default;
    /// product must be a trilinear tensor K^3 -> K; form, when given, must be
    /// an antisymmetric dim x dim matrix.
    TripleSystem(std::string label, StructureTensor product, std::optional<MatrixQ> form = std::nullopt);

    static TripleSystem tabulate(std::string label, std::size_t dim, const BasisProduct& basis_product,
                                 std::optional<MatrixQ> form = std::nullopt);

    [[nodiscard]] std::size_t dim() const noexcept { return product_.out_dim(); }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const StructureTensor& product() const noexcept { return product_; }
    [[nodiscard]] bool has_form() const noexcept { return form_.has_value(); }
    [[nodiscard]] const MatrixQ& form() const;

    [[nodiscard]] VectorQ triple(const VectorQ& x, const VectorQ& y, const VectorQ& z) const
    {
        return product_.apply(x, y, z);
    }
    /// <x,y> for the scalar form.
    [[nodiscard]] Scalar form_value(const VectorQ& x, const VectorQ& y) const;

    [[nodiscard]] TripleSystem with_product(StructureTensor product) const;
    [[nodiscard]] TripleSystem with_form(std::optional<MatrixQ> form) const;
    [[nodiscard]] TripleSystem with_label(std::string label) const;

private:
    std::string label_;
    StructureTensor product_;
    std::optional<MatrixQ> form_;
};

[[nodiscard]] VectorQ triple_product(const TripleSystem& t, const VectorQ& x, const VectorQ& y, const VectorQ& z);

/// Matrix of z -> (uzv) - (vzu).
[[nodiscard]] MatrixQ bracket_op(const TripleSystem& t, const VectorQ& u, const VectorQ& v);

/// <u,v>(z) without forming the matrix.
[[nodiscard]] VectorQ bracket_apply(const TripleSystem& t, const VectorQ& u, const VectorQ& v, const VectorQ& z);

/// (xyz) = x(y*z) + z(y*x) - y(x*z) on the tensor algebra k (x) o.
[[nodiscard]] TripleSystem make_tensor_kts(const CompositionAlgebra& k, const CompositionAlgebra& o);

/// Replaces the coefficient of output l on the basis triple (i,j,k) by its
/// value plus delta.
[[nodiscard]] TripleSystem mutate_structure_constant(const TripleSystem& t, std::size_t i, std::size_t j,
                                                     std::size_t k, std::size_t l, const Scalar& delta);

// ---------------------------------------------------------------------------

/// The span L of all <u,v>, with a basis B_m = <e_(i_m), e_(j_m)> chosen
/// greedily over i < j.
class BracketSpace {
public:
    BracketSpace() = default;
    BracketSpace(std::size_t dim_k, std::vector<MatrixQ> basis, std::vector<std::pair<std::size_t, std::size_t>> pairs,
                 StructureTensor coords);

    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] std::size_t dim_k() const noexcept { return dim_k_; }
    [[nodiscard]] const std::vector<MatrixQ>& basis() const noexcept { return basis_; }
    /// (i_m, j_m) with B_m = <e_(i_m), e_(j_m)>; for a scalar line, empty.
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& basis_pairs() const noexcept
    {
        return pairs_;
    }

    /// c(i,j) with <e_i, e_j> = sum_m c(i,j)_m B_m, as a bilinear K x K -> L.
    [[nodiscard]] const StructureTensor& coords() const noexcept { return coords_; }
    /// (m, j) -> B_m(e_j), as a bilinear L x K -> K.
    [[nodiscard]] const StructureTensor& action() const noexcept { return action_; }

    [[nodiscard]] VectorQ coordinates_of(const VectorQ& u, const VectorQ& v) const { return coords_.apply(u, v); }
    [[nodiscard]] VectorQ apply(const VectorQ& zeta, const VectorQ& x) const { return action_.apply(zeta, x); }
    [[nodiscard]] MatrixQ operator_of(const VectorQ& zeta) const;
    /// Coordinates of an endomorphism in the basis, if it lies in L.
    [[nodiscard]] std::optional<VectorQ> coordinates_of_matrix(const MatrixQ& m) const;

private:
    std::size_t dim_k_ = 0;
    std::vector<MatrixQ> basis_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    StructureTensor coords_;
    StructureTensor action_;
};

[[nodiscard]] BracketSpace compute_bracket_space(const TripleSystem& t);

/// L identified with the field: B_0 = identity and <x,y> given by the form.
[[nodiscard]] BracketSpace scalar_bracket_space(const TripleSystem& t);

// ---------------------------------------------------------------------------

enum class CheckMode { Exhaustive, Sampled };

[[nodiscard]] std::string to_string(CheckMode m);

struct CheckOptions {
    CheckMode mode = CheckMode::Exhaustive;
    std::size_t samples = 2000; ///< tuples per identity in sampled mode
    std::uint64_t seed = 0;
};

struct IdentityResult {
    std::string identity;
    CheckMode mode = CheckMode::Exhaustive;
    std::size_t tuples_checked = 0;
    std::size_t failures = 0;
    /// First failing tuple (lowest index), rendered per argument.
    std::optional<std::vector<std::string>> counterexample;

    [[nodiscard]] bool pass() const noexcept { return failures == 0; }
};

struct AxiomReport {
    std::string system;
    std::string check; ///< "jts", "kts" or "fts"
    std::vector<IdentityResult> identities;

    [[nodiscard]] bool pass() const noexcept;
    [[nodiscard]] const IdentityResult* find(std::string_view identity) const;
};

/// Signs of the last two terms of (uv(xyz)) = ((uvx)yz) + m (x(vuy)z) + l (xy(uvz)).
struct Fts1Signs {
    int middle = 1;
    int last = 1;
};

/// Random rational vector used by sampled checks: dense with entries in
/// [-3,3] up to dimension 16, otherwise supported on four coordinates.
[[nodiscard]] VectorQ sample_vector(std::size_t dim, std::mt19937_64& rng);

/// Runs a predicate on all basis tuples (exhaustive) or on seeded random
/// tuples (sampled). Shared by every identity check.
[[nodiscard]] IdentityResult check_identity(std::string name, std::size_t dim, std::size_t arity,
                                            const CheckOptions& opts,
                                            const std::function<bool(std::span<const VectorQ>)>& holds);

[[nodiscard]] IdentityResult check_ktsdef1(const TripleSystem& t, const CheckOptions& opts,
                                           std::string name = "ktsdef1");
[[nodiscard]] IdentityResult check_ktsdef2(const TripleSystem& t, const CheckOptions& opts);
[[nodiscard]] IdentityResult check_bracket_vanishes(const TripleSystem& t, const CheckOptions& opts);
[[nodiscard]] IdentityResult check_fts1(const TripleSystem& t, const CheckOptions& opts, Fts1Signs signs = {});
[[nodiscard]] IdentityResult check_altid1(const TripleSystem& t, const CheckOptions& opts);
[[nodiscard]] IdentityResult check_altid2(const TripleSystem& t, const CheckOptions& opts);

/// jtsdef1 and jtsdef2 (<u,v> = 0).
[[nodiscard]] AxiomReport check_jts(const TripleSystem& t, const CheckOptions& opts);
/// ktsdef1 (5-tuples) and ktsdef2 (4-tuples, compared as operators).
[[nodiscard]] AxiomReport check_kts(const TripleSystem& t, const CheckOptions& opts);
/// Form antisymmetry, fts1, both forms of fts2, fts3. Throws
/// std::invalid_argument when the system has no form.
[[nodiscard]] AxiomReport check_fts(const TripleSystem& t, const CheckOptions& opts, Fts1Signs signs = {});

// ---------------------------------------------------------------------------

/// (xyz) = [[x, tau y], z] on g_-1 (basis: grade -1 elements in basis order).
/// Throws InvolutionError when tau fails verification and
/// std::invalid_argument unless g is 3- or 5-graded.
[[nodiscard]] TripleSystem derive_from_graded(const MatrixGradedLieAlgebra& g, const GradedInvolution& tau);

/// (xyz) = [[x, [T, y]], z] on g_-1 with the form read off from
/// <x,y>(z) = alpha z. Throws std::invalid_argument when g is not 5-graded
/// with one-dimensional g_(+-2), T is not a nonzero element of g_2, or some
/// <x,y> is not scalar.
[[nodiscard]] TripleSystem derive_fts(const MatrixGradedLieAlgebra& g, const MatrixQ& t_elt);

/// Embeds an element of g_-1 in the derived system's coordinates and back.
[[nodiscard]] VectorQ to_g_minus1_coords(const MatrixGradedLieAlgebra& g, const MatrixQ& x);
[[nodiscard]] MatrixQ from_g_minus1_coords(const MatrixGradedLieAlgebra& g, const VectorQ& c);

} // namespace kantor
