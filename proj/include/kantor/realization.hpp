#pragma once

// The Lie algebras L(J), L(K), L(F) of a triple system realized as algebras of
// polynomial operators on V + W, with V = the triple system and W = the
// bracket space L (a line for Freudenthal systems, absent for Jordan ones).
//
// For a Kantor system, with z in V and Z = sum zeta_m B_m in W:
//
//   K_ab  = 2<a,b>
//   U_a   = a + <a,z>
//   S_ab  = (abz) - <a,Z(b)>
//   Ut_a  = -1/2 (zaz) - 1/2 Z(a) + 1/6 <(zaz),z> - 1/2 <Z(a),z>
//   Kt_ab = -1/6 (z<a,b>(z)z) - 1/2 Z(<a,b>(z))
//           + 1/12 <(z<a,b>(z)z),z> + 1/2 <Z(a),Z(b)>
//
// where <x,y> in the W slots means the element of L. A Freudenthal system
// uses its scalar form instead, and a Jordan system has u_a = a,
// s_ab = (abx), ut_a = -1/2 (xax).
//
// Generators are available both as expanded PolyOperators and as pointwise
// closures; the latter never expand the polynomials and carry the large
// e7/e8 checks.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kantor/linalg.hpp"
#include "kantor/matrix_lie.hpp"
#include "kantor/poly_operator.hpp"
#include "kantor/triple_system.hpp"

namespace kantor {

enum class SystemKind { Jts, Kts, Fts };
enum class Family { K, U, S, Ut, Kt };

[[nodiscard]] std::string to_string(SystemKind k);
[[nodiscard]] int family_grade(Family f) noexcept;
[[nodiscard]] bool is_pair_family(Family f) noexcept;
/// Display name: K, U, S, Ut, Kt (u, s, ut for Jordan systems).
[[nodiscard]] std::string family_name(SystemKind kind, Family f);
[[nodiscard]] std::optional<Family> family_of_grade(SystemKind kind, int grade);

/// One term c * F_(a,b) of a generator combination with vector indices.
struct GenTerm {
    Scalar coeff;
    Family family;
    VectorQ a;
    VectorQ b; ///< empty for U and Ut
};

class AxiomError : public std::runtime_error {
public:
    AxiomError(const std::string& what, AxiomReport report) : std::runtime_error(what), report_(std::move(report)) {}
    [[nodiscard]] const AxiomReport& report() const noexcept { return report_; }

private:
    AxiomReport report_;
};

struct BuildOptions {
    bool verify_axioms = true;
    /// Defaults to exhaustive up to dimension 8, else 2000 seeded samples.
    std::optional<CheckOptions> axiom_check;
    /// Large mode never expands the cubic and quartic generators.
    bool large = false;
};

class RealizedAlgebra {
public:
    /// Builds L(t) for the given kind. Unless disabled, first runs the
    /// matching axiom suite and throws AxiomError when it fails.
    static RealizedAlgebra build(SystemKind kind, TripleSystem t, const BuildOptions& opts = {});
    static RealizedAlgebra build_jts(TripleSystem t, const BuildOptions& opts = {});
    static RealizedAlgebra build_kts(TripleSystem t, const BuildOptions& opts = {});
    static RealizedAlgebra build_fts(TripleSystem t, const BuildOptions& opts = {});

    [[nodiscard]] SystemKind kind() const noexcept { return kind_; }
    [[nodiscard]] const TripleSystem& system() const noexcept { return system_; }
    [[nodiscard]] const BracketSpace& bracket_space() const noexcept { return bracket_; }
    [[nodiscard]] const GradedSpace& space() const noexcept { return space_; }
    [[nodiscard]] std::size_t dim_k() const noexcept { return system_.dim(); }
    [[nodiscard]] bool large() const noexcept { return large_; }
    [[nodiscard]] const std::optional<AxiomReport>& axiom_report() const noexcept { return axioms_; }
    [[nodiscard]] const std::vector<Family>& families() const noexcept { return families_; }
    [[nodiscard]] int max_grade() const noexcept { return kind_ == SystemKind::Jts ? 1 : 2; }

    /// Index pairs (or single indices) naming the generators of a family;
    /// antisymmetric families list a < b only.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> generator_indices(Family f) const;

    /// Expanded generator on basis indices (b ignored for U and Ut); cached.
    [[nodiscard]] PolyOperator op(Family f, std::size_t a, std::size_t b = 0) const;
    /// Expanded generator with vector indices, built directly from the formulas.
    [[nodiscard]] PolyOperator op(Family f, const VectorQ& a, const VectorQ& b) const;
    /// Only the V outputs of Ut_a (used for projected ranks).
    [[nodiscard]] PolyMap ut_v_part(const VectorQ& a) const;

    /// Pointwise value of the generator at p in V + W.
    [[nodiscard]] VectorQ eval(Family f, const VectorQ& a, const VectorQ& b, const VectorQ& p) const;
    [[nodiscard]] VectorQ eval(const std::vector<GenTerm>& terms, const VectorQ& p) const;

    [[nodiscard]] VectorQ unit(std::size_t i) const;

private:
    struct Cache {
        std::mutex mutex;
        std::map<std::tuple<int, std::size_t, std::size_t>, std::shared_ptr<const PolyOperator>> ops;
    };

    RealizedAlgebra() = default;
    [[nodiscard]] PolyOperator build_op(Family f, const VectorQ& a, const VectorQ& b) const;

    SystemKind kind_ = SystemKind::Kts;
    TripleSystem system_;
    BracketSpace bracket_;
    GradedSpace space_;
    bool large_ = false;
    std::optional<AxiomReport> axioms_;
    std::vector<Family> families_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// ---------------------------------------------------------------------------
// Spans, graded dimensions and structure constants

/// Echelon basis of the span of a generator family.
struct FamilySpan {
    Family family = Family::S;
    std::vector<std::pair<std::size_t, std::size_t>> basis; ///< generator indices of the basis elements
    std::shared_ptr<SparseEchelon> echelon;                 ///< with coordinate tracking
    [[nodiscard]] std::size_t rank() const noexcept { return basis.size(); }
};

struct GradedDims {
    std::vector<int> grades;
    std::vector<std::size_t> dims;
    /// "full", "projection" or "factored" per grade
    std::vector<std::string> methods;
    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t dim(int grade) const;
    [[nodiscard]] bool symmetric() const;
};

/// Span of all generators of a family, inserted in generator_indices order.
[[nodiscard]] FamilySpan family_span(const RealizedAlgebra& r, Family f, bool track_coordinates = false);

enum class RankStrategy { Auto, Full, Reduced };

/// Ranks of the flattened generator families per grade. Reduced ranks use
/// either a projection to a subset of coordinates (exact when it already has
/// full rank) or, for Kt, the splitting of Kt_ab into a part linear in
/// <a,b> plus the <Z(a),Z(b)> term; both fall back to the full family when
/// their precondition fails. Auto uses Reduced in large mode only.
[[nodiscard]] GradedDims graded_dims(const RealizedAlgebra& r, RankStrategy strategy = RankStrategy::Auto);

/// Full spans of every family plus exact structure constants between span
/// basis elements, computed on demand with lie_bracket.
class GradedStructure {
public:
    explicit GradedStructure(const RealizedAlgebra& r);

    [[nodiscard]] const RealizedAlgebra& algebra() const noexcept { return r_; }
    [[nodiscard]] const FamilySpan& span(Family f) const;
    [[nodiscard]] GradedDims dims() const;

    /// Coordinates of a generator in its family's span basis.
    [[nodiscard]] VectorQ coords(Family f, std::size_t a, std::size_t b = 0) const;
    /// Coordinates of a combination of generators of one family.
    [[nodiscard]] VectorQ coords(Family target, const std::vector<GenTerm>& terms) const;
    /// Coordinates of an arbitrary operator in a family span, if it lies there.
    [[nodiscard]] std::optional<VectorQ> coords_of(Family f, const PolyOperator& op) const;

    struct BracketEntry {
        bool closed = true;   ///< false when the bracket leaves the target span
        VectorQ coords;       ///< in the target family (empty when the grade is out of range)
    };
    /// [b_i, b_j] for basis element i of f and j of g.
    [[nodiscard]] const BracketEntry& basis_bracket(Family f, std::size_t i, Family g, std::size_t j) const;

    /// [x, y] for span coordinates x (in f) and y (in g); nullopt when some
    /// needed basis bracket leaves its span.
    [[nodiscard]] std::optional<VectorQ> bracket_coords(Family f, const VectorQ& x, Family g, const VectorQ& y) const;

private:
    const RealizedAlgebra& r_;
    std::map<Family, FamilySpan> spans_;
    struct Shared {
        std::mutex mutex;
        std::map<std::tuple<int, std::size_t, std::size_t>, VectorQ> coords;
        std::map<std::tuple<int, std::size_t, int, std::size_t>, std::shared_ptr<BracketEntry>> brackets;
    };
    std::shared_ptr<Shared> shared_ = std::make_shared<Shared>();
};

// ---------------------------------------------------------------------------
// Verification

enum class Engine {
    Auto,      ///< structure constants, or pointwise in large mode
    Structure, ///< exact brackets of span basis elements, then coordinates
    Direct,    ///< lie_bracket on every instance, compared as coefficient vectors
    Pointwise  ///< exact evaluation at seeded random rational points
};

struct VerifyOptions {
    CheckMode mode = CheckMode::Exhaustive;
    std::size_t samples = 500; ///< instances per relation in sampled mode
    std::uint64_t seed = 0;
    Engine engine = Engine::Auto;
};

/// A commutation relation [F1_(...), F2_(...)] = sum of generator terms.
struct RelationSpec {
    std::string name;
    Family left;
    Family right;
    /// Builds the right-hand side from the unit vectors of the indices.
    std::function<std::vector<GenTerm>(std::span<const VectorQ>)> rhs;
};

[[nodiscard]] std::vector<RelationSpec> commutation_relations(const RealizedAlgebra& r);

/// Checks every relation of the algebra's table. The structure engine needs a
/// GradedStructure (created on the fly when null).
[[nodiscard]] std::vector<IdentityResult> verify_commutators(const RealizedAlgebra& r, const VerifyOptions& opts,
                                                             const GradedStructure* gs = nullptr);

/// Every bracket of span basis elements lies in the span of the summed grade
/// (and vanishes outside -2..2).
[[nodiscard]] IdentityResult verify_closure(const GradedStructure& gs);

/// [[f,g],h] + [[g,h],f] + [[h,f],g] = 0 on seeded generator triples.
[[nodiscard]] IdentityResult verify_jacobi(const RealizedAlgebra& r, std::size_t samples, std::uint64_t seed,
                                           Engine engine = Engine::Auto);

/// Kt_uv = sum lambda_m Kt_(i_m j_m) whenever <u,v> = sum lambda_m B_m, with
/// lambda found by a span search; likewise for K.
[[nodiscard]] IdentityResult check_well_definedness(const RealizedAlgebra& r, Family f, std::size_t samples,
                                                    std::uint64_t seed);

/// The two forms of the <Z(a),Z(b)> term of Kt_ab agree as polynomials.
[[nodiscard]] IdentityResult check_kt_rewrite(const RealizedAlgebra& r, const CheckOptions& opts);

struct EulerReport {
    int sign = 0;
    std::size_t generators_checked = 0;
    std::size_t failures = 0;
    std::optional<std::string> counterexample;
    std::optional<bool> in_grade0_span;
    [[nodiscard]] bool pass() const noexcept { return failures == 0 && sign != 0 && in_grade0_span.value_or(true); }
};

/// [E, X] = s k X with one global sign s for all generators, where
/// E(z + Z) = z + 2Z; also whether E lies in the span of the grade 0
/// generators (when a structure is supplied). In large mode the check is
/// pointwise on a sample of generators.
[[nodiscard]] EulerReport euler_grading_check(const RealizedAlgebra& r, const GradedStructure* gs = nullptr,
                                              std::size_t large_samples = 20, std::uint64_t seed = 0);

struct IsomorphismReport {
    std::size_t dim_g = 0;
    std::size_t rank = 0;
    std::size_t spanning_checked = 0;
    std::size_t pairs_checked = 0;
    bool well_defined = false;
    bool bijective = false;
    bool homomorphism = false;
    bool grades_preserved = false;
    std::optional<std::string> witness;
    [[nodiscard]] bool pass() const noexcept { return well_defined && bijective && homomorphism && grades_preserved; }
};

/// Builds phi: g -> L(K) from [a,b] -> K_ab, a -> U_a, [a,tau b] -> S_ab,
/// tau a -> Ut_a, [tau a, tau b] -> Kt_ab (the three middle rows for a
/// Jordan system) and checks it is well defined, bijective and a
/// homomorphism on all basis pairs. r must be built from
/// derive_from_graded(g, tau).
[[nodiscard]] IsomorphismReport oracle_isomorphism_check(const MatrixGradedLieAlgebra& g, const GradedInvolution& tau,
                                                         const RealizedAlgebra& r);

// ---------------------------------------------------------------------------

struct GradedAlgebraReport {
    std::string system;
    std::string kind;
    std::string mode;
    GradedDims dims;
    std::optional<AxiomReport> axioms;
    std::vector<IdentityResult> relations;
    std::vector<IdentityResult> identities;
    std::optional<EulerReport> euler;
    std::optional<IsomorphismReport> oracle;
    /// Scale applied to T for Freudenthal systems.
    std::optional<Scalar> t_scale;
    std::vector<std::string> errors;
    double timing_ms = 0;

    [[nodiscard]] std::size_t total_dim() const { return dims.total(); }
    [[nodiscard]] std::size_t relations_verified() const;
    [[nodiscard]] bool pass() const;
};

/// Builds L(K) for each system and records graded dimensions; errors are
/// collected per system.
[[nodiscard]] std::vector<GradedAlgebraReport> dimension_table(const std::vector<TripleSystem>& systems, bool large);

} // namespace kantor
