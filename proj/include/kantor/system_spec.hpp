#pragma once

// Flat system specifications:
//
//   tensor:<K>[:split]       K (x) O for K in R, C, H, O (split-K with :split)
//   sl:<n>:roots=<i,j,...>   the system derived from graded sl(n) with the
//                            Chevalley involution (Jordan when 3-graded,
//                            Kantor when 5-graded)
//   fts:sl<n>                the Freudenthal system of sl(n), n >= 3, graded
//                            by the roots {1, n-1} with T = E_1n

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kantor/matrix_lie.hpp"
#include "kantor/realization.hpp"
#include "kantor/triple_system.hpp"

namespace kantor {

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SystemSpec {
    enum class Source { Tensor, Sl, FtsSl };

    Source source = Source::Tensor;
    std::string text;
    std::string algebra;              ///< tensor: R, C, H, O, split-C, split-H or split-O
    std::size_t n = 0;                ///< sl(n)
    std::vector<std::size_t> roots;   ///< sl(n) grading
};

/// Throws SpecError on malformed input.
[[nodiscard]] SystemSpec parse_system_spec(std::string_view text);

struct ResolvedSystem {
    SystemSpec spec;
    SystemKind kind = SystemKind::Kts;  ///< the kind the construction produces
    TripleSystem system;
    std::optional<MatrixGradedLieAlgebra> g;
    std::optional<GradedInvolution> tau;
    /// Scale applied to T for Freudenthal systems.
    std::optional<Scalar> t_scale;
};

[[nodiscard]] ResolvedSystem resolve_system(const SystemSpec& spec);

[[nodiscard]] std::vector<std::string> exceptional_table_specs(bool large);

} // namespace kantor
