#pragma once

// End-to-end runs shared by the command line tool and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kantor/realization.hpp"
#include "kantor/system_spec.hpp"

namespace kantor {

struct RunOptions {
    /// Exhaustive up to dimension 8, else sampled.
    std::optional<CheckMode> mode;
    /// Sampled instances per relation; defaults to 500, or 50 in large mode.
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    bool large = false;
    bool oracle_check = false;
};

[[nodiscard]] CheckMode default_mode(std::size_t dim);

/// Axiom suite of the requested kind.
[[nodiscard]] AxiomReport run_axioms(const TripleSystem& t, SystemKind check, const RunOptions& opts);

/// Builds L of the system and runs every verification the mode allows:
/// axioms, graded dimensions, the commutation table, closure, Jacobi,
/// well-definedness, the Kt rewrite, (altid1)/(altid2), the Euler grading
/// and, when requested, the oracle isomorphism. Failures are reported, not
/// thrown.
[[nodiscard]] GradedAlgebraReport run_build(const ResolvedSystem& sys, const RunOptions& opts);

/// Graded dimensions only, for the exceptional table.
[[nodiscard]] std::vector<GradedAlgebraReport> run_table(bool large);

} // namespace kantor
