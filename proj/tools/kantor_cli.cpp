#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kantor/parallel.hpp"
#include "kantor/pipeline.hpp"
#include "kantor/report.hpp"

namespace {

using namespace kantor;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr std::size_t max_standard_dim = 16;

struct Config {
    std::string system;
    std::string check;
    bool exhaustive = false;
    bool sampled = false;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    bool large = false;
    bool oracle_check = false;
    std::size_t threads = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunOptions run_options(const Config& c)
{
    RunOptions o;
    if (c.exhaustive)
        o.mode = CheckMode::Exhaustive;
    if (c.sampled)
        o.mode = CheckMode::Sampled;
    o.samples = c.samples;
    o.seed = c.seed;
    o.large = c.large;
    o.oracle_check = c.oracle_check;
    return o;
}

void emit(const Config& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f)
        throw UsageError("cannot write " + c.out);
    f << text;
}

template <class Report>
std::string render(const Config& c, const Report& r)
{
    return c.format == "json" ? to_json(r).dump(2) + "\n" : to_markdown(r);
}

SystemKind parse_kind(const std::string& s)
{
    for (SystemKind k : {SystemKind::Jts, SystemKind::Kts, SystemKind::Fts})
        if (to_string(k) == s)
            return k;
    throw UsageError("unknown check '" + s + "'");
}

int cmd_axioms(const Config& c)
{
    const ResolvedSystem sys = resolve_system(parse_system_spec(c.system));
    const SystemKind kind = c.check.empty() ? sys.kind : parse_kind(c.check);
    if (kind == SystemKind::Fts && !sys.system.has_form())
        throw UsageError("system " + c.system + " has no bilinear form");
    AxiomReport rep = run_axioms(sys.system, kind, run_options(c));
    rep.system = c.system;
    emit(c, render(c, rep));
    return rep.pass() ? exit_pass : exit_fail;
}

int cmd_build(const Config& c)
{
    const ResolvedSystem sys = resolve_system(parse_system_spec(c.system));
    if (sys.system.dim() > max_standard_dim && !c.large)
        throw UsageError("systems of dimension above " + std::to_string(max_standard_dim) + " need --large");
    const GradedAlgebraReport rep = run_build(sys, run_options(c));
    emit(c, render(c, rep));
    return rep.pass() ? exit_pass : exit_fail;
}

int cmd_table(const Config& c)
{
    const auto reps = run_table(c.large);
    emit(c, render(c, reps));
    for (const auto& r : reps)
        if (!r.pass())
            return exit_fail;
    return exit_pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graded Lie algebras of Jordan, Kantor and Freudenthal triple systems"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    app.add_option("--threads", c.threads, "Worker threads (overrides KANTOR_THREADS)")->check(CLI::PositiveNumber);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Write the report to a file instead of stdout");
        sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "markdown"}));
    };
    auto add_mode = [&](CLI::App* sub) {
        auto* ex = sub->add_flag("--exhaustive", c.exhaustive, "Check every basis tuple");
        auto* sa = sub->add_flag("--sampled", c.sampled, "Check seeded random tuples");
        ex->excludes(sa);
        sub->add_option("--samples", c.samples, "Samples per identity or relation")->check(CLI::PositiveNumber);
        sub->add_option("--seed", c.seed, "Random seed");
    };

    auto* axioms = app.add_subcommand("axioms", "Check triple system axioms");
    axioms->add_option("--system", c.system, "System spec")->required();
    axioms->add_option("--check", c.check, "Axiom suite (default: the kind the system is built as)")
        ->check(CLI::IsMember({"jts", "kts", "fts"}));
    add_mode(axioms);
    add_common(axioms);

    auto* build = app.add_subcommand("build", "Build the graded Lie algebra and verify it");
    build->add_option("--system", c.system, "System spec")->required();
    build->add_flag("--large", c.large, "Large mode: reduced ranks and pointwise relations");
    build->add_flag("--oracle-check", c.oracle_check, "Compare with the matrix algebra (sl(n) systems)");
    add_mode(build);
    add_common(build);

    auto* table = app.add_subcommand("table", "Graded dimensions of L(K (x) O)");
    table->add_flag("--large", c.large, "Include H (x) O and O (x) O");
    add_common(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (c.threads > 0)
            set_thread_count(c.threads);
        if (*axioms)
            return cmd_axioms(c);
        if (*build)
            return cmd_build(c);
        return cmd_table(c);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
