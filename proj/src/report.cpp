#include "kantor/report.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace kantor {

Json to_json(const IdentityResult& r)
{
    Json j;
    j["identity"] = r.identity;
    j["mode"] = to_string(r.mode);
    j["tuples_checked"] = r.tuples_checked;
    j["pass"] = r.pass();
    if (r.failures > 0)
        j["failures"] = r.failures;
    if (r.counterexample)
        j["counterexample"] = *r.counterexample;
    return j;
}

Json to_json(const AxiomReport& r)
{
    Json j;
    j["system"] = r.system;
    j["check"] = r.check;
    j["pass"] = r.pass();
    j["identities"] = Json::array();
    for (const auto& x : r.identities)
        j["identities"].push_back(to_json(x));
    return j;
}

Json to_json(const GradedDims& d)
{
    Json j = Json::array();
    for (std::size_t i = 0; i < d.grades.size(); ++i) {
        Json row;
        row["grade"] = d.grades[i];
        row["dim"] = d.dims[i];
        row["method"] = d.methods[i];
        j.push_back(std::move(row));
    }
    return j;
}

Json to_json(const EulerReport& r)
{
    Json j;
    j["sign"] = r.sign;
    j["generators_checked"] = r.generators_checked;
    j["failures"] = r.failures;
    if (r.in_grade0_span)
        j["in_grade0_span"] = *r.in_grade0_span;
    if (r.counterexample)
        j["counterexample"] = *r.counterexample;
    j["pass"] = r.pass();
    return j;
}

Json to_json(const IsomorphismReport& r)
{
    Json j;
    j["dim_g"] = r.dim_g;
    j["rank"] = r.rank;
    j["spanning_checked"] = r.spanning_checked;
    j["pairs_checked"] = r.pairs_checked;
    j["well_defined"] = r.well_defined;
    j["bijective"] = r.bijective;
    j["homomorphism"] = r.homomorphism;
    j["grades_preserved"] = r.grades_preserved;
    if (r.witness)
        j["witness"] = *r.witness;
    j["pass"] = r.pass();
    return j;
}

Json to_json(const GradedAlgebraReport& r, bool with_timing)
{
    Json j;
    j["system"] = r.system;
    j["kind"] = r.kind;
    j["mode"] = r.mode;
    j["graded_dims"] = to_json(r.dims);
    j["total_dim"] = r.total_dim();
    if (r.t_scale)
        j["t_scale"] = r.t_scale->to_string();
    if (r.axioms)
        j["axioms"] = to_json(*r.axioms);
    j["relations_verified"] = r.relations_verified();
    j["commutation_relations"] = Json::array();
    for (const auto& x : r.relations)
        j["commutation_relations"].push_back(to_json(x));
    j["identities"] = Json::array();
    for (const auto& x : r.identities)
        j["identities"].push_back(to_json(x));
    if (r.euler)
        j["euler"] = to_json(*r.euler);
    if (r.oracle)
        j["oracle"] = to_json(*r.oracle);
    if (!r.errors.empty())
        j["errors"] = r.errors;
    j["pass"] = r.pass();
    if (with_timing)
        j["timing_ms"] = r.timing_ms;
    return j;
}

Json to_json(const std::vector<GradedAlgebraReport>& rs, bool with_timing)
{
    Json j = Json::array();
    for (const auto& r : rs)
        j.push_back(to_json(r, with_timing));
    return j;
}

namespace {

std::string pass_fail(bool b) { return b ? "pass" : "FAIL"; }

void identity_rows(std::ostringstream& os, const std::vector<IdentityResult>& xs)
{
    os << "| identity | mode | tuples | failures | counterexample |\n|---|---|---|---|---|\n";
    for (const auto& x : xs) {
        os << "| `" << x.identity << "` | " << to_string(x.mode) << " | " << x.tuples_checked << " | "
           << x.failures << " | ";
        if (x.counterexample) {
            for (std::size_t i = 0; i < x.counterexample->size(); ++i)
                os << (i ? ", " : "") << (*x.counterexample)[i];
        }
        os << " |\n";
    }
}

std::optional<SystemKind> kind_of(const std::string& s)
{
    for (SystemKind k : {SystemKind::Jts, SystemKind::Kts, SystemKind::Fts})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

// Target grade of a relation named "[F1_..,F2_..] = ...".
std::optional<int> relation_grade(SystemKind kind, const std::string& name)
{
    const auto comma = name.find(',');
    if (name.empty() || name[0] != '[' || comma == std::string::npos)
        return std::nullopt;
    auto family_of = [&](std::string token) -> std::optional<int> {
        token = token.substr(0, token.find('_'));
        for (Family f : {Family::K, Family::U, Family::S, Family::Ut, Family::Kt})
            if (family_name(kind, f) == token)
                return family_grade(f);
        return std::nullopt;
    };
    const auto l = family_of(name.substr(1, comma - 1));
    const auto r = family_of(name.substr(comma + 1));
    if (!l || !r)
        return std::nullopt;
    return *l + *r;
}

} // namespace

std::string to_markdown(const AxiomReport& r)
{
    std::ostringstream os;
    os << "## " << r.system << " (" << r.check << " axioms): " << pass_fail(r.pass()) << "\n\n";
    identity_rows(os, r.identities);
    return os.str();
}

std::string to_markdown(const GradedAlgebraReport& r)
{
    std::ostringstream os;
    os << "## L(" << r.system << ") " << r.kind << ", " << r.mode << ": total " << r.total_dim() << ", "
       << pass_fail(r.pass()) << "\n\n";

    std::map<int, std::pair<std::size_t, std::size_t>> per_grade;
    std::size_t other_ok = 0, other_bad = 0;
    const auto kind = kind_of(r.kind);
    for (const auto& x : r.relations) {
        const auto g = kind ? relation_grade(*kind, x.identity) : std::nullopt;
        if (!g) {
            (x.pass() ? other_ok : other_bad) += 1;
            continue;
        }
        auto& [ok, bad] = per_grade[*g];
        (x.pass() ? ok : bad) += 1;
    }
    os << "| grade | dim | verified relations | failures |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < r.dims.grades.size(); ++i) {
        const int g = r.dims.grades[i];
        const auto it = per_grade.find(g);
        const auto counts = it == per_grade.end() ? std::pair<std::size_t, std::size_t>{} : it->second;
        os << "| " << g << " | " << r.dims.dims[i] << " | " << counts.first << " | " << counts.second << " |\n";
    }
    if (other_ok + other_bad > 0)
        os << "| other | | " << other_ok << " | " << other_bad << " |\n";
    os << "| total | " << r.total_dim() << " | " << r.relations_verified() << " | "
       << r.relations.size() - r.relations_verified() << " |\n";

    if (r.t_scale)
        os << "\nT scale: " << r.t_scale->to_string() << "\n";
    if (r.axioms) {
        os << "\n### Axioms (" << r.axioms->check << "): " << pass_fail(r.axioms->pass()) << "\n\n";
        identity_rows(os, r.axioms->identities);
    }
    if (!r.relations.empty()) {
        os << "\n### Commutation relations\n\n";
        identity_rows(os, r.relations);
    }
    if (!r.identities.empty()) {
        os << "\n### Identities\n\n";
        identity_rows(os, r.identities);
    }
    if (r.euler) {
        os << "\n### Euler grading: " << pass_fail(r.euler->pass()) << "\n\nsign " << r.euler->sign << ", "
           << r.euler->generators_checked << " generators, " << r.euler->failures << " failures";
        if (r.euler->in_grade0_span)
            os << ", E in grade 0 span: " << (*r.euler->in_grade0_span ? "yes" : "no");
        os << "\n";
    }
    if (r.oracle) {
        const auto& o = *r.oracle;
        os << "\n### Oracle isomorphism: " << pass_fail(o.pass()) << "\n\ndim g " << o.dim_g << ", rank " << o.rank
           << ", " << o.pairs_checked << " pairs; well defined " << o.well_defined << ", bijective " << o.bijective
           << ", homomorphism " << o.homomorphism << ", grades preserved " << o.grades_preserved << "\n";
        if (o.witness)
            os << "\nwitness: " << *o.witness << "\n";
    }
    if (!r.errors.empty()) {
        os << "\n### Errors\n\n";
        for (const auto& e : r.errors)
            os << "- " << e << "\n";
    }
    return os.str();
}

std::string to_markdown(const std::vector<GradedAlgebraReport>& rs)
{
    int top = 0;
    for (const auto& r : rs)
        for (int g : r.dims.grades)
            top = std::max(top, std::abs(g));
    std::ostringstream os;
    os << "| system |";
    for (int g = -top; g <= top; ++g)
        os << " g" << g << " |";
    os << " total | status |\n|---|";
    for (int g = -top; g <= top; ++g)
        os << "---|";
    os << "---|---|\n";
    for (const auto& r : rs) {
        os << "| " << r.system << " |";
        for (int g = -top; g <= top; ++g)
            os << " " << r.dims.dim(g) << " |";
        os << " " << r.total_dim() << " | " << (r.pass() ? "pass" : "FAIL") << " |\n";
    }
    return os.str();
}

} // namespace kantor
