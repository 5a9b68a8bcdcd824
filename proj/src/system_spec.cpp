#include "kantor/system_spec.hpp"

#include <charconv>

namespace kantor {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    for (;;) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos)
            return out;
        s.remove_prefix(pos + 1);
    }
}

std::size_t parse_count(std::string_view s, std::string_view what)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw SpecError("expected a number for " + std::string(what) + ", got '" + std::string(s) + "'");
    return v;
}

} // namespace

SystemSpec parse_system_spec(std::string_view text)
{
    SystemSpec spec;
    spec.text = std::string(text);
    const auto parts = split(text, ':');
    const std::string_view kind = parts[0];

    if (kind == "tensor") {
        if (parts.size() < 2 || parts.size() > 3)
            throw SpecError("tensor spec must be tensor:<K>[:split]");
        const std::string k(parts[1]);
        if (k != "R" && k != "C" && k != "H" && k != "O")
            throw SpecError("tensor factor must be one of R, C, H, O");
        if (parts.size() == 3) {
            if (parts[2] != "split")
                throw SpecError("the optional tensor suffix is ':split'");
            if (k == "R")
                throw SpecError("R has no split form");
            spec.algebra = "split-" + k;
        } else {
            spec.algebra = k;
        }
        spec.source = SystemSpec::Source::Tensor;
        return spec;
    }

    if (kind == "sl") {
        if (parts.size() != 3 || parts[2].substr(0, 6) != "roots=")
            throw SpecError("sl spec must be sl:<n>:roots=<i,j,...>");
        spec.source = SystemSpec::Source::Sl;
        spec.n = parse_count(parts[1], "n");
        for (auto r : split(parts[2].substr(6), ','))
            spec.roots.push_back(parse_count(r, "a root index"));
        if (spec.n < 2)
            throw SpecError("sl(n) needs n >= 2");
        for (std::size_t r : spec.roots)
            if (r < 1 || r >= spec.n)
                throw SpecError("root indices must lie in 1.." + std::to_string(spec.n - 1));
        return spec;
    }

    if (kind == "fts") {
        if (parts.size() != 2 || parts[1].substr(0, 2) != "sl")
            throw SpecError("fts spec must be fts:sl<n>");
        spec.source = SystemSpec::Source::FtsSl;
        spec.n = parse_count(parts[1].substr(2), "n");
        if (spec.n < 3)
            throw SpecError("fts:sl<n> needs n >= 3");
        spec.roots = {1, spec.n - 1};
        return spec;
    }

    throw SpecError("unknown system spec '" + std::string(text) + "' (expected tensor:, sl: or fts:)");
}

ResolvedSystem resolve_system(const SystemSpec& spec)
{
    ResolvedSystem out;
    out.spec = spec;
    switch (spec.source) {
    case SystemSpec::Source::Tensor:
        out.kind = SystemKind::Kts;
        out.system = make_tensor_kts(CompositionAlgebra::standard(spec.algebra), CompositionAlgebra::standard("O"));
        return out;
    case SystemSpec::Source::Sl: {
        auto g = MatrixGradedLieAlgebra::build_sl(spec.n, spec.roots);
        auto tau = chevalley_involution(g);
        out.kind = g.max_grade() == 1 ? SystemKind::Jts : SystemKind::Kts;
        out.system = derive_from_graded(g, tau);
        out.g = std::move(g);
        out.tau = std::move(tau);
        return out;
    }
    case SystemSpec::Source::FtsSl: {
        auto g = MatrixGradedLieAlgebra::build_sl(spec.n, spec.roots);
        const std::string top = "E1" + std::to_string(spec.n);
        MatrixQ t;
        for (const auto& e : g.basis())
            if (e.label == top)
                t = e.matrix;
        out.kind = SystemKind::Fts;
        out.system = derive_fts(g, t);
        out.t_scale = Scalar(1);
        out.g = std::move(g);
        return out;
    }
    }
    throw SpecError("unhandled system spec");
}

std::vector<std::string> exceptional_table_specs(bool large)
{
    std::vector<std::string> out = {"tensor:R", "tensor:C"};
    if (large) {
        out.emplace_back("tensor:H");
        out.emplace_back("tensor:O");
    }
    return out;
}

} // namespace kantor
