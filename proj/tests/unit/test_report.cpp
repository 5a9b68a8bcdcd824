#include <doctest.h>

#include "kantor/pipeline.hpp"
#include "kantor/report.hpp"

using namespace kantor;

namespace {

GradedAlgebraReport sl4_report()
{
    RunOptions o;
    o.oracle_check = true;
    return run_build(resolve_system(parse_system_spec("sl:4:roots=1,3")), o);
}

} // namespace

TEST_SUITE("report")
{
    TEST_CASE("identity results serialize with the documented keys")
    {
        IdentityResult r{"ktsdef1", CheckMode::Sampled, 10, 2, std::vector<std::string>{"e1", "e2"}};
        const Json j = to_json(r);
        CHECK(j["identity"] == "ktsdef1");
        CHECK(j["mode"] == "sampled");
        CHECK(j["tuples_checked"] == 10);
        CHECK(j["pass"] == false);
        CHECK(j["counterexample"] == Json::array({"e1", "e2"}));
        IdentityResult ok{"x", CheckMode::Exhaustive, 3, 0, std::nullopt};
        CHECK_FALSE(to_json(ok).contains("counterexample"));
    }

    TEST_CASE("graded algebra report JSON")
    {
        const GradedAlgebraReport rep = sl4_report();
        CHECK(rep.pass());
        const Json j = to_json(rep);
        CHECK(j["total_dim"] == 15);
        CHECK(j["graded_dims"].size() == 5);
        CHECK(j["graded_dims"][0]["grade"] == -2);
        CHECK(j["oracle"]["pass"] == true);
        CHECK(j["euler"]["sign"] == -1);
        CHECK(j["relations_verified"] == 13);
        CHECK(j.contains("timing_ms"));
        CHECK_FALSE(to_json(rep, false).contains("timing_ms"));
        CHECK(to_json(rep, false).dump() == to_json(sl4_report(), false).dump());
    }

    TEST_CASE("markdown tables")
    {
        const std::string md = to_markdown(sl4_report());
        CHECK(md.find("| grade | dim | verified relations | failures |") != std::string::npos);
        CHECK(md.find("| 0 | 5 |") != std::string::npos);
        CHECK(md.find("| total | 15 | 13 | 0 |") != std::string::npos);
        const std::string table = to_markdown(std::vector<GradedAlgebraReport>{sl4_report()});
        CHECK(table.find("| sl:4:roots=1,3 | 1 | 4 | 5 | 4 | 1 | 15 | pass |") != std::string::npos);
    }

    TEST_CASE("failing axiom report renders its counterexample")
    {
        RunOptions o;
        const AxiomReport r = run_axioms(resolve_system(parse_system_spec("tensor:R")).system, SystemKind::Jts, o);
        CHECK_FALSE(r.pass());
        const std::string md = to_markdown(r);
        CHECK(md.find("FAIL") != std::string::npos);
        CHECK(to_json(r)["identities"][1].contains("counterexample"));
    }
}
