#include <cmath>

#include <doctest.h>

#include "randbound/family_io.hpp"
#include "randbound/report.hpp"
#include "randbound/rng.hpp"

using namespace randbound;

TEST_CASE("family json round trip is bit exact") {
    CounterRng rng(61);
    NamedFamily nf;
    nf.name = "roundtrip";
    nf.family.domain = linf(3);
    nf.family.codomain = l1(2);
    for (int i = 0; i < 3; ++i) {
        Matrix m(2, 3);
        for (double& x : m.data) x = rng.next_range(-1.0, 1.0) / 3.0; // non-representable decimals
        nf.family.members.push_back(std::move(m));
    }
    const std::string text = family_to_json(nf);
    const NamedFamily back = parse_family_json(text);
    CHECK(back.name == nf.name);
    CHECK(back.family.domain == nf.family.domain);
    CHECK(back.family.codomain == nf.family.codomain);
    REQUIRE(back.family.members.size() == nf.family.members.size());
    for (size_t i = 0; i < nf.family.members.size(); ++i)
        CHECK(back.family.members[i] == nf.family.members[i]); // exact doubles
    // serialize -> parse -> serialize is a fixed point
    CHECK(family_to_json(back) == text);
}

TEST_CASE("family json exponent forms") {
    const NamedFamily nf = parse_family_json(
        R"({"name":"t","domain":{"dim":2,"p":"inf"},"codomain":{"dim":1,"p":2},)"
        R"("members":[[[1,0]],[[0,1]]]})");
    CHECK(is_inf_exponent(nf.family.domain.p));
    CHECK(nf.family.codomain.p == 2.0);
    CHECK(nf.family.size() == 2);

    CHECK_THROWS_AS(parse_family_json(R"({"domain":{"dim":2,"p":"huge"},)"
                                      R"("codomain":{"dim":1,"p":2},"members":[[[1,0]]]})"),
                    DomainError);
    CHECK_THROWS_AS(parse_family_json(R"({"domain":{"dim":2,"p":"inf"},)"
                                      R"("codomain":{"dim":1,"p":2},"members":[[[1,0,3]]]})"),
                    ShapeError);
    CHECK_THROWS_AS(parse_family_json(R"({"domain":{"dim":2,"p":"inf"},)"
                                      R"("codomain":{"dim":1,"p":2},"members":[]})"),
                    DomainError);
}

TEST_CASE("run report serialization") {
    RunReport rep;
    rep.command = "verify demo";
    rep.withTimestamp = false;
    ReportRow row;
    row.caseId = "demo/one";
    row.check = "demo-check";
    row.lower = 0.5;
    row.upper = std::numeric_limits<double>::infinity();
    row.pass = true;
    rep.rows.push_back(row);
    row.caseId = "demo,two\"quoted\"";
    row.pass = false;
    row.upper = 2.0;
    rep.rows.push_back(row);

    CHECK_FALSE(rep.all_pass());
    const std::string json = rep.to_json();
    CHECK(json.find("\"upper\": \"inf\"") != std::string::npos);
    CHECK(json.find("timestamp") == std::string::npos);
    CHECK(json == rep.to_json()); // stable

    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("case,lower,upper,ci_halfwidth,pass,elapsed_ms\r\n", 0) == 0);
    CHECK(csv.find("\"demo,two\"\"quoted\"\"\"") != std::string::npos);
    CHECK(csv.find("inf") != std::string::npos);
}
