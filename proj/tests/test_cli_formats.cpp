#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgc/backend.hpp"
#include "hgc/suites.hpp"

using namespace hgc;
using SB = SymbolicBackend;

namespace {

CertificateBundle small_bundle() {
    auto mk = [] { return SB(2); };
    return run_suites<SB>(mk, {"cusps", "genus"});
}

}  // namespace

TEST_CASE("json emission round-trips") {
    CertificateBundle b = small_bundle();
    b.config = {{"n", 2}, {"backend", "symbolic"}};
    auto parsed = CertificateBundle::from_json(nlohmann::json::parse(b.emit_json()));
    CHECK(parsed.tool_version == b.tool_version);
    CHECK(parsed.config == b.config);
    CHECK(parsed.records == b.records);
    CHECK(parsed.wall_seconds == doctest::Approx(b.wall_seconds));
}

TEST_CASE("identical configs produce byte-identical records") {
    CertificateBundle b1 = small_bundle();
    CertificateBundle b2 = small_bundle();
    // wall time lives in the header only; the records must match exactly
    nlohmann::json r1 = nlohmann::json::array(), r2 = nlohmann::json::array();
    for (const auto& r : b1.records) r1.push_back(r.to_json());
    for (const auto& r : b2.records) r2.push_back(r.to_json());
    CHECK(r1.dump() == r2.dump());
}

TEST_CASE("records are ordered by id") {
    CertificateBundle b = small_bundle();
    for (size_t i = 1; i < b.records.size(); ++i)
        CHECK(b.records[i - 1].id < b.records[i].id);
}

TEST_CASE("markdown has one section per suite") {
    CertificateBundle b = small_bundle();
    std::string md = b.emit_markdown();
    CHECK(md.find("## suite: cusps") != std::string::npos);
    CHECK(md.find("## suite: genus") != std::string::npos);
    CHECK(md.find("| PASS |") != std::string::npos);
}

TEST_CASE("exit-code policy") {
    CertificateBundle b;
    CertRecord r;
    r.id = "x/pass";
    r.verdict = "PASS";
    b.records.push_back(r);
    CHECK(b.exit_code() == 0);
    // a paper-discrepancy record does not fail the gate
    r.id = "x/disc";
    r.verdict = "PAPER-DISCREPANCY";
    b.records.push_back(r);
    CHECK(b.exit_code() == 0);
    CHECK(b.discrepancies() == 1);
    r.id = "x/unsup";
    r.verdict = "UNSUPPORTED";
    b.records.push_back(r);
    CHECK(b.exit_code() == 1);
    b.records.pop_back();
    r.id = "x/fail";
    r.verdict = "FAIL";
    b.records.push_back(r);
    CHECK(b.exit_code() == 1);
}

TEST_CASE("inapplicable suites report UNSUPPORTED when requested by name") {
    auto mk = [] { return SB(2); };
    CertificateBundle b = run_suites<SB>(mk, {"pi-z"});
    REQUIRE(b.records.size() == 1);
    CHECK(b.records[0].verdict == "UNSUPPORTED");
    CHECK(b.exit_code() == 1);
    // and "all" skips them instead
    auto names = applicable_suites(2);
    for (const auto& s : names) CHECK(s != "pi-z");
    CHECK(applicable_suites(3) == all_suite_names());
}

TEST_CASE("finite and symbolic backends agree on a fast slice") {
    auto mks = [] { return SB(3); };
    auto mkf = [] { return FiniteBackend::search(3, 1009, 5); };
    CertificateBundle s = run_suites<SB>(mks, {"cusps", "genus"});
    CertificateBundle f = run_suites<FiniteBackend>(mkf, {"cusps", "genus"});
    REQUIRE(s.records.size() == f.records.size());
    for (size_t i = 0; i < s.records.size(); ++i) {
        CHECK(s.records[i].id == f.records[i].id);
        CHECK(s.records[i].verdict == f.records[i].verdict);
    }
}
