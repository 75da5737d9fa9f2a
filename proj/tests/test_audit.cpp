#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "mixedpart/audit.hpp"

using namespace mixedpart;

namespace {

// One id per registered claim; the registry must match this manifest
// exactly, in order.
const std::vector<std::string> kManifest = {
    "prop-2.3",           "prop-BB",
    "prop-BBB",           "prop-incl-excl-B",
    "prop-bioo",          "thm-multinomial",
    "thm-signsum",        "thm-ball-removal",
    "thm-multip1",        "thm-multip2",
    "rstirling-rec-ii",   "rstirling-rec-iii",
    "thm-rstirling-via-B", "cor-rstirling-rec",
    "eq-bino",            "bell-binomial-rec",
    "thm-rbell-sum",      "thm-rmixed-stirling",
    "cor-rmixed-composition", "thm-rmixed-bell",
    "prop-rmixed-bell-multinomial", "factor-thm-i",
    "factor-thm-ii",
};

const AuditReport& default_report() {
    static const AuditReport report = run_audit(AuditGrid{}, SizeGuard{});
    return report;
}

const AuditVerdict& verdict_of(const std::string& id) {
    for (const auto& v : default_report().verdicts)
        if (v.identity == id) return v;
    FAIL("identity not in report: " << id);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("registry matches the manifest exactly") {
    const auto ids = identity_registry();
    REQUIRE(ids.size() == kManifest.size());
    for (std::size_t i = 0; i < ids.size(); ++i) CHECK(ids[i] == kManifest[i]);
    // uniqueness
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("report covers the registry in order") {
    const auto& report = default_report();
    REQUIRE(report.verdicts.size() == kManifest.size());
    for (std::size_t i = 0; i < kManifest.size(); ++i)
        CHECK(report.verdicts[i].identity == kManifest[i]);
}

TEST_CASE("constructive identities verify on the default grid") {
    for (const char* id : {"prop-2.3", "prop-BB", "prop-BBB", "prop-bioo", "thm-multinomial",
                           "thm-ball-removal", "thm-multip1", "thm-multip2", "eq-bino",
                           "bell-binomial-rec", "factor-thm-i", "factor-thm-ii",
                           "rstirling-rec-iii"}) {
        const auto& v = verdict_of(id);
        INFO(id);
        CHECK(v.status == AuditStatus::verified_on_grid);
        CHECK(v.failures_total == 0);
        CHECK(v.counterexamples.empty());
        CHECK(v.points_checked > 0);
    }
}

TEST_CASE("defective printed formulas are refuted on the default grid") {
    for (const char* id :
         {"prop-incl-excl-B", "thm-signsum", "rstirling-rec-ii", "thm-rstirling-via-B",
          "cor-rstirling-rec", "thm-rbell-sum", "thm-rmixed-stirling", "cor-rmixed-composition",
          "thm-rmixed-bell", "prop-rmixed-bell-multinomial"}) {
        const auto& v = verdict_of(id);
        INFO(id);
        CHECK(v.status == AuditStatus::refuted);
        CHECK(v.failures_total > 0);
        CHECK(!v.counterexamples.empty());
        CHECK(v.counterexamples.size() <= 10);
    }
}

TEST_CASE("verdict bookkeeping is internally consistent") {
    for (const auto& v : default_report().verdicts) {
        CHECK((v.status == AuditStatus::refuted) == !v.counterexamples.empty());
        if (v.status == AuditStatus::verified_on_grid) CHECK(v.points_checked > 0);
        if (v.status == AuditStatus::skipped_out_of_guard) CHECK(v.points_checked == 0);
        CHECK(v.failures_total >= v.counterexamples.size());
    }
}

TEST_CASE("known grid point totals") {
    const auto& propbb = verdict_of("prop-BB");
    CHECK(propbb.points_checked == 54);
    CHECK(propbb.points_skipped == 0);
    const auto& prop23 = verdict_of("prop-2.3");
    CHECK(prop23.points_checked == 450);
    CHECK(prop23.points_skipped == 120);
    const auto& cap = verdict_of("thm-rmixed-bell");
    CHECK(cap.failures_total == 111);
    CHECK(cap.counterexamples.size() == 10);
}

TEST_CASE("report serialization is byte-deterministic") {
    const auto a = run_audit(AuditGrid{}, SizeGuard{});
    const auto b = run_audit(AuditGrid{}, SizeGuard{});
    CHECK(a.to_text() == b.to_text());
    CHECK(a.to_text() == default_report().to_text());
}

TEST_CASE("empty grid skips everything") {
    AuditGrid grid;
    grid.n_lo = 5;
    grid.n_hi = 4;
    const auto report = run_audit(grid, SizeGuard{});
    REQUIRE(report.verdicts.size() == kManifest.size());
    for (const auto& v : report.verdicts) {
        CHECK(v.status == AuditStatus::skipped_out_of_guard);
        CHECK(v.points_checked == 0);
    }
    CHECK_FALSE(report.any_refuted());
}

TEST_CASE("only filter") {
    const auto report = run_audit(AuditGrid{}, SizeGuard{}, {"prop-BB"});
    REQUIRE(report.verdicts.size() == 1);
    CHECK(report.verdicts[0].identity == "prop-BB");
    CHECK(report.verdicts[0].status == AuditStatus::verified_on_grid);
    CHECK_THROWS_AS(run_audit(AuditGrid{}, SizeGuard{}, {"no-such-identity"}), UnknownIdentity);
}

TEST_CASE("check_identity") {
    IdentityPoint p;
    p.n = 2; p.k = 2; p.r = 2;
    const auto bb = check_identity("prop-BB", p);
    CHECK(bb.pass);
    CHECK(bb.formula_value == 5);
    CHECK(bb.oracle_value == 5);

    IdentityPoint q;
    q.n = 3; q.x = 2;
    const auto bino = check_identity("eq-bino", q);
    CHECK(bino.pass);
    CHECK(bino.formula_value == 8);
    CHECK(bino.oracle_value == 8);

    IdentityPoint s;
    s.n = 4; s.cells = CellSpec{2, 1};
    const auto sign = check_identity("thm-signsum", s);
    CHECK_FALSE(sign.pass);
    CHECK(sign.formula_value == 47);
    CHECK(sign.oracle_value == 18);

    CHECK_THROWS_AS(check_identity("no-such-identity", p), UnknownIdentity);

    IdentityPoint big;
    big.n = 40; big.k = 2; big.r = 2;
    CHECK_THROWS_AS(check_identity("prop-BB", big), SizeGuardExceeded);
}

TEST_CASE("grid parsing") {
    const auto grid = AuditGrid::parse("n=0..5,k=1..2,c=1..2,r=1..2,m=2..50");
    CHECK(grid.n_hi == 5);
    CHECK(grid.k_hi == 2);
    CHECK(grid.c_hi == 2);
    CHECK(grid.r_hi == 2);
    CHECK(grid.m_hi == 50);
    CHECK(AuditGrid::parse("").n_hi == 6);  // defaults
    CHECK_THROWS_AS(AuditGrid::parse("q=1..2"), std::invalid_argument);
    CHECK_THROWS_AS(AuditGrid::parse("n=x..2"), std::invalid_argument);
    CHECK_THROWS_AS(AuditGrid::parse("n=3"), std::invalid_argument);
}

TEST_CASE("counterexamples carry both values") {
    const auto& v = verdict_of("rstirling-rec-ii");
    REQUIRE(!v.counterexamples.empty());
    const auto& c = v.counterexamples.front();
    CHECK(c.point == "n=3 k=1 r=2");
    CHECK(c.formula_value == 1);
    CHECK(c.oracle_value == 0);
}

TEST_CASE("golden report") {
    const auto grid = AuditGrid::parse("n=1..4,k=1..2,c=1..2,r=1..2,m=2..10");
    const auto report = run_audit(grid, SizeGuard{}, {"prop-BBB"});
    CHECK(report.to_text() ==
          "mixedpart audit report\n"
          "version: 0.1.0\n"
          "guard: max_balls=10 max_total_cells=6 max_states=10000000\n"
          "grid: n=1..4 k=1..2 c=1..2 r=1..2 m=2..10\n"
          "\n"
          "identity: prop-BBB\n"
          "points_checked: 16\n"
          "points_skipped: 0\n"
          "status: verified-on-grid\n"
          "failures_total: 0\n");
}

TEST_CASE("report text shape") {
    const auto text = default_report().to_text();
    CHECK(text.find("mixedpart audit report") == 0);
    CHECK(text.find("version: ") != std::string::npos);
    CHECK(text.find("guard: max_balls=10 max_total_cells=6 max_states=10000000") !=
          std::string::npos);
    CHECK(text.find("identity: prop-2.3") != std::string::npos);
    CHECK(text.find("status: verified-on-grid") != std::string::npos);
    CHECK(text.find("status: refuted") != std::string::npos);
}
