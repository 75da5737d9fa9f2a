#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "mixedpart/mixed.hpp"
#include "mixedpart/oracle.hpp"
#include "mixedpart/stirling.hpp"

using namespace mixedpart;

namespace {

// ball multiplicity multisets (nondecreasing, so unit prefixes come first)
// with total balls in [lo, hi]
std::vector<BallSpec> ball_grid(unsigned lo, unsigned hi) {
    std::vector<BallSpec> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned minpart) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned p = minpart; p <= rem; ++p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    for (unsigned t = lo; t <= hi; ++t) {
        if (t == 0) out.emplace_back();
        else rec(t, 1);
    }
    return out;
}

// cell group-size multisets with total cells in [1, max_total]
std::vector<CellSpec> cell_grid(unsigned max_total) {
    std::vector<CellSpec> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned minpart) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned p = minpart; p <= rem; ++p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    for (unsigned t = 1; t <= max_total; ++t) rec(t, 1);
    return out;
}

}  // namespace

TEST_CASE("mixed_count worked values") {
    CHECK(mixed_count({BallSpec{1, 1}, CellSpec{2, 1}, true, 0}) == 5);
    CHECK(mixed_count({BallSpec{}, CellSpec{3}, true, 0}) == 1);
    CHECK(mixed_count({BallSpec{2, 1}, CellSpec{1, 1}, true, 0}) == 6);
    CHECK(mixed_count({BallSpec::distinct(4), CellSpec{2, 1}, false, 0}) == 18);
    CHECK(mixed_count({BallSpec{2, 2}, CellSpec{2, 1}, false, 0}) ==
          oracle_count({BallSpec{2, 2}, CellSpec{2, 1}, false, 0}));
}

TEST_CASE("mixed_count size guard on oracle fallback") {
    // duplicate balls and a multi-cell group leave no closed form
    const SizeGuard tight{4, 6, 1000000};
    CHECK_THROWS_AS(mixed_count({BallSpec{3, 2}, CellSpec{2, 1}, false, 0}, tight),
                    SizeGuardExceeded);
    // all-distinct stays closed-form even when the oracle would refuse
    CHECK(mixed_count({BallSpec::distinct(12), CellSpec{2, 1}, false, 0}, tight) ==
          mixed_distinct_balls_multinomial(12, CellSpec{2, 1}));
}

TEST_CASE("mixed_count_empty_expansion") {
    CHECK(mixed_count_empty_expansion(BallSpec{1, 1}, CellSpec{2, 1}) == 5);
    CHECK(mixed_count_empty_expansion(BallSpec{}, CellSpec{2}) == 1);
    CHECK(mixed_count_empty_expansion(BallSpec::distinct(3), CellSpec{3}) == 5);
    CHECK(mixed_count_empty_expansion(BallSpec{2, 2}, CellSpec{2, 2}) ==
          oracle_count({BallSpec{2, 2}, CellSpec{2, 2}, true, 0}));
}

TEST_CASE("b0_nkr") {
    CHECK(b0_nkr(2, 2, 2) == 5);
    CHECK(b0_nkr(0, 3, 2) == 1);
    CHECK(b0_nkr(3, 2, 1) == 8);
    CHECK_THROWS_AS(b0_nkr(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(b0_nkr(2, 1, 0), std::invalid_argument);
}

TEST_CASE("b_nkr") {
    CHECK(b_nkr(5, 1, 3) == stirling2(5, 3));
    CHECK(b_nkr(5, 1, 3) == 25);
    CHECK(b_nkr(2, 2, 2) == 0);
    CHECK(b_nkr(4, 2, 2) == 18);
    CHECK_THROWS_AS(b_nkr(0, 1, 1), std::invalid_argument);
}

TEST_CASE("b_nkr_recurrence") {
    CHECK(b_nkr_recurrence(4, 2, 2) == 18);
    CHECK(b_nkr_recurrence(1, 1, 1) == 1);
    CHECK(b_nkr_recurrence(2, 3, 1) == 0);
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned k = 1; k <= 4; ++k)
            for (unsigned r = 1; r <= 3; ++r) CHECK(b_nkr_recurrence(n, k, r) == b_nkr(n, k, r));
}

TEST_CASE("b_nkr_inclusion_exclusion literal values") {
    // printed formula; does not reproduce B(n,k,r)
    CHECK(b_nkr_inclusion_exclusion(1, 1, 1) == 1);
    CHECK(b_nkr_inclusion_exclusion(2, 2, 2) == -1);
    CHECK(oracle_count({BallSpec::distinct(2), CellSpec{2, 1}, false, 0}) == 0);
    CHECK(b_nkr_inclusion_exclusion(4, 2, 2) == 17);
}

TEST_CASE("mixed_distinct_balls_multinomial") {
    CHECK(mixed_distinct_balls_multinomial(4, CellSpec{2, 1}) == 18);
    CHECK(mixed_distinct_balls_multinomial(2, CellSpec{3}) == 0);
    CHECK(mixed_distinct_balls_multinomial(3, CellSpec{1, 1}) == 6);
    CHECK(mixed_distinct_balls_multinomial(0, CellSpec{}) == 1);
    CHECK(mixed_distinct_balls_multinomial(2, CellSpec{}) == 0);
}

TEST_CASE("mixed_distinct_balls_signsum literal values") {
    CHECK(mixed_distinct_balls_signsum(1, CellSpec{1}) == -1);
    CHECK(mixed_distinct_balls_signsum(3, CellSpec{2}) == -5);
    CHECK(mixed_distinct_balls_signsum(4, CellSpec{2, 1}) == 47);
}

TEST_CASE("mixed_ball_removal_recurrence") {
    CHECK(mixed_ball_removal_recurrence(4, CellSpec{2, 1}) == 18);
    CHECK(mixed_ball_removal_recurrence(1, CellSpec{1}) == 1);
    CHECK(mixed_ball_removal_recurrence(3, CellSpec{1, 1}) == 6);
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& cells : cell_grid(5))
            CHECK(mixed_ball_removal_recurrence(n, cells) ==
                  mixed_distinct_balls_multinomial(n, cells));
}

TEST_CASE("labeled-cell formulas") {
    CHECK(product_formula_labeled_cells(BallSpec{1, 1}, 2) == 4);
    CHECK(product_formula_labeled_cells(BallSpec{2, 1}, 2) == 6);
    CHECK(product_formula_labeled_cells(BallSpec{3}, 1) == 1);
    CHECK(surjective_formula_labeled_cells(BallSpec{2, 1}, 2) == 4);
    CHECK(surjective_formula_labeled_cells(BallSpec{1}, 2) == 0);
    CHECK(surjective_formula_labeled_cells(BallSpec{1, 1}, 2) == 2);
}

TEST_CASE("r_stirling2") {
    CHECK(r_stirling2(4, 2, 1) == 7);
    CHECK(r_stirling2(3, 3, 3) == 1);
    CHECK(r_stirling2(4, 3, 2) == 5);
    CHECK(r_stirling2(2, 3, 3) == 0);
    CHECK(r_stirling2(0, 0, 0) == 1);
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned k = 0; k <= n + 1; ++k) {
            CHECK(r_stirling2(n, k, 0) == stirling2(n, k));
            // 1-Stirling coincides once the set actually contains element 1
            if (n >= 1) CHECK(r_stirling2(n, k, 1) == stirling2(n, k));
        }
    CHECK(r_stirling2(0, 0, 1) == 0);  // n < r
}

TEST_CASE("r_stirling2 equals the restricted oracle") {
    for (unsigned n = 0; n <= 6; ++n)
        for (unsigned k = 1; k <= std::min(n, 6u); ++k)
            for (unsigned r = 0; r <= std::min(n, 3u); ++r)
                CHECK(r_stirling2(n, k, r) ==
                      oracle_count({BallSpec::distinct(n), CellSpec{k}, false, r}));
}

TEST_CASE("r_stirling_via_B literal values") {
    CHECK(r_stirling_via_B(4, 3, 2) == 0);
    CHECK(r_stirling2(4, 3, 2) == 5);
    CHECK(r_stirling_via_B(3, 3, 3) == 0);
    CHECK(r_stirling_via_B(5, 3, 2) == 42);
    CHECK(r_stirling2(5, 3, 2) == 19);
    CHECK_THROWS_AS(r_stirling_via_B(2, 1, 2), std::invalid_argument);
}

TEST_CASE("r_stirling_corollary_recurrence literal values") {
    CHECK(r_stirling_corollary_recurrence(4, 2, 1) == 10);
    CHECK(r_stirling2(4, 2, 1) == 7);
    CHECK(r_stirling_corollary_recurrence(3, 3, 3) == 0);
    CHECK(r_stirling_corollary_recurrence(5, 3, 2) == 29);
}

TEST_CASE("r_bell") {
    CHECK(r_bell(3, 0) == 5);
    CHECK(r_bell(3, 0) == bell(3));
    CHECK(r_bell(1, 1) == 2);
    CHECK(r_bell(2, 2) == 10);
    CHECK(r_bell(3, 2) == 37);
    CHECK_THROWS_AS(r_bell(1, 2), std::invalid_argument);

    CHECK(r_bell_direct(3, 3) == 1);
    CHECK(r_bell_direct(4, 2) == 10);
    CHECK(r_bell_direct(0, 0) == 1);
    CHECK_THROWS_AS(r_bell_direct(2, 3), std::invalid_argument);
    for (unsigned n = 0; n <= 8; ++n) CHECK(r_bell_direct(n, 0) == bell(n));
}

TEST_CASE("r_bell_direct equals the restricted oracle") {
    for (unsigned n = 0; n <= 6; ++n)
        for (unsigned r = 0; r <= std::min(n, 3u); ++r)
            CHECK(r_bell_direct(n, r) ==
                  oracle_count({BallSpec::distinct(n), CellSpec(std::vector<unsigned>(
                                                           n ? 1 : 0, n)),
                                true, r}));
}

TEST_CASE("r_bell_polynomial") {
    CHECK(r_bell_polynomial(3, 2, 1) == r_bell(3, 2));
    CHECK(r_bell_polynomial(2, 1, 0) == 1);
    CHECK(r_bell_polynomial(0, 1, 5) == 1);
    for (unsigned n = 0; n <= 5; ++n)
        for (unsigned r = 0; r <= n; ++r) CHECK(r_bell_polynomial(n, r, 1) == r_bell(n, r));
}

TEST_CASE("r_bell_theorem_sum literal values") {
    CHECK(r_bell_theorem_sum(1, 1) == 2);
    CHECK(r_bell(1, 1) == 2);
    CHECK(r_bell_theorem_sum(2, 1) == 4);
    CHECK(r_bell(2, 1) == 5);
    CHECK(r_bell_theorem_sum(2, 2) == 3);
    CHECK(r_bell_theorem_sum(3, 1) == 11);
    CHECK(r_bell(3, 1) == 15);
}

TEST_CASE("r_mixed_stirling") {
    CHECK(r_mixed_stirling(4, CellSpec{2, 1}, 2) == 15);
    CHECK(r_mixed_stirling(2, CellSpec{1, 1}, 2) == 2);
    CHECK(r_mixed_stirling(1, CellSpec{1}, 1) == 1);
    CHECK_THROWS_AS(r_mixed_stirling(2, CellSpec{2, 1}, 3), std::invalid_argument);
}

TEST_CASE("r_mixed_stirling_theorem literal values") {
    CHECK(r_mixed_stirling_theorem(4, 2, 2, 2) == 4);
    CHECK(r_mixed_stirling(4, CellSpec{2, 1}, 2) == 15);
    CHECK(r_mixed_stirling_theorem(3, 2, 1, 1) == 2);
    CHECK(r_mixed_stirling(3, CellSpec{1, 1}, 1) == 6);
    CHECK(r_mixed_stirling_theorem(2, 2, 1, 2) == 0);
    CHECK(r_mixed_stirling(2, CellSpec{1, 1}, 2) == 2);
}

TEST_CASE("r_mixed_stirling_composition literal values") {
    CHECK(r_mixed_stirling_composition(1, CellSpec{1}, 1) == 0);
    CHECK(r_mixed_stirling(1, CellSpec{1}, 1) == 1);
    CHECK(r_mixed_stirling_composition(2, CellSpec{1, 1}, 1) == 0);
    CHECK(r_mixed_stirling_composition(4, CellSpec{2, 1}, 2) == 0);
}

TEST_CASE("r_mixed_bell") {
    CHECK(r_mixed_bell(2, CellSpec{2, 1}, 0) == 5);
    CHECK(r_mixed_bell(1, CellSpec{1}, 1) == 1);
    CHECK(r_mixed_bell(3, CellSpec{2, 1}, 2) == 9);
    CHECK_THROWS_AS(r_mixed_bell(1, CellSpec{1}, 2), std::invalid_argument);
}

TEST_CASE("special case collapse") {
    for (unsigned n = 1; n <= 7; ++n) {
        for (unsigned k = 1; k <= n; ++k)
            CHECK(mixed_count({BallSpec::distinct(n), CellSpec{k}, false, 0}) == stirling2(n, k));
        CHECK(mixed_count({BallSpec::distinct(n), CellSpec{n}, true, 0}) == bell(n));
    }
}

TEST_CASE("oracle equivalence on a small grid") {
    OracleCache cache;
    for (const auto& balls : ball_grid(0, 5)) {
        for (const auto& cells : cell_grid(5)) {
            for (bool allow_empty : {false, true}) {
                const PartitionProblem p{balls, cells, allow_empty, 0};
                INFO(p.key());
                CHECK(mixed_count(p) == cache.count(p));
            }
        }
    }
}

TEST_CASE("group permutation symmetry") {
    const std::vector<std::vector<unsigned>> specs = {{2, 1}, {1, 2}, {2, 1, 1}, {1, 2, 1},
                                                      {1, 1, 2}};
    for (bool allow_empty : {false, true}) {
        const Count base =
            mixed_count({BallSpec{2, 1, 1}, CellSpec{std::vector<unsigned>{2, 1}}, allow_empty, 0});
        CHECK(mixed_count({BallSpec{2, 1, 1}, CellSpec{std::vector<unsigned>{1, 2}}, allow_empty,
                           0}) == base);
    }
    for (bool allow_empty : {false, true}) {
        const Count base = mixed_count(
            {BallSpec::distinct(5), CellSpec{std::vector<unsigned>{2, 1, 1}}, allow_empty, 0});
        for (const auto& gs : specs) {
            if (gs.size() != 3) continue;
            CHECK(mixed_count({BallSpec::distinct(5), CellSpec{std::vector<unsigned>(gs)},
                               allow_empty, 0}) == base);
        }
    }
}

TEST_CASE("monotone containment") {
    for (const auto& balls : ball_grid(0, 5))
        for (const auto& cells : cell_grid(5))
            CHECK(mixed_count({balls, cells, false, 0}) <= mixed_count({balls, cells, true, 0}));
}

TEST_CASE("r monotonicity") {
    for (unsigned n = 1; n <= 6; ++n)
        for (const auto& cells : cell_grid(5)) {
            const unsigned rmax = std::min({n, cells.total_cells(), 3u});
            for (unsigned r = 0; r + 1 <= rmax; ++r)
                CHECK(r_mixed_stirling(n, cells, r + 1) <= r_mixed_stirling(n, cells, r));
        }
}
