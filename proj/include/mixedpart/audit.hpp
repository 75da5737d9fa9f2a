#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedpart/factor.hpp"
#include "mixedpart/mixed.hpp"
#include "mixedpart/oracle.hpp"
#include "mixedpart/problem.hpp"
#include "mixedpart/stirling.hpp"
#include "mixedpart/version.hpp"

// Identity registry and grid runner. Every closed-form identity the library
// implements is registered here and evaluated against its reference (the
// enumeration oracle where the claim is a partition count, an independent
// brute force or canonical value otherwise) on a parameter grid. Verdicts,
// counterexamples and the serialized report are byte-deterministic for
// fixed inputs.

namespace mixedpart {

class UnknownIdentity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter ranges the grid runner iterates. Identities clamp ranges to
/// their own hypotheses (e.g. r ≥ 1); an identity without points in the
/// grid reports skipped-out-of-guard.
struct AuditGrid {
    unsigned n_lo = 0, n_hi = 6;
    unsigned k_lo = 1, k_hi = 3;
    unsigned c_hi = 3;
    unsigned r_lo = 1, r_hi = 3;
    std::uint64_t m_lo = 2, m_hi = 200;

    bool empty() const {
        return n_lo > n_hi || k_lo > k_hi || c_hi < 1 || r_lo > r_hi || m_lo > m_hi;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "n=" << n_lo << ".." << n_hi << " k=" << k_lo << ".." << k_hi << " c=1.." << c_hi
           << " r=" << r_lo << ".." << r_hi << " m=" << m_lo << ".." << m_hi;
        return os.str();
    }

    /// Parses "n=0..6,k=1..3,c=1..3,r=1..3,m=2..200"; omitted names keep
    /// their defaults. Throws std::invalid_argument on malformed input.
    static AuditGrid parse(const std::string& spec) {
        AuditGrid grid;
        std::istringstream in(spec);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            const auto dots = item.find("..");
            if (eq == std::string::npos || dots == std::string::npos || dots < eq)
                throw std::invalid_argument("grid: expected name=lo..hi, got '" + item + "'");
            const std::string name = item.substr(0, eq);
            unsigned long lo, hi;
            try {
                lo = std::stoul(item.substr(eq + 1, dots - eq - 1));
                hi = std::stoul(item.substr(dots + 2));
            } catch (const std::exception&) {
                throw std::invalid_argument("grid: bad range in '" + item + "'");
            }
            if (name == "n") grid.n_lo = lo, grid.n_hi = hi;
            else if (name == "k") grid.k_lo = lo, grid.k_hi = hi;
            else if (name == "c") grid.c_hi = hi;
            else if (name == "r") grid.r_lo = lo, grid.r_hi = hi;
            else if (name == "m") grid.m_lo = lo, grid.m_hi = hi;
            else throw std::invalid_argument("grid: unknown parameter '" + name + "'");
        }
        return grid;
    }
};

/// One grid point. Only the fields an identity reads are set.
struct IdentityPoint {
    std::optional<long> n, k, t, r, x;
    std::optional<std::uint64_t> m;
    std::optional<BallSpec> balls;
    std::optional<CellSpec> cells;

    std::string label() const {
        std::ostringstream os;
        bool first = true;
        auto put = [&](const char* name, const std::string& v) {
            if (!first) os << ' ';
            os << name << '=' << v;
            first = false;
        };
        if (n) put("n", std::to_string(*n));
        if (k) put("k", std::to_string(*k));
        if (t) put("t", std::to_string(*t));
        if (r) put("r", std::to_string(*r));
        if (x) put("x", std::to_string(*x));
        if (m) put("m", std::to_string(*m));
        if (balls) {
            std::string v = "(";
            for (std::size_t i = 0; i < balls->multiplicities.size(); ++i)
                v += (i ? "," : "") + std::to_string(balls->multiplicities[i]);
            put("balls", v + ")");
        }
        if (cells) {
            std::string v = "(";
            for (std::size_t i = 0; i < cells->group_sizes.size(); ++i)
                v += (i ? "," : "") + std::to_string(cells->group_sizes[i]);
            put("cells", v + ")");
        }
        return os.str();
    }
};

/// One registered identity: a point generator, a guard predicate for the
/// reference evaluation, and the evaluator returning (formula, reference).
struct Identity {
    std::string id;
    std::function<std::vector<IdentityPoint>(const AuditGrid&)> points;
    std::function<bool(const IdentityPoint&, const SizeGuard&)> in_guard;
    std::function<std::pair<Count, Count>(const IdentityPoint&, const SizeGuard&, OracleCache&)>
        eval;
};

enum class AuditStatus { verified_on_grid, refuted, skipped_out_of_guard };

inline const char* to_string(AuditStatus s) {
    switch (s) {
        case AuditStatus::verified_on_grid: return "verified-on-grid";
        case AuditStatus::refuted: return "refuted";
        default: return "skipped-out-of-guard";
    }
}

struct Counterexample {
    std::string point;
    Count formula_value;
    Count oracle_value;
};

struct AuditVerdict {
    std::string identity;
    std::uint64_t points_checked = 0;
    std::uint64_t points_skipped = 0;
    std::uint64_t failures_total = 0;
    AuditStatus status = AuditStatus::skipped_out_of_guard;
    std::vector<Counterexample> counterexamples;  // capped at 10
};

struct AuditReport {
    std::string version;
    SizeGuard guard;
    AuditGrid grid;
    std::vector<AuditVerdict> verdicts;

    bool any_refuted() const {
        for (const auto& v : verdicts)
            if (v.status == AuditStatus::refuted) return true;
        return false;
    }

    /// Stable one-record-per-verdict text form, suitable for golden files.
    std::string to_text() const {
        std::ostringstream os;
        os << "mixedpart audit report\n";
        os << "version: " << version << '\n';
        os << "guard: max_balls=" << guard.max_balls
           << " max_total_cells=" << guard.max_total_cells << " max_states=" << guard.max_states
           << '\n';
        os << "grid: " << grid.describe() << '\n';
        for (const auto& v : verdicts) {
            os << '\n';
            os << "identity: " << v.identity << '\n';
            os << "points_checked: " << v.points_checked << '\n';
            os << "points_skipped: " << v.points_skipped << '\n';
            os << "status: " << to_string(v.status) << '\n';
            os << "failures_total: " << v.failures_total << '\n';
            for (const auto& c : v.counterexamples)
                os << "counterexample: " << c.point << " formula=" << c.formula_value.get_str()
                   << " oracle=" << c.oracle_value.get_str() << '\n';
        }
        return os.str();
    }
};

namespace detail {

/// Ball multiplicity multisets (nondecreasing) with totals in [t_lo, t_hi].
inline std::vector<BallSpec> grid_ball_specs(unsigned t_lo, unsigned t_hi) {
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
    for (unsigned t = t_lo; t <= t_hi; ++t) {
        if (t == 0) out.emplace_back();
        else rec(t, 1);
    }
    return out;
}

/// Cell specs: nondecreasing group-size tuples, k groups with sizes 1..c_hi.
inline std::vector<CellSpec> grid_cell_specs(const AuditGrid& g) {
    std::vector<CellSpec> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned minsize) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (unsigned c = minsize; c <= g.c_hi; ++c) {
            cur.push_back(c);
            rec(remaining - 1, c);
            cur.pop_back();
        }
    };
    for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) rec(k, 1);
    return out;
}

/// B(n,k,r)-style cell layout: r indistinguishable cells + k−1 labeled.
inline CellSpec bnkr_cells(unsigned k, unsigned r) {
    std::vector<unsigned> gs{r};
    for (unsigned i = 1; i < k; ++i) gs.push_back(1);
    return CellSpec(std::move(gs));
}

/// Brute-force ordered factorization count: k-tuples of integers ≥ min_f
/// with product m.
inline Count brute_ordered_factorizations(std::uint64_t m, unsigned k, std::uint64_t min_f) {
    if (k == 1) return m >= min_f ? 1 : 0;
    Count total = 0;
    for (std::uint64_t d = min_f; d <= m; ++d)
        if (m % d == 0) total += brute_ordered_factorizations(m / d, k - 1, min_f);
    return total;
}

inline std::vector<IdentityPoint> nkr_points(const AuditGrid& g) {
    std::vector<IdentityPoint> pts;
    for (unsigned n = std::max(g.n_lo, 1u); n <= g.n_hi; ++n)
        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k)
            for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r) {
                IdentityPoint p;
                p.n = n; p.k = k; p.r = r;
                pts.push_back(std::move(p));
            }
    return pts;
}

inline bool nkr_in_guard(const IdentityPoint& p, const SizeGuard& guard) {
    return fits_guard({BallSpec::distinct(*p.n), bnkr_cells(*p.k, *p.r), true, 0}, guard);
}

inline std::vector<IdentityPoint> n_cells_points(const AuditGrid& g, unsigned n_min) {
    std::vector<IdentityPoint> pts;
    for (unsigned n = std::max(g.n_lo, n_min); n <= g.n_hi; ++n)
        for (const auto& cells : grid_cell_specs(g)) {
            IdentityPoint p;
            p.n = n; p.cells = cells;
            pts.push_back(std::move(p));
        }
    return pts;
}

inline std::vector<IdentityPoint> balls_k_points(const AuditGrid& g) {
    std::vector<IdentityPoint> pts;
    for (const auto& balls : grid_ball_specs(1, g.n_hi))
        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) {
            IdentityPoint p;
            p.balls = balls; p.k = k;
            pts.push_back(std::move(p));
        }
    return pts;
}

inline std::vector<IdentityPoint> nktr_points(const AuditGrid& g) {
    std::vector<IdentityPoint> pts;
    for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
        for (unsigned n = std::max({g.n_lo, r, 1u}); n <= g.n_hi; ++n)
            for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k)
                for (unsigned t = 1; t <= g.c_hi; ++t) {
                    IdentityPoint p;
                    p.n = n; p.k = k; p.t = t; p.r = r;
                    pts.push_back(std::move(p));
                }
    return pts;
}

inline std::vector<IdentityPoint> n_cells_r_points(const AuditGrid& g) {
    std::vector<IdentityPoint> pts;
    for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
        for (unsigned n = std::max({g.n_lo, r, 1u}); n <= g.n_hi; ++n)
            for (const auto& cells : grid_cell_specs(g)) {
                IdentityPoint p;
                p.n = n; p.cells = cells; p.r = r;
                pts.push_back(std::move(p));
            }
    return pts;
}

inline std::vector<IdentityPoint> mk_points(const AuditGrid& g) {
    std::vector<IdentityPoint> pts;
    for (std::uint64_t m = std::max<std::uint64_t>(g.m_lo, 2); m <= g.m_hi; ++m)
        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) {
            IdentityPoint p;
            p.m = m; p.k = k;
            pts.push_back(std::move(p));
        }
    return pts;
}

inline CellSpec t_cells(unsigned k, unsigned t) {
    std::vector<unsigned> gs{t};
    for (unsigned i = 1; i < k; ++i) gs.push_back(1);
    return CellSpec(std::move(gs));
}

inline const std::vector<Identity>& registry() {
    static const std::vector<Identity> identities = [] {
        std::vector<Identity> ids;
        const auto always = [](const IdentityPoint&, const SizeGuard&) { return true; };

        // Empty-cell expansion {B C}_0 = sum of non-empty counts over sub-specs.
        ids.push_back(Identity{
            "prop-2.3",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (const auto& balls : grid_ball_specs(0, g.n_hi))
                    for (const auto& cells : grid_cell_specs(g)) {
                        IdentityPoint p;
                        p.balls = balls; p.cells = cells;
                        pts.push_back(std::move(p));
                    }
                return pts;
            },
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({*p.balls, *p.cells, true, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                Count rhs = 0;
                for_each_subspec(*p.cells, [&](const CellSpec& sub, unsigned) {
                    if (sub.groups() == 0)
                        rhs += (p.balls->total_balls() == 0 ? 1 : 0);
                    else
                        rhs += oc.count({*p.balls, sub, false, 0}, guard);
                });
                return std::make_pair(rhs, oc.count({*p.balls, *p.cells, true, 0}, guard));
            }});

        // B_0(n,k,r) closed form.
        ids.push_back(Identity{"prop-BB", nkr_points, nkr_in_guard,
                               [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                                   return std::make_pair(
                                       b0_nkr(*p.n, *p.k, *p.r),
                                       oc.count({BallSpec::distinct(*p.n),
                                                 bnkr_cells(*p.k, *p.r), true, 0},
                                                guard));
                               }});

        // B(n,k,r) closed form.
        ids.push_back(Identity{"prop-BBB", nkr_points, nkr_in_guard,
                               [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                                   return std::make_pair(
                                       b_nkr(*p.n, *p.k, *p.r),
                                       oc.count({BallSpec::distinct(*p.n),
                                                 bnkr_cells(*p.k, *p.r), false, 0},
                                                guard));
                               }});

        // Printed inclusion-exclusion formula for B(n,k,r).
        ids.push_back(Identity{"prop-incl-excl-B", nkr_points, nkr_in_guard,
                               [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                                   return std::make_pair(
                                       b_nkr_inclusion_exclusion(*p.n, *p.k, *p.r),
                                       oc.count({BallSpec::distinct(*p.n),
                                                 bnkr_cells(*p.k, *p.r), false, 0},
                                                guard));
                               }});

        // Three-case recurrence for B(n,k,r).
        ids.push_back(Identity{"prop-bioo", nkr_points, nkr_in_guard,
                               [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                                   return std::make_pair(
                                       b_nkr_recurrence(*p.n, *p.k, *p.r),
                                       oc.count({BallSpec::distinct(*p.n),
                                                 bnkr_cells(*p.k, *p.r), false, 0},
                                                guard));
                               }});

        // Composition sum for distinct balls.
        ids.push_back(Identity{
            "thm-multinomial",
            [](const AuditGrid& g) { return n_cells_points(g, 0); },
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    mixed_distinct_balls_multinomial(*p.n, *p.cells),
                    oc.count({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard));
            }});

        // Printed alternating sub-spec sum for distinct balls. Hypothesis
        // needs at least one ball.
        ids.push_back(Identity{
            "thm-signsum",
            [](const AuditGrid& g) { return n_cells_points(g, 1); },
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    mixed_distinct_balls_signsum(*p.n, *p.cells),
                    oc.count({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard));
            }});

        // Ball-removal recurrence for distinct balls.
        ids.push_back(Identity{
            "thm-ball-removal",
            [](const AuditGrid& g) { return n_cells_points(g, 1); },
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    mixed_ball_removal_recurrence(*p.n, *p.cells),
                    oc.count({BallSpec::distinct(*p.n), *p.cells, false, 0}, guard));
            }});

        // Product formula, labeled cells, empties allowed.
        ids.push_back(Identity{
            "thm-multip1", balls_k_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({*p.balls, CellSpec::labeled(*p.k), true, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    product_formula_labeled_cells(*p.balls, *p.k),
                    oc.count({*p.balls, CellSpec::labeled(*p.k), true, 0}, guard));
            }});

        // Alternating formula, labeled cells, all non-empty.
        ids.push_back(Identity{
            "thm-multip2", balls_k_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({*p.balls, CellSpec::labeled(*p.k), false, 0}, guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    surjective_formula_labeled_cells(*p.balls, *p.k),
                    oc.count({*p.balls, CellSpec::labeled(*p.k), false, 0}, guard));
            }});

        // Printed r-Stirling recurrence ii (subscript r-1 on the first term).
        ids.push_back(Identity{
            "rstirling-rec-ii",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
                    for (unsigned n = std::max(g.n_lo, r + 1); n <= g.n_hi; ++n)
                        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) {
                            IdentityPoint p;
                            p.n = n; p.k = k; p.r = r;
                            pts.push_back(std::move(p));
                        }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                Count rhs = Count(*p.k) * r_stirling2(*p.n - 1, *p.k, *p.r - 1) +
                            r_stirling2(*p.n - 1, *p.k - 1, *p.r);
                return std::make_pair(rhs, r_stirling2(*p.n, *p.k, *p.r));
            }});

        // r-Stirling recurrence iii.
        ids.push_back(Identity{
            "rstirling-rec-iii",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
                    for (unsigned n = std::max(g.n_lo, r); n <= g.n_hi; ++n)
                        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) {
                            IdentityPoint p;
                            p.n = n; p.k = k; p.r = r;
                            pts.push_back(std::move(p));
                        }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                Count rhs = r_stirling2(*p.n, *p.k, *p.r - 1) -
                            Count(*p.r - 1) * r_stirling2(*p.n - 1, *p.k, *p.r - 1);
                return std::make_pair(rhs, r_stirling2(*p.n, *p.k, *p.r));
            }});

        // Printed r-Stirling-via-B sum.
        ids.push_back(Identity{
            "thm-rstirling-via-B",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
                    for (unsigned n = std::max({g.n_lo, r, 1u}); n <= g.n_hi; ++n)
                        for (unsigned k = std::max(g.k_lo, r); k <= g.k_hi; ++k) {
                            IdentityPoint p;
                            p.n = n; p.k = k; p.r = r;
                            pts.push_back(std::move(p));
                        }
                return pts;
            },
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard(
                    {BallSpec::distinct(*p.n), CellSpec({static_cast<unsigned>(*p.k)}), false,
                     static_cast<unsigned>(*p.r)},
                    guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    r_stirling_via_B(*p.n, *p.k, *p.r),
                    oc.count({BallSpec::distinct(*p.n), CellSpec({static_cast<unsigned>(*p.k)}),
                              false, static_cast<unsigned>(*p.r)},
                             guard));
            }});

        // Printed corollary recurrence for r-Stirling numbers.
        ids.push_back(Identity{
            "cor-rstirling-rec",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
                    for (unsigned n = std::max(g.n_lo, 1u); n <= g.n_hi; ++n)
                        for (unsigned k = std::max(g.k_lo, 1u); k <= g.k_hi; ++k) {
                            IdentityPoint p;
                            p.n = n; p.k = k; p.r = r;
                            pts.push_back(std::move(p));
                        }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                return std::make_pair(r_stirling_corollary_recurrence(*p.n, *p.k, *p.r),
                                      r_stirling2(*p.n, *p.k, *p.r));
            }});

        // Stirling numbers as connection coefficients of falling factorials.
        ids.push_back(Identity{
            "eq-bino",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned n = g.n_lo; n <= g.n_hi; ++n)
                    for (unsigned x = 0; x <= n + 2; ++x) {
                        IdentityPoint p;
                        p.n = n; p.x = x;
                        pts.push_back(std::move(p));
                    }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                Count rhs = 0;
                for (long k = 0; k <= *p.n; ++k)
                    rhs += stirling2(*p.n, k) * falling_factorial(*p.x, k);
                return std::make_pair(rhs, power(*p.x, static_cast<unsigned long>(*p.n)));
            }});

        // Bell recurrence B_{n+1} = sum C(n,k) B_k.
        ids.push_back(Identity{
            "bell-binomial-rec",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned n = g.n_lo; n <= g.n_hi; ++n) {
                    IdentityPoint p;
                    p.n = n;
                    pts.push_back(std::move(p));
                }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                Count rhs = 0;
                for (long k = 0; k <= *p.n; ++k) rhs += binomial(*p.n, k) * bell(k);
                return std::make_pair(rhs, bell(*p.n + 1));
            }});

        // Printed double sum for r-Bell numbers.
        ids.push_back(Identity{
            "thm-rbell-sum",
            [](const AuditGrid& g) {
                std::vector<IdentityPoint> pts;
                for (unsigned r = std::max(g.r_lo, 1u); r <= g.r_hi; ++r)
                    for (unsigned n = std::max({g.n_lo, r, 1u}); n <= g.n_hi; ++n) {
                        IdentityPoint p;
                        p.n = n; p.r = r;
                        pts.push_back(std::move(p));
                    }
                return pts;
            },
            always,
            [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                return std::make_pair(r_bell_theorem_sum(*p.n, *p.r), r_bell(*p.n, *p.r));
            }});

        // Printed two-step closed form for r-mixed Stirling numbers.
        ids.push_back(Identity{
            "thm-rmixed-stirling", nktr_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), t_cells(*p.k, *p.t), false,
                                   static_cast<unsigned>(*p.r)},
                                  guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    r_mixed_stirling_theorem(*p.n, *p.k, *p.t, *p.r),
                    oc.count({BallSpec::distinct(*p.n), t_cells(*p.k, *p.t), false,
                              static_cast<unsigned>(*p.r)},
                             guard));
            }});

        // Printed composition corollary for r-mixed Stirling numbers.
        ids.push_back(Identity{
            "cor-rmixed-composition", n_cells_r_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), *p.cells, false,
                                   static_cast<unsigned>(*p.r)},
                                  guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                return std::make_pair(
                    r_mixed_stirling_composition(*p.n, *p.cells, *p.r, guard),
                    oc.count({BallSpec::distinct(*p.n), *p.cells, false,
                              static_cast<unsigned>(*p.r)},
                             guard));
            }});

        // Printed closed form for r-mixed Bell numbers (c1=t case).
        ids.push_back(Identity{
            "thm-rmixed-bell", nktr_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), t_cells(*p.k, *p.t), true,
                                   static_cast<unsigned>(*p.r)},
                                  guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                Count rhs = 0;
                const long k = *p.k, t = *p.t, r = *p.r, n = *p.n;
                for (long i = 1; i <= r; ++i)
                    rhs += binomial(r, i) * binomial_checked(k - i, r - i) * factorial(r - i) *
                           b0_nkr_extended(n - r, k + i - 1, t - i);
                return std::make_pair(rhs,
                                      oc.count({BallSpec::distinct(*p.n), t_cells(*p.k, *p.t),
                                                true, static_cast<unsigned>(*p.r)},
                                               guard));
            }});

        // Printed composition proposition for r-mixed Bell numbers.
        ids.push_back(Identity{
            "prop-rmixed-bell-multinomial", n_cells_r_points,
            [](const IdentityPoint& p, const SizeGuard& guard) {
                return fits_guard({BallSpec::distinct(*p.n), *p.cells, true,
                                   static_cast<unsigned>(*p.r)},
                                  guard);
            },
            [](const IdentityPoint& p, const SizeGuard& guard, OracleCache& oc) {
                const Count inner =
                    mixed_count({BallSpec::distinct(*p.n - *p.r), *p.cells, true, 0}, guard);
                Count rhs = 0;
                for_each_composition(
                    static_cast<unsigned>(*p.r), p.cells->groups(),
                    [&](const std::vector<unsigned>& comp) {
                        std::vector<unsigned long> parts(comp.begin(), comp.end());
                        rhs += multinomial(parts) * inner;
                    });
                return std::make_pair(rhs,
                                      oc.count({BallSpec::distinct(*p.n), *p.cells, true,
                                                static_cast<unsigned>(*p.r)},
                                               guard));
            }});

        // Ordered factorizations, units allowed.
        ids.push_back(Identity{"factor-thm-i", mk_points, always,
                               [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                                   return std::make_pair(
                                       ordered_factorizations_with_units(*p.m, *p.k),
                                       brute_ordered_factorizations(*p.m, *p.k, 1));
                               }});

        // Ordered factorizations, all factors > 1.
        ids.push_back(Identity{"factor-thm-ii", mk_points, always,
                               [](const IdentityPoint& p, const SizeGuard&, OracleCache&) {
                                   return std::make_pair(
                                       ordered_factorizations_no_units(*p.m, *p.k),
                                       brute_ordered_factorizations(*p.m, *p.k, 2));
                               }});

        return ids;
    }();
    return identities;
}

}  // namespace detail

/// Registered identity ids, in registry (= report) order.
inline std::vector<std::string> identity_registry() {
    std::vector<std::string> out;
    for (const auto& ident : detail::registry()) out.push_back(ident.id);
    return out;
}

struct IdentityCheck {
    bool pass;
    Count formula_value;
    Count oracle_value;
};

/// Evaluates one identity at one point. Throws UnknownIdentity for an
/// unregistered id and SizeGuardExceeded when the point's reference
/// evaluation does not fit the guard.
inline IdentityCheck check_identity(const std::string& id, const IdentityPoint& point,
                                    const SizeGuard& guard = {}) {
    for (const auto& ident : detail::registry()) {
        if (ident.id != id) continue;
        if (!ident.in_guard(point, guard))
            throw SizeGuardExceeded("check_identity: point exceeds size guard");
        OracleCache cache;
        auto [formula, oracle] = ident.eval(point, guard, cache);
        return IdentityCheck{formula == oracle, formula, oracle};
    }
    throw UnknownIdentity("unknown identity id: " + id);
}

/// Runs every registered identity (or the `only` subset, in registry order)
/// over the grid. Per-point mismatches become counterexamples, never aborts.
inline AuditReport run_audit(const AuditGrid& grid, const SizeGuard& guard = {},
                             const std::vector<std::string>& only = {}) {
    for (const auto& id : only) {
        bool known = false;
        for (const auto& ident : detail::registry()) known |= (ident.id == id);
        if (!known) throw UnknownIdentity("unknown identity id: " + id);
    }
    AuditReport report;
    report.version = kVersion;
    report.guard = guard;
    report.grid = grid;
    OracleCache cache;
    for (const auto& ident : detail::registry()) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), ident.id) == only.end())
            continue;
        AuditVerdict verdict;
        verdict.identity = ident.id;
        if (!grid.empty()) {
            for (const auto& point : ident.points(grid)) {
                if (!ident.in_guard(point, guard)) {
                    ++verdict.points_skipped;
                    continue;
                }
                auto [formula, oracle] = ident.eval(point, guard, cache);
                ++verdict.points_checked;
                if (formula != oracle) {
                    ++verdict.failures_total;
                    if (verdict.counterexamples.size() < 10)
                        verdict.counterexamples.push_back(
                            Counterexample{point.label(), formula, oracle});
                }
            }
        }
        if (verdict.points_checked == 0)
            verdict.status = AuditStatus::skipped_out_of_guard;
        else if (verdict.failures_total > 0)
            verdict.status = AuditStatus::refuted;
        else
            verdict.status = AuditStatus::verified_on_grid;
        report.verdicts.push_back(std::move(verdict));
    }
    return report;
}

}  // namespace mixedpart
