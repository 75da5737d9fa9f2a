#pragma once

#include <algorithm>
#include <charconv>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "mixedpart/count.hpp"
#include "mixedpart/problem.hpp"

namespace mixedpart {

/// Normal form of one way to distribute the balls: per cell group, the
/// multiset of cell contents. Within a group, cells are stored by size
/// (largest first), ties broken by lexicographic label order, so structural
/// equality coincides with equality of configurations.
struct CanonicalConfiguration {
    std::vector<std::vector<std::vector<unsigned>>> groups;

    /// Groups joined by "|", cells within a group by ";", labels within a
    /// cell by ",". An empty cell serializes as an empty string between
    /// delimiters, e.g. "1,2;|3" for cells=(2,1).
    std::string serialize() const {
        std::string out;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (g) out += '|';
            for (std::size_t c = 0; c < groups[g].size(); ++c) {
                if (c) out += ';';
                for (std::size_t i = 0; i < groups[g][c].size(); ++i) {
                    if (i) out += ',';
                    char buf[12];
                    auto res = std::to_chars(buf, buf + sizeof buf, groups[g][c][i]);
                    out.append(buf, res.ptr);
                }
            }
        }
        return out;
    }

    friend bool operator==(const CanonicalConfiguration&, const CanonicalConfiguration&) = default;
};

namespace detail {

/// Exhaustive enumerator. Expands the balls into a label-sorted sequence,
/// assigns each ball to each cell in turn and deduplicates complete
/// assignments by canonical form. `pruned` controls whether the non-empty
/// and distinct-prefix constraints are enforced during assignment or only
/// by the post-hoc filter; both modes count the same (cross-checked in the
/// test suite).
class OracleRun {
public:
    OracleRun(const PartitionProblem& problem, bool pruned, bool collect)
        : problem_(problem), pruned_(pruned), collect_(collect) {
        for (unsigned label = 1; label <= problem.balls.labels(); ++label)
            for (unsigned i = 0; i < problem.balls.multiplicities[label - 1]; ++i)
                seq_.push_back(label);
        std::sort(seq_.begin(), seq_.end());
        for (unsigned g = 0; g < problem.cells.groups(); ++g) {
            const unsigned lo = static_cast<unsigned>(cells_.size());
            cells_.resize(cells_.size() + problem.cells.group_sizes[g]);
            group_ranges_.emplace_back(lo, static_cast<unsigned>(cells_.size()));
        }
        empty_cells_ = static_cast<unsigned>(cells_.size());
        assign_.resize(seq_.size());
    }

    void run() { recurse(0); }

    std::size_t distinct() const { return seen_.size(); }

    /// Collected configurations in lexicographic order of serialized form.
    std::vector<CanonicalConfiguration> take_sorted() {
        std::sort(configs_.begin(), configs_.end(),
                  [](const CanonicalConfiguration& a, const CanonicalConfiguration& b) {
                      return a.serialize() < b.serialize();
                  });
        return std::move(configs_);
    }

private:
    void recurse(std::size_t idx) {
        if (idx == seq_.size()) {
            finish();
            return;
        }
        if (pruned_ && !problem_.allow_empty &&
            empty_cells_ > static_cast<unsigned>(seq_.size() - idx))
            return;
        const bool prefix_ball = idx < problem_.distinct_prefix;
        for (unsigned c = 0; c < cells_.size(); ++c) {
            // Only prefix balls are placed before any others, so while a
            // prefix ball is being assigned a non-empty cell is exactly a
            // cell already holding a prefix ball.
            if (pruned_ && prefix_ball && !cells_[c].empty()) continue;
            cells_[c].push_back(seq_[idx]);
            if (cells_[c].size() == 1) --empty_cells_;
            assign_[idx] = c;
            recurse(idx + 1);
            cells_[c].pop_back();
            if (cells_[c].empty()) ++empty_cells_;
        }
    }

    bool passes_filters() const {
        if (!problem_.allow_empty && empty_cells_ > 0) return false;
        for (unsigned i = 0; i < problem_.distinct_prefix; ++i)
            for (unsigned j = i + 1; j < problem_.distinct_prefix; ++j)
                if (assign_[i] == assign_[j]) return false;
        return true;
    }

    void finish() {
        if (!passes_filters()) return;
        key_.clear();
        order_.clear();
        for (std::size_t g = 0; g < group_ranges_.size(); ++g) {
            const auto [lo, hi] = group_ranges_[g];
            const std::size_t base = order_.size();
            for (unsigned c = lo; c < hi; ++c) order_.push_back(c);
            std::sort(order_.begin() + base, order_.end(), [this](unsigned a, unsigned b) {
                if (cells_[a].size() != cells_[b].size())
                    return cells_[a].size() > cells_[b].size();
                return cells_[a] < cells_[b];
            });
            if (g) key_ += '|';
            for (std::size_t c = base; c < order_.size(); ++c) {
                if (c > base) key_ += ';';
                const auto& cell = cells_[order_[c]];
                for (std::size_t i = 0; i < cell.size(); ++i) {
                    if (i) key_ += ',';
                    char buf[12];
                    auto res = std::to_chars(buf, buf + sizeof buf, cell[i]);
                    key_.append(buf, res.ptr);
                }
            }
        }
        if (!seen_.insert(key_).second) return;
        if (collect_) {
            CanonicalConfiguration conf;
            std::size_t pos = 0;
            for (const auto& [lo, hi] : group_ranges_) {
                auto& group = conf.groups.emplace_back();
                for (unsigned c = lo; c < hi; ++c) group.push_back(cells_[order_[pos++]]);
            }
            configs_.push_back(std::move(conf));
        }
    }

    const PartitionProblem& problem_;
    bool pruned_;
    bool collect_;
    std::vector<unsigned> seq_;
    std::vector<std::vector<unsigned>> cells_;
    std::vector<std::pair<unsigned, unsigned>> group_ranges_;
    std::vector<unsigned> assign_;
    std::vector<unsigned> order_;
    unsigned empty_cells_ = 0;
    std::string key_;
    std::unordered_set<std::string> seen_;
    std::vector<CanonicalConfiguration> configs_;
};

}  // namespace detail

/// Ground-truth count: the number of distinct canonical configurations.
inline Count oracle_count(const PartitionProblem& problem, const SizeGuard& guard = {}) {
    problem.validate();
    check_guard(problem, guard);
    detail::OracleRun run(problem, /*pruned=*/true, /*collect=*/false);
    run.run();
    return Count(static_cast<unsigned long>(run.distinct()));
}

/// Cross-check mode: enumerates the full assignment space with no pruning
/// and applies the constraints as a post-hoc filter. Must agree with
/// oracle_count; correctness of the pruned walk is defined by this one.
inline Count oracle_count_reference(const PartitionProblem& problem, const SizeGuard& guard = {}) {
    problem.validate();
    check_guard(problem, guard);
    detail::OracleRun run(problem, /*pruned=*/false, /*collect=*/false);
    run.run();
    return Count(static_cast<unsigned long>(run.distinct()));
}

/// All distinct configurations, sorted lexicographically by serialized form.
inline std::vector<CanonicalConfiguration> oracle_enumerate(const PartitionProblem& problem,
                                                            const SizeGuard& guard = {}) {
    problem.validate();
    check_guard(problem, guard);
    detail::OracleRun run(problem, /*pruned=*/true, /*collect=*/true);
    run.run();
    return run.take_sorted();
}

/// Memoizing front end for repeated oracle queries. A cache instance
/// assumes a fixed guard across calls.
class OracleCache {
public:
    const Count& count(const PartitionProblem& problem, const SizeGuard& guard = {}) {
        const std::string key = problem.key();
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, oracle_count(problem, guard)).first;
        return it->second;
    }

    std::size_t size() const { return memo_.size(); }

private:
    std::map<std::string, Count> memo_;
};

}  // namespace mixedpart
