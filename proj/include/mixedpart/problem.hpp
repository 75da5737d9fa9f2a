#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixedpart/count.hpp"

namespace mixedpart {

/// Thrown when an enumeration request exceeds the configured SizeGuard.
class SizeGuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multiplicity vector (b₁,…,bₙ): bᵢ indistinguishable balls labeled i.
/// An empty list means no balls.
struct BallSpec {
    std::vector<unsigned> multiplicities;

    BallSpec() = default;
    BallSpec(std::initializer_list<unsigned> ms) : multiplicities(ms) {}
    explicit BallSpec(std::vector<unsigned> ms) : multiplicities(std::move(ms)) {}

    /// n distinct balls: (1,…,1).
    static BallSpec distinct(unsigned n) { return BallSpec(std::vector<unsigned>(n, 1u)); }

    unsigned labels() const { return static_cast<unsigned>(multiplicities.size()); }

    unsigned total_balls() const {
        return std::accumulate(multiplicities.begin(), multiplicities.end(), 0u);
    }

    bool all_distinct() const {
        for (unsigned b : multiplicities)
            if (b != 1) return false;
        return true;
    }

    void validate() const {
        for (unsigned b : multiplicities)
            if (b < 1) throw std::invalid_argument("BallSpec: every multiplicity must be >= 1");
    }

    friend bool operator==(const BallSpec&, const BallSpec&) = default;
};

/// Group-size vector (c₁,…,c_k): group i holds cᵢ mutually indistinguishable
/// cells; distinct groups are distinguishable.
struct CellSpec {
    std::vector<unsigned> group_sizes;

    CellSpec() = default;
    CellSpec(std::initializer_list<unsigned> cs) : group_sizes(cs) {}
    explicit CellSpec(std::vector<unsigned> cs) : group_sizes(std::move(cs)) {}

    /// k distinguishable cells: (1,…,1).
    static CellSpec labeled(unsigned k) { return CellSpec(std::vector<unsigned>(k, 1u)); }

    unsigned groups() const { return static_cast<unsigned>(group_sizes.size()); }

    unsigned total_cells() const {
        return std::accumulate(group_sizes.begin(), group_sizes.end(), 0u);
    }

    bool all_single() const {
        for (unsigned c : group_sizes)
            if (c != 1) return false;
        return true;
    }

    void validate() const {
        for (unsigned c : group_sizes)
            if (c < 1) throw std::invalid_argument("CellSpec: every group size must be >= 1");
    }

    friend bool operator==(const CellSpec&, const CellSpec&) = default;
};

/// A complete counting instance: which balls, which cells, whether empty
/// cells are allowed, and how many leading balls must land in pairwise
/// distinct cells (those balls are required to be individual, bᵢ = 1).
struct PartitionProblem {
    BallSpec balls;
    CellSpec cells;
    bool allow_empty = false;
    unsigned distinct_prefix = 0;

    void validate() const {
        balls.validate();
        cells.validate();
        if (distinct_prefix > balls.labels())
            throw std::invalid_argument("PartitionProblem: distinct_prefix exceeds ball labels");
        for (unsigned i = 0; i < distinct_prefix; ++i)
            if (balls.multiplicities[i] != 1)
                throw std::invalid_argument(
                    "PartitionProblem: prefix balls must have multiplicity 1");
    }

    /// Stable text key, also used for memoization.
    std::string key() const {
        std::ostringstream os;
        os << "b=";
        for (std::size_t i = 0; i < balls.multiplicities.size(); ++i)
            os << (i ? "," : "") << balls.multiplicities[i];
        os << "|c=";
        for (std::size_t i = 0; i < cells.group_sizes.size(); ++i)
            os << (i ? "," : "") << cells.group_sizes[i];
        os << "|e=" << (allow_empty ? 1 : 0) << "|r=" << distinct_prefix;
        return os.str();
    }

    friend bool operator==(const PartitionProblem&, const PartitionProblem&) = default;
};

/// Limits protecting the exhaustive enumerator from oversized instances.
struct SizeGuard {
    unsigned max_balls = 10;
    unsigned max_total_cells = 6;
    std::uint64_t max_states = 10'000'000;
};

/// True when the problem fits the guard. The projected state count is T^B
/// (T total cells, B total balls), the raw assignment space before
/// canonicalization.
inline bool fits_guard(const PartitionProblem& problem, const SizeGuard& guard) {
    const unsigned b = problem.balls.total_balls();
    const unsigned t = problem.cells.total_cells();
    if (b > guard.max_balls || t > guard.max_total_cells) return false;
    return power(static_cast<long>(t), b) <= Count(static_cast<unsigned long>(guard.max_states));
}

/// Throws SizeGuardExceeded unless the problem fits the guard.
inline void check_guard(const PartitionProblem& problem, const SizeGuard& guard) {
    const unsigned b = problem.balls.total_balls();
    const unsigned t = problem.cells.total_cells();
    if (b > guard.max_balls)
        throw SizeGuardExceeded("size guard: " + std::to_string(b) + " balls exceed max_balls=" +
                                std::to_string(guard.max_balls));
    if (t > guard.max_total_cells)
        throw SizeGuardExceeded("size guard: " + std::to_string(t) +
                                " cells exceed max_total_cells=" +
                                std::to_string(guard.max_total_cells));
    const Count states = power(static_cast<long>(t), b);
    if (states > Count(static_cast<unsigned long>(guard.max_states)))
        throw SizeGuardExceeded("size guard: projected state count " + states.get_str() +
                                " exceeds max_states=" + std::to_string(guard.max_states));
}

}  // namespace mixedpart
