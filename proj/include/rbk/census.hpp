#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbk/bott.hpp"

// Exhaustive enumeration of Bott matrices of a fixed dimension.
//
// Matrices are numbered by reading the above-diagonal entries row by row,
// (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n), as a binary number whose
// most significant bit is (1,2). Index 0 is the zero matrix.

namespace rbk {

/// Largest n whose index space fits in 64 bits (n(n-1)/2 <= 63).
inline constexpr std::size_t census_hard_limit = 11;
/// Default ceilings; 2^28 matrices at n = 8 is the practical bound with the oracle.
inline constexpr std::size_t default_oracle_ceiling = 8;
inline constexpr std::size_t default_theorem_ceiling = 10;

/// Number of above-diagonal entries, n(n-1)/2.
std::size_t free_bits(std::size_t n) noexcept;
/// 2^{n(n-1)/2}. Throws DimensionTooLarge past census_hard_limit.
std::uint64_t bott_count(std::size_t n);

BottMatrix bott_from_index(std::size_t n, std::uint64_t index);
std::uint64_t bott_index(const BottMatrix& a);

/// Half-open interval of enumeration indices.
struct IndexRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::uint64_t size() const noexcept { return end - begin; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Forward range over the Bott matrices with indices in a given interval.
class BottEnumeration {
public:
    class iterator {
    public:
        using value_type = BottMatrix;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index) {}

        BottMatrix operator*() const { return bott_from_index(n_, index_); }
        std::uint64_t index() const noexcept { return index_; }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++index_;
            return old;
        }
        friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.index_ == b.index_; }

    private:
        std::size_t n_ = 0;
        std::uint64_t index_ = 0;
    };

    BottEnumeration(std::size_t n, IndexRange range) : n_(n), range_(range) {}

    iterator begin() const { return {n_, range_.begin}; }
    iterator end() const { return {n_, range_.end}; }
    std::uint64_t size() const noexcept { return range_.size(); }

private:
    std::size_t n_;
    IndexRange range_;
};

/// Every Bott matrix of dimension n once, in index order. Throws
/// DimensionTooLarge when n exceeds `ceiling`.
BottEnumeration enumerate_bott(std::size_t n, std::size_t ceiling = census_hard_limit);
BottEnumeration enumerate_bott(std::size_t n, IndexRange range);

/// Splits [0, 2^{n(n-1)/2}) into min(workers, total) consecutive ranges whose
/// sizes differ by at most one, larger ranges first.
std::vector<IndexRange> partition_space(std::size_t n, std::size_t workers);

struct CensusOptions {
    bool oracle = true;
    std::size_t workers = 1;
    /// 0 selects default_oracle_ceiling or default_theorem_ceiling.
    std::size_t max_dimension = 0;
    /// Called from the coordinating thread with (matrices done, total).
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// A Kaehler matrix on which the criterion and the oracle disagree.
struct Mismatch {
    std::uint64_t index;
    BottMatrix matrix;
    bool spin_theorem;
    bool spin_oracle;
};

inline constexpr std::size_t max_recorded_mismatches = 100;

struct CensusReport {
    std::size_t dimension = 0;
    bool oracle = true;
    std::uint64_t total = 0;
    std::uint64_t kahler_count = 0;
    std::uint64_t spin_by_theorem_count = 0;
    /// Over Kaehler matrices only; empty when the oracle was not run.
    std::optional<std::uint64_t> spin_by_oracle_count;
    /// Matrices with w1 = 0, over the whole population.
    std::uint64_t orientable_count = 0;
    std::uint64_t mismatch_count = 0;
    /// First max_recorded_mismatches mismatches by index.
    std::vector<Mismatch> mismatches;
    bool mismatches_truncated = false;
    double elapsed_seconds = 0.0;
};

/// Runs the census on options.workers threads. Counts do not depend on the
/// worker count. Throws DimensionTooLarge past the ceiling.
CensusReport run_census(std::size_t n, const CensusOptions& options = {});

inline constexpr int report_schema_version = 1;

nlohmann::ordered_json to_json(const CensusReport& report);

} // namespace rbk
