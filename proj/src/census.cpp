#include "rbk/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "rbk/errors.hpp"

namespace rbk {

namespace {

struct ShardResult {
    std::uint64_t kahler = 0;
    std::uint64_t spin_theorem = 0;
    std::uint64_t spin_oracle = 0;
    std::uint64_t orientable = 0;
    std::uint64_t mismatch_count = 0;
    std::vector<Mismatch> mismatches;
};

constexpr std::uint64_t progress_stride = 4096;

void run_shard(std::size_t n, IndexRange range, bool oracle, std::atomic<std::uint64_t>& done, ShardResult& out) {
    std::uint64_t pending = 0;
    for (auto it = BottEnumeration(n, range).begin(), end = BottEnumeration(n, range).end(); it != end; ++it) {
        const BottMatrix a = *it;
        if (has_even_row_sums(a)) {
            ++out.orientable;
        }
        if (is_kahler(a)) {
            ++out.kahler;
            const bool by_theorem = spin_main_theorem(a);
            out.spin_theorem += by_theorem ? 1 : 0;
            if (oracle) {
                const bool by_oracle = spin_oracle(a);
                out.spin_oracle += by_oracle ? 1 : 0;
                if (by_theorem != by_oracle) {
                    ++out.mismatch_count;
                    if (out.mismatches.size() < max_recorded_mismatches) {
                        out.mismatches.push_back({it.index(), a, by_theorem, by_oracle});
                    }
                }
            }
        }
        if (++pending == progress_stride) {
            done.fetch_add(pending, std::memory_order_relaxed);
            pending = 0;
        }
    }
    done.fetch_add(pending, std::memory_order_relaxed);
}

} // namespace

std::size_t free_bits(std::size_t n) noexcept { return n * (n > 0 ? n - 1 : 0) / 2; }

std::uint64_t bott_count(std::size_t n) {
    if (n == 0) {
        throw DimensionMismatch("dimension must be at least 1");
    }
    if (n > census_hard_limit) {
        throw DimensionTooLarge("census dimension " + std::to_string(n) + " exceeds the hard limit " +
                                std::to_string(census_hard_limit));
    }
    return std::uint64_t{1} << free_bits(n);
}

BottMatrix bott_from_index(std::size_t n, std::uint64_t index) {
    const std::size_t m = free_bits(n);
    if (index >= bott_count(n)) {
        throw Error("index " + std::to_string(index) + " outside the enumeration of dimension " + std::to_string(n));
    }
    std::vector<BottMatrix::Column> columns(n, 0);
    std::size_t position = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++position) {
            if ((index >> (m - 1 - position)) & 1U) {
                columns[j] |= BottMatrix::Column{1} << i;
            }
        }
    }
    return BottMatrix::from_columns(std::move(columns));
}

std::uint64_t bott_index(const BottMatrix& a) {
    const std::size_t n = a.dimension();
    bott_count(n);
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            index = (index << 1) | (a.bit(i, j) ? 1U : 0U);
        }
    }
    return index;
}

BottEnumeration enumerate_bott(std::size_t n, std::size_t ceiling) {
    if (n > ceiling) {
        throw DimensionTooLarge("dimension " + std::to_string(n) + " exceeds the configured ceiling " +
                                std::to_string(ceiling));
    }
    return BottEnumeration(n, IndexRange{0, bott_count(n)});
}

BottEnumeration enumerate_bott(std::size_t n, IndexRange range) {
    if (range.begin > range.end || range.end > bott_count(n)) {
        throw Error("enumeration range outside [0, 2^" + std::to_string(free_bits(n)) + ")");
    }
    return BottEnumeration(n, range);
}

std::vector<IndexRange> partition_space(std::size_t n, std::size_t workers) {
    const std::uint64_t total = bott_count(n);
    const std::uint64_t shards = std::min<std::uint64_t>(std::max<std::size_t>(workers, 1), total);
    const std::uint64_t base = total / shards;
    const std::uint64_t extra = total % shards;
    std::vector<IndexRange> out;
    out.reserve(shards);
    std::uint64_t begin = 0;
    for (std::uint64_t k = 0; k < shards; ++k) {
        const std::uint64_t size = base + (k < extra ? 1 : 0);
        out.push_back({begin, begin + size});
        begin += size;
    }
    return out;
}

CensusReport run_census(std::size_t n, const CensusOptions& options) {
    const std::size_t ceiling = options.max_dimension != 0
                                    ? options.max_dimension
                                    : (options.oracle ? default_oracle_ceiling : default_theorem_ceiling);
    if (n > ceiling) {
        throw DimensionTooLarge("census dimension " + std::to_string(n) + " exceeds the ceiling " +
                                std::to_string(ceiling) + (options.oracle ? " (oracle on)" : " (oracle off)"));
    }
    const auto start = std::chrono::steady_clock::now();
    const auto ranges = partition_space(n, options.workers);
    const std::uint64_t total = bott_count(n);

    std::vector<ShardResult> results(ranges.size());
    std::vector<std::exception_ptr> errors(ranges.size());
    std::atomic<std::uint64_t> done{0};
    std::atomic<std::size_t> finished{0};
    {
        std::vector<std::jthread> threads;
        threads.reserve(ranges.size());
        for (std::size_t k = 0; k < ranges.size(); ++k) {
            threads.emplace_back([&, k] {
                try {
                    run_shard(n, ranges[k], options.oracle, done, results[k]);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
                finished.fetch_add(1, std::memory_order_release);
            });
        }
        if (options.progress) {
            while (finished.load(std::memory_order_acquire) < ranges.size()) {
                options.progress(done.load(std::memory_order_relaxed), total);
                std::this_thread::sleep_for(std::chrono::milliseconds(200));
            }
            options.progress(total, total);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    CensusReport report;
    report.dimension = n;
    report.oracle = options.oracle;
    report.total = total;
    std::uint64_t spin_oracle = 0;
    // shards are in index order, so concatenation keeps mismatches sorted
    for (auto& r : results) {
        report.kahler_count += r.kahler;
        report.spin_by_theorem_count += r.spin_theorem;
        spin_oracle += r.spin_oracle;
        report.orientable_count += r.orientable;
        report.mismatch_count += r.mismatch_count;
        for (auto& m : r.mismatches) {
            if (report.mismatches.size() < max_recorded_mismatches) {
                report.mismatches.push_back(std::move(m));
            }
        }
    }
    if (options.oracle) {
        report.spin_by_oracle_count = spin_oracle;
    }
    report.mismatches_truncated = report.mismatch_count > report.mismatches.size();
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

nlohmann::ordered_json to_json(const CensusReport& report) {
    nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
    for (const auto& m : report.mismatches) {
        mismatches.push_back({{"index", m.index},
                              {"matrix", m.matrix.to_inline()},
                              {"spin_theorem", m.spin_theorem},
                              {"spin_oracle", m.spin_oracle}});
    }
    nlohmann::ordered_json j;
    j["schema_version"] = report_schema_version;
    j["report"] = "census";
    j["dimension"] = report.dimension;
    j["oracle"] = report.oracle;
    j["total"] = report.total;
    j["kahler_count"] = report.kahler_count;
    j["spin_by_theorem_count"] = report.spin_by_theorem_count;
    j["spin_by_oracle_count"] =
        report.spin_by_oracle_count ? nlohmann::ordered_json(*report.spin_by_oracle_count) : nlohmann::ordered_json();
    j["orientable_count"] = report.orientable_count;
    j["mismatch_count"] = report.mismatch_count;
    j["mismatches"] = std::move(mismatches);
    j["mismatches_truncated"] = report.mismatches_truncated;
    j["elapsed_seconds"] = report.elapsed_seconds;
    return j;
}

} // namespace rbk
