// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rbk/bott.hpp"
#include "rbk/census.hpp"
#include "rbk/pmatrix.hpp"
#include "test_support.hpp"

using namespace rbk;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            detail << what;
        }
        pass = pass && ok;
    }
};

struct Expected {
    std::size_t n;
    std::uint64_t total, kahler, spin;
};

// Every Bott matrix of dimension 1..6.
void sweep(const std::function<void(const BottMatrix&)>& visit) {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& a : enumerate_bott(n)) {
            visit(a);
        }
    }
}

Outcome worked_example() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const auto a = parse_bott(
        "6\n"
        "001111\n"
        "001111\n"
        "000011\n"
        "000011\n"
        "000000\n"
        "000000\n");
    const bool kahler = is_kahler(a);
    o.require(kahler, "not Kaehler");
    if (kahler) {
        const auto r = reduce(a);
        o.require(r.row_sums == std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0}, "reduced row sums differ");
        o.require(!spin_main_theorem(a), "criterion reports spin");
    }
    o.require(!spin_oracle(a), "oracle reports spin");
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    o.require(elapsed.count() < 1.0, "slower than 1 s");
    o.detail << (o.pass ? "" : "; ") << "elapsed " << elapsed.count() << " s";
    return o;
}

Outcome exhaustive_agreement() {
    Outcome o;
    const Expected fixtures[] = {{2, 2, 1, 1}, {4, 64, 6, 6}, {6, 32768, 192, 76}};
    for (const auto& f : fixtures) {
        const auto r = run_census(f.n);
        o.require(r.total == f.total, "total differs at n=" + std::to_string(f.n));
        o.require(r.mismatch_count == 0, std::to_string(r.mismatch_count) + " mismatches at n=" + std::to_string(f.n));
        o.require(r.kahler_count == f.kahler, "Kaehler count differs at n=" + std::to_string(f.n));
        o.require(r.spin_by_theorem_count == f.spin, "spin count differs at n=" + std::to_string(f.n));
        o.require(r.spin_by_oracle_count == f.spin, "oracle spin count differs at n=" + std::to_string(f.n));
        if (o.pass) {
            o.detail << (f.n == 2 ? "" : "; ") << "n=" << f.n << ": " << r.kahler_count << " Kaehler, "
                     << r.spin_by_theorem_count << " spin, 0 mismatches";
        }
    }
    return o;
}

Outcome torus_baselines() {
    Outcome o;
    for (std::size_t n : {2, 4, 6}) {
        const auto a = BottMatrix::zero(n);
        const auto tag = " at n=" + std::to_string(n);
        o.require(is_kahler(a), "not Kaehler" + tag);
        o.require(is_orientable(to_pmatrix(a)), "not orientable" + tag);
        o.require(spin_main_theorem(a), "criterion says not spin" + tag);
        o.require(spin_oracle(a), "oracle says not spin" + tag);
        o.require(sw_data(to_pmatrix(a)).w2.is_zero(), "w2 nonzero" + tag);
    }
    return o;
}

Outcome corollary_property() {
    Outcome o;
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = testing::random_four_grouped(rng, 8);
        o.require(corollary_check(a), "corollary_check false for " + a.to_inline());
        o.require(spin_main_theorem(a), "criterion says not spin for " + a.to_inline());
        o.require(spin_oracle(a), "oracle says not spin for " + a.to_inline());
    }
    if (o.pass) {
        o.detail << "200 matrices of dimension 8";
    }
    return o;
}

Outcome kahler_orientable() {
    Outcome o;
    std::uint64_t kahler = 0;
    sweep([&](const BottMatrix& a) {
        if (is_kahler(a)) {
            ++kahler;
            o.require(sw_data(to_pmatrix(a)).w1.is_zero(), "w1 nonzero for " + a.to_inline());
        }
    });
    if (o.pass) {
        o.detail << kahler << " Kaehler matrices";
    }
    return o;
}

Outcome structural_invariants() {
    Outcome o;
    std::uint64_t count = 0;
    sweep([&](const BottMatrix& a) {
        ++count;
        const auto p = to_pmatrix(a);
        o.require(is_free_action(p), "action not free for " + a.to_inline());
        o.require(!has_full_holonomy(p), "full holonomy for " + a.to_inline());
        const auto gens = generators(a);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            o.require(gens[i] * gens[i] == AffineIsometry::unit_translation(a.dimension(), i + 1),
                      "s" + std::to_string(i + 1) + "^2 is not e" + std::to_string(i + 1) + " for " + a.to_inline());
        }
    });
    if (o.pass) {
        o.detail << count << " matrices";
    }
    return o;
}

Outcome klein_bottle() {
    Outcome o;
    const auto a = parse_bott_inline("01;00");
    o.require(!is_kahler(a), "Kaehler");
    o.require(!is_orientable(to_pmatrix(a)), "orientable");
    o.require(!spin_oracle(a), "oracle reports spin");
    return o;
}

Outcome determinism() {
    Outcome o;
    for (std::size_t n : {4, 6}) {
        std::string baseline;
        for (std::size_t workers : {1, 2, 8}) {
            auto doc = to_json(run_census(n, {.workers = workers}));
            doc.erase("elapsed_seconds");
            const auto text = doc.dump();
            if (baseline.empty()) {
                baseline = text;
            }
            o.require(text == baseline, "report differs at n=" + std::to_string(n) + " with " +
                                            std::to_string(workers) + " workers");
        }
    }
    return o;
}

} // namespace

int main() {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"worked example", worked_example},
        {"criterion equals oracle, n = 2, 4, 6", exhaustive_agreement},
        {"torus baselines", torus_baselines},
        {"four-grouped columns are spin", corollary_property},
        {"Kaehler implies w1 = 0, n <= 6", kahler_orientable},
        {"free action, non-full holonomy, s_i^2 = e_i, n <= 6", structural_invariants},
        {"Klein bottle", klein_bottle},
        {"census determinism across 1, 2, 8 workers", determinism},
    };
    int failures = 0;
    int number = 0;
    for (const auto& [name, check] : criteria) {
        ++number;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << number << " " << name;
        const auto detail = o.detail.str();
        if (!detail.empty()) {
            std::cout << " (" << detail << ")";
        }
        std::cout << "\n";
    }
    std::cout << (number - failures) << "/" << number << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
