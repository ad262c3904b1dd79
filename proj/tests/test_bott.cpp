#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

#include "rbk/bott.hpp"
#include "rbk/census.hpp"
#include "rbk/errors.hpp"
#include "test_support.hpp"

using namespace rbk;
using rbk::testing::paired4;
using rbk::testing::worked_example;
using rbk::testing::x;

TEST_CASE("validate") {
    const auto a = worked_example();
    CHECK(a.dimension() == 6);
    CHECK(a.bit(0, 2));
    CHECK_FALSE(a.bit(0, 1));

    try {
        BottMatrix::validate({{1, 0}, {0, 1}});
        FAIL("identity accepted");
    } catch (const NotStrictlyUpperTriangular& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
    CHECK(BottMatrix::validate({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}) == BottMatrix::zero(3));
    CHECK_THROWS_AS(BottMatrix::validate({{0, 1}, {0}}), DimensionMismatch);
    CHECK_THROWS_AS(BottMatrix::validate({{0, 2}, {0, 0}}), Error);
    CHECK_THROWS_AS(BottMatrix::validate({}), DimensionMismatch);
    CHECK_THROWS_AS(BottMatrix::from_columns({0, 0b10}), NotStrictlyUpperTriangular);
}

TEST_CASE("matrix file format") {
    const auto a = worked_example();
    CHECK(parse_bott("6\n001111\n001111\n000011\n000011\n000000\n000000\n") == a);
    CHECK(parse_bott("001111\n001111\n000011\n000011\n000000\n000000") == a);
    CHECK(parse_bott("# comment\n0 0 1 1 1 1\n0 0 1 1 1 1\n\n000011\n000011\n000000\n000000\n") == a);
    CHECK(parse_bott("0") == BottMatrix::zero(1));
    CHECK(parse_bott("1\n0\n") == BottMatrix::zero(1));
    CHECK(parse_bott("01\n00") == testing::klein_bottle());
    CHECK(parse_bott_inline("011;001;000").dimension() == 3);

    try {
        parse_bott("3\n010\n001\n100\n");
        FAIL("lower-triangular entry accepted");
    } catch (const NotStrictlyUpperTriangular& e) {
        CHECK(e.row() == 3);
        CHECK(e.col() == 1);
    }
    try {
        parse_bott("3\n010\n0010\n000\n");
        FAIL("ragged row accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_bott("3\n010\n001\n"), ParseError);
    CHECK_THROWS_AS(parse_bott("x\n00\n00"), ParseError);
    CHECK_THROWS_AS(parse_bott("2\n0a\n00"), ParseError);
    CHECK_THROWS_AS(parse_bott(""), ParseError);
}

TEST_CASE("print then parse is the identity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = testing::random_bott(rng, 1 + trial % 12);
        CHECK(parse_bott(a.to_string()) == a);
        CHECK(parse_bott_inline(a.to_inline()) == a);
    }
}

TEST_CASE("to_pmatrix") {
    CHECK(to_pmatrix(testing::klein_bottle()) == testing::pmatrix_from_rows({{1, 2}, {0, 1}}));
    CHECK(to_pmatrix(BottMatrix::zero(2)) == testing::pmatrix_from_rows({{1, 0}, {0, 1}}));
    const auto pa = to_pmatrix(worked_example());
    CHECK(pa.to_string() == "102222\n012222\n001022\n000122\n000010\n000001\n");
}

TEST_CASE("Kaehler criterion") {
    CHECK(is_kahler(worked_example()));
    CHECK(is_kahler(BottMatrix::zero(2)));
    CHECK(is_kahler(BottMatrix::zero(6)));
    CHECK_FALSE(is_kahler(testing::klein_bottle()));
    CHECK_FALSE(is_kahler(BottMatrix::zero(3)));
    CHECK(is_kahler(paired4()));
}

TEST_CASE("Kaehler criterion matches exhaustive pairing search") {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& a : enumerate_bott(n)) {
            CHECK(is_kahler(a) == testing::has_equal_column_pairing(a.columns()));
        }
    }
}

TEST_CASE("reduce") {
    const auto r = reduce(worked_example());
    CHECK(r.kept_columns == std::vector<std::size_t>{1, 3, 5});
    CHECK(r.row_sums == std::vector<std::uint8_t>{0, 0, 1, 1, 0, 0});
    CHECK(r.columns == std::vector<BottMatrix::Column>{0, 0b000011, 0b001111});

    const auto z = reduce(BottMatrix::zero(6));
    CHECK(z.columns == std::vector<BottMatrix::Column>(3, 0));
    CHECK(z.row_sums == std::vector<std::uint8_t>(6, 0));

    const auto p = reduce(paired4());
    CHECK(p.kept_columns == std::vector<std::size_t>{1, 3});
    CHECK(p.columns == std::vector<BottMatrix::Column>{0, 0b0011});
    CHECK(p.row_sums == std::vector<std::uint8_t>{1, 1, 0, 0});

    CHECK_THROWS_AS(reduce(testing::klein_bottle()), NotKahler);
}

TEST_CASE("reduced matrix keeps half of every column class") {
    for (std::size_t n : {2, 4, 6}) {
        for (const auto& a : enumerate_bott(n)) {
            if (!is_kahler(a)) {
                continue;
            }
            const auto r = reduce(a);
            REQUIRE(r.columns.size() == n / 2);
            std::map<BottMatrix::Column, std::size_t> parent, kept;
            for (auto c : a.columns()) {
                ++parent[c];
            }
            for (auto c : r.columns) {
                ++kept[c];
            }
            for (const auto& [value, count] : parent) {
                CHECK(kept[value] * 2 == count);
            }
            for (std::size_t i = 0; i < n; ++i) {
                unsigned sum = 0;
                for (auto c : r.columns) {
                    sum += (c >> i) & 1U;
                }
                CHECK(r.row_sums[i] == sum % 2);
            }
        }
    }
}

TEST_CASE("spin criterion on named examples") {
    CHECK_FALSE(spin_main_theorem(worked_example()));
    CHECK_FALSE(spin_oracle(worked_example()));
    for (std::size_t n : {2, 4, 6, 8}) {
        CHECK(spin_main_theorem(BottMatrix::zero(n)));
        CHECK(spin_oracle(BottMatrix::zero(n)));
    }
    CHECK(spin_main_theorem(paired4()));
    CHECK(spin_oracle(paired4()));
    CHECK_FALSE(spin_oracle(testing::klein_bottle()));
    CHECK_THROWS_AS(spin_main_theorem(testing::klein_bottle()), NotKahler);

    // w2 = (x1 + x2)^2 = theta_1 + theta_2 for the paired 4x4 matrix
    const auto sw = sw_data(to_pmatrix(paired4()));
    CHECK(sw.w2 == x(1) * x(1) + x(2) * x(2));
    CHECK(sw.w2 == sw.thetas[0] + sw.thetas[1]);

    const auto w = spin_witness(worked_example());
    CHECK(w.j_set == std::vector<std::size_t>{3, 4});
    CHECK(w.k_set == std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 3}, {1, 4}, {2, 4}});
    CHECK_FALSE(w.spin);
}

TEST_CASE("w2 of a Kaehler matrix is the sum of x_i^2 over rows with odd reduced sum") {
    for (std::size_t n : {4, 6}) {
        for (const auto& a : enumerate_bott(n)) {
            if (!is_kahler(a)) {
                continue;
            }
            const auto r = reduce(a);
            F2Polynomial expected;
            for (std::size_t i = 0; i < n; ++i) {
                if (r.row_sums[i]) {
                    expected += F2Polynomial(Monomial::variable(static_cast<Variable>(i + 1), 2));
                }
            }
            const auto sw = sw_data(to_pmatrix(a));
            CHECK(sw.w1.is_zero());
            CHECK(sw.w2 == expected);
        }
    }
}

TEST_CASE("spin verdict does not depend on which column of a pair is kept") {
    std::mt19937_64 rng(42);
    for (const auto& a : enumerate_bott(6)) {
        if (!is_kahler(a)) {
            continue;
        }
        const auto canonical = reduce(a).row_sums;
        std::map<BottMatrix::Column, std::vector<std::size_t>> classes;
        for (std::size_t j = 0; j < a.dimension(); ++j) {
            classes[a.column(j)].push_back(j);
        }
        for (int trial = 0; trial < 4; ++trial) {
            BottMatrix::Column sums = 0;
            for (auto& [value, idx] : classes) {
                std::shuffle(idx.begin(), idx.end(), rng);
                for (std::size_t k = 0; k < idx.size() / 2; ++k) {
                    sums ^= a.column(idx[k]);
                }
            }
            bool spin = true;
            for (std::size_t i = 0; i < a.dimension(); ++i) {
                CHECK(((sums >> i) & 1U) == canonical[i]);
                if (((sums >> i) & 1U) && a.column(i) != 0) {
                    spin = false;
                }
            }
            CHECK(spin == spin_main_theorem(a));
        }
    }
}

TEST_CASE("criterion equals oracle on random Kaehler matrices of dimension 8 and 10") {
    std::mt19937_64 rng(8);
    for (std::size_t n : {8, 10}) {
        for (int trial = 0; trial < 200; ++trial) {
            auto a = testing::random_four_grouped(rng, n);
            if (trial % 2 == 1) {
                // copy columns of a random matrix into random pairs of slots
                const auto base = testing::random_bott(rng, n);
                std::vector<BottMatrix::Column> cols(n, 0);
                std::vector<std::size_t> slots(n);
                std::iota(slots.begin(), slots.end(), std::size_t{0});
                std::shuffle(slots.begin(), slots.end(), rng);
                for (std::size_t k = 0; k + 1 < n; k += 2) {
                    const auto lo = std::min(slots[k], slots[k + 1]);
                    cols[slots[k]] = cols[slots[k + 1]] = base.column(lo);
                }
                a = BottMatrix::from_columns(cols);
            }
            REQUIRE(is_kahler(a));
            CHECK(spin_main_theorem(a) == spin_oracle(a));
        }
    }
}

TEST_CASE("four-element column groups force spin") {
    CHECK(corollary_check(BottMatrix::zero(4)));
    CHECK_FALSE(corollary_check(worked_example()));
    CHECK_THROWS_AS(corollary_check(testing::klein_bottle()), NotKahler);

    // nonzero columns 5..8 all equal to e_1 + e_2
    std::vector<BottMatrix::Column> cols(8, 0);
    for (std::size_t j = 4; j < 8; ++j) {
        cols[j] = 0b11;
    }
    const auto four = BottMatrix::from_columns(cols);
    CHECK(corollary_check(four));
    CHECK(spin_main_theorem(four));
    CHECK(spin_oracle(four));

    for (std::size_t n : {4, 6}) {
        for (const auto& a : enumerate_bott(n)) {
            if (is_kahler(a) && corollary_check(a)) {
                CHECK(spin_main_theorem(a));
            }
        }
    }
}

TEST_CASE("structural properties of P_A") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = testing::random_bott(rng, 1 + trial % 10);
        const auto e = to_pmatrix(a);
        CHECK(is_free_action(e));
        CHECK_FALSE(has_full_holonomy(e));
        CHECK(has_even_row_sums(a) == is_orientable(e));
    }
}

TEST_CASE("generators of the fundamental group") {
    const auto k = generators(testing::klein_bottle());
    REQUIRE(k.size() == 2);
    CHECK(k[0] == AffineIsometry({1, -1}, {1, 0}));
    CHECK(k[1] == AffineIsometry({1, 1}, {0, 1}));
    CHECK(k[0].to_string() == "(diag(1, -1), (1/2, 0))");

    const auto z = generators(BottMatrix::zero(3));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(z[i].is_translation());
        CHECK(z[i].doubled_translation()[i] == 1);
    }

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_bott(rng, 1 + trial % 9);
        const auto gens = generators(a);
        const auto n = a.dimension();
        CHECK(gens.back() == AffineIsometry(std::vector<int>(n, 1), [&] {
                  std::vector<std::int64_t> t(n, 0);
                  t[n - 1] = 1;
                  return t;
              }()));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(gens[i] * gens[i] == AffineIsometry::unit_translation(n, i + 1));
            for (std::size_t k2 = 0; k2 < n; ++k2) {
                CHECK(gens[i].signs()[k2] == ((k2 > i && a.bit(i, k2)) ? -1 : 1));
            }
        }
    }
}

TEST_CASE("composition of affine isometries") {
    const AffineIsometry s({1, -1, 1}, {1, 0, -3});
    const AffineIsometry t({-1, -1, 1}, {0, 1, 1});
    const AffineIsometry u({1, 1, -1}, {2, 1, 0});
    const auto id = AffineIsometry::identity(3);

    CHECK(s * s.inverse() == id);
    CHECK(s.inverse() * s == id);
    CHECK(s * id == s);
    CHECK(id * s == s);
    CHECK((s * t) * u == s * (t * u));
    // (S, a)(T, b) = (ST, Sb + a)
    CHECK(s * t == AffineIsometry({-1, 1, 1}, {1, -1, -2}));
    CHECK_THROWS_AS(compose(s, AffineIsometry::identity(2)), DimensionMismatch);
    CHECK_THROWS_AS(AffineIsometry({1, 2}, {0, 0}), Error);
}
