#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbk/f2poly.hpp"

// P-matrices of diagonal actions of C2^d on the n-torus.
//
// Entry k in {0,1,2,3} names the circle automorphism g_k: identity, the
// half-turn t -> t + 1/2, the reflection t -> -t, and their composite.

namespace rbk {

/// Element of P = {0,1,2,3}; addition is the F2-vector-space structure with 1 + 2 = 3.
class PEntry {
public:
    constexpr PEntry() = default;
    explicit PEntry(unsigned value);

    constexpr unsigned value() const noexcept { return value_; }

    /// alpha: 0,1,2,3 -> 0,1,1,0
    constexpr bool alpha() const noexcept { return ((value_ ^ (value_ >> 1)) & 1U) != 0; }
    /// beta: 0,1,2,3 -> 0,1,0,1
    constexpr bool beta() const noexcept { return (value_ & 1U) != 0; }

    friend constexpr PEntry operator+(PEntry a, PEntry b) noexcept {
        PEntry r;
        r.value_ = static_cast<std::uint8_t>(a.value_ ^ b.value_);
        return r;
    }
    friend constexpr bool operator==(PEntry a, PEntry b) noexcept = default;

private:
    std::uint8_t value_ = 0;
};

inline PEntry pentry_add(PEntry a, PEntry b) noexcept { return a + b; }
constexpr bool alpha_form(PEntry a) noexcept { return a.alpha(); }
constexpr bool beta_form(PEntry a) noexcept { return a.beta(); }

class PMatrix {
public:
    /// Row-major entries; throws DimensionMismatch unless rows, cols >= 1 and sizes agree.
    PMatrix(std::size_t rows, std::size_t cols, std::vector<PEntry> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    /// 0-based access.
    PEntry entry(std::size_t row, std::size_t col) const { return entries_.at(row * cols_ + col); }
    std::span<const PEntry> row(std::size_t r) const {
        return std::span<const PEntry>(entries_).subspan(r * cols_, cols_);
    }

    /// d lines of n contiguous digits.
    std::string to_string() const;

    friend bool operator==(const PMatrix&, const PMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<PEntry> entries_;
};

/// Parses d lines of digits from {0,1,2,3}, either contiguous or whitespace
/// separated. Blank lines and lines starting with '#' are skipped.
PMatrix parse_pmatrix(std::string_view text);

/// Row subsets are enumerated exhaustively; beyond this many rows the
/// predicates throw DimensionTooLarge.
inline constexpr std::size_t max_subset_rows = 30;

/// True iff the sum of every nonempty set of rows contains an entry equal to 1.
bool is_free_action(const PMatrix& e);
/// True iff the sum of every nonempty set of rows contains a 2 or a 3.
bool has_full_holonomy(const PMatrix& e);

// Cohomology classes of column j (1-based) in F2[x1..xd]. Throw ColumnOutOfRange.
F2Polynomial class_alpha(const PMatrix& e, std::size_t column);
F2Polynomial class_beta(const PMatrix& e, std::size_t column);
F2Polynomial class_theta(const PMatrix& e, std::size_t column);

struct SWData {
    F2Polynomial w1;
    F2Polynomial w2;
    std::vector<F2Polynomial> thetas;
};

/// w1 and w2 as the first two elementary symmetric polynomials of
/// c_j = alpha_j + beta_j, together with theta_1..theta_n.
SWData sw_data(const PMatrix& e);

/// prod_j (1 + alpha_j + beta_j) truncated at max_degree.
F2Polynomial total_sw_class(const PMatrix& e, std::uint32_t max_degree);

/// Degree-2 piece of the ideal generated by theta_1..theta_n, i.e. their F2-span.
F2RowSpace characteristic_ideal_deg2(const PMatrix& e);
F2RowSpace characteristic_ideal_deg2(const SWData& sw, std::size_t variables);

bool is_orientable(const PMatrix& e);

/// w2 lies in the characteristic ideal; says nothing about w1.
bool w2_in_characteristic_ideal(const PMatrix& e);

/// Orientable and w2 in the characteristic ideal.
bool admits_spin_oracle(const PMatrix& e);

} // namespace rbk
