#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbk/pmatrix.hpp"

// Bott matrices: strictly upper triangular square matrices over F2, each
// describing one real Bott manifold M(A).
//
// Entry accessors are 0-based. Anything that names a row or column in the
// mathematical sense (kept columns, the J set, error coordinates) is 1-based.

namespace rbk {

class BottMatrix {
public:
    /// Column j as a bit mask: bit i is the entry in row i.
    using Column = std::uint64_t;

    static constexpr std::size_t max_dimension = 64;

    /// Validates a square 0/1 array. Throws NotStrictlyUpperTriangular with
    /// the first offending (row, col) in row-major order, DimensionMismatch
    /// for non-square input, DimensionTooLarge beyond max_dimension.
    static BottMatrix validate(const std::vector<std::vector<std::uint8_t>>& bits);
    /// Same checks, starting from column masks.
    static BottMatrix from_columns(std::vector<Column> columns);
    static BottMatrix zero(std::size_t n);

    std::size_t dimension() const noexcept { return columns_.size(); }
    bool bit(std::size_t row, std::size_t col) const { return ((columns_.at(col) >> row) & 1U) != 0; }
    Column column(std::size_t col) const { return columns_.at(col); }
    const std::vector<Column>& columns() const noexcept { return columns_; }

    /// Matrix file format: a line with n, then n rows of 0/1 characters.
    std::string to_string() const;
    /// Rows joined by ';', the inline form accepted by parse_bott_inline.
    std::string to_inline() const;

    friend bool operator==(const BottMatrix&, const BottMatrix&) = default;

private:
    explicit BottMatrix(std::vector<Column> columns) : columns_(std::move(columns)) {}

    std::vector<Column> columns_;
};

/// Parses the matrix file format: an optional first line holding n, then n
/// rows of n characters from {0,1}. Spaces inside rows are ignored, as are
/// blank lines and lines starting with '#'. Throws ParseError or
/// NotStrictlyUpperTriangular.
BottMatrix parse_bott(std::string_view text);
/// Parses rows separated by ';', e.g. "011;001;000".
BottMatrix parse_bott_inline(std::string_view rows);

/// P_A: 1 on the diagonal, 2 where a_ij = 1, 0 elsewhere.
PMatrix to_pmatrix(const BottMatrix& a);

/// Even dimension and every distinct column value occurs an even number of
/// times, i.e. the columns split into pairs of equal ones.
bool is_kahler(const BottMatrix& a);

/// Every row of A has an even number of ones (w1 = 0 for M(A)).
bool has_even_row_sums(const BottMatrix& a);

/// One column kept from each pair of equal columns.
struct ReducedMatrix {
    /// 1-based indices into the parent, ascending. For each column value of
    /// multiplicity 2m the m smallest indices are kept.
    std::vector<std::size_t> kept_columns;
    /// The kept columns, as masks over the parent's rows.
    std::vector<BottMatrix::Column> columns;
    /// Row sums of the reduced matrix mod 2; one entry per parent row.
    std::vector<std::uint8_t> row_sums;
};

/// Throws NotKahler.
ReducedMatrix reduce(const BottMatrix& a);

/// Everything the spin criterion looks at.
struct SpinWitness {
    ReducedMatrix reduced;
    /// Rows i (1-based) with reduced row sum 1.
    std::vector<std::size_t> j_set;
    /// Pairs (i, j), 1-based, with a_ij = 1 and j in j_set; empty iff spin.
    std::vector<std::pair<std::size_t, std::size_t>> k_set;
    bool spin;
};

/// Throws NotKahler.
SpinWitness spin_witness(const BottMatrix& a);

/// For every i with reduced row sum 1 the column A^(i) is zero. Throws NotKahler.
bool spin_main_theorem(const BottMatrix& a);

/// admits_spin_oracle(to_pmatrix(a)); defined for every Bott matrix.
bool spin_oracle(const BottMatrix& a);

/// The nonzero columns split into 4-element groups of equal columns.
/// Throws NotKahler.
bool corollary_check(const BottMatrix& a);

/// Element (S, t) of O(n) x R^n with S diagonal with entries +-1 and t in (1/2)Z^n.
/// Translations are stored doubled: entry k stands for k/2.
class AffineIsometry {
public:
    AffineIsometry(std::vector<int> signs, std::vector<std::int64_t> doubled_translation);

    static AffineIsometry identity(std::size_t n);
    /// Translation by the unit vector e_i, i 1-based.
    static AffineIsometry unit_translation(std::size_t n, std::size_t i);

    std::size_t dimension() const noexcept { return signs_.size(); }
    const std::vector<int>& signs() const noexcept { return signs_; }
    const std::vector<std::int64_t>& doubled_translation() const noexcept { return translation2_; }

    bool is_translation() const noexcept;
    AffineIsometry inverse() const;

    /// Human-readable, e.g. "(diag(1, -1), (1/2, 0))".
    std::string to_string() const;

    friend bool operator==(const AffineIsometry&, const AffineIsometry&) = default;

private:
    std::vector<int> signs_;
    std::vector<std::int64_t> translation2_;
};

/// (S, a)(T, b) = (ST, Sb + a), the map x -> s(t(x)). Throws DimensionMismatch.
AffineIsometry compose(const AffineIsometry& s, const AffineIsometry& t);
inline AffineIsometry operator*(const AffineIsometry& s, const AffineIsometry& t) { return compose(s, t); }

/// Generators s_1..s_n of the fundamental group of M(A): s_i flips coordinate
/// k > i exactly when a_ik = 1 and translates by e_i / 2.
std::vector<AffineIsometry> generators(const BottMatrix& a);

} // namespace rbk
