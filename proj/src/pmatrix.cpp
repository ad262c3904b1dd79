#include "rbk/pmatrix.hpp"

#include <bit>
#include <cctype>

#include <boost/dynamic_bitset.hpp>

#include "rbk/errors.hpp"

namespace rbk {

namespace {

using Plane = boost::dynamic_bitset<std::uint64_t>;

// A row of P-entries split into its low and high bit planes.
struct PackedRow {
    Plane low;
    Plane high;
};

std::vector<PackedRow> pack_rows(const PMatrix& e) {
    std::vector<PackedRow> rows;
    rows.reserve(e.rows());
    for (std::size_t r = 0; r < e.rows(); ++r) {
        PackedRow p{Plane(e.cols()), Plane(e.cols())};
        for (std::size_t c = 0; c < e.cols(); ++c) {
            const unsigned v = e.entry(r, c).value();
            p.low[c] = (v & 1U) != 0;
            p.high[c] = (v & 2U) != 0;
        }
        rows.push_back(std::move(p));
    }
    return rows;
}

// Visits the sum of every nonempty row subset in Gray-code order; stops at the
// first sum rejected by `accept`.
template <typename Accept>
bool every_row_subset(const PMatrix& e, Accept accept) {
    if (e.rows() > max_subset_rows) {
        throw DimensionTooLarge("row-subset enumeration limited to " + std::to_string(max_subset_rows) +
                                " rows, got " + std::to_string(e.rows()));
    }
    const auto rows = pack_rows(e);
    PackedRow sum{Plane(e.cols()), Plane(e.cols())};
    const std::uint64_t subsets = std::uint64_t{1} << e.rows();
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const auto& flip = rows[static_cast<std::size_t>(std::countr_zero(k))];
        sum.low ^= flip.low;
        sum.high ^= flip.high;
        if (!accept(sum)) {
            return false;
        }
    }
    return true;
}

void check_column(const PMatrix& e, std::size_t column) {
    if (column == 0 || column > e.cols()) {
        throw ColumnOutOfRange("column " + std::to_string(column) + " outside 1.." + std::to_string(e.cols()));
    }
}

template <typename Form>
F2Polynomial linear_class(const PMatrix& e, std::size_t column, Form form) {
    check_column(e, column);
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < e.rows(); ++i) {
        if (form(e.entry(i, column - 1))) {
            terms.push_back(Monomial::variable(static_cast<Variable>(i + 1)));
        }
    }
    return F2Polynomial::from_terms(std::move(terms));
}

} // namespace

PEntry::PEntry(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
    if (value > 3) {
        throw Error("P-matrix entries lie in {0,1,2,3}, got " + std::to_string(value));
    }
}

PMatrix::PMatrix(std::size_t rows, std::size_t cols, std::vector<PEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionMismatch("P-matrix needs at least one row and one column");
    }
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatch("P-matrix of shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                " given " + std::to_string(entries_.size()) + " entries");
    }
}

std::string PMatrix::to_string() const {
    std::string out;
    out.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out += static_cast<char>('0' + entry(r, c).value());
        }
        out += '\n';
    }
    return out;
}

PMatrix parse_pmatrix(std::string_view text) {
    std::vector<PEntry> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        std::size_t width = 0;
        bool comment = false;
        for (char ch : line) {
            if (std::isspace(static_cast<unsigned char>(ch))) {
                continue;
            }
            if (ch == '#' && width == 0) {
                comment = true;
                break;
            }
            if (ch < '0' || ch > '3') {
                throw ParseError(line_no, std::string("unexpected character '") + ch + "' in P-matrix row");
            }
            entries.emplace_back(static_cast<unsigned>(ch - '0'));
            ++width;
        }
        if (comment || width == 0) {
            continue;
        }
        if (rows == 0) {
            cols = width;
        } else if (width != cols) {
            throw ParseError(line_no, "row has " + std::to_string(width) + " entries, expected " +
                                          std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError(0, "empty P-matrix");
    }
    return PMatrix(rows, cols, std::move(entries));
}

bool is_free_action(const PMatrix& e) {
    // an entry equal to 1 has low bit set and high bit clear
    return every_row_subset(e, [](const PackedRow& s) { return (s.low - s.high).any(); });
}

bool has_full_holonomy(const PMatrix& e) {
    return every_row_subset(e, [](const PackedRow& s) { return s.high.any(); });
}

F2Polynomial class_alpha(const PMatrix& e, std::size_t column) {
    return linear_class(e, column, [](PEntry p) { return p.alpha(); });
}

F2Polynomial class_beta(const PMatrix& e, std::size_t column) {
    return linear_class(e, column, [](PEntry p) { return p.beta(); });
}

F2Polynomial class_theta(const PMatrix& e, std::size_t column) {
    return class_alpha(e, column) * class_beta(e, column);
}

SWData sw_data(const PMatrix& e) {
    SWData out;
    out.thetas.reserve(e.cols());
    for (std::size_t j = 1; j <= e.cols(); ++j) {
        const auto a = class_alpha(e, j);
        const auto b = class_beta(e, j);
        const auto c = a + b;
        out.w2 += out.w1 * c;
        out.w1 += c;
        out.thetas.push_back(a * b);
    }
    return out;
}

F2Polynomial total_sw_class(const PMatrix& e, std::uint32_t max_degree) {
    F2Polynomial w = F2Polynomial::one();
    for (std::size_t j = 1; j <= e.cols(); ++j) {
        const auto factor = F2Polynomial::one() + class_alpha(e, j) + class_beta(e, j);
        w = truncated_product(w, factor, max_degree);
    }
    return w;
}

F2RowSpace characteristic_ideal_deg2(const SWData& sw, std::size_t variables) {
    std::vector<Deg2Vector> generators;
    generators.reserve(sw.thetas.size());
    for (const auto& theta : sw.thetas) {
        generators.push_back(deg2_to_vector(theta, variables));
    }
    return F2RowSpace::span(generators, variables);
}

F2RowSpace characteristic_ideal_deg2(const PMatrix& e) { return characteristic_ideal_deg2(sw_data(e), e.rows()); }

bool is_orientable(const PMatrix& e) { return sw_data(e).w1.is_zero(); }

bool w2_in_characteristic_ideal(const PMatrix& e) {
    const auto sw = sw_data(e);
    return characteristic_ideal_deg2(sw, e.rows()).contains(deg2_to_vector(sw.w2, e.rows()));
}

bool admits_spin_oracle(const PMatrix& e) {
    const auto sw = sw_data(e);
    if (!sw.w1.is_zero()) {
        return false;
    }
    return characteristic_ideal_deg2(sw, e.rows()).contains(deg2_to_vector(sw.w2, e.rows()));
}

} // namespace rbk
