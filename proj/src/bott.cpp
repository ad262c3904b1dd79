#include "rbk/bott.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "rbk/errors.hpp"

namespace rbk {

namespace {

struct TextLine {
    std::size_t number;
    std::string content; // whitespace removed
};

std::vector<TextLine> significant_lines(std::string_view text, char separator) {
    std::vector<TextLine> out;
    std::size_t number = 0;
    while (!text.empty()) {
        const auto cut = text.find(separator);
        std::string_view line = text.substr(0, cut);
        text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
        ++number;
        std::string content;
        for (char ch : line) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                content += ch;
            }
        }
        if (content.empty() || content.front() == '#') {
            continue;
        }
        out.push_back({number, std::move(content)});
    }
    return out;
}

bool is_binary_row(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

BottMatrix from_rows(std::span<const TextLine> rows, std::size_t n) {
    if (rows.size() != n) {
        throw ParseError(rows.empty() ? 0 : rows.back().number,
                         "expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
    }
    std::vector<std::vector<std::uint8_t>> bits;
    bits.reserve(n);
    for (const auto& row : rows) {
        if (row.content.size() != n) {
            throw ParseError(row.number, "row has " + std::to_string(row.content.size()) + " entries, expected " +
                                             std::to_string(n));
        }
        std::vector<std::uint8_t> r;
        r.reserve(n);
        for (char ch : row.content) {
            if (ch != '0' && ch != '1') {
                throw ParseError(row.number, std::string("unexpected character '") + ch + "' in Bott matrix row");
            }
            r.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        bits.push_back(std::move(r));
    }
    return BottMatrix::validate(bits);
}

// Column indices grouped by column value; groups ordered by value, indices ascending.
std::vector<std::vector<std::size_t>> column_classes(const BottMatrix& a) {
    std::vector<std::size_t> order(a.dimension());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a.column(x) != a.column(y) ? a.column(x) < a.column(y) : x < y;
    });
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || a.column(order[k]) != a.column(order[k - 1])) {
            classes.emplace_back();
        }
        classes.back().push_back(order[k]);
    }
    return classes;
}

std::string half_integer(std::int64_t doubled) {
    if (doubled % 2 == 0) {
        return std::to_string(doubled / 2);
    }
    return std::to_string(doubled) + "/2";
}

} // namespace

BottMatrix BottMatrix::validate(const std::vector<std::vector<std::uint8_t>>& bits) {
    const std::size_t n = bits.size();
    if (n == 0) {
        throw DimensionMismatch("Bott matrix must have dimension at least 1");
    }
    if (n > max_dimension) {
        throw DimensionTooLarge("Bott matrix dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(max_dimension));
    }
    std::vector<Column> columns(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i].size() != n) {
            throw DimensionMismatch("row " + std::to_string(i + 1) + " has " + std::to_string(bits[i].size()) +
                                    " entries, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = bits[i][j];
            if (v > 1) {
                throw Error("Bott matrix entries lie in {0,1}, got " + std::to_string(v) + " at (" +
                            std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            }
            if (v == 0) {
                continue;
            }
            if (i >= j) {
                throw NotStrictlyUpperTriangular(i + 1, j + 1);
            }
            columns[j] |= Column{1} << i;
        }
    }
    return BottMatrix(std::move(columns));
}

BottMatrix BottMatrix::from_columns(std::vector<Column> columns) {
    const std::size_t n = columns.size();
    if (n == 0) {
        throw DimensionMismatch("Bott matrix must have dimension at least 1");
    }
    if (n > max_dimension) {
        throw DimensionTooLarge("Bott matrix dimension " + std::to_string(n) + " exceeds " +
                                std::to_string(max_dimension));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if ((columns[j] >> i) & 1U) {
                throw NotStrictlyUpperTriangular(i + 1, j + 1);
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (n < 64 && (columns[j] >> n) != 0) {
            throw DimensionMismatch("column " + std::to_string(j + 1) + " has bits beyond row " + std::to_string(n));
        }
    }
    return BottMatrix(std::move(columns));
}

BottMatrix BottMatrix::zero(std::size_t n) { return from_columns(std::vector<Column>(n, 0)); }

std::string BottMatrix::to_string() const {
    const std::size_t n = dimension();
    std::string out = std::to_string(n) + "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out += bit(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string BottMatrix::to_inline() const {
    const std::size_t n = dimension();
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            out += ';';
        }
        for (std::size_t j = 0; j < n; ++j) {
            out += bit(i, j) ? '1' : '0';
        }
    }
    return out;
}

BottMatrix parse_bott(std::string_view text) {
    const auto lines = significant_lines(text, '\n');
    if (lines.empty()) {
        throw ParseError(0, "empty Bott matrix");
    }
    const auto& first = lines.front();
    // Without a header the first row has exactly as many entries as there are rows.
    if (is_binary_row(first.content) && first.content.size() == lines.size()) {
        return from_rows(lines, lines.size());
    }
    std::size_t n = 0;
    const auto* begin = first.content.data();
    const auto* end = begin + first.content.size();
    auto [ptr, ec] = std::from_chars(begin, end, n);
    if (ec != std::errc{} || ptr != end || n == 0) {
        throw ParseError(first.number, "expected the dimension or a matrix row, got '" + first.content + "'");
    }
    return from_rows(std::span<const TextLine>(lines).subspan(1), n);
}

BottMatrix parse_bott_inline(std::string_view rows) {
    const auto lines = significant_lines(rows, ';');
    if (lines.empty()) {
        throw ParseError(0, "empty Bott matrix");
    }
    return from_rows(lines, lines.size());
}

PMatrix to_pmatrix(const BottMatrix& a) {
    const std::size_t n = a.dimension();
    std::vector<PEntry> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                entries[i * n + j] = PEntry(1);
            } else if (a.bit(i, j)) {
                entries[i * n + j] = PEntry(2);
            }
        }
    }
    return PMatrix(n, n, std::move(entries));
}

bool is_kahler(const BottMatrix& a) {
    if (a.dimension() % 2 != 0) {
        return false;
    }
    auto cols = a.columns();
    std::sort(cols.begin(), cols.end());
    for (std::size_t k = 0; k < cols.size(); k += 2) {
        if (cols[k] != cols[k + 1]) {
            return false;
        }
    }
    return true;
}

bool has_even_row_sums(const BottMatrix& a) {
    BottMatrix::Column parity = 0;
    for (auto c : a.columns()) {
        parity ^= c;
    }
    return parity == 0;
}

ReducedMatrix reduce(const BottMatrix& a) {
    if (!is_kahler(a)) {
        throw NotKahler();
    }
    std::vector<std::size_t> kept;
    for (const auto& cls : column_classes(a)) {
        kept.insert(kept.end(), cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(cls.size() / 2));
    }
    std::sort(kept.begin(), kept.end());

    ReducedMatrix out;
    BottMatrix::Column sums = 0;
    for (auto j : kept) {
        out.kept_columns.push_back(j + 1);
        out.columns.push_back(a.column(j));
        sums ^= a.column(j);
    }
    out.row_sums.resize(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        out.row_sums[i] = static_cast<std::uint8_t>((sums >> i) & 1U);
    }
    return out;
}

SpinWitness spin_witness(const BottMatrix& a) {
    SpinWitness w{reduce(a), {}, {}, true};
    for (std::size_t j = 0; j < a.dimension(); ++j) {
        if (w.reduced.row_sums[j] == 0) {
            continue;
        }
        w.j_set.push_back(j + 1);
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            if (a.bit(i, j)) {
                w.k_set.emplace_back(i + 1, j + 1);
            }
        }
    }
    w.spin = w.k_set.empty();
    return w;
}

bool spin_main_theorem(const BottMatrix& a) {
    const auto r = reduce(a);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (r.row_sums[i] != 0 && a.column(i) != 0) {
            return false;
        }
    }
    return true;
}

bool spin_oracle(const BottMatrix& a) { return admits_spin_oracle(to_pmatrix(a)); }

bool corollary_check(const BottMatrix& a) {
    if (!is_kahler(a)) {
        throw NotKahler();
    }
    for (const auto& cls : column_classes(a)) {
        if (a.column(cls.front()) != 0 && cls.size() % 4 != 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

AffineIsometry::AffineIsometry(std::vector<int> signs, std::vector<std::int64_t> doubled_translation)
    : signs_(std::move(signs)), translation2_(std::move(doubled_translation)) {
    if (signs_.size() != translation2_.size()) {
        throw DimensionMismatch("isometry with " + std::to_string(signs_.size()) + " signs and " +
                                std::to_string(translation2_.size()) + " translation entries");
    }
    for (int s : signs_) {
        if (s != 1 && s != -1) {
            throw Error("diagonal orthogonal part must have entries +1 or -1");
        }
    }
}

AffineIsometry AffineIsometry::identity(std::size_t n) {
    return AffineIsometry(std::vector<int>(n, 1), std::vector<std::int64_t>(n, 0));
}

AffineIsometry AffineIsometry::unit_translation(std::size_t n, std::size_t i) {
    if (i == 0 || i > n) {
        throw DimensionMismatch("unit vector e_" + std::to_string(i) + " outside dimension " + std::to_string(n));
    }
    std::vector<std::int64_t> t(n, 0);
    t[i - 1] = 2;
    return AffineIsometry(std::vector<int>(n, 1), std::move(t));
}

bool AffineIsometry::is_translation() const noexcept {
    return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s == 1; });
}

AffineIsometry AffineIsometry::inverse() const {
    std::vector<std::int64_t> t(translation2_.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = -signs_[k] * translation2_[k];
    }
    return AffineIsometry(signs_, std::move(t));
}

std::string AffineIsometry::to_string() const {
    std::string out = "(diag(";
    for (std::size_t k = 0; k < signs_.size(); ++k) {
        out += (k ? ", " : "") + std::to_string(signs_[k]);
    }
    out += "), (";
    for (std::size_t k = 0; k < translation2_.size(); ++k) {
        out += (k ? ", " : "") + half_integer(translation2_[k]);
    }
    out += "))";
    return out;
}

AffineIsometry compose(const AffineIsometry& s, const AffineIsometry& t) {
    if (s.dimension() != t.dimension()) {
        throw DimensionMismatch("composing isometries of dimensions " + std::to_string(s.dimension()) + " and " +
                                std::to_string(t.dimension()));
    }
    const std::size_t n = s.dimension();
    std::vector<int> signs(n);
    std::vector<std::int64_t> translation(n);
    for (std::size_t k = 0; k < n; ++k) {
        signs[k] = s.signs()[k] * t.signs()[k];
        translation[k] = s.signs()[k] * t.doubled_translation()[k] + s.doubled_translation()[k];
    }
    return AffineIsometry(std::move(signs), std::move(translation));
}

std::vector<AffineIsometry> generators(const BottMatrix& a) {
    const std::size_t n = a.dimension();
    std::vector<AffineIsometry> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> signs(n, 1);
        for (std::size_t k = i + 1; k < n; ++k) {
            if (a.bit(i, k)) {
                signs[k] = -1;
            }
        }
        std::vector<std::int64_t> t(n, 0);
        t[i] = 1;
        out.emplace_back(std::move(signs), std::move(t));
    }
    return out;
}

} // namespace rbk
