#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

// Sparse polynomials over F2 in variables x1..xd, and linear algebra over F2
// on the homogeneous degree-2 piece.
//
// Variable indices are 1-based throughout, matching the printed names x1..xd.

namespace rbk {

using Variable = std::uint32_t;
using Exponent = std::uint32_t;

class Monomial {
public:
    /// The constant monomial 1.
    Monomial() = default;

    /// Builds x_{i1}^{e1} * x_{i2}^{e2} * ...; repeated variables multiply, zero exponents vanish.
    explicit Monomial(std::vector<std::pair<Variable, Exponent>> powers);

    static Monomial variable(Variable index, Exponent exponent = 1);

    std::uint32_t degree() const noexcept { return degree_; }
    Exponent exponent(Variable index) const noexcept;
    /// Largest variable index with a nonzero exponent, 0 for the constant monomial.
    Variable max_variable() const noexcept;

    /// (variable, exponent) pairs sorted by variable; every exponent is positive.
    const std::vector<std::pair<Variable, Exponent>>& powers() const noexcept { return powers_; }

    std::string to_string() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

private:
    std::vector<std::pair<Variable, Exponent>> powers_;
    std::uint32_t degree_ = 0;
};

/// Graded lexicographic order: lower degree first, then the lexicographically
/// larger exponent vector first (x1^2 before x1*x2 before x2^2).
struct GradedLexOrder {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class F2Polynomial {
public:
    /// The zero polynomial.
    F2Polynomial() = default;
    F2Polynomial(Monomial m); // NOLINT(google-explicit-constructor)

    /// Sum of the given monomials; duplicates cancel in pairs.
    static F2Polynomial from_terms(std::vector<Monomial> terms);
    static F2Polynomial one() { return F2Polynomial(Monomial{}); }
    static F2Polynomial variable(Variable index) { return F2Polynomial(Monomial::variable(index)); }

    /// Terms in graded lexicographic order.
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree, -1 for the zero polynomial.
    int degree() const noexcept;
    Variable max_variable() const noexcept;

    /// Rendering such as "1 + x1 + x1*x2 + x2^2"; the zero polynomial prints as "0".
    std::string to_string() const;

    F2Polynomial& operator+=(const F2Polynomial& other);
    friend F2Polynomial operator+(const F2Polynomial& p, const F2Polynomial& q);
    friend F2Polynomial operator*(const F2Polynomial& p, const F2Polynomial& q);
    friend bool operator==(const F2Polynomial& p, const F2Polynomial& q) { return p.terms_ == q.terms_; }

private:
    std::vector<Monomial> terms_;
};

std::ostream& operator<<(std::ostream& os, const Monomial& m);
std::ostream& operator<<(std::ostream& os, const F2Polynomial& p);

inline F2Polynomial poly_add(const F2Polynomial& p, const F2Polynomial& q) { return p + q; }
inline F2Polynomial poly_mul(const F2Polynomial& p, const F2Polynomial& q) { return p * q; }

/// Sum of the terms of degree exactly k.
F2Polynomial homogeneous_part(const F2Polynomial& p, std::uint32_t k);
/// Sum of the terms of degree at most k.
F2Polynomial truncate_degree(const F2Polynomial& p, std::uint32_t k);
/// truncate_degree(p * q, k) without forming the discarded high-degree terms.
F2Polynomial truncated_product(const F2Polynomial& p, const F2Polynomial& q, std::uint32_t k);

/// Coordinates of a homogeneous degree-2 polynomial in d variables.
///
/// Bit layout: the pairs (i, j) with 1 <= i <= j <= d are numbered row by row,
/// (1,1), (1,2), ..., (1,d), (2,2), (2,3), ..., (d,d), so that
/// index(i, j) = (i-1)*d - (i-1)*(i-2)/2 + (j-i). Bit index(i, j) is the
/// coefficient of x_i*x_j. This layout is part of the JSON report contract.
class Deg2Vector {
public:
    using Bits = boost::dynamic_bitset<std::uint64_t>;

    /// Zero vector for polynomials in `variables` variables.
    explicit Deg2Vector(std::size_t variables);
    Deg2Vector(std::size_t variables, Bits bits);

    static std::size_t length_for(std::size_t variables) noexcept { return variables * (variables + 1) / 2; }
    /// Position of x_i*x_j; i and j may be given in either order.
    static std::size_t index_of(Variable i, Variable j, std::size_t variables);
    static std::pair<Variable, Variable> pair_at(std::size_t index, std::size_t variables);

    std::size_t variables() const noexcept { return variables_; }
    std::size_t size() const noexcept { return bits_.size(); }
    const Bits& bits() const noexcept { return bits_; }
    bool test(std::size_t index) const { return bits_.test(index); }
    bool is_zero() const noexcept { return bits_.none(); }
    /// Indices of the set bits, ascending.
    std::vector<std::size_t> support() const;

    Deg2Vector& operator^=(const Deg2Vector& other);
    friend bool operator==(const Deg2Vector& a, const Deg2Vector& b) {
        return a.variables_ == b.variables_ && a.bits_ == b.bits_;
    }

private:
    std::size_t variables_;
    Bits bits_;
};

/// Throws NotHomogeneousDegree2 if some term has degree other than 2 and
/// VariableOutOfRange if some variable index exceeds `variables`.
Deg2Vector deg2_to_vector(const F2Polynomial& p, std::size_t variables);
F2Polynomial vector_to_deg2(const Deg2Vector& v);

/// One elimination step: the residual was xor-ed with basis row `row`.
struct ReductionStep {
    std::size_t row;
    Deg2Vector residual;
};

struct Reduction {
    Deg2Vector residual;
    std::vector<ReductionStep> steps;
    /// Generators whose sum equals the input minus the residual.
    boost::dynamic_bitset<std::uint64_t> combination;

    bool member() const noexcept { return residual.is_zero(); }
};

/// Span of a list of degree-2 vectors, held as a reduced row-echelon basis.
///
/// Each basis row has a pivot at its lowest set bit, pivots increase with the
/// row index, and every pivot column is zero in all other rows. Each row also
/// records which of the original generators sum to it.
class F2RowSpace {
public:
    struct Row {
        Deg2Vector vector;
        std::size_t pivot;
        boost::dynamic_bitset<std::uint64_t> combination;
    };

    /// The zero space.
    explicit F2RowSpace(std::size_t variables);

    /// Throws LengthMismatch if some generator is laid out for a different variable count.
    static F2RowSpace span(std::span<const Deg2Vector> generators, std::size_t variables);

    std::size_t variables() const noexcept { return variables_; }
    std::size_t dimension() const noexcept { return rows_.size(); }
    std::size_t generator_count() const noexcept { return generators_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    /// Reduction of v against the echelon basis, with every elimination step.
    Reduction reduce(const Deg2Vector& v) const;
    bool contains(const Deg2Vector& v) const;

private:
    void insert(Deg2Vector v, std::size_t generator);

    std::size_t variables_;
    std::size_t generators_ = 0;
    std::vector<Row> rows_;
};

/// Throws LengthMismatch if v and the space use different layouts.
inline bool row_space_membership(const F2RowSpace& space, const Deg2Vector& v) { return space.contains(v); }

} // namespace rbk
