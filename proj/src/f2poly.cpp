#include "rbk/f2poly.hpp"

#include <algorithm>
#include <ostream>

#include "rbk/errors.hpp"

namespace rbk {

namespace {

// > 0 when a's exponent vector is lexicographically larger than b's.
int lex_compare(const Monomial& a, const Monomial& b) noexcept {
    auto ia = a.powers().begin();
    auto ib = b.powers().begin();
    const auto ea = a.powers().end();
    const auto eb = b.powers().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) {
            // a has a positive exponent at a variable where b has zero
            return ia->first < ib->first ? 1 : -1;
        }
        if (ia->second != ib->second) {
            return ia->second > ib->second ? 1 : -1;
        }
    }
    if (ia != ea) {
        return 1;
    }
    if (ib != eb) {
        return -1;
    }
    return 0;
}

// Sorts and cancels equal terms in pairs.
std::vector<Monomial> canonicalize(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end(), GradedLexOrder{});
    std::vector<Monomial> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back() == t) {
            out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

} // namespace

Monomial::Monomial(std::vector<std::pair<Variable, Exponent>> powers) {
    std::sort(powers.begin(), powers.end());
    for (const auto& [var, exp] : powers) {
        if (var == 0) {
            throw VariableOutOfRange("variable indices start at 1");
        }
        if (exp == 0) {
            continue;
        }
        if (!powers_.empty() && powers_.back().first == var) {
            powers_.back().second += exp;
        } else {
            powers_.emplace_back(var, exp);
        }
        degree_ += exp;
    }
}

Monomial Monomial::variable(Variable index, Exponent exponent) {
    return Monomial({{index, exponent}});
}

Exponent Monomial::exponent(Variable index) const noexcept {
    auto it = std::lower_bound(powers_.begin(), powers_.end(), std::pair<Variable, Exponent>{index, 0});
    return (it != powers_.end() && it->first == index) ? it->second : 0;
}

Variable Monomial::max_variable() const noexcept {
    return powers_.empty() ? 0 : powers_.back().first;
}

std::string Monomial::to_string() const {
    if (powers_.empty()) {
        return "1";
    }
    std::string out;
    for (const auto& [var, exp] : powers_) {
        if (!out.empty()) {
            out += '*';
        }
        out += 'x';
        out += std::to_string(var);
        if (exp != 1) {
            out += '^';
            out += std::to_string(exp);
        }
    }
    return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.powers_.reserve(a.powers_.size() + b.powers_.size());
    auto ia = a.powers_.begin();
    auto ib = b.powers_.begin();
    while (ia != a.powers_.end() || ib != b.powers_.end()) {
        if (ib == b.powers_.end() || (ia != a.powers_.end() && ia->first < ib->first)) {
            out.powers_.push_back(*ia++);
        } else if (ia == a.powers_.end() || ib->first < ia->first) {
            out.powers_.push_back(*ib++);
        } else {
            out.powers_.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
}

bool GradedLexOrder::operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) {
        return a.degree() < b.degree();
    }
    return lex_compare(a, b) > 0;
}

F2Polynomial::F2Polynomial(Monomial m) { terms_.push_back(std::move(m)); }

F2Polynomial F2Polynomial::from_terms(std::vector<Monomial> terms) {
    F2Polynomial p;
    p.terms_ = canonicalize(std::move(terms));
    return p;
}

int F2Polynomial::degree() const noexcept {
    // terms are sorted by degree
    return terms_.empty() ? -1 : static_cast<int>(terms_.back().degree());
}

Variable F2Polynomial::max_variable() const noexcept {
    Variable v = 0;
    for (const auto& t : terms_) {
        v = std::max(v, t.max_variable());
    }
    return v;
}

std::string F2Polynomial::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) {
            out += " + ";
        }
        out += t.to_string();
    }
    return out;
}

F2Polynomial& F2Polynomial::operator+=(const F2Polynomial& other) {
    std::vector<Monomial> sum;
    sum.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(sum), GradedLexOrder{});
    terms_ = std::move(sum);
    return *this;
}

F2Polynomial operator+(const F2Polynomial& p, const F2Polynomial& q) {
    F2Polynomial r = p;
    r += q;
    return r;
}

F2Polynomial operator*(const F2Polynomial& p, const F2Polynomial& q) {
    std::vector<Monomial> products;
    products.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& a : p.terms_) {
        for (const auto& b : q.terms_) {
            products.push_back(a * b);
        }
    }
    return F2Polynomial::from_terms(std::move(products));
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << m.to_string(); }
std::ostream& operator<<(std::ostream& os, const F2Polynomial& p) { return os << p.to_string(); }

F2Polynomial homogeneous_part(const F2Polynomial& p, std::uint32_t k) {
    std::vector<Monomial> kept;
    for (const auto& t : p.terms()) {
        if (t.degree() == k) {
            kept.push_back(t);
        }
    }
    return F2Polynomial::from_terms(std::move(kept));
}

F2Polynomial truncate_degree(const F2Polynomial& p, std::uint32_t k) {
    std::vector<Monomial> kept;
    for (const auto& t : p.terms()) {
        if (t.degree() <= k) {
            kept.push_back(t);
        }
    }
    return F2Polynomial::from_terms(std::move(kept));
}

F2Polynomial truncated_product(const F2Polynomial& p, const F2Polynomial& q, std::uint32_t k) {
    std::vector<Monomial> products;
    for (const auto& a : p.terms()) {
        for (const auto& b : q.terms()) {
            if (a.degree() + b.degree() <= k) {
                products.push_back(a * b);
            }
        }
    }
    return F2Polynomial::from_terms(std::move(products));
}

// ---------------------------------------------------------------------------

Deg2Vector::Deg2Vector(std::size_t variables) : variables_(variables), bits_(length_for(variables)) {}

Deg2Vector::Deg2Vector(std::size_t variables, Bits bits) : variables_(variables), bits_(std::move(bits)) {
    if (bits_.size() != length_for(variables)) {
        throw LengthMismatch("degree-2 vector for " + std::to_string(variables) + " variables needs " +
                             std::to_string(length_for(variables)) + " bits, got " +
                             std::to_string(bits_.size()));
    }
}

std::size_t Deg2Vector::index_of(Variable i, Variable j, std::size_t variables) {
    if (i > j) {
        std::swap(i, j);
    }
    if (i == 0 || j > variables) {
        throw VariableOutOfRange("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") outside 1.." + std::to_string(variables));
    }
    const std::size_t a = i - 1;
    return a * variables - (a * (a + 1)) / 2 + a + (j - i);
}

std::pair<Variable, Variable> Deg2Vector::pair_at(std::size_t index, std::size_t variables) {
    if (index >= length_for(variables)) {
        throw VariableOutOfRange("degree-2 index " + std::to_string(index) + " out of range");
    }
    Variable i = 1;
    std::size_t row_length = variables;
    while (index >= row_length) {
        index -= row_length;
        --row_length;
        ++i;
    }
    return {i, static_cast<Variable>(i + index)};
}

std::vector<std::size_t> Deg2Vector::support() const {
    std::vector<std::size_t> out;
    for (auto k = bits_.find_first(); k != Bits::npos; k = bits_.find_next(k)) {
        out.push_back(k);
    }
    return out;
}

Deg2Vector& Deg2Vector::operator^=(const Deg2Vector& other) {
    if (other.variables_ != variables_) {
        throw LengthMismatch("degree-2 vectors over different variable counts");
    }
    bits_ ^= other.bits_;
    return *this;
}

Deg2Vector deg2_to_vector(const F2Polynomial& p, std::size_t variables) {
    Deg2Vector::Bits bits(Deg2Vector::length_for(variables));
    for (const auto& t : p.terms()) {
        if (t.degree() != 2) {
            throw NotHomogeneousDegree2("term " + t.to_string() + " has degree " + std::to_string(t.degree()));
        }
        if (t.max_variable() > variables) {
            throw VariableOutOfRange("term " + t.to_string() + " uses a variable beyond x" +
                                     std::to_string(variables));
        }
        const auto& pw = t.powers();
        const Variable i = pw.front().first;
        const Variable j = pw.back().first;
        bits.flip(Deg2Vector::index_of(i, j, variables));
    }
    return Deg2Vector(variables, std::move(bits));
}

F2Polynomial vector_to_deg2(const Deg2Vector& v) {
    std::vector<Monomial> terms;
    for (auto k : v.support()) {
        auto [i, j] = Deg2Vector::pair_at(k, v.variables());
        terms.push_back(Monomial::variable(i) * Monomial::variable(j));
    }
    return F2Polynomial::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------

F2RowSpace::F2RowSpace(std::size_t variables) : variables_(variables) {}

F2RowSpace F2RowSpace::span(std::span<const Deg2Vector> generators, std::size_t variables) {
    F2RowSpace space(variables);
    space.generators_ = generators.size();
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (generators[g].variables() != variables) {
            throw LengthMismatch("generator " + std::to_string(g) + " is laid out for " +
                                 std::to_string(generators[g].variables()) + " variables, expected " +
                                 std::to_string(variables));
        }
        space.insert(generators[g], g);
    }
    return space;
}

void F2RowSpace::insert(Deg2Vector v, std::size_t generator) {
    boost::dynamic_bitset<std::uint64_t> combination(generators_);
    combination.set(generator);
    for (const auto& row : rows_) {
        if (v.test(row.pivot)) {
            v ^= row.vector;
            combination ^= row.combination;
        }
    }
    if (v.is_zero()) {
        return;
    }
    const std::size_t pivot = v.bits().find_first();
    for (auto& row : rows_) {
        if (row.vector.test(pivot)) {
            row.vector ^= v;
            row.combination ^= combination;
        }
    }
    auto pos = std::find_if(rows_.begin(), rows_.end(), [&](const Row& r) { return r.pivot > pivot; });
    rows_.insert(pos, Row{std::move(v), pivot, std::move(combination)});
}

Reduction F2RowSpace::reduce(const Deg2Vector& v) const {
    if (v.variables() != variables_) {
        throw LengthMismatch("vector over " + std::to_string(v.variables()) + " variables, space over " +
                             std::to_string(variables_));
    }
    Reduction out{v, {}, boost::dynamic_bitset<std::uint64_t>(generators_)};
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (out.residual.test(rows_[r].pivot)) {
            out.residual ^= rows_[r].vector;
            out.combination ^= rows_[r].combination;
            out.steps.push_back({r, out.residual});
        }
    }
    return out;
}

bool F2RowSpace::contains(const Deg2Vector& v) const { return reduce(v).member(); }

} // namespace rbk
