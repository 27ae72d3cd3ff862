#pragma once

#include "nilcenter/algebra/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilcenter {

/// Ordered list of parameter names. Shared and immutable once built.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);
AlphabetPtr empty_alphabet();

/// Alphabet holding the names of `a` followed by those of `b` not already in `a`.
AlphabetPtr merge_alphabets(const AlphabetPtr& a, const AlphabetPtr& b);

/// Multivariate polynomial with exact rational coefficients in a declared
/// parameter alphabet. Zero coefficients are never stored; terms iterate in
/// lexicographic order of their exponent vectors.
///
/// Binary operations on polynomials over different alphabets succeed when one
/// alphabet's names are contained in the other's; the result lives in the
/// larger alphabet.
class ParamPoly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, Rational>;

    ParamPoly();
    ParamPoly(const Rational& c); // NOLINT: implicit constant
    ParamPoly(long c);            // NOLINT
    explicit ParamPoly(AlphabetPtr alphabet);

    static ParamPoly constant(AlphabetPtr alphabet, const Rational& c);
    static ParamPoly variable(AlphabetPtr alphabet, std::string_view name);
    static ParamPoly monomial(AlphabetPtr alphabet, Exponents exps, const Rational& c);

    const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Value when the polynomial has no parameter dependence.
    std::optional<Rational> as_constant() const;
    Rational constant_term() const;

    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);
    ParamPoly& operator*=(const ParamPoly& o);
    ParamPoly& operator*=(const Rational& c);
    ParamPoly& operator/=(const Rational& c);

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(ParamPoly a, const Rational& c) { return a *= c; }
    friend ParamPoly operator*(const Rational& c, ParamPoly a) { return a *= c; }
    friend ParamPoly operator/(ParamPoly a, const Rational& c) { return a /= c; }
    ParamPoly operator-() const;

    ParamPoly pow(unsigned e) const;

    /// Replaces parameter `name` by `value` everywhere.
    ParamPoly substitute(std::string_view name, const ParamPoly& value) const;
    /// Substitutes numeric values for the listed parameters; others stay symbolic.
    ParamPoly evaluate(const std::map<std::string, Rational>& values) const;
    /// Same polynomial expressed over `target`, which must contain every used name.
    ParamPoly rebase(const AlphabetPtr& target) const;

    unsigned degree_in(std::string_view name) const;
    unsigned total_degree() const;
    bool depends_on(std::string_view name) const;
    /// Names of parameters that actually occur.
    std::vector<std::string> used_parameters() const;

    /// Exact division by the monomial var^k; nullopt when not divisible.
    std::optional<ParamPoly> divide_by_power(std::string_view name, unsigned k) const;

    friend bool operator==(const ParamPoly& a, const ParamPoly& b);
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

    /// Human readable form, e.g. "2*a11*a40 + 2*a50". Deterministic.
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);
    static AlphabetPtr unify(const ParamPoly& a, const ParamPoly& b);

    AlphabetPtr alphabet_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const ParamPoly& p);

} // namespace nilcenter
