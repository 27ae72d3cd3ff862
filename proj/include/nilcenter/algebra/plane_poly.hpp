#pragma once

#include "nilcenter/algebra/param_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace nilcenter {

/// Weighted-degree truncation: terms x^i y^j with wx*i + wy*j > cap are dropped.
struct Truncation {
    int wx = 1;
    int wy = 1;
    int cap = 0;

    int weight(int i, int j) const noexcept { return wx * i + wy * j; }
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// Sparse polynomial in (x, y) with ParamPoly coefficients.
///
/// An optional Truncation is carried along: every arithmetic result drops
/// terms above the cap. Combining two truncated operands requires matching
/// weights and keeps the smaller cap.
class PlanePoly {
public:
    using Key = std::pair<int, int>;
    using TermMap = std::map<Key, ParamPoly>;

    PlanePoly() = default;
    explicit PlanePoly(std::optional<Truncation> trunc) : trunc_(trunc) {}

    static PlanePoly monomial(int i, int j, const ParamPoly& c);
    static PlanePoly x() { return monomial(1, 0, ParamPoly(1)); }
    static PlanePoly y() { return monomial(0, 1, ParamPoly(1)); }
    static PlanePoly constant(const ParamPoly& c) { return monomial(0, 0, c); }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    ParamPoly coeff(int i, int j) const;
    void add_term(int i, int j, const ParamPoly& c);
    void set_term(int i, int j, const ParamPoly& c);

    const std::optional<Truncation>& truncation() const noexcept { return trunc_; }
    PlanePoly truncated(const Truncation& t) const;
    PlanePoly untruncated() const;

    PlanePoly& operator+=(const PlanePoly& o);
    PlanePoly& operator-=(const PlanePoly& o);
    PlanePoly& operator*=(const ParamPoly& c);
    friend PlanePoly operator+(PlanePoly a, const PlanePoly& b) { return a += b; }
    friend PlanePoly operator-(PlanePoly a, const PlanePoly& b) { return a -= b; }
    friend PlanePoly operator*(const PlanePoly& a, const PlanePoly& b);
    friend PlanePoly operator*(PlanePoly a, const ParamPoly& c) { return a *= c; }
    friend PlanePoly operator*(const ParamPoly& c, PlanePoly a) { return a *= c; }
    PlanePoly operator-() const;

    PlanePoly pow(unsigned e) const;
    PlanePoly diff_x() const;
    PlanePoly diff_y() const;

    /// p(xv, yv). The result carries the truncation of the substituted values.
    PlanePoly compose(const PlanePoly& xv, const PlanePoly& yv) const;

    /// Ordinary-degree-d homogeneous part.
    PlanePoly homogeneous_part(int d) const;
    /// Terms with (wx,wy)-weighted degree exactly k.
    PlanePoly weighted_part(int wx, int wy, int k) const;
    int total_degree() const;
    /// Smallest total degree of a stored term; nullopt for the zero polynomial.
    std::optional<int> min_total_degree() const;

    /// p(x, -y) and p(-x, y).
    PlanePoly reflect_y() const;
    PlanePoly reflect_x() const;

    PlanePoly substitute_params(const std::map<std::string, Rational>& values) const;
    PlanePoly substitute_param(std::string_view name, const ParamPoly& value) const;
    PlanePoly rebase(const AlphabetPtr& alphabet) const;
    /// Union of the coefficient alphabets.
    AlphabetPtr alphabet() const;
    bool is_numeric() const;

    friend bool operator==(const PlanePoly& a, const PlanePoly& b);
    friend bool operator!=(const PlanePoly& a, const PlanePoly& b) { return !(a == b); }

    /// Expression text accepted by the input parser, e.g. "-y + a11*x*y + 2*x^4".
    std::string to_string() const;

private:
    void prune();
    static std::optional<Truncation> combine(const std::optional<Truncation>& a, const std::optional<Truncation>& b);

    TermMap terms_;
    std::optional<Truncation> trunc_;
};

std::ostream& operator<<(std::ostream& os, const PlanePoly& p);

} // namespace nilcenter
