#pragma once

#include "nilcenter/algebra/vector_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilcenter {

/// Parsed input file.
///
///   # comment
///   param a11, a40;
///   form = qh-family;   n = 3;
///   digits = 40; kmax = 7; order = 14;
///   dx = -y + a11*x*y + a40*x^4;
///   dy = x^5;
struct InputSpec {
    std::vector<std::string> params;
    PlanePoly dx;
    PlanePoly dy;
    FieldForm form = FieldForm::General;
    std::optional<int> n;
    std::optional<int> digits;
    std::optional<int> kmax;
    std::optional<int> order;

    VectorField field() const;
    AlphabetPtr alphabet() const;
    /// Replaces the listed parameters by values and drops them from `params`.
    InputSpec with_values(const std::map<std::string, Rational>& values) const;

    friend bool operator==(const InputSpec& a, const InputSpec& b);
};

struct ParseOptions {
    bool allow_float = false; // accept decimal literals (converted exactly)
};

/// Throws ParseError with a 1-based line and column.
InputSpec parse_input(std::string_view text, const ParseOptions& opts = {});

/// Polynomial expression in x, y and the given parameters.
PlanePoly parse_polynomial(std::string_view text, const std::vector<std::string>& params = {},
                           const ParseOptions& opts = {});

/// Canonical text; parse_input(serialize_input(s)) == s.
std::string serialize_input(const InputSpec& spec);

/// "a=1/2,b=-3" -> map. Throws ParseError.
std::map<std::string, Rational> parse_assignments(std::string_view text, const ParseOptions& opts = {});

} // namespace nilcenter
