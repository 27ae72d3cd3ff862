#pragma once

#include "nilcenter/algebra/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace nilcenter {

// Expression templates are off so that `auto` and deduced lambda returns never hold dangling operands.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

/// Sets the default decimal precision of Real for the current scope.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// Binary precision used for a given number of decimal digits (with guard bits).
inline long digits_to_bits(int digits) { return static_cast<long>(digits * 3.3219280948873623) + 16; }

Real to_real(const Rational& q);

/// Nearest rational with denominator below 10^digits (continued fractions).
Rational rationalize(const Real& x, int digits);

/// Default working precision: NILCENTER_DIGITS if set and valid, otherwise 30.
int default_digits();

std::string to_string(const Real& x, int digits);

} // namespace nilcenter
