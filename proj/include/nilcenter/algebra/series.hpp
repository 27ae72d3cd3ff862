#pragma once

#include "nilcenter/algebra/param_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcenter {

/// Truncated univariate power series c_0 + c_1 x + ... + c_N x^N.
/// Operations never look past order N; mixing orders keeps the smaller one.
class Series1 {
public:
    explicit Series1(int order = 0);
    Series1(int order, std::vector<ParamPoly> coeffs);

    static Series1 monomial(int order, int k, const ParamPoly& c);

    int order() const noexcept { return order_; }
    const ParamPoly& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    void set(int k, const ParamPoly& v);
    const std::vector<ParamPoly>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    /// Index of the first nonzero coefficient.
    std::optional<int> valuation() const;

    Series1 truncated(int order) const;

    Series1& operator+=(const Series1& o);
    Series1& operator-=(const Series1& o);
    friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
    friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
    friend Series1 operator*(const Series1& a, const Series1& b);
    friend Series1 operator*(Series1 a, const ParamPoly& c);
    Series1 operator-() const;

    Series1 pow(unsigned e) const;
    Series1 derivative() const;

    friend bool operator==(const Series1& a, const Series1& b);

    std::string to_string() const;

private:
    int order_;
    std::vector<ParamPoly> c_;
};

} // namespace nilcenter
