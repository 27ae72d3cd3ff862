#include "nilcenter/algebra/series.hpp"

#include "nilcenter/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nilcenter {

Series1::Series1(int order) : order_(order), c_(static_cast<std::size_t>(order + 1)) {
    if (order < 0) throw DomainError("series order must be non-negative");
}

Series1::Series1(int order, std::vector<ParamPoly> coeffs) : Series1(order) {
    for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) c_[k] = std::move(coeffs[k]);
}

Series1 Series1::monomial(int order, int k, const ParamPoly& c) {
    Series1 s(order);
    if (k <= order) s.c_[static_cast<std::size_t>(k)] = c;
    return s;
}

void Series1::set(int k, const ParamPoly& v) {
    if (k < 0) throw DomainError("negative series index");
    if (k <= order_) c_[static_cast<std::size_t>(k)] = v;
}

bool Series1::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const ParamPoly& p) { return p.is_zero(); });
}

std::optional<int> Series1::valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return std::nullopt;
}

Series1 Series1::truncated(int order) const {
    Series1 s(std::min(order, order_));
    for (int k = 0; k <= s.order_; ++k) s.c_[k] = c_[k];
    return s;
}

Series1& Series1::operator+=(const Series1& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
}

Series1& Series1::operator-=(const Series1& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
}

Series1 operator*(const Series1& a, const Series1& b) {
    Series1 r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; i + j <= r.order_; ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return r;
}

Series1 operator*(Series1 a, const ParamPoly& c) {
    for (auto& v : a.c_) v *= c;
    return a;
}

Series1 Series1::operator-() const {
    Series1 r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Series1 Series1::pow(unsigned e) const {
    Series1 result = monomial(order_, 0, ParamPoly(1));
    Series1 base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

Series1 Series1::derivative() const {
    Series1 r(std::max(order_ - 1, 0));
    for (int k = 1; k <= order_; ++k) r.c_[k - 1] = c_[k] * Rational(k);
    return r;
}

bool operator==(const Series1& a, const Series1& b) {
    int m = std::max(a.order_, b.order_);
    for (int k = 0; k <= m; ++k) {
        ParamPoly x = k <= a.order_ ? a.c_[k] : ParamPoly();
        ParamPoly y = k <= b.order_ ? b.c_[k] : ParamPoly();
        if (x != y) return false;
    }
    return true;
}

std::string Series1::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[k].to_string() << ")";
        if (k > 0) os << "*x^" << k;
        first = false;
    }
    if (first) os << "0";
    os << " + O(x^" << order_ + 1 << ")";
    return os.str();
}

} // namespace nilcenter
