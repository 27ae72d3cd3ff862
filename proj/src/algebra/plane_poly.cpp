#include "nilcenter/algebra/plane_poly.hpp"

#include "nilcenter/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace nilcenter {

PlanePoly PlanePoly::monomial(int i, int j, const ParamPoly& c) {
    PlanePoly p;
    p.add_term(i, j, c);
    return p;
}

ParamPoly PlanePoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? ParamPoly() : it->second;
}

void PlanePoly::add_term(int i, int j, const ParamPoly& c) {
    if (i < 0 || j < 0) throw DomainError("negative exponent in plane polynomial");
    if (c.is_zero()) return;
    if (trunc_ && trunc_->weight(i, j) > trunc_->cap) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void PlanePoly::set_term(int i, int j, const ParamPoly& c) {
    terms_.erase({i, j});
    add_term(i, j, c);
}

void PlanePoly::prune() {
    if (!trunc_) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (trunc_->weight(it->first.first, it->first.second) > trunc_->cap) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

std::optional<Truncation> PlanePoly::combine(const std::optional<Truncation>& a, const std::optional<Truncation>& b) {
    if (!a) return b;
    if (!b) return a;
    if (a->wx != b->wx || a->wy != b->wy) throw DomainError("combining polynomials truncated under different gradings");
    return Truncation{a->wx, a->wy, std::min(a->cap, b->cap)};
}

PlanePoly PlanePoly::truncated(const Truncation& t) const {
    PlanePoly out = *this;
    out.trunc_ = combine(trunc_, t);
    if (trunc_ && (trunc_->wx != t.wx || trunc_->wy != t.wy)) out.trunc_ = t;
    out.prune();
    return out;
}

PlanePoly PlanePoly::untruncated() const {
    PlanePoly out = *this;
    out.trunc_.reset();
    return out;
}

PlanePoly& PlanePoly::operator+=(const PlanePoly& o) {
    trunc_ = combine(trunc_, o.trunc_);
    prune();
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

PlanePoly& PlanePoly::operator-=(const PlanePoly& o) {
    trunc_ = combine(trunc_, o.trunc_);
    prune();
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

PlanePoly& PlanePoly::operator*=(const ParamPoly& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

PlanePoly operator*(const PlanePoly& a, const PlanePoly& b) {
    PlanePoly out(PlanePoly::combine(a.trunc_, b.trunc_));
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            int i = ka.first + kb.first;
            int j = ka.second + kb.second;
            if (out.trunc_ && out.trunc_->weight(i, j) > out.trunc_->cap) continue;
            out.add_term(i, j, ca * cb);
        }
    return out;
}

PlanePoly PlanePoly::operator-() const {
    PlanePoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

PlanePoly PlanePoly::pow(unsigned e) const {
    PlanePoly result(trunc_);
    result.add_term(0, 0, ParamPoly(1));
    PlanePoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

PlanePoly PlanePoly::diff_x() const {
    PlanePoly out(trunc_);
    for (const auto& [k, c] : terms_)
        if (k.first > 0) out.add_term(k.first - 1, k.second, c * Rational(k.first));
    return out;
}

PlanePoly PlanePoly::diff_y() const {
    PlanePoly out(trunc_);
    for (const auto& [k, c] : terms_)
        if (k.second > 0) out.add_term(k.first, k.second - 1, c * Rational(k.second));
    return out;
}

PlanePoly PlanePoly::compose(const PlanePoly& xv, const PlanePoly& yv) const {
    auto tr = combine(xv.trunc_, yv.trunc_);
    PlanePoly out(tr);
    std::map<int, PlanePoly> xpow, ypow;
    auto one = [&] {
        PlanePoly p(tr);
        p.add_term(0, 0, ParamPoly(1));
        return p;
    };
    xpow.emplace(0, one());
    ypow.emplace(0, one());
    auto get = [&](std::map<int, PlanePoly>& cache, const PlanePoly& base, int e) -> const PlanePoly& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        int have = cache.rbegin()->first;
        PlanePoly cur = cache.rbegin()->second;
        for (int k = have + 1; k <= e; ++k) {
            cur = cur * base;
            cache.emplace(k, cur);
        }
        return cache.at(e);
    };
    for (const auto& [k, c] : terms_) {
        const PlanePoly& xp = get(xpow, xv, k.first);
        const PlanePoly& yp = get(ypow, yv, k.second);
        out += (xp * yp) * c;
    }
    return out;
}

PlanePoly PlanePoly::homogeneous_part(int d) const {
    PlanePoly out;
    for (const auto& [k, c] : terms_)
        if (k.first + k.second == d) out.terms_.emplace(k, c);
    return out;
}

PlanePoly PlanePoly::weighted_part(int wx, int wy, int k) const {
    PlanePoly out;
    for (const auto& [key, c] : terms_)
        if (wx * key.first + wy * key.second == k) out.terms_.emplace(key, c);
    return out;
}

int PlanePoly::total_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

std::optional<int> PlanePoly::min_total_degree() const {
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
        int t = k.first + k.second;
        if (!d || t < *d) d = t;
    }
    return d;
}

PlanePoly PlanePoly::reflect_y() const {
    PlanePoly out = *this;
    for (auto& [k, c] : out.terms_)
        if (k.second % 2) c = -c;
    return out;
}

PlanePoly PlanePoly::reflect_x() const {
    PlanePoly out = *this;
    for (auto& [k, c] : out.terms_)
        if (k.first % 2) c = -c;
    return out;
}

PlanePoly PlanePoly::substitute_params(const std::map<std::string, Rational>& values) const {
    PlanePoly out(trunc_);
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c.evaluate(values));
    return out;
}

PlanePoly PlanePoly::substitute_param(std::string_view name, const ParamPoly& value) const {
    PlanePoly out(trunc_);
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c.substitute(name, value));
    return out;
}

PlanePoly PlanePoly::rebase(const AlphabetPtr& alphabet) const {
    PlanePoly out = *this;
    for (auto& [k, c] : out.terms_) c = c.rebase(alphabet);
    return out;
}

AlphabetPtr PlanePoly::alphabet() const {
    AlphabetPtr a = empty_alphabet();
    for (const auto& [k, c] : terms_) a = merge_alphabets(a, c.alphabet());
    return a;
}

bool PlanePoly::is_numeric() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

bool operator==(const PlanePoly& a, const PlanePoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

namespace {

void write_monomial(std::ostream& os, int i, int j, bool need_star) {
    if (i > 0) {
        if (need_star) os << "*";
        os << "x";
        if (i > 1) os << "^" << i;
        need_star = true;
    }
    if (j > 0) {
        if (need_star) os << "*";
        os << "y";
        if (j > 1) os << "^" << j;
    }
}

} // namespace

std::string PlanePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Ascending total degree, then descending power of x.
    std::vector<std::pair<Key, const ParamPoly*>> order;
    for (const auto& [k, c] : terms_) order.emplace_back(k, &c);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da < db;
        return a.first.first > b.first.first;
    });
    for (const auto& [k, cp] : order) {
        const ParamPoly& c = *cp;
        bool monic_part = k.first > 0 || k.second > 0;
        auto cval = c.as_constant();
        if (cval) {
            Rational mag = abs(*cval);
            if (first) {
                if (*cval < 0) os << "-";
            } else {
                os << (*cval < 0 ? " - " : " + ");
            }
            bool star = false;
            if (mag != 1 || !monic_part) {
                os << mag.get_str();
                star = true;
            }
            write_monomial(os, k.first, k.second, star);
        } else {
            if (!first) os << " + ";
            os << "(" << c.to_string() << ")";
            write_monomial(os, k.first, k.second, true);
        }
        first = false;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const PlanePoly& p) { return os << p.to_string(); }

} // namespace nilcenter
