#include "nilcenter/algebra/param_poly.hpp"

#include "nilcenter/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace nilcenter {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw DomainError("duplicate parameter name: " + names_[i]);
}

std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const Alphabet>(std::move(names));
}

AlphabetPtr empty_alphabet() {
    static const AlphabetPtr empty = std::make_shared<const Alphabet>();
    return empty;
}

AlphabetPtr merge_alphabets(const AlphabetPtr& a, const AlphabetPtr& b) {
    if (a == b || b->size() == 0) return a;
    if (a->size() == 0) return b;
    std::vector<std::string> names = a->names();
    bool grew = false;
    for (const auto& n : b->names())
        if (!a->contains(n)) {
            names.push_back(n);
            grew = true;
        }
    return grew ? make_alphabet(std::move(names)) : a;
}

namespace {

bool names_subset(const Alphabet& small, const Alphabet& big) {
    return std::all_of(small.names().begin(), small.names().end(),
                       [&](const std::string& n) { return big.contains(n); });
}

} // namespace

namespace {

// gmpxx leaves Rational(p, q) unreduced; every coefficient entering a polynomial is reduced.
Rational canonical(Rational c) {
    c.canonicalize();
    return c;
}

} // namespace

ParamPoly::ParamPoly() : alphabet_(empty_alphabet()) {}

ParamPoly::ParamPoly(const Rational& c) : alphabet_(empty_alphabet()) {
    if (c != 0) terms_.emplace(Exponents{}, canonical(c));
}

ParamPoly::ParamPoly(long c) : ParamPoly(Rational(c)) {}

ParamPoly::ParamPoly(AlphabetPtr alphabet) : alphabet_(alphabet ? std::move(alphabet) : empty_alphabet()) {}

ParamPoly ParamPoly::constant(AlphabetPtr alphabet, const Rational& c) {
    ParamPoly p(std::move(alphabet));
    if (c != 0) p.terms_.emplace(Exponents(p.alphabet_->size(), 0), canonical(c));
    return p;
}

ParamPoly ParamPoly::variable(AlphabetPtr alphabet, std::string_view name) {
    ParamPoly p(std::move(alphabet));
    auto idx = p.alphabet_->index_of(name);
    if (!idx) throw DomainError("unknown parameter: " + std::string(name));
    Exponents e(p.alphabet_->size(), 0);
    e[*idx] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

ParamPoly ParamPoly::monomial(AlphabetPtr alphabet, Exponents exps, const Rational& c) {
    ParamPoly p(std::move(alphabet));
    if (exps.size() != p.alphabet_->size()) throw DomainError("exponent vector does not match alphabet");
    if (c != 0) p.terms_.emplace(std::move(exps), canonical(c));
    return p;
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t k) { return k == 0; });
}

std::optional<Rational> ParamPoly::as_constant() const {
    if (!is_constant()) return std::nullopt;
    return constant_term();
}

Rational ParamPoly::constant_term() const {
    auto it = terms_.find(Exponents(alphabet_->size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

void ParamPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, canonical(c));
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

AlphabetPtr ParamPoly::unify(const ParamPoly& a, const ParamPoly& b) {
    if (a.alphabet_ == b.alphabet_) return a.alphabet_;
    if (*a.alphabet_ == *b.alphabet_) return a.alphabet_;
    if (names_subset(*b.alphabet_, *a.alphabet_)) return a.alphabet_;
    if (names_subset(*a.alphabet_, *b.alphabet_)) return b.alphabet_;
    return merge_alphabets(a.alphabet_, b.alphabet_);
}

ParamPoly ParamPoly::rebase(const AlphabetPtr& target) const {
    if (target == alphabet_) return *this;
    std::vector<std::size_t> map(alphabet_->size());
    for (std::size_t i = 0; i < alphabet_->size(); ++i) {
        auto idx = target->index_of(alphabet_->name(i));
        if (idx) {
            map[i] = *idx;
        } else {
            map[i] = static_cast<std::size_t>(-1);
        }
    }
    ParamPoly out(target);
    for (const auto& [e, c] : terms_) {
        Exponents ne(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] == static_cast<std::size_t>(-1))
                throw DomainError("parameter " + alphabet_->name(i) + " missing from target alphabet");
            ne[map[i]] = e[i];
        }
        out.add_term(ne, c);
    }
    return out;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    if (o.terms_.empty()) return *this;
    AlphabetPtr target = unify(*this, o);
    if (target != alphabet_) *this = rebase(target);
    if (o.alphabet_ == alphabet_) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
    } else {
        ParamPoly ob = o.rebase(alphabet_);
        for (const auto& [e, c] : ob.terms_) add_term(e, c);
    }
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) { return *this += -o; }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    AlphabetPtr target = ParamPoly::unify(a, b);
    if (a.terms_.empty() || b.terms_.empty()) return ParamPoly(target);
    ParamPoly ra, rb;
    const ParamPoly* x = &a;
    const ParamPoly* y = &b;
    if (a.alphabet_ != target) {
        ra = a.rebase(target);
        x = &ra;
    }
    if (b.alphabet_ != target) {
        rb = b.rebase(target);
        y = &rb;
    }
    ParamPoly out(target);
    ParamPoly::Exponents e(target->size());
    Rational c;
    for (const auto& [ea, ca] : x->terms_) {
        for (const auto& [eb, cb] : y->terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            c = ca * cb;
            out.add_term(e, c);
        }
    }
    return out;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) { return *this = *this * o; }

ParamPoly& ParamPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

ParamPoly& ParamPoly::operator/=(const Rational& c) {
    if (c == 0) throw DomainError("division of a polynomial by zero");
    for (auto& [e, v] : terms_) v /= c;
    return *this;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

ParamPoly ParamPoly::pow(unsigned e) const {
    ParamPoly result = constant(alphabet_, 1);
    ParamPoly base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

ParamPoly ParamPoly::substitute(std::string_view name, const ParamPoly& value) const {
    auto idx = alphabet_->index_of(name);
    if (!idx || !depends_on(name)) return *this;
    AlphabetPtr target = unify(*this, value);
    ParamPoly self = rebase(target);
    ParamPoly v = value.rebase(target);
    std::size_t k = *target->index_of(name);
    // Group terms by power of the substituted variable.
    std::map<std::uint32_t, ParamPoly> by_power;
    for (const auto& [e, c] : self.terms_) {
        Exponents rest = e;
        std::uint32_t p = rest[k];
        rest[k] = 0;
        auto [it, ins] = by_power.try_emplace(p, ParamPoly(target));
        it->second.add_term(rest, c);
    }
    ParamPoly out(target);
    ParamPoly vp = constant(target, 1);
    std::uint32_t current = 0;
    for (const auto& [p, coeff] : by_power) {
        while (current < p) {
            vp *= v;
            ++current;
        }
        out += coeff * vp;
    }
    return out;
}

ParamPoly ParamPoly::evaluate(const std::map<std::string, Rational>& values) const {
    ParamPoly out(alphabet_);
    std::vector<std::optional<Rational>> val(alphabet_->size());
    bool any = false;
    for (std::size_t i = 0; i < alphabet_->size(); ++i) {
        auto it = values.find(alphabet_->name(i));
        if (it != values.end()) {
            val[i] = it->second;
            any = true;
        }
    }
    if (!any) return *this;
    for (const auto& [e, c] : terms_) {
        Exponents ne = e;
        Rational v = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!val[i] || e[i] == 0) continue;
            Rational f;
            mpz_pow_ui(f.get_num_mpz_t(), val[i]->get_num_mpz_t(), e[i]);
            mpz_pow_ui(f.get_den_mpz_t(), val[i]->get_den_mpz_t(), e[i]);
            f.canonicalize();
            v *= f;
            ne[i] = 0;
        }
        out.add_term(ne, v);
    }
    return out;
}

unsigned ParamPoly::degree_in(std::string_view name) const {
    auto idx = alphabet_->index_of(name);
    if (!idx) return 0;
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[*idx]);
    return d;
}

unsigned ParamPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (auto k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

bool ParamPoly::depends_on(std::string_view name) const { return degree_in(name) > 0; }

std::vector<std::string> ParamPoly::used_parameters() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < alphabet_->size(); ++i)
        for (const auto& [e, c] : terms_)
            if (e[i] != 0) {
                out.push_back(alphabet_->name(i));
                break;
            }
    return out;
}

std::optional<ParamPoly> ParamPoly::divide_by_power(std::string_view name, unsigned k) const {
    auto idx = alphabet_->index_of(name);
    if (!idx) return k == 0 ? std::optional<ParamPoly>(*this) : std::nullopt;
    ParamPoly out(alphabet_);
    for (const auto& [e, c] : terms_) {
        if (e[*idx] < k) return std::nullopt;
        Exponents ne = e;
        ne[*idx] -= k;
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

bool operator==(const ParamPoly& a, const ParamPoly& b) {
    if (a.alphabet_ == b.alphabet_ || *a.alphabet_ == *b.alphabet_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
}

std::string ParamPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        bool has_var = std::any_of(e.begin(), e.end(), [](std::uint32_t k) { return k != 0; });
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (!has_var || mag != 1) {
            if (mag.get_den() != 1 && has_var) {
                os << "(" << mag.get_str() << ")";
            } else {
                os << mag.get_str();
            }
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << alphabet_->name(i);
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.to_string(); }

} // namespace nilcenter
