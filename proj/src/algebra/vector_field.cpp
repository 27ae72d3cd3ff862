#include "nilcenter/algebra/vector_field.hpp"

#include "nilcenter/errors.hpp"

#include <vector>

namespace nilcenter {

std::string to_string(FieldForm f) {
    switch (f) {
    case FieldForm::General: return "general";
    case FieldForm::CanonicalPlus: return "canonical-plus";
    case FieldForm::CanonicalMinus: return "canonical-minus";
    case FieldForm::QhFamily: return "qh-family";
    }
    return "general";
}

FieldForm field_form_from_string(const std::string& s) {
    if (s == "general") return FieldForm::General;
    if (s == "canonical-plus") return FieldForm::CanonicalPlus;
    if (s == "canonical-minus") return FieldForm::CanonicalMinus;
    if (s == "qh-family") return FieldForm::QhFamily;
    throw DomainError("unknown field form '" + s + "'");
}

VectorField::VectorField(PlanePoly dx_, PlanePoly dy_, FieldForm f, std::optional<int> n_)
    : dx(std::move(dx_)), dy(std::move(dy_)), form(f), n(n_) {}

int VectorField::y_sign() const {
    auto c = dx.coeff(0, 1).as_constant();
    bool ok = c && (*c == 1 || *c == -1) && dx.coeff(0, 0).is_zero() && dx.coeff(1, 0).is_zero() &&
              dy.coeff(0, 0).is_zero() && dy.coeff(1, 0).is_zero() && dy.coeff(0, 1).is_zero();
    if (!ok) throw DomainError("linear part is not the nilpotent block (+-y, 0)");
    return *c == 1 ? 1 : -1;
}

PlanePoly VectorField::P() const {
    PlanePoly p = dx.untruncated();
    p.set_term(0, 1, ParamPoly());
    return p;
}

PlanePoly VectorField::divergence() const { return dx.diff_x() + dy.diff_y(); }

void VectorField::validate() const {
    int s = y_sign();
    if (form == FieldForm::General) return;
    if (!n || *n < 1) throw DomainError("canonical forms need an Andreev number");
    const int m = *n;
    auto check_weights = [&](const PlanePoly& p, int lo, const char* side) {
        for (const auto& [k, c] : p.terms()) {
            if (k.first == 0 && k.second == 1) continue;
            if (k.first + m * k.second < lo)
                throw DomainError(std::string("term of too low weighted degree on the ") + side + " side");
        }
    };
    switch (form) {
    case FieldForm::CanonicalPlus:
        if (s != 1) throw DomainError("canonical-plus form needs x' = y + ...");
        if (dy.coeff(2 * m - 1, 0) != ParamPoly(-m)) throw DomainError("canonical-plus form needs y' = -n x^(2n-1) + ...");
        check_weights(dx, m, "x'");
        check_weights(dy, 2 * m - 1, "y'");
        break;
    case FieldForm::CanonicalMinus:
        if (s != -1) throw DomainError("canonical-minus form needs x' = -y + ...");
        if (dy.coeff(2 * m - 1, 0) != ParamPoly(1)) throw DomainError("canonical-minus form needs y' = x^(2n-1) + ...");
        check_weights(dx, m, "x'");
        check_weights(dy, 2 * m - 1, "y'");
        break;
    case FieldForm::QhFamily: {
        if (s != -1) throw DomainError("quasi-homogeneous family needs x' = -y + ...");
        if (dy != PlanePoly::monomial(2 * m - 1, 0, ParamPoly(1))) throw DomainError("quasi-homogeneous family needs y' = x^(2n-1)");
        for (const auto& [k, c] : dx.terms()) {
            auto [i, j] = k;
            bool ok = (i == 0 && j == 1) || (j == 1 && i >= 1 && i <= m - 1) || (j == 0 && i >= m + 1 && i <= 2 * m - 1);
            if (!ok) throw DomainError("term x^" + std::to_string(i) + "*y^" + std::to_string(j) + " outside the family shape");
        }
        break;
    }
    case FieldForm::General: break;
    }
}

VectorField VectorField::flip_y() const {
    VectorField out = *this;
    out.dx = dx.reflect_y();
    out.dy = -dy.reflect_y();
    out.form = FieldForm::General;
    return out;
}

AlphabetPtr VectorField::alphabet() const { return merge_alphabets(dx.alphabet(), dy.alphabet()); }

VectorField VectorField::substitute_params(const std::map<std::string, Rational>& values) const {
    VectorField out = *this;
    out.dx = dx.substitute_params(values);
    out.dy = dy.substitute_params(values);
    return out;
}

VectorField VectorField::rebase(const AlphabetPtr& a) const {
    VectorField out = *this;
    out.dx = dx.rebase(a);
    out.dy = dy.rebase(a);
    return out;
}

std::string qh_param_name(int i, int j) {
    if (i < 10 && j < 10) return "a" + std::to_string(i) + std::to_string(j);
    return "a" + std::to_string(i) + "_" + std::to_string(j);
}

VectorField qh_family(int n) {
    if (n < 2) throw DomainError("quasi-homogeneous family needs n >= 2");
    std::vector<std::string> names;
    for (int k = 1; k <= n - 1; ++k) names.push_back(qh_param_name(k, 1));
    for (int k = n + 1; k <= 2 * n - 1; ++k) names.push_back(qh_param_name(k, 0));
    auto al = make_alphabet(names);
    PlanePoly dx = PlanePoly::monomial(0, 1, ParamPoly::constant(al, -1));
    for (int k = 1; k <= n - 1; ++k) dx.add_term(k, 1, ParamPoly::variable(al, qh_param_name(k, 1)));
    for (int k = n + 1; k <= 2 * n - 1; ++k) dx.add_term(k, 0, ParamPoly::variable(al, qh_param_name(k, 0)));
    PlanePoly dy = PlanePoly::monomial(2 * n - 1, 0, ParamPoly::constant(al, 1));
    return VectorField(dx, dy, FieldForm::QhFamily, n);
}

VectorField n3_family() {
    auto al = make_alphabet({"mu", "a11", "a21", "a40", "a50"});
    auto v = [&](const char* s) { return ParamPoly::variable(al, s); };
    PlanePoly dx = PlanePoly::monomial(0, 1, ParamPoly::constant(al, -1));
    dx.add_term(3, 0, v("mu"));
    dx.add_term(1, 1, v("a11"));
    dx.add_term(2, 1, v("a21"));
    dx.add_term(4, 0, v("a40"));
    dx.add_term(5, 0, v("a50"));
    PlanePoly dy = PlanePoly::monomial(5, 0, ParamPoly::constant(al, 1));
    dy.add_term(2, 1, v("mu") * Rational(3));
    return VectorField(dx, dy, FieldForm::General, std::nullopt);
}

VectorField n3_family(const Rational& mu, const Rational& a11, const Rational& a21, const Rational& a40,
                      const Rational& a50) {
    auto vf = n3_family().substitute_params({{"mu", mu}, {"a11", a11}, {"a21", a21}, {"a40", a40}, {"a50", a50}});
    vf = vf.rebase(empty_alphabet());
    if (mu == 0) {
        vf.form = FieldForm::QhFamily;
        vf.n = 3;
    }
    return vf;
}

std::map<int, PlanePoly> qh_decompose(const PlanePoly& p, int n) {
    if (n < 1) throw DomainError("weights (1,n) need n >= 1");
    std::map<int, PlanePoly> parts;
    for (const auto& [k, c] : p.terms()) parts[k.first + n * k.second].add_term(k.first, k.second, c);
    return parts;
}

Series1 compose_series(const PlanePoly& p, const Series1& F, int N) {
    Series1 Ft = F.truncated(N);
    if (Ft.order() < N) Ft = Series1(N, Ft.coeffs());
    std::vector<Series1> fpow{Series1::monomial(N, 0, ParamPoly(1))};
    Series1 out(N);
    for (const auto& [k, c] : p.terms()) {
        auto [i, j] = k;
        if (i > N) continue;
        while (static_cast<int>(fpow.size()) <= j) fpow.push_back(fpow.back() * Ft);
        Series1 term = fpow[static_cast<std::size_t>(j)];
        for (int d = N; d >= 0; --d) term.set(d, d - i >= 0 ? term[d - i] * c : ParamPoly());
        out += term;
    }
    return out;
}

Series1 implicit_solve_F(const VectorField& vf, int N) {
    if (N < 2) throw DomainError("implicit solve needs order N >= 2");
    const int s = vf.y_sign();
    const PlanePoly P = vf.P();
    // F <- -s P(x, F): every pass fixes at least one more coefficient since P has zero 1-jet.
    Series1 F(N);
    for (int it = 0; it <= N; ++it) {
        Series1 next = compose_series(P, F, N) * ParamPoly(-s);
        if (next == F) break;
        F = next;
    }
    return F;
}

} // namespace nilcenter
