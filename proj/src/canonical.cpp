#include "nilcenter/canonical.hpp"

#include "nilcenter/errors.hpp"

#include <cmath>

namespace nilcenter {

std::string to_string(SignConvention s) { return s == SignConvention::Plus ? "plus" : "minus"; }

RealTerms CanonicalSystem::full_dx() const {
    RealTerms t = coeffs_a;
    t[{0, 1}] += Real(sign == SignConvention::Plus ? 1 : -1);
    t[{n, 0}] += mu;
    return t;
}

RealTerms CanonicalSystem::full_dy() const {
    RealTerms t = coeffs_b;
    t[{2 * n - 1, 0}] += Real(sign == SignConvention::Plus ? -n : 1);
    t[{n - 1, 1}] += mu * n;
    return t;
}

void CanonicalSystem::validate() const {
    if (n < 2) throw DomainError("canonical system needs n >= 2");
    for (const auto& [k, c] : coeffs_a) {
        if (k.first + n * k.second < n + 1)
            throw DomainError("x' coefficient (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                              ") below weighted degree n+1");
    }
    for (const auto& [k, c] : coeffs_b) {
        if (k.first + n * k.second < 2 * n)
            throw DomainError("y' coefficient (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                              ") below weighted degree 2n");
    }
}

VectorField CanonicalSystem::to_field(int rational_digits) const {
    auto convert = [&](const RealTerms& t) {
        PlanePoly p;
        for (const auto& [k, c] : t) {
            Rational q = rationalize(c, rational_digits);
            if (q != 0) p.add_term(k.first, k.second, ParamPoly(q));
        }
        return p;
    };
    return VectorField(convert(full_dx()), convert(full_dy()),
                       sign == SignConvention::Plus ? FieldForm::CanonicalPlus : FieldForm::CanonicalMinus, n);
}

int default_canonical_cap(int n, int kmax) { return std::max(2 * (2 * n - 1), 2 * n + kmax - 2); }

namespace {

Rational const_coeff(const PlanePoly& p, int i, int j) {
    auto c = p.coeff(i, j).as_constant();
    if (!c) throw SymbolicError("canonical form requires numeric coefficients");
    return *c;
}

PlanePoly series_to_poly(const Series1& s, const Truncation& tr) {
    PlanePoly p(tr);
    for (int k = 0; k <= s.order(); ++k) {
        if (!s[k].is_zero()) p.add_term(k, 0, s[k]);
    }
    return p;
}

} // namespace

CanonicalSystem to_canonical(const VectorField& vf, const MonodromyReport& report, int cap, int digits) {
    if (report.verdict == MonodromyVerdict::UndecidedSymbolic)
        throw DomainError("canonical form needs a decided monodromy report");
    if (!is_monodromic(report.verdict)) throw DomainError("canonical form needs a monodromic singular point");
    if (!report.n) throw DomainError("monodromy report carries no Andreev number");
    const int n = *report.n;
    if (n < 2) throw DomainError("Andreev number n = 1 is not a nilpotent normal form");
    if (!vf.is_numeric()) throw SymbolicError("canonical form requires numeric coefficients");
    if (cap <= 0) cap = default_canonical_cap(n);
    if (cap < 2 * n - 1) throw std::invalid_argument("canonical cap below 2n-1");

    const bool flip = vf.y_sign() < 0;
    VectorField g = flip ? vf.flip_y() : vf;
    const Truncation tr{1, n, cap};

    // Stage 1: Y = y - F(x), with F the solution of y + P(x, y) = 0.
    Series1 F = implicit_solve_F(g, cap);
    PlanePoly X = PlanePoly::x().truncated(tr);
    PlanePoly Fp = series_to_poly(F, tr);
    PlanePoly dF = series_to_poly(F.derivative(), tr);
    PlanePoly xdot = g.dx.compose(X, PlanePoly::y().truncated(tr) + Fp);
    PlanePoly Ydot = g.dy.compose(X, PlanePoly::y().truncated(tr) + Fp) - dF * xdot;

    const Rational a = const_coeff(Ydot, 2 * n - 1, 0);
    const Rational bt = const_coeff(Ydot, n - 1, 1);
    if (a >= 0) throw DomainError("leading coefficient of f is not negative after the shift");

    // Stage 2: Z = Y - c x^n with c = b/(2n).
    const Rational c = bt / Rational(2 * n);
    PlanePoly cxn = PlanePoly::monomial(n, 0, ParamPoly(c)).truncated(tr);
    PlanePoly Zs = PlanePoly::y().truncated(tr) + cxn;
    PlanePoly xdot2 = xdot.compose(X, Zs);
    PlanePoly Zdot =
        Ydot.compose(X, Zs) - PlanePoly::monomial(n - 1, 0, ParamPoly(c * n)).truncated(tr) * xdot2;

    const Rational delta = bt * bt + a * Rational(4 * n);
    const Rational A = delta / Rational(4 * n * n);
    if (A >= 0) throw DomainError("Delta is not negative; no canonical form");

    // Exact checks of the fixed part and of the weighted filtration.
    if (const_coeff(xdot2, 0, 1) != 1 || const_coeff(xdot2, n, 0) != c)
        throw std::logic_error("canonical shift: unexpected leading part of x'");
    if (const_coeff(Zdot, 2 * n - 1, 0) != A * n || const_coeff(Zdot, n - 1, 1) != bt / 2)
        throw std::logic_error("canonical shift: unexpected leading part of y'");

    CanonicalSystem cs;
    cs.n = n;
    cs.sign = SignConvention::Plus;
    cs.digits = digits;
    cs.truncation = cap;
    cs.flipped_y = flip;
    PrecisionScope scope(digits + 5);
    Real absA = abs(to_real(A));
    Real s = pow(absA, Real(1) / Real(2 * (n - 1)));
    cs.mu = to_real(c) / sqrt(absA);
    auto scaled = [&](const Rational& k, int i, int j) { return to_real(k) * pow(s, Real(1 - i - j)); };
    for (const auto& [key, coeff] : xdot2.terms()) {
        auto [i, j] = key;
        if ((i == 0 && j == 1) || (i == n && j == 0)) continue;
        if (i + n * j < n + 1) throw std::logic_error("canonical shift: x' term below weighted degree n+1");
        cs.coeffs_a[key] = scaled(*coeff.as_constant(), i, j);
    }
    for (const auto& [key, coeff] : Zdot.terms()) {
        auto [i, j] = key;
        if ((i == 2 * n - 1 && j == 0) || (i == n - 1 && j == 1)) continue;
        if (i + n * j < 2 * n) throw std::logic_error("canonical shift: y' term below weighted degree 2n");
        cs.coeffs_b[key] = scaled(*coeff.as_constant(), i, j);
    }
    return cs;
}

CanonicalSystem rescale(const CanonicalSystem& cs) {
    if (cs.sign != SignConvention::Plus) throw DomainError("rescale expects the plus convention");
    PrecisionScope scope(cs.digits + 5);
    const int n = cs.n;
    Real sigma = pow(Real(n), Real(1) / Real(2 * n - 2));
    CanonicalSystem out = cs;
    out.sign = SignConvention::Minus;
    out.mu = cs.mu / sqrt(Real(n));
    out.coeffs_a.clear();
    out.coeffs_b.clear();
    for (const auto& [k, c] : cs.coeffs_a) {
        Real v = c * pow(sigma, Real(1 - k.first - k.second));
        out.coeffs_a[k] = (k.second % 2) ? Real(-v) : v;
    }
    for (const auto& [k, c] : cs.coeffs_b) {
        Real v = c * pow(sigma, Real(1 - k.first - k.second));
        out.coeffs_b[k] = (k.second % 2) ? v : Real(-v);
    }
    return out;
}

CanonicalSystem rescale_inverse(const CanonicalSystem& cs) {
    if (cs.sign != SignConvention::Minus) throw DomainError("rescale_inverse expects the minus convention");
    PrecisionScope scope(cs.digits + 5);
    const int n = cs.n;
    Real sigma = pow(Real(n), Real(1) / Real(2 * n - 2));
    CanonicalSystem out = cs;
    out.sign = SignConvention::Plus;
    out.mu = cs.mu * sqrt(Real(n));
    out.coeffs_a.clear();
    out.coeffs_b.clear();
    for (const auto& [k, c] : cs.coeffs_a) {
        Real v = c * pow(sigma, Real(k.first + k.second - 1));
        out.coeffs_a[k] = (k.second % 2) ? Real(-v) : v;
    }
    for (const auto& [k, c] : cs.coeffs_b) {
        Real v = c * pow(sigma, Real(k.first + k.second - 1));
        out.coeffs_b[k] = (k.second % 2) ? v : Real(-v);
    }
    return out;
}

CanonicalSystem canonical_from_minus_field(const VectorField& vf, int n, int digits) {
    if (n < 2) throw DomainError("canonical system needs n >= 2");
    if (!vf.is_numeric()) throw SymbolicError("numeric coefficients required");
    if (const_coeff(vf.dx, 0, 1) != -1) throw DomainError("expected x' = -y + ...");
    const Rational mu = const_coeff(vf.dx, n, 0);
    if (const_coeff(vf.dy, 2 * n - 1, 0) != 1) throw DomainError("expected y' = x^(2n-1) + ...");
    if (const_coeff(vf.dy, n - 1, 1) != mu * n) throw DomainError("y' coefficient of x^(n-1) y must be n*mu");
    CanonicalSystem cs;
    cs.n = n;
    cs.sign = SignConvention::Minus;
    cs.digits = digits;
    PrecisionScope scope(digits + 5);
    cs.mu = to_real(mu);
    int maxw = 0;
    for (const auto& [k, c] : vf.dx.terms()) {
        if ((k.first == 0 && k.second == 1) || (k.first == n && k.second == 0)) continue;
        if (k.first + n * k.second < n + 1) throw DomainError("x' term below weighted degree n+1");
        cs.coeffs_a[k] = to_real(*c.as_constant());
        maxw = std::max(maxw, k.first + n * k.second);
    }
    for (const auto& [k, c] : vf.dy.terms()) {
        if ((k.first == 2 * n - 1 && k.second == 0) || (k.first == n - 1 && k.second == 1)) continue;
        if (k.first + n * k.second < 2 * n) throw DomainError("y' term below weighted degree 2n");
        cs.coeffs_b[k] = to_real(*c.as_constant());
        maxw = std::max(maxw, k.first + n * k.second);
    }
    cs.truncation = std::max(maxw, 2 * n - 1);
    return cs;
}

} // namespace nilcenter
