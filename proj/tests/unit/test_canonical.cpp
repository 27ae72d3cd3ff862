#include "doctest.h"

#include "nilcenter/canonical.hpp"
#include "nilcenter/errors.hpp"

#include <random>

using namespace nilcenter;

namespace {

const int D = 40;

Real coeff(const RealTerms& t, int i, int j) {
    auto it = t.find({i, j});
    return it == t.end() ? Real(0) : it->second;
}

bool close_maps(const RealTerms& a, const RealTerms& b, const Real& tol) {
    RealTerms keys = a;
    for (const auto& [k, v] : b) keys[k] = v;
    for (const auto& [k, v] : keys) {
        if (abs(coeff(a, k.first, k.second) - coeff(b, k.first, k.second)) > tol) return false;
    }
    return true;
}

CanonicalSystem random_plus(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> c(-5, 5);
    CanonicalSystem cs;
    cs.n = n;
    cs.sign = SignConvention::Plus;
    cs.digits = D;
    cs.truncation = default_canonical_cap(n);
    cs.mu = Real(c(rng)) / 3;
    for (int i = 0; i <= cs.truncation; ++i) {
        for (int j = 0; i + n * j <= cs.truncation; ++j) {
            if (i + n * j >= n + 1 && c(rng) % 2 == 0) cs.coeffs_a[{i, j}] = Real(c(rng)) / 7;
            if (i + n * j >= 2 * n && c(rng) % 2 == 0) cs.coeffs_b[{i, j}] = Real(c(rng)) / 7;
        }
    }
    return cs;
}

} // namespace

TEST_CASE("rescale matches direct substitution u = s x, v = -s y") {
    std::mt19937 rng(21);
    PrecisionScope scope(D);
    for (int n : {2, 3, 4}) {
        CanonicalSystem cs = random_plus(rng, n);
        CanonicalSystem m = rescale(cs);
        CHECK(m.sign == SignConvention::Minus);
        CHECK(m.n == n);
        Real s = pow(Real(n), Real(1) / Real(2 * n - 2));
        // x' monomial x^i y^j -> (-1)^j s^(1-i-j) u^i v^j in u'; y' gains one more sign.
        RealTerms ea, eb;
        for (const auto& [k, v] : cs.coeffs_a) {
            Real f = v * pow(s, Real(1 - k.first - k.second));
            ea[k] = k.second % 2 ? Real(-f) : f;
        }
        for (const auto& [k, v] : cs.coeffs_b) {
            Real f = v * pow(s, Real(1 - k.first - k.second));
            eb[k] = k.second % 2 ? f : Real(-f);
        }
        CHECK(close_maps(m.coeffs_a, ea, Real(1e-30)));
        CHECK(close_maps(m.coeffs_b, eb, Real(1e-30)));
        // mu x^n -> s^(1-n) mu u^n, normalized so the fixed minus-form part holds.
        CHECK(abs(m.mu - cs.mu * pow(s, Real(1 - n))) < Real(1e-30));
    }

    // Single term a40 x^4, n = 3: a40 3^(-3/4).
    CanonicalSystem one;
    one.n = 3;
    one.sign = SignConvention::Plus;
    one.digits = D;
    one.truncation = 10;
    one.mu = 0;
    one.coeffs_a[{4, 0}] = Real(2);
    CanonicalSystem m = rescale(one);
    CHECK(m.coeffs_b.empty());
    CHECK(abs(coeff(m.coeffs_a, 4, 0) - 2 * pow(Real(3), Real(-0.75))) < Real(1e-30));

    CanonicalSystem empty = one;
    empty.coeffs_a.clear();
    CHECK(rescale(empty).coeffs_a.empty());
}

TEST_CASE("rescale round trip") {
    std::mt19937 rng(22);
    PrecisionScope scope(D);
    for (int n : {2, 3, 5}) {
        CanonicalSystem cs = random_plus(rng, n);
        CanonicalSystem back = rescale_inverse(rescale(cs));
        CHECK(back.sign == SignConvention::Plus);
        CHECK(abs(back.mu - cs.mu) < Real(1e-35));
        CHECK(close_maps(back.coeffs_a, cs.coeffs_a, Real(1e-35)));
        CHECK(close_maps(back.coeffs_b, cs.coeffs_b, Real(1e-35)));
    }
}

TEST_CASE("to_canonical keeps a plus canonical input with F = 0") {
    // x' = y + a11 x y + a21 x^2 y, y' = -3 x^5: y + P vanishes on y = 0.
    PlanePoly dx = PlanePoly::y() + PlanePoly::monomial(1, 1, ParamPoly(Rational(1, 2))) +
                   PlanePoly::monomial(2, 1, ParamPoly(Rational(-2, 3)));
    PlanePoly dy = PlanePoly::monomial(5, 0, ParamPoly(-3)) + PlanePoly::monomial(3, 1, ParamPoly(Rational(1, 5)));
    VectorField vf(dx, dy);
    MonodromyReport r = analyze_monodromy(vf);
    CanonicalSystem cs = to_canonical(vf, r, 0, D);
    PrecisionScope scope(D);
    CHECK(cs.n == 3);
    CHECK(abs(cs.mu) < Real(1e-35));
    RealTerms ea{{{1, 1}, Real(1) / 2}, {{2, 1}, Real(-2) / 3}};
    RealTerms eb{{{3, 1}, Real(1) / 5}};
    CHECK(close_maps(cs.coeffs_a, ea, Real(1e-35)));
    CHECK(close_maps(cs.coeffs_b, eb, Real(1e-35)));
}

TEST_CASE("to_canonical of x' = y, y' = -n x^(2n-1)") {
    for (int n = 2; n <= 5; ++n) {
        VectorField vf(PlanePoly::y(), PlanePoly::monomial(2 * n - 1, 0, ParamPoly(-n)));
        CanonicalSystem cs = to_canonical(vf, analyze_monodromy(vf), 0, D);
        CHECK(cs.n == n);
        CHECK(cs.mu == 0);
        CHECK(cs.coeffs_a.empty());
        CHECK(cs.coeffs_b.empty());
    }
}

TEST_CASE("to_canonical: mu, filtration and preserved monodromy on random fields") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> c(-4, 4), nd(2, 4);
    int with_mu = 0, without = 0;
    for (int it = 0; it < 30; ++it) {
        int n = nd(rng);
        int s = it % 2 ? 1 : -1;
        PlanePoly dx = PlanePoly::y() * ParamPoly(s), dy;
        // Leading y' coefficient negative after the reflection y -> -y when s = -1.
        Rational a(-s * (1 + std::abs(c(rng))), 1 + std::abs(c(rng)));
        a.canonicalize();
        dy.add_term(2 * n - 1, 0, ParamPoly(a));
        for (int i = 2; i <= 2 * n; ++i) {
            for (int j = 0; i + j <= 2 * n; ++j) {
                if (c(rng) % 3 != 0 || (j == 0 && i <= n)) continue;
                Rational v(c(rng), 2);
                v.canonicalize();
                dx.add_term(i, j, ParamPoly(v));
            }
        }
        // dy: x^(n-1) y gives beta = n-1 half of the time; higher terms otherwise.
        if (it % 4 < 2) dy.add_term(n - 1, 1, ParamPoly(Rational(1 + std::abs(c(rng)))));
        dy.add_term(n, 1, ParamPoly(Rational(c(rng))));
        dy.add_term(2 * n, 0, ParamPoly(Rational(c(rng))));
        VectorField vf(dx, dy);
        MonodromyReport r = analyze_monodromy(vf);
        if (!is_monodromic(r.verdict)) continue;
        CanonicalSystem cs = to_canonical(vf, r, 0, D);
        CHECK_NOTHROW(cs.validate());
        CHECK(cs.n == *r.n);
        PrecisionScope scope(D);
        bool beta_crit = r.beta && *r.beta == n - 1;
        CHECK((abs(cs.mu) > Real(1e-30)) == beta_crit);
        (beta_crit ? with_mu : without)++;
        // mu = b~ / (2n |A|^(1/2)), A = Delta / (4n^2).
        Real A = abs(to_real(*r.delta.as_constant())) / (4 * n * n);
        CHECK(abs(cs.mu - to_real(*r.b_tilde.as_constant()) / (2 * n * sqrt(A))) < Real(1e-30));
        for (const auto& [k, v] : cs.coeffs_a) CHECK(k.first + n * k.second >= n + 1);
        for (const auto& [k, v] : cs.coeffs_b) CHECK(k.first + n * k.second >= 2 * n);

        MonodromyReport again = analyze_monodromy(cs.to_field(D - 5));
        CHECK(again.n == n);
        CHECK(is_monodromic(again.verdict));
        CHECK((again.verdict == MonodromyVerdict::MonodromicII) == beta_crit);
    }
    CHECK(with_mu >= 5);
    CHECK(without >= 5);
}

TEST_CASE("to_canonical preconditions") {
    VectorField lin(PlanePoly::y(), PlanePoly::x() * ParamPoly(-1));
    CHECK_THROWS_AS(to_canonical(lin, analyze_monodromy(lin), 0, D), DomainError);
    auto al = make_alphabet({"a"});
    VectorField sym(PlanePoly::y(), PlanePoly::monomial(5, 0, ParamPoly(-3)) +
                                        PlanePoly::monomial(2, 1, ParamPoly::variable(al, "a")));
    CHECK_THROWS_AS(to_canonical(sym, analyze_monodromy(sym), 0, D), DomainError);
}

TEST_CASE("canonical_from_minus_field reads the n = 3 family") {
    CanonicalSystem cs = canonical_from_minus_field(n3_family(Rational(1, 2), 1, 2, 3, 4), 3, D);
    PrecisionScope scope(D);
    CHECK(cs.sign == SignConvention::Minus);
    CHECK(abs(cs.mu - Real(0.5)) < Real(1e-35));
    CHECK(abs(coeff(cs.coeffs_a, 1, 1) - 1) < Real(1e-35));
    CHECK(abs(coeff(cs.coeffs_a, 2, 1) - 2) < Real(1e-35));
    CHECK(abs(coeff(cs.coeffs_a, 4, 0) - 3) < Real(1e-35));
    CHECK(abs(coeff(cs.coeffs_a, 5, 0) - 4) < Real(1e-35));
    CHECK(cs.coeffs_b.empty());
    VectorField plus(PlanePoly::y(), PlanePoly::monomial(5, 0, ParamPoly(-3)));
    CHECK_THROWS_AS(canonical_from_minus_field(plus, 3, D), DomainError);
}
