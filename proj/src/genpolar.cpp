#include "nilcenter/genpolar.hpp"

#include "nilcenter/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace nilcenter {

namespace {

Real pow10(int e) { return pow(Real(10), Real(e)); }

// Newton refinement of a root of component i inside one dense step.
Real refine_root(const TaylorStep& st, int i, Real guess) {
    Real lo = st.t0, hi = st.t0 + st.h;
    for (int it = 0; it < 100; ++it) {
        Real f = st.eval(i, guess);
        Real df = st.eval_derivative(i, guess);
        if (df == 0) break;
        Real next = guess - f / df;
        if (next < lo) next = lo;
        if (next > hi) next = hi;
        if (abs(next - guess) <= abs(guess) * pow10(-static_cast<int>(Real::default_precision()) + 2)) {
            guess = next;
            break;
        }
        guess = next;
    }
    return guess;
}

} // namespace

Real gen_trig_period(int n) {
    if (n < 1) throw std::invalid_argument("gen_trig: n must be >= 1");
    const Real pi = boost::math::constants::pi<Real>();
    return 2 * sqrt(pi / n) * tgamma(Real(1) / Real(2 * n)) / tgamma(Real(n + 1) / Real(2 * n));
}

GenTrig::GenTrig(int n, int digits) : n_(n), digits_(digits) {
    if (n < 1) throw std::invalid_argument("gen_trig: n must be >= 1");
    PrecisionScope scope(digits + 5);
    period_ = gen_trig_period(n);
    TaylorTape tape(2);
    tape.set_rhs(0, tape.neg(tape.state(1)));
    tape.set_rhs(1, tape.pow(tape.state(0), 2 * n - 1));
    TaylorSolver solver(tape, digits);
    order_ = solver.order();
    Real end = period_ * Real(1.02);
    std::vector<Real> x = solver.integrate({Real(1), Real(0)}, Real(0), end, &table_);

    auto invariant = [&](const Real& c, const Real& s) { return abs(pow(c, 2 * n) + n * s * s - 1); };
    drift_ = invariant(x[0], x[1]);
    for (const auto& st : table_) drift_ = std::max<Real>(drift_, invariant(st.coeffs[0][0], st.coeffs[1][0]));

    bool found = false;
    for (const auto& st : table_) {
        if (st.t0 < period_ / 2) continue;
        Real s0 = st.coeffs[1][0];
        Real s1 = st.eval(1, st.t0 + st.h);
        if (s0 < 0 && s1 >= 0) {
            Real guess = st.t0 + st.h * s0 / (s0 - s1);
            return_time_ = refine_root(st, 1, guess);
            found = true;
            break;
        }
    }
    if (!found) throw NumericError("gen_trig: no first return found for n=" + std::to_string(n));

    const Real budget = pow10(-(digits - 8));
    Real rel = abs(return_time_ - period_) / period_;
    if (rel > budget)
        throw NumericError("gen_trig: first return differs from the closed-form period by " + to_string(rel, 6));
    if (drift_ > budget) throw NumericError("gen_trig: invariant drift " + to_string(drift_, 6));
}

std::pair<Real, Real> GenTrig::eval(const Real& theta) const {
    PrecisionScope scope(digits_ + 5);
    Real k = floor(theta / period_);
    Real t = theta - k * period_;
    auto it = std::upper_bound(table_.begin(), table_.end(), t,
                               [](const Real& v, const TaylorStep& st) { return v < st.t0; });
    if (it != table_.begin()) --it;
    return {it->eval(0, t), it->eval(1, t)};
}

const std::vector<std::pair<Real, Real>>& gauss_legendre(int m, int digits) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::vector<std::pair<Real, Real>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(m, digits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    PrecisionScope scope(digits + 10);
    const Real pi = boost::math::constants::pi<Real>();
    std::vector<std::pair<Real, Real>> rule;
    const Real eps = pow10(-(digits + 5));
    for (int i = 1; i <= m; ++i) {
        Real x = cos(pi * (Real(i) - Real(0.25)) / (Real(m) + Real(0.5)));
        Real dp;
        for (int it2 = 0; it2 < 200; ++it2) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= m; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < eps) break;
        }
        {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= m; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1);
        }
        rule.emplace_back(x, 2 / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

Real GenTrig::integrate(const std::function<Real(const Real&, const Real&, const Real&)>& f, const Real& a,
                        const Real& b) const {
    PrecisionScope scope(digits_ + 5);
    if (a < 0 || b > table_.back().t0 + table_.back().h || a > b)
        throw std::invalid_argument("GenTrig::integrate: interval outside the checkpoint table");
    const int m = (order_ + 1) / 2 + 4;
    const auto& rule = gauss_legendre(m, digits_);
    Real total = 0;
    for (const auto& st : table_) {
        Real lo = std::max<Real>(a, st.t0);
        Real hi = std::min<Real>(b, st.t0 + st.h);
        if (!(hi > lo)) continue;
        Real half = (hi - lo) / 2, mid = (hi + lo) / 2;
        Real acc = 0;
        for (const auto& [x, w] : rule) {
            Real t = mid + half * x;
            acc += w * f(t, st.eval(0, t), st.eval(1, t));
        }
        total += acc * half;
    }
    return total;
}

std::shared_ptr<const GenTrig> gen_trig(int n, int digits) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::shared_ptr<const GenTrig>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({n, digits});
        if (it != cache.end()) return it->second;
    }
    auto g = std::make_shared<const GenTrig>(n, digits);
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::make_pair(n, digits), g).first->second;
}

Real trig_moment(int p, int q, int n) {
    if (p < 0 || q < 0) throw std::invalid_argument("trig_moment: negative exponent");
    if (n < 1) throw std::invalid_argument("trig_moment: n must be >= 1");
    if (p % 2 || q % 2) return Real(0);
    Real a = Real(p + 1) / 2;
    Real b = Real(q + 1) / Real(2 * n);
    return 2 / sqrt(pow(Real(n), p + 1)) * tgamma(a) * tgamma(b) / tgamma(a + b);
}

V1Quadrature v1_quadrature(int n, const Real& mu, int digits) {
    if (n < 2) throw std::invalid_argument("v1_quadrature: n must be >= 2");
    auto gt = gen_trig(n, digits);
    PrecisionScope scope(digits + 5);
    Real I1 = gt->integrate(
        [n](const Real&, const Real& c, const Real& s) { return pow(c, n - 1) / (n * (1 - (n - 1) * s * s)); },
        Real(0), gt->period());
    Real I2 = gt->integrate(
        [n](const Real&, const Real& c, const Real& s) { return pow(c, 2 * n - 1) * s / (n * (1 - (n - 1) * s * s)); },
        Real(0), gt->period());
    return {exp(-(mu * I1 - (n - 1) * I2)), I1};
}

namespace {

void add_to(TrigPoly& p, int a, int b, const Real& c) {
    auto [it, inserted] = p.try_emplace({a, b}, c);
    if (!inserted) it->second += c;
}

// Rewrites Cs^a with a >= 2n through Cs^(2n) = 1 - n Sn^2 and drops zeros.
void reduce(TrigPoly& p, int n) {
    while (!p.empty()) {
        auto it = std::find_if(p.rbegin(), p.rend(), [n](const auto& kv) { return kv.first.first >= 2 * n; });
        if (it == p.rend()) break;
        auto [key, c] = *it;
        p.erase(key);
        add_to(p, key.first - 2 * n, key.second, c);
        add_to(p, key.first - 2 * n, key.second + 2, Real(-c * n));
    }
    for (auto it = p.begin(); it != p.end();) {
        if (it->second == 0) {
            it = p.erase(it);
        } else {
            ++it;
        }
    }
}

Real eval_trig(const TrigPoly& p, const Real& c, const Real& s) {
    Real acc = 0;
    for (const auto& [k, v] : p) acc += v * pow(c, k.first) * pow(s, k.second);
    return acc;
}

bool is_one(const TrigPoly& p) { return p.size() == 1 && p.begin()->first == std::make_pair(0, 0) && p.begin()->second == 1; }

// Tape nodes for polynomials in (Cs, Sn) held in states 0 and 1.
struct TrigNodes {
    TaylorTape& tape;
    std::map<std::pair<int, int>, int> mono;

    int monomial(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = mono.find(key);
        if (it != mono.end()) return it->second;
        int node = tape.mul(tape.pow(tape.state(0), a), tape.pow(tape.state(1), b));
        mono[key] = node;
        return node;
    }
    int poly(const TrigPoly& p) {
        int acc = tape.constant(Real(0));
        for (const auto& [k, c] : p) acc = tape.add(acc, tape.scale(monomial(k.first, k.second), c));
        return acc;
    }
};

} // namespace

PolarExpansion polar_expansion(int n, const RealTerms& dx, const RealTerms& dy, int max_order) {
    if (n < 1) throw DomainError("polar expansion needs n >= 1");
    PolarExpansion pe;
    pe.n = n;
    auto slot = [&](int k) -> bool {
        if (max_order >= 0 && k > max_order) return false;
        if (static_cast<int>(pe.N.size()) <= k) {
            pe.N.resize(k + 1);
            pe.D.resize(k + 1);
        }
        return true;
    };
    for (const auto& [key, c] : dx) {
        if (c == 0) continue;
        auto [i, j] = key;
        int k = i + n * j - n;
        if (k < 0) throw DomainError("x' term below the weighted degree of -y");
        if (!slot(k)) continue;
        add_to(pe.N[k], 2 * n - 1 + i, j, c);
        add_to(pe.D[k], i, j + 1, Real(-c * n));
    }
    for (const auto& [key, c] : dy) {
        if (c == 0) continue;
        auto [i, j] = key;
        int k = i + n * j - 2 * n + 1;
        if (k < 0) throw DomainError("y' term below the weighted degree of x^(2n-1)");
        if (!slot(k)) continue;
        add_to(pe.N[k], i, j + 1, c);
        add_to(pe.D[k], i + 1, j, c);
    }
    if (max_order >= 0) slot(max_order);
    if (pe.N.empty()) slot(0);
    for (auto& p : pe.N) reduce(p, n);
    for (auto& p : pe.D) reduce(p, n);
    if (pe.D[0].empty()) throw DomainError("degenerate angular equation (D_0 = 0)");
    return pe;
}

Real FocalReport::v(int k) const {
    for (const auto& [kk, val] : vks) {
        if (kk == k) return (k == 1 && v1_minus_one) ? Real(val + 1) : val;
    }
    throw std::out_of_range("FocalReport::v: index not computed");
}

Real focal_tolerance(int k, int digits) {
    PrecisionScope scope(digits + 5);
    return k * pow10(-(2 * digits) / 3);
}

FocalReport focal_values(int n, const RealTerms& dx, const RealTerms& dy, int kmax, int digits, const Real& mu) {
    if (kmax < 1) throw std::invalid_argument("focal_values: kmax must be >= 1");
    PrecisionScope scope(digits + 5);
    PolarExpansion pe = polar_expansion(n, dx, dy, kmax - 1);

    TaylorTape tape(2 + kmax);
    TrigNodes tn{tape, {}};
    const int C = tape.state(0), S = tape.state(1);
    tape.set_rhs(0, tape.neg(S));
    tape.set_rhs(1, tape.pow(C, 2 * n - 1));

    // Q_m = [r^m] N/D.
    const bool unit_d0 = is_one(pe.D[0]);
    const int d0 = unit_d0 ? -1 : tn.poly(pe.D[0]);
    std::vector<int> Dn(kmax), Q(kmax);
    for (int m = 0; m < kmax; ++m) Dn[m] = tn.poly(pe.D[m]);
    for (int m = 0; m < kmax; ++m) {
        int acc = tn.poly(pe.N[m]);
        for (int j = 1; j <= m; ++j) acc = tape.sub(acc, tape.mul(Dn[j], Q[m - j]));
        Q[m] = unit_d0 ? acc : tape.div(acc, d0);
    }

    // pw[m][k] = [r0^k] rho^m with rho = sum v_k r0^k, k >= m.
    auto v = [&](int k) { return tape.state(1 + k); };
    std::vector<std::vector<int>> pw(kmax + 1, std::vector<int>(kmax + 1, -1));
    for (int k = 1; k <= kmax; ++k) pw[1][k] = v(k);
    for (int m = 2; m <= kmax; ++m) {
        for (int k = m; k <= kmax; ++k) {
            int acc = tape.constant(Real(0));
            for (int j = m - 1; j <= k - 1; ++j) acc = tape.add(acc, tape.mul(pw[m - 1][j], v(k - j)));
            pw[m][k] = acc;
        }
    }
    for (int k = 1; k <= kmax; ++k) {
        int acc = tape.constant(Real(0));
        for (int m = 0; m <= k - 1; ++m) acc = tape.add(acc, tape.mul(Q[m], pw[m + 1][k]));
        tape.set_rhs(1 + k, acc);
    }

    std::vector<Real> x0(2 + kmax, Real(0));
    x0[0] = 1;
    x0[2] = 1;
    TaylorSolver solver(tape, digits);
    TaylorSolver::Monitor monitor;
    if (!unit_d0) {
        monitor = [&](const Real&, const std::vector<Real>& x) {
            if (eval_trig(pe.D[0], x[0], x[1]) <= 0) throw NumericError("angular speed changes sign along the orbit");
        };
    }
    Real T = gen_trig_period(n);
    std::vector<Real> xT = solver.integrate(x0, Real(0), T, nullptr, monitor);

    FocalReport rep;
    rep.n = n;
    rep.mu = mu;
    rep.digits = digits;
    rep.steps = solver.stats().steps;
    for (int k = 1; k <= kmax; ++k) {
        Real val = k == 1 ? Real(xT[2] - 1) : xT[1 + k];
        Real tol = focal_tolerance(k, digits);
        rep.vks.emplace_back(k, val);
        rep.tolerances.push_back(tol);
        if (!rep.first_significant && abs(val) > 10 * tol) rep.first_significant = {k, val > 0 ? 1 : -1};
    }
    return rep;
}

FocalReport focal_values(const CanonicalSystem& cs, int kmax, int digits) {
    CanonicalSystem m = cs.sign == SignConvention::Plus ? rescale(cs) : cs;
    PrecisionScope scope(digits + 5);
    return focal_values(m.n, m.full_dx(), m.full_dy(), kmax, digits, m.mu);
}

namespace {

int leading_n(const VectorField& vf) {
    if (vf.n) return *vf.n;
    std::optional<int> lowest;
    for (const auto& [k, c] : vf.dy.terms()) {
        if (k.second == 0 && (!lowest || k.first < *lowest)) lowest = k.first;
    }
    if (!lowest || *lowest % 2 == 0) throw DomainError("cannot read the Andreev number from y'");
    return (*lowest + 1) / 2;
}

} // namespace

RealTerms real_terms(const PlanePoly& p) {
    RealTerms t;
    for (const auto& [k, c] : p.terms()) {
        auto q = c.as_constant();
        if (!q) throw SymbolicError("numeric coefficients required");
        t[k] = to_real(*q);
    }
    return t;
}

FocalReport focal_values(const VectorField& vf, int kmax, int digits) {
    int n = leading_n(vf);
    return focal_values(canonical_from_minus_field(vf, n, digits + 5), kmax, digits);
}

V3Formula v3_formula(int n, const RealTerms& a_hat, const RealTerms& b_hat, int digits) {
    if (n % 2 == 0 || n < 1) throw DomainError("v3_formula needs odd n");
    auto gt = gen_trig(n, digits);
    PrecisionScope scope(digits + 5);
    auto A = [&](int i, int j) {
        auto it = a_hat.find({i, j});
        return it == a_hat.end() ? Real(0) : it->second;
    };
    auto B = [&](int i, int j) {
        auto it = b_hat.find({i, j});
        return it == b_hat.end() ? Real(0) : it->second;
    };
    TrigPoly R0, R1, Th;
    add_to(R0, 3 * n, 0, A(n + 1, 0));
    add_to(R0, 2 * n, 1, A(1, 1) + B(2 * n, 0));
    add_to(R0, n, 2, B(n, 1));
    add_to(R0, 0, 3, B(0, 2));
    add_to(R1, 3 * n + 1, 0, A(n + 2, 0));
    add_to(R1, 2 * n + 1, 1, A(2, 1) + B(2 * n + 1, 0));
    add_to(R1, n + 1, 2, B(n + 1, 1));
    add_to(R1, 1, 3, B(1, 2));
    add_to(Th, 2 * n + 1, 0, B(2 * n, 0));
    add_to(Th, n + 1, 1, B(n, 1) - n * A(n + 1, 0));
    add_to(Th, 1, 2, B(0, 2) - n * A(1, 1));

    const Real T = gt->period();
    const Real th0 = eval_trig(Th, Real(1), Real(0));
    const int m = (gt->order() + 1) / 2 + 4;
    const auto& rule = gauss_legendre(m, digits);
    auto r3n = [&](const TaylorStep& st, const Real& t) { return eval_trig(R0, st.eval(0, t), st.eval(1, t)); };
    auto gl = [&](const TaylorStep& st, const Real& lo, const Real& hi) {
        Real half = (hi - lo) / 2, mid = (hi + lo) / 2, acc = 0;
        for (const auto& [x, w] : rule) acc += w * r3n(st, mid + half * x);
        return acc * half;
    };
    // value = int_0^T h1 R_3n + R_(3n+1), h1(t) = -(Theta(t) - Theta(0)) - (2n+1) int_0^t R_3n.
    Real value = 0, J = 0;
    for (const auto& st : gt->table()) {
        Real lo = st.t0;
        Real hi = std::min<Real>(T, st.t0 + st.h);
        if (!(hi > lo)) break;
        Real half = (hi - lo) / 2, mid = (hi + lo) / 2, acc = 0;
        for (const auto& [x, w] : rule) {
            Real t = mid + half * x;
            Real c = st.eval(0, t), s = st.eval(1, t);
            Real h1 = -(eval_trig(Th, c, s) - th0) - (2 * n + 1) * (J + gl(st, lo, t));
            acc += w * (h1 * eval_trig(R0, c, s) + eval_trig(R1, c, s));
        }
        value += acc * half;
        J += gl(st, lo, hi);
    }
    V3Formula out;
    out.value = value;
    out.bracket1 = A(n + 2, 0) + A(n + 1, 0) * (A(1, 1) + 2 * B(0, 2));
    out.bracket2 = B(n + 1, 1) + B(n, 1) * (A(1, 1) + 2 * B(0, 2));
    out.combination = (n + 2) * out.bracket1 + out.bracket2;
    return out;
}

V3Formula v3_formula(const CanonicalSystem& cs) {
    if (cs.sign != SignConvention::Minus) throw DomainError("v3_formula expects the minus convention");
    if (cs.mu != 0) throw DomainError("v3_formula expects mu = 0");
    return v3_formula(cs.n, cs.coeffs_a, cs.coeffs_b, cs.digits);
}

namespace {

Real probe_once(const PolarExpansion& pe, const Real& r0, int digits) {
    PrecisionScope scope(digits + 5);
    const int n = pe.n;
    TaylorTape tape(3);
    TrigNodes tn{tape, {}};
    const int C = tape.state(0), S = tape.state(1), r = tape.state(2);
    tape.set_rhs(0, tape.neg(S));
    tape.set_rhs(1, tape.pow(C, 2 * n - 1));
    const int K = static_cast<int>(pe.N.size()) - 1;
    int Nsum = tn.poly(pe.N[K]), Dsum = tn.poly(pe.D[K]);
    for (int k = K - 1; k >= 0; --k) {
        Nsum = tape.add(tape.mul(Nsum, r), tn.poly(pe.N[k]));
        Dsum = tape.add(tape.mul(Dsum, r), tn.poly(pe.D[k]));
    }
    tape.set_rhs(2, tape.mul(r, tape.div(Nsum, Dsum)));
    TaylorSolver solver(tape, digits);
    auto monitor = [&](const Real&, const std::vector<Real>& x) {
        Real d = 0, rk = 1;
        for (int k = 0; k <= K; ++k) {
            d += rk * eval_trig(pe.D[k], x[0], x[1]);
            rk *= x[2];
        }
        if (d <= 0) throw NumericError("angular speed changes sign along the orbit");
        if (!(x[2] >= 0) || !isfinite(x[2])) throw NumericError("radius left the admissible range");
    };
    Real r0p = r0;
    r0p.precision(digits + 5);
    if (eval_trig(pe.D[0], Real(1), Real(0)) <= 0) throw NumericError("angular speed not positive at the start");
    auto xT = solver.integrate({Real(1), Real(0), r0p}, Real(0), gen_trig_period(n), nullptr, monitor);
    return xT[2] - r0p;
}

} // namespace

std::vector<ProbePoint> poincare_probe(int n, const RealTerms& dx, const RealTerms& dy, const std::vector<Real>& r0s,
                                       int digits) {
    PolarExpansion pe = polar_expansion(n, dx, dy);
    std::vector<ProbePoint> out;
    for (const auto& r0 : r0s) {
        ProbePoint pt;
        pt.r0 = r0;
        if (r0 < 0) {
            pt.failure = "negative radius";
            out.push_back(pt);
            continue;
        }
        try {
            Real d1 = probe_once(pe, r0, digits);
            Real d2 = probe_once(pe, r0, digits + 10);
            PrecisionScope scope(digits + 5);
            pt.d = d1;
            pt.error = abs(d1 - d2);
        } catch (const NumericError& e) {
            pt.failure = e.what();
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<ProbePoint> poincare_probe(const CanonicalSystem& cs, const std::vector<Real>& r0s, int digits) {
    CanonicalSystem m = cs.sign == SignConvention::Plus ? rescale(cs) : cs;
    PrecisionScope scope(digits + 5);
    return poincare_probe(m.n, m.full_dx(), m.full_dy(), r0s, digits);
}

} // namespace nilcenter
