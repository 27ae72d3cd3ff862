#include "nilcenter/classify.hpp"

#include "nilcenter/errors.hpp"

#include <cmath>
#include <sstream>

namespace nilcenter {

std::string to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::Center: return "center";
    case VerdictStatus::Focus: return "focus";
    case VerdictStatus::Undecided: return "undecided";
    }
    return "undecided";
}

namespace {

std::string monodromy_detail(const MonodromyReport& r) {
    std::ostringstream os;
    os << to_string(r.verdict);
    if (r.n) os << ", n=" << *r.n;
    os << ", beta=" << (r.beta ? std::to_string(*r.beta) : std::string("inf"));
    os << ", Delta=" << r.delta.to_string();
    if (r.flipped_y) os << ", reflected y -> -y";
    return os.str();
}

std::optional<int> first_nonzero(const ObstructionLedger& L) {
    for (const auto& [k, w] : L.entries) {
        if (!w.is_zero()) return k;
    }
    return std::nullopt;
}

CanonicalSystem numeric_canonical(const VectorField& vf, const MonodromyReport& r, const ClassifySettings& s,
                                  int digits) {
    const int n = *r.n;
    try {
        return canonical_from_minus_field(vf, n, digits);
    } catch (const DomainError&) {
    }
    int cap = s.canonical_cap > 0 ? s.canonical_cap : default_canonical_cap(n, s.kmax);
    return rescale(to_canonical(vf, r, cap, digits));
}

std::string real_str(const Real& x) { return to_string(x, 12); }

} // namespace

Verdict classify(const VectorField& vf, const ClassifySettings& s) {
    Verdict v;
    const int digits = s.digits;
    const int check = s.check_digits > 0 ? s.check_digits : digits + 20;

    MonodromyReport r = analyze_monodromy(vf, s.monodromy_order);
    v.monodromy = r;
    v.evidence.push_back({"monodromy", monodromy_detail(r)});
    if (r.verdict == MonodromyVerdict::NonMonodromic)
        throw DomainError("origin is not monodromic (" + r.note + "); center-focus problem does not apply");

    const bool symbolic = r.verdict == MonodromyVerdict::UndecidedSymbolic || !vf.is_numeric();
    if (r.n && *r.n % 2 == 1 && r.verdict == MonodromyVerdict::MonodromicII) {
        v.status = VerdictStatus::Focus;
        v.evidence.push_back({"beta-rule", "n odd and beta = n-1 (mu != 0 in canonical form): nilpotent focus"});
        if (!symbolic) {
            try {
                CanonicalSystem cs = numeric_canonical(vf, r, s, digits + 10);
                v.canonical = cs;
                v.focal = focal_values(cs, 1, digits);
                v.evidence.push_back({"numeric-focal-signature", "v1(T) = " + real_str(v.focal->v(1))});
            } catch (const Error& e) {
                v.evidence.push_back({"note", std::string("v1 not evaluated: ") + e.what()});
            }
        }
        return v;
    }

    Symmetry sym = symmetry_check(vf);
    if (sym != Symmetry::None) {
        v.status = VerdictStatus::Center;
        v.evidence.push_back({to_string(sym), sym == Symmetry::ReversibleY
                                                  ? "field anticommutes with (x,y) -> (x,-y): reversible center"
                                                  : "field anticommutes with (x,y) -> (-x,y): reversible center"});
        return v;
    }

    const int n = r.n ? *r.n : 0;
    const int cap = s.omega_cap > 0 ? s.omega_cap : std::max(4 * n, 6);
    ObstructionLedger L = build_H(vf, cap, s.gauge);
    v.ledger = L;

    if (symbolic) {
        for (const auto& [k, w] : L.entries) {
            if (!w.is_zero()) v.conditions.push_back(w);
        }
        v.evidence.push_back({"formal-ledger", "symbolic obstructions up to index " + std::to_string(cap) +
                                                   " listed as conditions"});
        if (r.verdict == MonodromyVerdict::UndecidedSymbolic)
            v.evidence.push_back({"note", "monodromy undecided: " + r.note});
        return v;
    }

    FocusCertificate cert = focus_certificate(L);
    auto fz = first_nonzero(L);
    if (cert.certified) {
        v.status = VerdictStatus::Focus;
        v.evidence.push_back({"focus-certificate", "first nonzero obstruction w_" + std::to_string(cert.index) +
                                                       " has even index"});
        return v;
    }
    v.evidence.push_back({"formal-ledger", fz ? "first nonzero obstruction w_" + std::to_string(*fz) +
                                                    " has odd index (no conclusion)"
                                              : "all obstructions vanish up to index " + std::to_string(cap)});

    CanonicalSystem cs = numeric_canonical(vf, r, s, check + 10);
    v.canonical = cs;
    FocalReport f1 = focal_values(cs, s.kmax, digits);
    FocalReport f2 = focal_values(cs, s.kmax, check);
    v.focal = f1;

    if (f1.first_significant && f2.first_significant && *f1.first_significant == *f2.first_significant) {
        auto [k, sign] = *f1.first_significant;
        Real vk = f1.vks[k - 1].second;
        Real vk2 = f2.vks[k - 1].second;
        // Radii where the leading term dominates the tail of the expansion.
        double scale = 1.0;
        for (int j = k + 1; j <= s.kmax; ++j) {
            Real vj = abs(f1.vks[j - 1].second);
            if (vj == 0) continue;
            Real rj = pow(abs(vk) / (4 * vj), Real(1) / Real(j - k));
            double rd = rj.convert_to<double>();
            if (!s.probe_radii.empty() && rd < s.probe_radii.front() * scale) scale = rd / s.probe_radii.front();
        }
        std::vector<Real> radii;
        for (double rr : s.probe_radii) radii.emplace_back(rr * scale);
        v.probe = poincare_probe(cs, radii, digits);
        bool ok = !v.probe.empty();
        std::ostringstream pd;
        for (const auto& p : v.probe) {
            if (!p.failure.empty() || !p.d) {
                ok = false;
                pd << " r0=" << real_str(p.r0) << ": " << p.failure;
                continue;
            }
            pd << " d(" << to_string(p.r0, 6) << ")=" << real_str(*p.d);
            if (!(abs(*p.d) > 10 * p.error) || (*p.d > 0 ? 1 : -1) != sign) ok = false;
        }
        std::ostringstream fd;
        fd << "v" << k << "(T) = " << real_str(vk) << " at " << digits << " digits, " << real_str(vk2) << " at "
           << check << " digits";
        v.evidence.push_back({"numeric-focal-signature", fd.str()});
        v.evidence.push_back({"poincare-probe", pd.str().empty() ? "no radii" : pd.str().substr(1)});
        if (ok) {
            v.status = VerdictStatus::Focus;
        } else {
            v.evidence.push_back({"note", "probe displacement does not confirm the focal signature"});
        }
        return v;
    }

    if (!f1.first_significant && !f2.first_significant) {
        v.likely_center = true;
        v.evidence.push_back({"note", "all focal values up to v" + std::to_string(s.kmax) +
                                          " vanish within tolerance; formal vanishing to finite order proves nothing"});
    } else {
        v.evidence.push_back({"note", "focal signatures disagree between precisions"});
    }
    return v;
}

std::vector<ParamPoly> n3_conditions() {
    AlphabetPtr a = n3_family().alphabet();
    return {ParamPoly::variable(a, "mu"), ParamPoly::variable(a, "a11") * ParamPoly::variable(a, "a40"),
            ParamPoly::variable(a, "a50")};
}

bool n3_on_variety(const Rational& mu, const Rational& a11, const Rational& a40, const Rational& a50) {
    std::map<std::string, Rational> vals{{"mu", mu}, {"a11", a11}, {"a21", Rational(0)}, {"a40", a40}, {"a50", a50}};
    for (const auto& g : n3_conditions()) {
        if (!g.evaluate(vals).is_zero()) return false;
    }
    return true;
}

namespace {

// Least squares y ~ c0 + c1 t; returns (c0, max residual).
std::pair<Real, Real> fit_line(const std::vector<Real>& t, const std::vector<Real>& y) {
    const size_t m = t.size();
    if (m == 1) return {y[0], Real(0)};
    Real st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < m; ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    Real det = m * stt - st * st;
    if (det == 0) return {sy / m, Real(0)};
    Real c1 = (m * sty - st * sy) / det;
    Real c0 = (sy - c1 * st) / m;
    Real res = 0;
    for (size_t i = 0; i < m; ++i) res = std::max<Real>(res, abs(y[i] - c0 - c1 * t[i]));
    return {c0, res};
}

} // namespace

PerturbationFit perturbation_probe(const Real& a11, const Real& a21, const Real& a40, const Real& q20,
                                   const std::vector<double>& eps_list, int digits, std::optional<Real> a50,
                                   double tol) {
    if (eps_list.empty()) throw std::invalid_argument("perturbation_probe: empty eps list");
    PrecisionScope scope(digits + 5);
    const Real b50 = a50 ? *a50 : Real(-a11 * a40);
    PerturbationFit fit;
    std::vector<Real> t, y2, y4;
    for (double eps : eps_list) {
        if (!(eps > 0) || eps > 0.1) throw std::invalid_argument("perturbation_probe: eps must lie in (0, 0.1]");
        Real e(eps);
        Real d = pow(e, Real(0.25));
        RealTerms dx, dy;
        dx[{0, 1}] = -1;
        dx[{1, 1}] = d * a11;
        dx[{2, 1}] = d * d * a21;
        dx[{4, 0}] = d * a40;
        dx[{5, 0}] = d * d * b50;
        dy[{1, 0}] = 1;
        dy[{5, 0}] = 1;
        dy[{2, 0}] = d * q20;
        FocalReport fr = focal_values(1, dx, dy, 7, digits);
        PerturbationSample smp{eps, fr.v(3), fr.v(5), fr.v(7), sqrt(e) * fr.v(5), fr.v(7) / e};
        t.push_back(sqrt(e));
        y2.push_back(smp.g2 / e);
        y4.push_back(smp.g4);
        fit.samples.push_back(smp);
    }
    auto [c2, r2] = fit_line(t, y2);
    auto [c4, r4] = fit_line(t, y4);
    fit.c2 = c2;
    fit.c4 = c4;
    fit.residual2 = r2;
    fit.residual4 = r4;
    Real lim2 = tol * std::max<Real>(Real(1), abs(c2));
    Real lim4 = tol * std::max<Real>(Real(1), abs(c4));
    if (r2 > lim2) throw NumericError("perturbation fit of g2 has residual " + to_string(r2, 6));
    if (r4 > lim4) throw NumericError("perturbation fit of g4 has residual " + to_string(r4, 6));
    return fit;
}

} // namespace nilcenter
