#include "nilcenter/formal.hpp"

#include "nilcenter/errors.hpp"

#include <algorithm>

namespace nilcenter {

ParamPoly ObstructionLedger::at(int k) const {
    for (const auto& [i, v] : entries)
        if (i == k) return v;
    return ParamPoly();
}

std::pair<PlanePoly, ParamPoly> solve_Tn(const PlanePoly& q, int s) {
    PlanePoly p;
    ParamPoly omega;
    if (q.is_zero()) return {p, omega};
    const int d = q.terms().begin()->first.first + q.terms().begin()->first.second;
    for (const auto& [k, c] : q.terms()) {
        auto [m, j] = k;
        if (m + j != d) throw DomainError("solve_Tn needs a homogeneous polynomial");
        if (j == 0) {
            omega = c;
        } else {
            p.add_term(m + 1, j - 1, c * Rational(-s, m + 1));
        }
    }
    return {p, omega};
}

namespace {

std::vector<PlanePoly> homogeneous_parts(const PlanePoly& p, int maxdeg) {
    std::vector<PlanePoly> parts(static_cast<std::size_t>(maxdeg + 1));
    for (const auto& [k, c] : p.terms()) {
        int d = k.first + k.second;
        if (d <= maxdeg) parts[d].add_term(k.first, k.second, c);
    }
    return parts;
}

// Coefficient view of a quasi-homogeneous family x' = -y + y sum a_k1 x^k + sum a_k0 x^k, y' = x^(2n-1).
struct FamilyCoeffs {
    int n = 0;
    std::map<int, ParamPoly> a1; // k = 1..n-1
    std::map<int, ParamPoly> a0; // k = n+1..2n-1

    explicit FamilyCoeffs(const VectorField& vf) {
        if (vf.form != FieldForm::QhFamily || !vf.n) throw DomainError("coefficient recurrence needs a qh-family field");
        vf.validate();
        n = *vf.n;
        for (int k = 1; k <= n - 1; ++k) a1[k] = vf.dx.coeff(k, 1);
        for (int k = n + 1; k <= 2 * n - 1; ++k) a0[k] = vf.dx.coeff(k, 0);
    }
    ParamPoly A1(int k) const {
        auto it = a1.find(k);
        return it == a1.end() ? ParamPoly() : it->second;
    }
    ParamPoly A0(int k) const {
        auto it = a0.find(k);
        return it == a0.end() ? ParamPoly() : it->second;
    }
};

using CoeffMap = std::map<std::pair<int, int>, ParamPoly>;

ParamPoly get(const CoeffMap& m, int i, int j) {
    if (i < 0 || j < 0) return ParamPoly();
    auto it = m.find({i, j});
    return it == m.end() ? ParamPoly() : it->second;
}

PlanePoly to_plane(const CoeffMap& m) {
    PlanePoly p;
    for (const auto& [k, c] : m) p.add_term(k.first, k.second, c);
    return p;
}

// Coefficient of x^k y^l in X(sum c_ij x^i y^j) - w * (sum c_ij x^i y^j) div X for the family,
// leaving out the -(k+1) c_{k+1,l-1} term. weight(i, k) is i for H and 2i-k-1 for V.
template <class Weight>
ParamPoly family_rest(const FamilyCoeffs& fc, const CoeffMap& c, int k, int l, Weight weight) {
    const int n = fc.n;
    ParamPoly r;
    for (int i = std::max(k - n + 2, 0); i <= k; ++i) {
        ParamPoly ci = get(c, i, l - 1);
        if (ci.is_zero()) continue;
        int w = weight(i, k);
        if (w != 0) r += ci * fc.A1(k - i + 1) * Rational(w);
    }
    for (int i = std::max(k - 2 * n + 2, 0); i <= k - n; ++i) {
        ParamPoly ci = get(c, i, l);
        if (ci.is_zero()) continue;
        int w = weight(i, k);
        if (w != 0) r += ci * fc.A0(k - i + 1) * Rational(w);
    }
    ParamPoly top = get(c, k - 2 * n + 1, l + 1);
    if (!top.is_zero()) r += top * Rational(l + 1);
    return r;
}

} // namespace

ObstructionLedger build_H_homogeneous(const VectorField& vf, int kmax, const std::map<int, ParamPoly>& kernel) {
    if (kmax < 4) throw DomainError("build_H needs kmax >= 4");
    const int s = vf.y_sign();
    const auto Pk = homogeneous_parts(vf.P(), kmax);
    const auto Qk = homogeneous_parts(vf.Q(), kmax);
    std::vector<PlanePoly> H(static_cast<std::size_t>(kmax + 1)), Hx(H.size()), Hy(H.size());
    H[2] = PlanePoly::monomial(0, 2, ParamPoly(1));
    Hx[2] = H[2].diff_x();
    Hy[2] = H[2].diff_y();
    ObstructionLedger L;
    L.kind = LedgerKind::Omega;
    L.kmax = kmax;
    L.y_sign = s;
    L.route = "homogeneous";
    for (int d = 3; d <= kmax; ++d) {
        PlanePoly F;
        for (int b = 2; b <= d - 1; ++b) {
            int k = d - b + 1;
            if (!Pk[k].is_zero() && !Hx[b].is_zero()) F += Pk[k] * Hx[b];
            if (!Qk[k].is_zero() && !Hy[b].is_zero()) F += Qk[k] * Hy[b];
        }
        auto [p, w] = solve_Tn(F, s);
        if (auto it = kernel.find(d); it != kernel.end()) p.add_term(0, d, it->second);
        H[d] = p;
        Hx[d] = p.diff_x();
        Hy[d] = p.diff_y();
        L.entries.emplace_back(d, w);
    }
    for (const auto& h : H) L.jet += h;
    return L;
}

ObstructionLedger build_H_recurrence(const VectorField& vf, int kmax) {
    if (kmax < 4) throw DomainError("build_H needs kmax >= 4");
    FamilyCoeffs fc(vf);
    CoeffMap p;
    p[{0, 2}] = ParamPoly(1);
    auto weight = [](int i, int) { return i; };
    ObstructionLedger L;
    L.kind = LedgerKind::Omega;
    L.kmax = kmax;
    L.y_sign = -1;
    L.route = "recurrence";
    for (int d = 3; d <= kmax; ++d) {
        // W_{k,l} = 0 for l >= 1 fixes p_{k+1,l-1}.
        for (int l = 1; l <= d; ++l) {
            int k = d - l;
            ParamPoly rest = family_rest(fc, p, k, l, weight);
            if (!rest.is_zero()) p[{k + 1, l - 1}] = rest / Rational(k + 1);
        }
        L.entries.emplace_back(d, family_rest(fc, p, d, 0, weight));
    }
    L.jet = to_plane(p);
    return L;
}

std::string to_string(HGauge g) { return g == HGauge::Zero ? "zero" : "odd-normalized"; }

HGauge h_gauge_from_string(const std::string& s) {
    if (s == "zero") return HGauge::Zero;
    if (s == "odd" || s == "odd-normalized") return HGauge::OddNormalized;
    throw DomainError("unknown kernel gauge '" + s + "'");
}

namespace {

ObstructionLedger build_H_odd_normalized(const VectorField& vf, int kmax) {
    const AlphabetPtr base = vf.alphabet();
    std::vector<std::string> knames;
    for (int d = 3; d <= kmax; ++d) knames.push_back("_h" + std::to_string(d));
    const AlphabetPtr al = merge_alphabets(base, make_alphabet(knames));
    std::map<int, ParamPoly> kernel;
    for (int d = 3; d <= kmax; ++d) kernel[d] = ParamPoly::variable(al, knames[d - 3]);
    ObstructionLedger L = build_H_homogeneous(vf.rebase(al), kmax, kernel);

    auto substitute_all = [&](const std::string& name, const ParamPoly& value) {
        for (auto& e : L.entries) e.second = e.second.substitute(name, value);
        L.jet = L.jet.substitute_param(name, value);
    };
    std::vector<bool> fixed(knames.size(), false);
    for (std::size_t e = 0; e < L.entries.size(); ++e) {
        if (L.entries[e].first % 2 == 0) continue;
        const ParamPoly w = L.entries[e].second;
        // Lowest-degree free kernel coefficient entering w linearly with a constant factor.
        for (std::size_t v = 0; v < knames.size(); ++v) {
            if (fixed[v] || !w.depends_on(knames[v])) continue;
            if (w.degree_in(knames[v]) != 1) continue;
            std::size_t idx = *w.alphabet()->index_of(knames[v]);
            std::optional<Rational> c;
            bool constant_factor = true;
            for (const auto& [ex, cf] : w.terms()) {
                if (ex[idx] == 0) continue;
                bool pure = std::count_if(ex.begin(), ex.end(), [](std::uint32_t t) { return t != 0; }) == 1;
                if (!pure || c) constant_factor = false;
                c = cf;
            }
            if (!constant_factor || !c) continue;
            ParamPoly var = ParamPoly::variable(al, knames[v]);
            substitute_all(knames[v], -(w - var * *c) / *c);
            fixed[v] = true;
            break;
        }
    }
    for (std::size_t v = 0; v < knames.size(); ++v)
        if (!fixed[v]) substitute_all(knames[v], ParamPoly());
    for (auto& e : L.entries) e.second = e.second.rebase(base);
    L.jet = L.jet.rebase(base);
    L.route = "homogeneous";
    return L;
}

} // namespace

ObstructionLedger build_H(const VectorField& vf, int kmax, HGauge gauge) {
    if (gauge == HGauge::OddNormalized) return build_H_odd_normalized(vf, kmax);
    if (vf.form == FieldForm::QhFamily) return build_H_recurrence(vf, kmax);
    return build_H_homogeneous(vf, kmax);
}

namespace {

AlphabetPtr v_alphabet(const VectorField& vf) { return merge_alphabets(vf.alphabet(), make_alphabet({"q01", "q02"})); }

ParamPoly gauge_value(VGauge g) { return g == VGauge::Unit ? ParamPoly(1) : ParamPoly(0); }

void fill_v_free(ObstructionLedger& L, const AlphabetPtr& al, VGauge gauge) {
    L.free_coeffs["q00"] = gauge_value(gauge);
    L.free_coeffs["q01"] = ParamPoly::variable(al, "q01");
    L.free_coeffs["q02"] = ParamPoly::variable(al, "q02");
}

} // namespace

ObstructionLedger build_V_homogeneous(const VectorField& vf, int kmax, VGauge gauge) {
    if (kmax < 1) throw DomainError("build_V needs kmax >= 1");
    const int s = vf.y_sign();
    const auto al = v_alphabet(vf);
    const auto Pk = homogeneous_parts(vf.P(), kmax + 1);
    const auto Qk = homogeneous_parts(vf.Q(), kmax + 1);
    const auto Dk = homogeneous_parts(vf.divergence(), kmax);
    std::vector<PlanePoly> V(static_cast<std::size_t>(kmax + 1)), Vx(V.size()), Vy(V.size());
    V[0] = PlanePoly::constant(gauge_value(gauge));
    ObstructionLedger L;
    L.kind = LedgerKind::Lambda;
    L.kmax = kmax;
    L.y_sign = s;
    L.route = "homogeneous";
    fill_v_free(L, al, gauge);
    for (int d = 1; d <= kmax; ++d) {
        PlanePoly F;
        for (int b = 0; b <= d - 1; ++b) {
            int k = d - b + 1;
            if (!Pk[k].is_zero() && !Vx[b].is_zero()) F += Pk[k] * Vx[b];
            if (!Qk[k].is_zero() && !Vy[b].is_zero()) F += Qk[k] * Vy[b];
            if (!Dk[d - b].is_zero() && !V[b].is_zero()) F -= V[b] * Dk[d - b];
        }
        auto [p, w] = solve_Tn(F, s);
        if (d == 1) p.add_term(0, 1, L.free_coeffs["q01"]);
        if (d == 2) p.add_term(0, 2, L.free_coeffs["q02"]);
        V[d] = p;
        Vx[d] = p.diff_x();
        Vy[d] = p.diff_y();
        L.entries.emplace_back(d, w);
    }
    for (const auto& v : V) L.jet += v;
    return L;
}

ObstructionLedger build_V_recurrence(const VectorField& vf, int kmax, VGauge gauge) {
    if (kmax < 1) throw DomainError("build_V needs kmax >= 1");
    FamilyCoeffs fc(vf);
    const auto al = v_alphabet(vf);
    ObstructionLedger L;
    L.kind = LedgerKind::Lambda;
    L.kmax = kmax;
    L.y_sign = -1;
    L.route = "recurrence";
    fill_v_free(L, al, gauge);
    CoeffMap q;
    if (gauge == VGauge::Unit) q[{0, 0}] = ParamPoly(1);
    q[{0, 1}] = L.free_coeffs["q01"];
    q[{0, 2}] = L.free_coeffs["q02"];
    auto weight = [](int i, int k) { return 2 * i - k - 1; };
    for (int d = 1; d <= kmax; ++d) {
        // L_{k,l} = 0 for l >= 1 fixes q_{k+1,l-1}.
        for (int l = 1; l <= d; ++l) {
            int k = d - l;
            ParamPoly rest = family_rest(fc, q, k, l, weight);
            if (!rest.is_zero()) q[{k + 1, l - 1}] = rest / Rational(k + 1);
        }
        L.entries.emplace_back(d, family_rest(fc, q, d, 0, weight));
    }
    L.jet = to_plane(q);
    return L;
}

ObstructionLedger build_V(const VectorField& vf, int kmax, VGauge gauge) {
    if (vf.form == FieldForm::QhFamily) return build_V_recurrence(vf, kmax, gauge);
    return build_V_homogeneous(vf, kmax, gauge);
}

PlanePoly ledger_residual(const VectorField& vf, const ObstructionLedger& ledger) {
    const Truncation tr{1, 1, ledger.kmax};
    PlanePoly jet = ledger.jet.truncated(tr);
    PlanePoly dx = vf.dx.truncated(tr);
    PlanePoly dy = vf.dy.truncated(tr);
    PlanePoly r = dx * jet.diff_x() + dy * jet.diff_y();
    if (ledger.kind == LedgerKind::Lambda) r -= jet * vf.divergence().truncated(tr);
    for (const auto& [k, v] : ledger.entries) r -= PlanePoly::monomial(k, 0, v).truncated(tr);
    return r;
}

ParamPoly reduce_mod_ideal(const ParamPoly& value, const std::vector<ParamPoly>& generators,
                           const std::vector<std::string>& nonzero_factors) {
    ParamPoly v = value;
    std::vector<ParamPoly> gens = generators;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        ParamPoly g = gens[gi];
        if (g.is_zero()) continue;
        for (const auto& f : nonzero_factors) {
            if (!g.alphabet()->contains(f)) continue;
            while (auto q = g.divide_by_power(f, 1)) g = *q;
        }
        if (auto c = g.as_constant()) {
            // A nonzero constant generator makes the ideal the whole ring.
            (void)c;
            return ParamPoly();
        }
        const auto& names = g.alphabet()->names();
        std::optional<std::size_t> pivot;
        Rational pivot_coeff;
        for (std::size_t vi = names.size(); vi-- > 0;) {
            int count = 0;
            bool pure_linear = false;
            Rational coeff;
            for (const auto& [e, c] : g.terms()) {
                if (e[vi] == 0) continue;
                ++count;
                bool unit = e[vi] == 1;
                for (std::size_t j = 0; j < e.size() && unit; ++j)
                    if (j != vi && e[j] != 0) unit = false;
                pure_linear = unit;
                coeff = c;
            }
            if (count == 1 && pure_linear) {
                pivot = vi;
                pivot_coeff = coeff;
                break;
            }
        }
        if (!pivot) throw SymbolicError("ideal reduction unsupported");
        const std::string name = names[*pivot];
        ParamPoly var = ParamPoly::variable(g.alphabet(), name);
        ParamPoly replacement = -(g - var * pivot_coeff) / pivot_coeff;
        v = v.substitute(name, replacement);
        for (std::size_t j = gi + 1; j < gens.size(); ++j) gens[j] = gens[j].substitute(name, replacement);
    }
    return v;
}

FocusCertificate focus_certificate(const ObstructionLedger& ledger) {
    if (ledger.kind != LedgerKind::Omega) throw DomainError("focus certificate needs an omega ledger");
    FocusCertificate fc;
    auto entries = ledger.entries;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [k, v] : entries) {
        auto c = v.as_constant();
        if (!c) throw SymbolicError("focus certificate needs numeric obstructions; substitute parameters first");
        if (*c != 0) {
            fc.index = k;
            fc.certified = k % 2 == 0;
            return fc;
        }
    }
    return fc;
}

std::string to_string(Symmetry s) {
    switch (s) {
    case Symmetry::ReversibleY: return "reversible-y";
    case Symmetry::ReversibleX: return "reversible-x";
    case Symmetry::None: return "none";
    }
    return "none";
}

Symmetry symmetry_check(const VectorField& vf) {
    if (vf.dx.reflect_y() == -vf.dx && vf.dy.reflect_y() == vf.dy) return Symmetry::ReversibleY;
    if (vf.dx.reflect_x() == vf.dx && vf.dy.reflect_x() == -vf.dy) return Symmetry::ReversibleX;
    return Symmetry::None;
}

} // namespace nilcenter
