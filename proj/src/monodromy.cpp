#include "nilcenter/monodromy.hpp"

#include "nilcenter/errors.hpp"

namespace nilcenter {

std::string to_string(MonodromyVerdict v) {
    switch (v) {
    case MonodromyVerdict::MonodromicI: return "monodromic(i)";
    case MonodromyVerdict::MonodromicII: return "monodromic(ii)";
    case MonodromyVerdict::MonodromicPhiZero: return "monodromic(Phi=0)";
    case MonodromyVerdict::NonMonodromic: return "non-monodromic";
    case MonodromyVerdict::UndecidedSymbolic: return "undecided-symbolic";
    }
    return "undecided-symbolic";
}

bool is_monodromic(MonodromyVerdict v) {
    return v == MonodromyVerdict::MonodromicI || v == MonodromyVerdict::MonodromicII ||
           v == MonodromyVerdict::MonodromicPhiZero;
}

FPhi compute_f_phi(const VectorField& vf, int N) {
    FPhi out;
    VectorField g = vf;
    if (vf.y_sign() < 0) {
        g = vf.flip_y();
        out.flipped_y = true;
    }
    out.F = implicit_solve_F(g, N);
    out.f = compose_series(g.Q(), out.F, N);
    out.Phi = compose_series(g.divergence(), out.F, N);
    if (out.f.is_zero())
        throw InconclusiveError("f vanishes up to order " + std::to_string(N) +
                                "; inconclusive (possibly non-isolated singular point)");
    return out;
}

namespace {

// Sign of a ParamPoly, or nullopt when it still depends on parameters.
std::optional<int> numeric_sign(const ParamPoly& p) {
    auto c = p.as_constant();
    if (!c) return std::nullopt;
    return sgn(*c);
}

} // namespace

MonodromyReport andreev_classify(const Series1& f, const Series1& Phi) {
    MonodromyReport r;
    r.truncation = std::min(f.order(), Phi.order());
    r.alpha = f.valuation();
    if (!r.alpha) throw InconclusiveError("f vanishes within the truncation");
    const int alpha = *r.alpha;
    r.a_tilde = f[alpha];
    r.beta = Phi.valuation();
    if (r.beta) r.b = Phi[*r.beta];

    if (alpha % 2 == 0) {
        r.verdict = MonodromyVerdict::NonMonodromic;
        r.note = "alpha even";
        return r;
    }
    const int n = (alpha + 1) / 2;
    r.n = n;
    r.b_tilde = n - 1 <= Phi.order() ? Phi[n - 1] : ParamPoly();
    r.delta = r.b_tilde * r.b_tilde + r.a_tilde * Rational(4 * n);
    r.jet_hypotheses = !r.beta || *r.beta >= n - 1;
    if (r.jet_hypotheses) {
        if (auto s = numeric_sign(r.delta)) r.delta_negative = *s < 0;
    }

    auto sa = numeric_sign(r.a_tilde);
    if (!sa) {
        r.verdict = MonodromyVerdict::UndecidedSymbolic;
        r.note = "sign of the leading coefficient of f depends on parameters";
        return r;
    }
    if (*sa > 0) {
        r.verdict = MonodromyVerdict::NonMonodromic;
        r.note = "a > 0";
        return r;
    }
    if (!r.beta) {
        r.verdict = MonodromyVerdict::MonodromicPhiZero;
        r.note = "Phi vanishes within the truncation";
        return r;
    }
    if (*r.beta > n - 1) {
        r.verdict = MonodromyVerdict::MonodromicI;
        r.note = "beta > n-1";
        return r;
    }
    if (*r.beta < n - 1) {
        r.verdict = MonodromyVerdict::NonMonodromic;
        r.note = "beta < n-1";
        return r;
    }
    auto sd = numeric_sign(r.delta);
    if (!sd) {
        r.verdict = MonodromyVerdict::UndecidedSymbolic;
        r.note = "sign of Delta depends on parameters";
        return r;
    }
    r.verdict = *sd < 0 ? MonodromyVerdict::MonodromicII : MonodromyVerdict::NonMonodromic;
    r.note = *sd < 0 ? "beta = n-1 and b^2 + 4an < 0" : "beta = n-1 and b^2 + 4an >= 0";
    return r;
}

MonodromyReport analyze_monodromy(const VectorField& vf, int N) {
    const bool user_order = N > 0;
    if (!user_order) N = 14;
    auto run = [&](int order) {
        FPhi fp = compute_f_phi(vf, order);
        MonodromyReport r = andreev_classify(fp.f, fp.Phi);
        r.flipped_y = fp.flipped_y;
        return r;
    };
    MonodromyReport r;
    try {
        r = run(N);
    } catch (const InconclusiveError&) {
        N *= 2;
        r = run(N);
        return r;
    }
    if (!user_order && r.n && 4 * *r.n + 2 > N) {
        N = 4 * *r.n + 2;
        r = run(N);
    }
    if (!r.beta) return run(2 * N);
    return r;
}

} // namespace nilcenter
