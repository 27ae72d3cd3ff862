#pragma once

#include "nilcenter/algebra/series.hpp"
#include "nilcenter/algebra/vector_field.hpp"

#include <optional>
#include <string>

namespace nilcenter {

enum class MonodromyVerdict { MonodromicI, MonodromicII, MonodromicPhiZero, NonMonodromic, UndecidedSymbolic };

std::string to_string(MonodromyVerdict v);
bool is_monodromic(MonodromyVerdict v);

struct MonodromyReport {
    ParamPoly a_tilde;            // coefficient of x^alpha in f
    std::optional<int> alpha;     // nullopt: f vanished within the truncation
    ParamPoly b_tilde;            // coefficient of x^(n-1) in Phi
    ParamPoly b;                  // leading coefficient of Phi
    std::optional<int> beta;      // nullopt: Phi vanished within the truncation
    std::optional<int> n;
    ParamPoly delta;              // b_tilde^2 + 4 a_tilde n
    MonodromyVerdict verdict = MonodromyVerdict::UndecidedSymbolic;
    int truncation = 0;
    bool jet_hypotheses = false; // j^(2n-2) f = 0 and j^(n-2) Phi = 0
    std::optional<bool> delta_negative;
    bool flipped_y = false;        // input had x' = -y + ... and was reflected
    std::string note;
};

/// f(x) = Q(x, F(x)) and Phi(x) = div X at (x, F(x)), up to x^N. A field with
/// x' = -y + ... is first reflected to x' = y + ... (flipped_y is set).
/// Throws InconclusiveError when f vanishes to order N.
struct FPhi {
    Series1 F;
    Series1 f;
    Series1 Phi;
    bool flipped_y = false;
};
FPhi compute_f_phi(const VectorField& vf, int N);

/// Andreev's conditions on the leading terms of f and Phi.
MonodromyReport andreev_classify(const Series1& f, const Series1& Phi);

/// compute_f_phi + andreev_classify with the default order 4n+2 and one retry at 2N
/// when f or Phi vanish. N <= 0 selects the default.
MonodromyReport analyze_monodromy(const VectorField& vf, int N = 0);

} // namespace nilcenter
