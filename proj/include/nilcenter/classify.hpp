#pragma once

#include "nilcenter/canonical.hpp"
#include "nilcenter/formal.hpp"
#include "nilcenter/genpolar.hpp"
#include "nilcenter/monodromy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcenter {

enum class VerdictStatus { Center, Focus, Undecided };
std::string to_string(VerdictStatus s);

struct Evidence {
    std::string tag; // monodromy, beta-rule, reversible-y, reversible-x, focus-certificate,
                     // formal-ledger, numeric-focal-signature, poincare-probe, note
    std::string detail;
};

struct ClassifySettings {
    int digits = 30;
    int check_digits = 0;    // second precision for numeric calls; <= 0 means digits + 20
    int omega_cap = 0;       // highest omega index; <= 0 means 4n
    int kmax = 7;            // focal values v_1..v_kmax
    int canonical_cap = 0;   // <= 0: default_canonical_cap(n, kmax)
    int monodromy_order = 0; // <= 0: default
    HGauge gauge = HGauge::OddNormalized;
    std::vector<double> probe_radii{0.05, 0.025};
};

struct Verdict {
    VerdictStatus status = VerdictStatus::Undecided;
    std::vector<Evidence> evidence;
    std::vector<ParamPoly> conditions; // must vanish for a center (symbolic inputs)
    bool likely_center = false;        // undecided with every computed obstruction zero
    std::optional<MonodromyReport> monodromy;
    std::optional<ObstructionLedger> ledger;
    std::optional<CanonicalSystem> canonical;
    std::optional<FocalReport> focal;
    std::vector<ProbePoint> probe;
};

/// Verdict pipeline: monodromy, beta rule (n odd, beta = n-1), reversibility,
/// focus certificate of the omega ledger, then a numeric focal signature that must
/// agree at two precisions and two probe radii. Throws DomainError when the
/// origin is not monodromic.
Verdict classify(const VectorField& vf, const ClassifySettings& settings = {});

/// Generators {mu, a11*a40, a50} of the center variety of the n = 3 family.
std::vector<ParamPoly> n3_conditions();
/// True when every generator vanishes at the given parameter values.
bool n3_on_variety(const Rational& mu, const Rational& a11, const Rational& a40, const Rational& a50);

struct PerturbationSample {
    double eps;
    Real v3, v5, v7;
    Real g2; // sqrt(eps) * v5
    Real g4; // v7 / eps
};

struct PerturbationFit {
    Real c2; // g2 ~ c2 * eps
    Real c4; // g4 ~ c4 + O(sqrt(eps))
    Real residual2;
    Real residual4;
    std::vector<PerturbationSample> samples;
};

/// Perturbed n = 3 family x' = -y + a11 xy + a21 x^2 y + a40 x^4 + a50 x^5,
/// y' = eps x + x^5 + eps q20 x^2, scaled by x = d X, y = d sqrt(eps) Y,
/// t = tau/sqrt(eps) with d = eps^(1/4), and expanded with the n = 1 engine.
/// a50 defaults to -a11*a40. Throws NumericError when a fit residual exceeds tol.
PerturbationFit perturbation_probe(const Real& a11, const Real& a21, const Real& a40, const Real& q20,
                                   const std::vector<double>& eps_list, int digits = 40,
                                   std::optional<Real> a50 = std::nullopt, double tol = 1e-8);

} // namespace nilcenter
