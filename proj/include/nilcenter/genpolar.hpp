#pragma once

#include "nilcenter/canonical.hpp"
#include "nilcenter/numeric/taylor.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilcenter {

/// Generalized trigonometric functions: Cs' = -Sn, Sn' = Cs^(2n-1), Cs 0 = 1, Sn 0 = 0.
class GenTrig {
public:
    GenTrig(int n, int digits);

    int n() const { return n_; }
    int digits() const { return digits_; }
    int order() const { return order_; }
    /// Period from the Gamma-function closed form.
    const Real& period() const { return period_; }
    /// First return time of the integrated orbit (Sn crossing 0 upwards).
    const Real& return_time() const { return return_time_; }
    /// max |Cs^(2n) + n Sn^2 - 1| over the checkpoints.
    const Real& drift() const { return drift_; }
    const std::vector<TaylorStep>& table() const { return table_; }

    /// (Cs theta, Sn theta) for any real theta.
    std::pair<Real, Real> eval(const Real& theta) const;

    /// Integral of f(theta, Cs, Sn) over [a, b] with 0 <= a <= b <= period,
    /// by Gauss-Legendre rules on every checkpoint interval.
    Real integrate(const std::function<Real(const Real&, const Real&, const Real&)>& f, const Real& a,
                   const Real& b) const;

private:
    int n_;
    int digits_;
    int order_ = 0;
    Real period_;
    Real return_time_;
    Real drift_;
    std::vector<TaylorStep> table_;
};

/// T = 2 sqrt(pi/n) Gamma(1/(2n)) / Gamma((n+1)/(2n)) at the current precision.
Real gen_trig_period(int n);

/// Cached evaluator per (n, digits). Throws NumericError when the period check
/// or the invariant drift exceeds the tolerance budget.
std::shared_ptr<const GenTrig> gen_trig(int n, int digits);

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
const std::vector<std::pair<Real, Real>>& gauss_legendre(int m, int digits);

/// Integral over a period of Sn^p Cs^q (closed form; exactly 0 when p or q is odd),
/// at the current default precision.
Real trig_moment(int p, int q, int n);

struct V1Quadrature {
    Real v1;
    Real A2; // integral of Cs^(n-1) / (n (1 - (n-1) Sn^2)) over a period
};

/// v1(T) of the plus-convention canonical form by quadrature of the
/// variational equation: exp(-int (mu Cs^(n-1) - (n-1) Cs^(2n-1) Sn) / (n (1 - (n-1) Sn^2))).
V1Quadrature v1_quadrature(int n, const Real& mu, int digits);

/// Polynomial in (Cs, Sn) with Cs powers reduced below 2n by Cs^(2n) = 1 - n Sn^2.
using TrigPoly = std::map<std::pair<int, int>, Real>;

/// Expansion of dr/dtheta = r N(r, theta) / D(r, theta) in generalized polar
/// coordinates x = r Cs, y = r^n Sn for x' = -y + ..., y' = x^(2n-1) + ... with
/// N = sum r^k N_k, D = sum r^k D_k.
struct PolarExpansion {
    int n = 0;
    std::vector<TrigPoly> N;
    std::vector<TrigPoly> D;
};

/// Complete right-hand sides (dx, dy); kmax_order limits the r-order kept
/// (negative: keep everything). Throws DomainError when a term lies below the
/// weighted degree of the leading part.
PolarExpansion polar_expansion(int n, const RealTerms& dx, const RealTerms& dy, int max_order = -1);

struct FocalReport {
    int n = 0;
    Real mu;
    /// (k, value). The k = 1 entry holds v1(T) - 1 (see v1_minus_one).
    std::vector<std::pair<int, Real>> vks;
    bool v1_minus_one = true;
    std::vector<std::pair<Real, Real>> displacement_samples;
    std::optional<std::pair<int, int>> first_significant; // (k, sign)
    std::vector<Real> tolerances;                          // per k, same order as vks
    int digits = 0;
    long steps = 0;

    /// v_k(T) with the v1 convention undone (v1 -> v1(T)).
    Real v(int k) const;
};

/// Absolute tolerance used for |v_k(T)| at the given working precision.
Real focal_tolerance(int k, int digits);

/// Focal values v_1..v_kmax of the minus-form system (a plus-convention system
/// is rescaled first).
FocalReport focal_values(const CanonicalSystem& cs, int kmax, int digits);
/// Same for a numeric quasi-homogeneous family member or any field with the minus-form leading part.
FocalReport focal_values(const VectorField& vf, int kmax, int digits);
/// Generic entry point on complete right-hand sides with leading part (-y, x^(2n-1)) (n >= 1).
FocalReport focal_values(int n, const RealTerms& dx, const RealTerms& dy, int kmax, int digits,
                         const Real& mu = Real(0));

struct V3Formula {
    Real value;       // int_0^T h1 R_3n + R_(3n+1)
    Real bracket1;    // a_(n+2,0) + a_(n+1,0)(a11 + 2 b02)
    Real bracket2;    // b_(n+1,1) + b_(n,1)(a11 + 2 b02)
    Real combination; // (n+2) bracket1 + bracket2
};

/// v3(T) from R_3n, R_(3n+1), Theta_(2n+1) of a minus-form system with mu = 0,
/// with h1 = -int_0^theta (Theta'_(2n+1) + (2n+1) R_3n). n must be odd.
V3Formula v3_formula(int n, const RealTerms& a_hat, const RealTerms& b_hat, int digits);
V3Formula v3_formula(const CanonicalSystem& cs);

struct ProbePoint {
    Real r0;
    std::optional<Real> d; // r(T) - r0
    Real error;            // difference against a run with 10 more digits
    std::string failure;   // non-empty when the point failed
};

/// Nonlinear return map in generalized polar coordinates.
std::vector<ProbePoint> poincare_probe(const CanonicalSystem& cs, const std::vector<Real>& r0s, int digits);
std::vector<ProbePoint> poincare_probe(int n, const RealTerms& dx, const RealTerms& dy, const std::vector<Real>& r0s,
                                       int digits);

/// Complete right-hand sides of a numeric field.
RealTerms real_terms(const PlanePoly& p);

} // namespace nilcenter
