#pragma once

#include "nilcenter/algebra/plane_poly.hpp"
#include "nilcenter/algebra/series.hpp"

#include <map>
#include <optional>
#include <string>

namespace nilcenter {

/// Normal-form tag of a planar field.
///  General:        x' = s*y + P, y' = Q with s = +1 or -1 and zero 1-jets of P, Q.
///  CanonicalPlus:  x' = y + mu x^n + ..., y' = -n x^(2n-1) + n mu x^(n-1) y + ...
///  CanonicalMinus: x' = -y + mu x^n + ..., y' = x^(2n-1) + n mu x^(n-1) y + ...
///  QhFamily:       x' = -y + y*sum a_k1 x^k + sum a_k0 x^k, y' = x^(2n-1).
enum class FieldForm { General, CanonicalPlus, CanonicalMinus, QhFamily };

std::string to_string(FieldForm f);
FieldForm field_form_from_string(const std::string& s);

/// Polynomial vector field (dx, dy). Both components are stored as complete
/// right-hand sides, the linear y term included.
struct VectorField {
    PlanePoly dx;
    PlanePoly dy;
    FieldForm form = FieldForm::General;
    std::optional<int> n;

    VectorField() = default;
    VectorField(PlanePoly dx_, PlanePoly dy_, FieldForm f = FieldForm::General, std::optional<int> n_ = std::nullopt);

    /// Coefficient s of the linear term s*y in dx. Throws DomainError unless
    /// the linear part is exactly (s*y, 0) with s = +1 or -1.
    int y_sign() const;
    /// dx - s*y.
    PlanePoly P() const;
    const PlanePoly& Q() const { return dy; }
    PlanePoly divergence() const;

    /// Checks the invariants of the form tag; throws DomainError.
    void validate() const;

    /// (x, y) -> (x, -y). Turns x' = -y + ... into x' = y + ... without a time flip.
    VectorField flip_y() const;

    AlphabetPtr alphabet() const;
    bool is_numeric() const { return dx.is_numeric() && dy.is_numeric(); }
    VectorField substitute_params(const std::map<std::string, Rational>& values) const;
    VectorField rebase(const AlphabetPtr& a) const;
};

/// Parameter name of the coefficient of x^i y^j in the quasi-homogeneous family.
std::string qh_param_name(int i, int j);

/// Symbolic quasi-homogeneous family of Andreev number n (n >= 2) in the
/// orientation x' = -y + ..., y' = x^(2n-1), with parameters
/// a11..a(n-1)1 and a(n+1)0..a(2n-1)0.
VectorField qh_family(int n);

/// Symbolic n = 3 family with parameters mu, a11, a21, a40, a50:
/// x' = -y + mu x^3 + a11 x y + a21 x^2 y + a40 x^4 + a50 x^5, y' = x^5 + 3 mu x^2 y.
VectorField n3_family();
/// Same family with numeric parameters.
VectorField n3_family(const Rational& mu, const Rational& a11, const Rational& a21, const Rational& a40,
                      const Rational& a50);

/// Splits p into (1,n)-weighted homogeneous parts keyed by weighted degree.
std::map<int, PlanePoly> qh_decompose(const PlanePoly& p, int n);

/// p(x, F(x)) up to x^N.
Series1 compose_series(const PlanePoly& p, const Series1& F, int N);

/// Solution y = F(x) = O(x^2) of s*y + P(x, y) = 0, truncated at order N.
Series1 implicit_solve_F(const VectorField& vf, int N);

} // namespace nilcenter
