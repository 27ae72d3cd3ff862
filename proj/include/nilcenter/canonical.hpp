#pragma once

#include "nilcenter/algebra/vector_field.hpp"
#include "nilcenter/monodromy.hpp"
#include "nilcenter/numeric/real.hpp"

#include <map>
#include <string>
#include <utility>

namespace nilcenter {

/// Plus:  x' = y + mu x^n + sum a_ij x^i y^j,  y' = -n x^(2n-1) + n mu x^(n-1) y + sum b_ij x^i y^j
/// Minus: x' = -y + mu x^n + sum a_ij x^i y^j, y' = x^(2n-1) + n mu x^(n-1) y + sum b_ij x^i y^j
enum class SignConvention { Plus, Minus };
std::string to_string(SignConvention s);

using RealTerms = std::map<std::pair<int, int>, Real>;

/// Canonical form data. The fixed leading part is implicit: coeffs_a holds the
/// x' terms with i+nj >= n+1, coeffs_b the y' terms with i+nj >= 2n.
struct CanonicalSystem {
    int n = 0;
    Real mu;
    RealTerms coeffs_a;
    RealTerms coeffs_b;
    SignConvention sign = SignConvention::Plus;
    int digits = 60;
    int truncation = 0;     // max weighted degree i+nj retained
    bool flipped_y = false; // the input was reflected (x,y) -> (x,-y) first

    /// Complete right-hand sides (fixed part included).
    RealTerms full_dx() const;
    RealTerms full_dy() const;

    /// Throws DomainError when a key violates the weighted-degree bounds.
    void validate() const;

    /// Exact field with every real coefficient replaced by its best rational
    /// approximation with denominator below 10^rational_digits.
    VectorField to_field(int rational_digits) const;
};

/// Default cap: weighted degree 2(2n-1), raised so that focal values up to
/// kmax can be computed (2n + kmax - 2).
int default_canonical_cap(int n, int kmax = 0);

/// Monodromic field -> plus canonical form: exact shift y -> y - F(x), then y -> y - (b/2n) x^n,
/// then the real scaling (x, y) -> (s x, s y) with s = |A|^(1/(2(n-1))), A = Delta/(4n^2).
/// cap <= 0 selects default_canonical_cap(n).
CanonicalSystem to_canonical(const VectorField& vf, const MonodromyReport& report, int cap = 0, int digits = 60);

/// Plus -> minus canonical form via u = n^(1/(2n-2)) x, v = -n^(1/(2n-2)) y.
CanonicalSystem rescale(const CanonicalSystem& cs);
/// Minus -> plus canonical form.
CanonicalSystem rescale_inverse(const CanonicalSystem& cs);

/// Reads a numeric field that already has the minus-form leading part
/// x' = -y + mu x^n + ..., y' = x^(2n-1) + n mu x^(n-1) y + ... (QhFamily,
/// CanonicalMinus and the n = 3 family). Throws DomainError otherwise.
CanonicalSystem canonical_from_minus_field(const VectorField& vf, int n, int digits = 60);

} // namespace nilcenter
