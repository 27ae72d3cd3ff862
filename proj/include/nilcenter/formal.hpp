#pragma once

#include "nilcenter/algebra/vector_field.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilcenter {

enum class LedgerKind { Omega, Lambda };
enum class VGauge { Unit, Vanishing };

/// Choice of the free y^d coefficients of H_d (d >= 3).
///  Zero:          all set to zero.
///  OddNormalized: each odd-index obstruction that depends on a still free
///                 kernel coefficient is cancelled by it; the rest are zero.
enum class HGauge { Zero, OddNormalized };
std::string to_string(HGauge g);
HGauge h_gauge_from_string(const std::string& s);

/// Obstructions of a formal first integral (Omega: X H = sum w_k x^k) or of a
/// formal inverse integrating factor (Lambda: X V - V div X = sum L_k x^k),
/// together with the constructed jet. Kernel components y^d of degree d >= 3
/// are set to zero.
struct ObstructionLedger {
    LedgerKind kind = LedgerKind::Omega;
    std::vector<std::pair<int, ParamPoly>> entries;
    PlanePoly jet;
    std::map<std::string, ParamPoly> free_coeffs;
    int kmax = 0;
    int y_sign = 1;
    std::string route; // "homogeneous" or "recurrence"

    /// Entry at index k (zero when k is inside the range but unlisted).
    ParamPoly at(int k) const;
};

/// Solves s*y*dp/dx + q = omega*x^d for homogeneous q of degree d, with the
/// y^d coefficient of p set to zero.
std::pair<PlanePoly, ParamPoly> solve_Tn(const PlanePoly& q, int s = 1);

/// H = y^2 + ... with X H = sum_{k=3..kmax} w_k x^k up to total degree kmax.
/// Fields tagged QhFamily use the coefficient recurrence; others the
/// homogeneous-degree solver.
ObstructionLedger build_H(const VectorField& vf, int kmax, HGauge gauge = HGauge::Zero);
/// `kernel` optionally fixes the y^d coefficient of H_d (default 0).
ObstructionLedger build_H_homogeneous(const VectorField& vf, int kmax, const std::map<int, ParamPoly>& kernel = {});
ObstructionLedger build_H_recurrence(const VectorField& vf, int kmax);

/// V with X V - V div X = sum_{k=1..kmax} L_k x^k. q01 and q02 stay symbolic,
/// q00 is 1 (Unit) or 0 (Vanishing).
ObstructionLedger build_V(const VectorField& vf, int kmax, VGauge gauge);
ObstructionLedger build_V_homogeneous(const VectorField& vf, int kmax, VGauge gauge);
ObstructionLedger build_V_recurrence(const VectorField& vf, int kmax, VGauge gauge);

/// X(jet) - sum entries x^k (Omega) or X(jet) - jet div X - sum entries x^k
/// (Lambda), truncated at total degree kmax. Zero for a correct ledger.
PlanePoly ledger_residual(const VectorField& vf, const ObstructionLedger& ledger);

/// Reduces value modulo generators by triangular substitution. Each generator,
/// after the previous substitutions and after dividing out the listed nonzero
/// factors, must contain a parameter occurring only in one linear term with
/// constant coefficient. Throws SymbolicError("ideal reduction unsupported") otherwise.
ParamPoly reduce_mod_ideal(const ParamPoly& value, const std::vector<ParamPoly>& generators,
                           const std::vector<std::string>& nonzero_factors = {});

struct FocusCertificate {
    bool certified = false;
    int index = 0; // first nonzero obstruction, 0 when all vanish
};

/// Focus when the first nonzero w_k has even k. Throws SymbolicError on symbolic entries.
FocusCertificate focus_certificate(const ObstructionLedger& ledger);

enum class Symmetry { ReversibleY, ReversibleX, None };
std::string to_string(Symmetry s);

/// ReversibleY: the field anticommutes with (x,y) -> (x,-y), i.e. x' odd in y
/// and y' even in y. ReversibleX: x' even in x and y' odd in x.
Symmetry symmetry_check(const VectorField& vf);

} // namespace nilcenter
