#pragma once

#include "nilcenter/classify.hpp"
#include "nilcenter/io/input.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilcenter {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "nilcenter-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Ordered term lists (lexicographic in the exponents).
Json to_json(const ParamPoly& p);
Json to_json(const PlanePoly& p);
Json to_json(const Series1& s);
Json to_json(const Real& x, int digits);
Json to_json(const RealTerms& t, int digits);
Json to_json(const MonodromyReport& r);
Json to_json(const ObstructionLedger& L);
Json to_json(const CanonicalSystem& cs, int digits);
Json to_json(const FocalReport& f, int digits);
Json to_json(const Verdict& v, int digits);
Json to_json(const InputSpec& s);

enum class ExitCode : int { Ok = 0, Parse = 2, Domain = 3, Undecided = 4 };

struct RunSettings {
    int digits = 0;            // <= 0: input file, then NILCENTER_DIGITS, then 30
    int kmax = 0;              // obstruction index cap (obstructions, iif) or focal kmax (focal, classify)
    int order = 0;             // monodromy series order
    int canonical_cap = 0;
    int gentrig_n = 0;
    HGauge gauge = HGauge::OddNormalized;
    VGauge vgauge = VGauge::Unit;
    std::vector<double> probe_radii{0.05, 0.025};
    std::map<std::string, Rational> set; // parameter values substituted before running
    bool timing = true;                  // include provenance.timing_ms
};

struct Report {
    Json json;
    std::string text;
    ExitCode exit = ExitCode::Ok;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"monodromy", "canonical", "obstructions", "iif",
                                            "focal",     "gentrig",   "classify",     "n3"};
    return c;
}

/// Runs one pipeline stage. Module errors are caught and reported through
/// Report::exit (2 parse, 3 math domain, 4 undecided verdict).
Report run(const std::string& command, const std::optional<InputSpec>& spec, const RunSettings& settings);

/// Deterministic JSON text (two-space indent, trailing newline).
std::string dump(const Json& j);

} // namespace nilcenter
