#include "nilcenter/io/report.hpp"

#include "nilcenter/errors.hpp"

#include <chrono>
#include <sstream>

namespace nilcenter {

Json to_json(const ParamPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json mono = Json::object();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i]) mono[p.alphabet()->name(i)] = e[i];
        }
        terms.push_back(Json{{"monomial", mono}, {"coeff", c.get_str()}});
    }
    return terms;
}

Json to_json(const PlanePoly& p) {
    Json terms = Json::array();
    for (const auto& [k, c] : p.terms()) terms.push_back(Json{{"i", k.first}, {"j", k.second}, {"coeff", to_json(c)}});
    return terms;
}

Json to_json(const Series1& s) {
    Json terms = Json::array();
    for (int k = 0; k <= s.order(); ++k) {
        if (!s[k].is_zero()) terms.push_back(Json{{"k", k}, {"coeff", to_json(s[k])}});
    }
    return Json{{"order", s.order()}, {"terms", terms}};
}

Json to_json(const Real& x, int digits) { return to_string(x, digits); }

Json to_json(const RealTerms& t, int digits) {
    Json terms = Json::array();
    for (const auto& [k, c] : t) terms.push_back(Json{{"i", k.first}, {"j", k.second}, {"value", to_json(c, digits)}});
    return terms;
}

Json to_json(const MonodromyReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["n"] = r.n ? Json(*r.n) : Json(nullptr);
    j["alpha"] = r.alpha ? Json(*r.alpha) : Json(nullptr);
    j["beta"] = r.beta ? Json(*r.beta) : Json(nullptr);
    j["a_tilde"] = to_json(r.a_tilde);
    j["b_tilde"] = to_json(r.b_tilde);
    j["b"] = to_json(r.b);
    j["delta"] = to_json(r.delta);
    j["delta_negative"] = r.delta_negative ? Json(*r.delta_negative) : Json(nullptr);
    j["truncation"] = r.truncation;
    j["jet_hypotheses"] = r.jet_hypotheses;
    j["flipped_y"] = r.flipped_y;
    j["note"] = r.note;
    return j;
}

Json to_json(const ObstructionLedger& L) {
    Json j;
    j["kind"] = L.kind == LedgerKind::Omega ? "omega" : "lambda";
    j["route"] = L.route;
    j["kmax"] = L.kmax;
    j["y_sign"] = L.y_sign;
    Json entries = Json::array();
    for (const auto& [k, w] : L.entries) entries.push_back(Json{{"k", k}, {"value", to_json(w)}});
    j["entries"] = entries;
    Json free = Json::object();
    for (const auto& [name, c] : L.free_coeffs) free[name] = to_json(c);
    j["free_coeffs"] = free;
    j["jet"] = to_json(L.jet);
    return j;
}

Json to_json(const CanonicalSystem& cs, int digits) {
    Json j;
    j["n"] = cs.n;
    j["sign"] = to_string(cs.sign);
    j["mu"] = to_json(cs.mu, digits);
    j["truncation"] = cs.truncation;
    j["flipped_y"] = cs.flipped_y;
    j["coeffs_a"] = to_json(cs.coeffs_a, digits);
    j["coeffs_b"] = to_json(cs.coeffs_b, digits);
    return j;
}

Json to_json(const FocalReport& f, int digits) {
    Json j;
    j["n"] = f.n;
    j["mu"] = to_json(f.mu, digits);
    j["digits"] = f.digits;
    j["steps"] = f.steps;
    Json vs = Json::array();
    for (std::size_t i = 0; i < f.vks.size(); ++i) {
        int k = f.vks[i].first;
        vs.push_back(Json{{"k", k}, {"value", to_json(f.v(k), digits)}, {"tolerance", to_json(f.tolerances[i], 6)}});
    }
    j["values"] = vs;
    if (f.first_significant)
        j["first_significant"] = Json{{"k", f.first_significant->first}, {"sign", f.first_significant->second}};
    else
        j["first_significant"] = nullptr;
    return j;
}

Json to_json(const Verdict& v, int digits) {
    Json j;
    j["status"] = to_string(v.status);
    j["likely_center"] = v.likely_center;
    Json ev = Json::array();
    for (const auto& e : v.evidence) ev.push_back(Json{{"tag", e.tag}, {"detail", e.detail}});
    j["evidence"] = ev;
    Json conds = Json::array();
    for (const auto& c : v.conditions) conds.push_back(to_json(c));
    j["conditions"] = conds;
    j["monodromy"] = v.monodromy ? to_json(*v.monodromy) : Json(nullptr);
    j["ledger"] = v.ledger ? to_json(*v.ledger) : Json(nullptr);
    j["canonical"] = v.canonical ? to_json(*v.canonical, digits) : Json(nullptr);
    j["focal"] = v.focal ? to_json(*v.focal, digits) : Json(nullptr);
    Json probe = Json::array();
    for (const auto& p : v.probe) {
        probe.push_back(Json{{"r0", to_json(p.r0, 6)},
                             {"d", p.d ? to_json(*p.d, digits) : Json(nullptr)},
                             {"error", to_json(p.error, 6)},
                             {"failure", p.failure}});
    }
    j["probe"] = probe;
    return j;
}

Json to_json(const InputSpec& s) {
    Json j;
    j["params"] = s.params;
    j["form"] = to_string(s.form);
    j["n"] = s.n ? Json(*s.n) : Json(nullptr);
    j["dx"] = to_json(s.dx);
    j["dy"] = to_json(s.dy);
    j["text"] = serialize_input(s);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

struct Ctx {
    const RunSettings& s;
    int digits;
    std::ostringstream text;
    Json result = Json::object();
    ExitCode exit = ExitCode::Ok;
};

int pick(int flag, const std::optional<int>& file, int fallback) {
    if (flag > 0) return flag;
    if (file) return *file;
    return fallback;
}

const InputSpec& need_input(const std::optional<InputSpec>& spec, const std::string& cmd) {
    if (!spec) throw std::invalid_argument("command '" + cmd + "' needs an input file");
    return *spec;
}

void need_numeric(const VectorField& vf, const std::string& cmd) {
    if (!vf.is_numeric())
        throw SymbolicError("command '" + cmd + "' needs numeric coefficients; fix parameters with --set");
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); }

void text_monodromy(std::ostream& os, const MonodromyReport& r) {
    os << "monodromy: " << to_string(r.verdict) << "\n";
    os << "  n = " << opt_int(r.n) << ", alpha = " << opt_int(r.alpha) << ", beta = " << opt_int(r.beta) << "\n";
    os << "  a~ = " << r.a_tilde << ", b~ = " << r.b_tilde << ", b = " << r.b << "\n";
    os << "  Delta = " << r.delta << "\n";
    if (r.flipped_y) os << "  input reflected (x, y) -> (x, -y)\n";
    if (!r.note.empty()) os << "  note: " << r.note << "\n";
}

void text_terms(std::ostream& os, const char* label, const RealTerms& t, int digits) {
    os << "  " << label << ":";
    if (t.empty()) os << " (none)";
    os << "\n";
    for (const auto& [k, c] : t) os << "    x^" << k.first << " y^" << k.second << ": " << to_string(c, digits) << "\n";
}

CanonicalSystem canonical_of(const VectorField& vf, const MonodromyReport& r, int cap, int kmax, int digits) {
    const int n = *r.n;
    try {
        return canonical_from_minus_field(vf, n, digits);
    } catch (const DomainError&) {
    }
    return rescale(to_canonical(vf, r, cap > 0 ? cap : default_canonical_cap(n, kmax), digits));
}

MonodromyReport monodromic(const VectorField& vf, int order) {
    MonodromyReport r = analyze_monodromy(vf, order);
    if (!is_monodromic(r.verdict) || !r.n)
        throw DomainError("origin is not (decidably) monodromic: " + to_string(r.verdict) +
                          (r.note.empty() ? "" : " (" + r.note + ")"));
    return r;
}

void cmd_monodromy(Ctx& c, const InputSpec& in) {
    VectorField vf = in.field();
    MonodromyReport r = analyze_monodromy(vf, pick(c.s.order, in.order, 0));
    c.result["monodromy"] = to_json(r);
    text_monodromy(c.text, r);
}

void cmd_canonical(Ctx& c, const InputSpec& in) {
    VectorField vf = in.field();
    MonodromyReport r = monodromic(vf, pick(c.s.order, in.order, 0));
    need_numeric(vf, "canonical");
    const int n = *r.n;
    const int kmax = pick(c.s.kmax, in.kmax, 0);
    const int cap = c.s.canonical_cap > 0 ? c.s.canonical_cap : default_canonical_cap(n, kmax);
    CanonicalSystem plus = to_canonical(vf, r, cap, c.digits + 10);
    CanonicalSystem minus = rescale(plus);
    c.result["monodromy"] = to_json(r);
    c.result["plus"] = to_json(plus, c.digits);
    c.result["minus"] = to_json(minus, c.digits);
    text_monodromy(c.text, r);
    for (const CanonicalSystem* cs : {&plus, &minus}) {
        c.text << "canonical (" << to_string(cs->sign) << "), n = " << cs->n << ", weighted cap " << cs->truncation
               << "\n";
        c.text << "  mu = " << to_string(cs->mu, c.digits) << "\n";
        text_terms(c.text, "a", cs->coeffs_a, c.digits);
        text_terms(c.text, "b", cs->coeffs_b, c.digits);
    }
}

// Each entry reduced modulo the earlier nonzero even-index entries, when the
// triangular reduction applies.
Json reductions(const ObstructionLedger& L, std::ostream& os) {
    Json out = Json::array();
    std::vector<ParamPoly> gens;
    for (const auto& [k, w] : L.entries) {
        os << "  w_" << k << " = " << w;
        if (!gens.empty() && !w.is_zero() && !w.is_constant()) {
            try {
                ParamPoly red = reduce_mod_ideal(w, gens);
                if (red != w) {
                    os << "  ==  " << red << "  mod earlier even-index entries";
                    out.push_back(Json{{"k", k}, {"reduced", to_json(red)}});
                }
            } catch (const SymbolicError&) {
            }
        }
        os << "\n";
        if (k % 2 == 0 && !w.is_zero() && !w.is_constant()) gens.push_back(w);
    }
    return out;
}

void cmd_obstructions(Ctx& c, const InputSpec& in) {
    VectorField vf = in.field();
    MonodromyReport r = analyze_monodromy(vf, pick(c.s.order, in.order, 0));
    const int kmax = pick(c.s.kmax, in.kmax, r.n ? 4 * *r.n : 12);
    ObstructionLedger L = build_H(vf, kmax, c.s.gauge);
    c.result["gauge"] = to_string(c.s.gauge);
    c.result["ledger"] = to_json(L);
    c.text << "omega ledger up to k = " << kmax << " (" << L.route << " route, gauge " << to_string(c.s.gauge) << ")\n";
    c.result["reduced"] = reductions(L, c.text);
    if (vf.is_numeric()) {
        FocusCertificate fc = focus_certificate(L);
        c.result["certificate"] = Json{{"certified", fc.certified}, {"index", fc.index}};
        c.text << (fc.certified ? "focus certified at w_" + std::to_string(fc.index) + "\n"
                                : fc.index ? "first nonzero entry w_" + std::to_string(fc.index) + " is odd: no certificate\n"
                                           : std::string("all entries vanish\n"));
    }
}

void cmd_iif(Ctx& c, const InputSpec& in) {
    VectorField vf = in.field();
    MonodromyReport r = analyze_monodromy(vf, pick(c.s.order, in.order, 0));
    const int kmax = pick(c.s.kmax, in.kmax, r.n ? 4 * *r.n : 12);
    ObstructionLedger L = build_V(vf, kmax, c.s.vgauge);
    c.result["gauge"] = c.s.vgauge == VGauge::Unit ? "unit" : "vanishing";
    c.result["ledger"] = to_json(L);
    c.text << "inverse integrating factor ledger up to k = " << kmax << " (" << L.route << " route, q00 = "
           << (c.s.vgauge == VGauge::Unit ? 1 : 0) << ")\n";
    for (const auto& [k, w] : L.entries) c.text << "  L_" << k << " = " << w << "\n";
    c.text << "  V = " << L.jet << "\n";
}

void cmd_focal(Ctx& c, const InputSpec& in) {
    VectorField vf = in.field();
    need_numeric(vf, "focal");
    MonodromyReport r = monodromic(vf, pick(c.s.order, in.order, 0));
    const int kmax = pick(c.s.kmax, in.kmax, 7);
    CanonicalSystem cs = canonical_of(vf, r, c.s.canonical_cap, kmax, c.digits + 10);
    FocalReport f = focal_values(cs, kmax, c.digits);
    c.result["canonical"] = to_json(cs, c.digits);
    c.result["focal"] = to_json(f, c.digits);
    c.text << "focal values, n = " << f.n << ", mu = " << to_string(f.mu, 12) << ", " << c.digits << " digits, "
           << f.steps << " steps\n";
    for (std::size_t i = 0; i < f.vks.size(); ++i) {
        int k = f.vks[i].first;
        c.text << "  v" << k << "(T) = " << to_string(f.v(k), c.digits) << "  (tol " << to_string(f.tolerances[i], 3)
               << ")\n";
    }
    if (f.first_significant)
        c.text << "first significant: v" << f.first_significant->first << ", sign "
               << (f.first_significant->second > 0 ? "+" : "-") << "\n";
    else
        c.text << "no significant focal value up to v" << kmax << "\n";
}

void cmd_gentrig(Ctx& c, const std::optional<InputSpec>& in) {
    int n = c.s.gentrig_n > 0 ? c.s.gentrig_n : (in && in->n ? *in->n : 0);
    if (n <= 0) throw std::invalid_argument("gentrig needs --n N");
    auto gt = gen_trig(n, c.digits);
    PrecisionScope scope(c.digits + 5);
    Real rel = abs(gt->return_time() - gt->period()) / gt->period();
    c.result["n"] = n;
    c.result["period"] = to_json(gt->period(), c.digits);
    c.result["return_time"] = to_json(gt->return_time(), c.digits);
    c.result["relative_mismatch"] = to_json(rel, 3);
    c.result["drift"] = to_json(gt->drift(), 3);
    c.result["order"] = gt->order();
    c.result["steps"] = gt->table().size();
    c.text << "generalized trigonometric functions, n = " << n << ", " << c.digits << " digits\n";
    c.text << "  T (Gamma form)  = " << to_string(gt->period(), c.digits) << "\n";
    c.text << "  first return    = " << to_string(gt->return_time(), c.digits) << "\n";
    c.text << "  rel. mismatch   = " << to_string(rel, 3) << "\n";
    c.text << "  invariant drift = " << to_string(gt->drift(), 3) << "\n";
}

ClassifySettings classify_settings(const Ctx& c, const std::optional<InputSpec>& in) {
    ClassifySettings cs;
    cs.digits = c.digits;
    cs.kmax = pick(c.s.kmax, in ? in->kmax : std::nullopt, cs.kmax);
    cs.monodromy_order = pick(c.s.order, in ? in->order : std::nullopt, 0);
    cs.canonical_cap = c.s.canonical_cap;
    cs.gauge = c.s.gauge;
    cs.probe_radii = c.s.probe_radii;
    return cs;
}

void text_verdict(std::ostream& os, const Verdict& v) {
    os << "verdict: " << to_string(v.status) << (v.likely_center ? " (likely center)" : "") << "\n";
    for (const auto& e : v.evidence) os << "  [" << e.tag << "] " << e.detail << "\n";
    if (!v.conditions.empty()) {
        os << "  center conditions (all must vanish):\n";
        for (const auto& g : v.conditions) os << "    " << g << "\n";
    }
}

void cmd_classify(Ctx& c, const InputSpec& in) {
    Verdict v = classify(in.field(), classify_settings(c, in));
    c.result["verdict"] = to_json(v, c.digits);
    text_verdict(c.text, v);
    if (v.status == VerdictStatus::Undecided) c.exit = ExitCode::Undecided;
}

void cmd_n3(Ctx& c, const std::optional<InputSpec>& in) {
    if (in) throw std::invalid_argument("n3 takes no input file; give parameter values with --set");
    Json gens = Json::array();
    c.text << "n = 3 family: x' = -y + mu x^3 + a11 x y + a21 x^2 y + a40 x^4 + a50 x^5, y' = x^5 + 3 mu x^2 y\n";
    c.text << "center variety generators:\n";
    for (const auto& g : n3_conditions()) {
        gens.push_back(to_json(g));
        c.text << "  " << g << "\n";
    }
    c.result["generators"] = gens;
    if (c.s.set.empty()) return;
    std::map<std::string, Rational> vals{{"mu", 0}, {"a11", 0}, {"a21", 0}, {"a40", 0}, {"a50", 0}};
    for (const auto& [k, v] : c.s.set) {
        if (!vals.count(k)) throw DomainError("n3 has no parameter '" + k + "'");
        vals[k] = v;
    }
    Json pt = Json::object();
    for (const auto& [k, v] : vals) pt[k] = v.get_str();
    bool on = n3_on_variety(vals["mu"], vals["a11"], vals["a40"], vals["a50"]);
    c.result["point"] = pt;
    c.result["on_variety"] = on;
    c.text << "point " << (on ? "lies" : "does not lie") << " on the center variety\n";
    VectorField vf = n3_family(vals["mu"], vals["a11"], vals["a21"], vals["a40"], vals["a50"]);
    Verdict v = classify(vf, classify_settings(c, std::nullopt));
    c.result["verdict"] = to_json(v, c.digits);
    text_verdict(c.text, v);
    if (v.status == VerdictStatus::Undecided) c.exit = ExitCode::Undecided;
}

Json settings_json(const RunSettings& s, int digits) {
    Json j;
    j["digits"] = digits;
    j["kmax"] = s.kmax;
    j["order"] = s.order;
    j["canonical_cap"] = s.canonical_cap;
    j["gentrig_n"] = s.gentrig_n;
    j["gauge"] = to_string(s.gauge);
    j["iif_gauge"] = s.vgauge == VGauge::Unit ? "unit" : "vanishing";
    j["probe_radii"] = s.probe_radii;
    Json set = Json::object();
    for (const auto& [k, v] : s.set) set[k] = v.get_str();
    j["set"] = set;
    return j;
}

} // namespace

Report run(const std::string& command, const std::optional<InputSpec>& spec_in, const RunSettings& settings) {
    auto t0 = std::chrono::steady_clock::now();
    std::optional<InputSpec> spec = spec_in;
    int digits = settings.digits > 0 ? settings.digits : (spec && spec->digits ? *spec->digits : default_digits());
    Ctx c{settings, digits, {}, Json::object(), ExitCode::Ok};
    Json report;
    report["schema"] = kReportSchema;
    report["command"] = command;
    Json error = nullptr;
    try {
        if (spec && !settings.set.empty()) spec = spec->with_values(settings.set);
        report["input"] = spec ? to_json(*spec) : Json(nullptr);
        if (command == "monodromy")
            cmd_monodromy(c, need_input(spec, command));
        else if (command == "canonical")
            cmd_canonical(c, need_input(spec, command));
        else if (command == "obstructions")
            cmd_obstructions(c, need_input(spec, command));
        else if (command == "iif")
            cmd_iif(c, need_input(spec, command));
        else if (command == "focal")
            cmd_focal(c, need_input(spec, command));
        else if (command == "gentrig")
            cmd_gentrig(c, spec);
        else if (command == "classify")
            cmd_classify(c, need_input(spec, command));
        else if (command == "n3")
            cmd_n3(c, spec);
        else
            throw std::invalid_argument("unknown command '" + command + "'");
    } catch (const ParseError& e) {
        c.exit = ExitCode::Parse;
        error = Json{{"kind", "parse"}, {"message", e.what()}};
    } catch (const std::invalid_argument& e) {
        c.exit = ExitCode::Parse;
        error = Json{{"kind", "usage"}, {"message", e.what()}};
    } catch (const DomainError& e) {
        c.exit = ExitCode::Domain;
        error = Json{{"kind", dynamic_cast<const NumericError*>(&e)    ? "numeric"
                              : dynamic_cast<const SymbolicError*>(&e) ? "symbolic"
                              : dynamic_cast<const InconclusiveError*>(&e) ? "inconclusive"
                                                                             : "domain"},
                     {"message", e.what()}};
    } catch (const Error& e) {
        c.exit = ExitCode::Domain;
        error = Json{{"kind", "error"}, {"message", e.what()}};
    }
    if (!report.contains("input")) report["input"] = nullptr;
    report["status"] = error.is_null() ? (c.exit == ExitCode::Undecided ? "undecided" : "ok") : "error";
    report["exit_code"] = static_cast<int>(c.exit);
    report["result"] = c.result;
    report["error"] = error;
    Json prov;
    prov["tool"] = "nilcenter";
    prov["version"] = kToolVersion;
    prov["settings"] = settings_json(settings, digits);
    if (settings.timing) {
        auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        prov["timing_ms"] = static_cast<long long>(dt);
    }
    report["provenance"] = prov;

    Report out;
    out.json = std::move(report);
    out.text = c.text.str();
    if (!error.is_null()) out.text += "error: " + error["message"].get<std::string>() + "\n";
    out.exit = c.exit;
    return out;
}

} // namespace nilcenter
