#include "doctest.h"

#include "nilcenter/errors.hpp"
#include "nilcenter/io/report.hpp"

#include <random>

using namespace nilcenter;

namespace {

const char* kFamily = R"(# n = 3 family
param mu, a11, a21, a40, a50;
dx = -y + mu*x^3 + a11*x*y + a21*x^2*y + a40*x^4 + a50*x^5;
dy = x^5 + 3*mu*x^2*y;
)";

RunSettings quiet_settings() {
    RunSettings s;
    s.timing = false;
    return s;
}

ParamPoly from_json_poly(const Json& j, const AlphabetPtr& al) {
    ParamPoly p(al);
    for (const auto& t : j) {
        ParamPoly m = ParamPoly(al) + ParamPoly(parse_rational(t["coeff"].get<std::string>()));
        for (const auto& [name, e] : t["monomial"].items()) {
            for (int k = 0; k < e.get<int>(); ++k) m = m * ParamPoly::variable(al, name);
        }
        p += m;
    }
    return p;
}

} // namespace

TEST_CASE("parse: simplest field") {
    InputSpec s = parse_input("dx = y; dy = -x^3;");
    CHECK(s.params.empty());
    CHECK(s.dx == PlanePoly::y());
    CHECK(s.dy == PlanePoly::monomial(3, 0, ParamPoly(-1)));
    CHECK(s.form == FieldForm::General);
    CHECK(s.field().is_numeric());
}

TEST_CASE("parse: the n = 3 family becomes a quasi-homogeneous family member after mu = 0") {
    InputSpec s = parse_input(kFamily);
    CHECK(s.params == std::vector<std::string>{"mu", "a11", "a21", "a40", "a50"});
    InputSpec t = s.with_values({{"mu", Rational(0)}});
    CHECK(t.params == std::vector<std::string>{"a11", "a21", "a40", "a50"});
    t.form = FieldForm::QhFamily;
    t.n = 3;
    CHECK_NOTHROW(t.field().validate());
    CHECK_THROWS_AS([&] {
        InputSpec u = s;
        u.form = FieldForm::QhFamily;
        u.n = 3;
        u.field().validate();
    }(), DomainError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_input("dx = -y + x*y^");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 15);
        CHECK(std::string(e.what()).find("end of input") != std::string::npos);
    }
    try {
        parse_input("dx = y;\ndy = -x^3 + b*x;");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("b") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_input("dx = y; dy = -0.5*x^3;"), ParseError);
    InputSpec f = parse_input("dx = y; dy = -0.5*x^3;", ParseOptions{true});
    CHECK(f.dy == PlanePoly::monomial(3, 0, ParamPoly(Rational(-1, 2))));
    CHECK_THROWS_AS(parse_input("dx = y/x; dy = -x^3;"), ParseError);
    CHECK_THROWS_AS(parse_input("dx = y;"), ParseError);
    CHECK_THROWS_AS(parse_input("dx = y; dy = -x^3"), ParseError);
    CHECK_THROWS_AS(parse_input("param x; dx = y; dy = -x^3;"), ParseError);
    CHECK_THROWS_AS(parse_input("dx = y; dy = x^-3;"), ParseError);
    CHECK(parse_polynomial("(x + y)^2 - 2*x*y") == PlanePoly::x().pow(2) + PlanePoly::y().pow(2));
    CHECK(parse_polynomial("x/2 + 3/4*y") ==
          PlanePoly::monomial(1, 0, ParamPoly(Rational(1, 2))) + PlanePoly::monomial(0, 1, ParamPoly(Rational(3, 4))));
}

TEST_CASE("parse_assignments") {
    auto m = parse_assignments("a=1/2, b=-3,c=4/6");
    CHECK(m.at("a") == Rational(1, 2));
    CHECK(m.at("b") == Rational(-3));
    CHECK(m.at("c") == Rational(2, 3));
    CHECK_THROWS_AS(parse_assignments("a"), ParseError);
    CHECK_THROWS_AS(parse_assignments("a=0.5"), ParseError);
}

TEST_CASE("parse -> serialize -> parse is the identity") {
    std::vector<std::string> texts{
        "dx = y; dy = -x^3;",
        kFamily,
        "param a11, a21, a40, a50; form = qh-family; n = 3; digits = 40; kmax = 9; order = 20;"
        "dx = -y + a11*x*y + a21*x^2*y + a40*x^4 + a50*x^5; dy = x^5;",
        "param p; form = canonical-plus; n = 2; dx = y + p*x^2; dy = -2*x^3 + 2*p*x*y;",
    };
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> c(-9, 9), d(1, 5), e(0, 4);
    for (int it = 0; it < 30; ++it) {
        std::string t = "param a, b; dx = y";
        for (int k = 0; k < 4; ++k) {
            t += " + " + std::to_string(c(rng)) + "/" + std::to_string(d(rng)) + "*x^" + std::to_string(e(rng)) +
                 "*y^" + std::to_string(e(rng)) + (k % 2 ? "*a" : "*b^2");
        }
        t += "; dy = -x^3 - (a - b)^2*x*y;";
        texts.push_back(t);
    }
    for (const auto& t : texts) {
        InputSpec s = parse_input(t);
        std::string out = serialize_input(s);
        InputSpec back = parse_input(out);
        CAPTURE(out);
        CHECK(back == s);
        CHECK(serialize_input(back) == out);
    }
}

TEST_CASE("run: obstructions on the n = 3 family with mu = 0") {
    RunSettings s = quiet_settings();
    s.kmax = 12;
    s.set = {{"mu", Rational(0)}};
    Report r = run("obstructions", parse_input(kFamily), s);
    REQUIRE(r.exit == ExitCode::Ok);
    AlphabetPtr al = make_alphabet({"a11", "a21", "a40", "a50"});
    auto v = [&](const char* name) { return ParamPoly::variable(al, name); };
    std::map<int, ParamPoly> w;
    for (const auto& e : r.json["result"]["ledger"]["entries"]) w[e["k"].get<int>()] = from_json_poly(e["value"], al);
    for (int k = 3; k <= 8; ++k) CHECK(w.at(k).is_zero());
    CHECK(w.at(9) == v("a40") * Rational(2));
    CHECK(w.at(10) == (v("a40") * v("a11") + v("a50")) * Rational(2));
    CHECK(w.at(11).is_zero());
    const Json& red = r.json["result"]["reduced"];
    REQUIRE(red.size() == 1);
    CHECK(red[0]["k"] == 12);
    CHECK(from_json_poly(red[0]["reduced"], al) == v("a11") * v("a21") * v("a40") * Rational(2, 7));
    CHECK(r.text.find("w_9") != std::string::npos);
}

TEST_CASE("run: exit codes and commands") {
    RunSettings s = quiet_settings();
    s.gentrig_n = 1;
    Report g = run("gentrig", std::nullopt, s);
    CHECK(g.exit == ExitCode::Ok);
    {
        PrecisionScope scope(30);
        Real T(g.json["result"]["period"].get<std::string>());
        CHECK(abs(T - 2 * acos(Real(-1))) < Real(1e-28));
    }

    s = quiet_settings();
    s.set = {{"mu", Rational(1)}, {"a11", Rational(1)}, {"a21", Rational(1)}, {"a40", Rational(1)}, {"a50", Rational(1)}};
    Report c = run("classify", parse_input(kFamily), s);
    CHECK(c.exit == ExitCode::Ok);
    CHECK(c.json["result"]["verdict"]["status"] == "focus");
    CHECK(c.json["result"]["verdict"]["evidence"][1]["tag"] == "beta-rule");

    Report u = run("classify", parse_input(kFamily), quiet_settings());
    CHECK(u.exit == ExitCode::Undecided);
    CHECK(u.json["status"] == "undecided");

    Report saddle = run("classify", parse_input("dx = y; dy = x^3;"), quiet_settings());
    CHECK(saddle.exit == ExitCode::Domain);
    CHECK(saddle.json["status"] == "error");
    CHECK(saddle.json["exit_code"] == 3);

    Report bad = run("canonical", parse_input(kFamily), quiet_settings());
    CHECK(bad.exit == ExitCode::Domain);

    Report m = run("monodromy", parse_input("dx = y; dy = -x^3;"), quiet_settings());
    CHECK(m.exit == ExitCode::Ok);
    CHECK(m.json["result"]["monodromy"]["n"] == 2);

    CHECK(run("nonsense", std::nullopt, quiet_settings()).exit == ExitCode::Parse);
    CHECK(run("classify", std::nullopt, quiet_settings()).exit == ExitCode::Parse);
}

TEST_CASE("run: JSON is deterministic without timing") {
    RunSettings s = quiet_settings();
    s.set = {{"mu", Rational(0)}, {"a11", Rational(1)}, {"a21", Rational(0)}, {"a40", Rational(1)}, {"a50", Rational(0)}};
    for (const char* cmd : {"obstructions", "classify", "focal", "canonical"}) {
        Report a = run(cmd, parse_input(kFamily), s);
        Report b = run(cmd, parse_input(kFamily), s);
        CAPTURE(cmd);
        CHECK(a.exit == ExitCode::Ok);
        CHECK(dump(a.json) == dump(b.json));
        CHECK(a.text == b.text);
        CHECK_FALSE(a.json["provenance"].contains("timing_ms"));
        CHECK(a.json["schema"] == kReportSchema);
    }
    RunSettings t = s;
    t.timing = true;
    CHECK(run("monodromy", parse_input(kFamily), t).json["provenance"].contains("timing_ms"));
}

TEST_CASE("to_json orders polynomial terms") {
    AlphabetPtr al = make_alphabet({"a", "b"});
    ParamPoly p = ParamPoly::variable(al, "b") + ParamPoly::variable(al, "a") * Rational(3, 2);
    Json j = to_json(p);
    REQUIRE(j.size() == 2);
    CHECK(from_json_poly(j, al) == p);
    Json k = to_json(PlanePoly::monomial(0, 2, ParamPoly(1)) + PlanePoly::monomial(3, 0, ParamPoly(-2)));
    REQUIRE(k.size() == 2);
    CHECK(k[0]["i"] < k[1]["i"]);
}
