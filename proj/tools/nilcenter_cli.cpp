#include "nilcenter/errors.hpp"
#include "nilcenter/io/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace nilcenter;

namespace {

std::string read_all(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool write_file(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        return true;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << data;
    return static_cast<bool>(out);
}

// A parse failure before any command ran still yields a report.
Report parse_failure(const std::string& command, const std::string& what, const RunSettings& s) {
    Report r = run(command, std::nullopt, s);
    r.exit = ExitCode::Parse;
    r.json["status"] = "error";
    r.json["exit_code"] = 2;
    r.json["result"] = Json::object();
    r.json["error"] = Json{{"kind", "parse"}, {"message", what}};
    r.text = "error: " + what + "\n";
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilcenter: center-focus analysis of nilpotent singular points"};
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string command;
    std::string input;
    std::string json_path;
    std::string batch_path;
    std::string set_text;
    std::string gauge = "odd";
    std::string iif_gauge = "unit";
    bool allow_float = false;
    bool quiet = false;
    RunSettings s;

    app.add_option("command", command, "monodromy | canonical | obstructions | iif | focal | gentrig | classify | n3")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("input", input, "input file ('-' for stdin)");
    app.add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
    app.add_option("--batch", batch_path, "run on every line of FILE (one input per line)");
    app.add_option("--set", set_text, "parameter values, e.g. a11=1,a40=-1/2");
    app.add_option("--digits", s.digits, "working precision in decimal digits (default NILCENTER_DIGITS or 30)")
        ->check(CLI::Range(10, 2000));
    app.add_option("--kmax", s.kmax, "highest obstruction index, or highest focal value")->check(CLI::Range(1, 200));
    app.add_option("--order", s.order, "series order for the monodromy analysis")->check(CLI::Range(1, 1000));
    app.add_option("--cap", s.canonical_cap, "weighted-degree cap of the canonical form")->check(CLI::Range(1, 400));
    app.add_option("--n", s.gentrig_n, "Andreev number for gentrig")->check(CLI::Range(1, 64));
    app.add_option("--gauge", gauge, "kernel gauge of the first integral: zero | odd")
        ->check(CLI::IsMember({"zero", "odd"}));
    app.add_option("--iif-gauge", iif_gauge, "q00 of the inverse integrating factor: unit | vanishing")
        ->check(CLI::IsMember({"unit", "vanishing"}));
    app.add_option("--probe-radii", s.probe_radii, "starting radii of the return-map probe");
    app.add_flag("--allow-float", allow_float, "accept decimal literals (converted exactly)");
    app.add_flag("--no-timing", [&](std::int64_t) { s.timing = false; }, "omit timing from the JSON provenance");
    app.add_flag("-q,--quiet", quiet, "suppress the text report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::Parse);
    }
    s.gauge = gauge == "zero" ? HGauge::Zero : HGauge::OddNormalized;
    s.vgauge = iif_gauge == "unit" ? VGauge::Unit : VGauge::Vanishing;
    ParseOptions popts{allow_float};

    try {
        if (!set_text.empty()) s.set = parse_assignments(set_text, popts);
    } catch (const ParseError& e) {
        std::cerr << "--set: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Parse);
    }

    auto run_text = [&](const std::string& text) -> Report {
        InputSpec spec;
        try {
            spec = parse_input(text, popts);
        } catch (const ParseError& e) {
            return parse_failure(command, e.what(), s);
        }
        return run(command, spec, s);
    };

    std::vector<Report> reports;
    try {
        if (!batch_path.empty()) {
            std::istringstream lines(read_all(batch_path));
            std::string line;
            while (std::getline(lines, line)) {
                auto p = line.find_first_not_of(" \t\r");
                if (p == std::string::npos || line[p] == '#') continue;
                reports.push_back(run_text(line));
            }
        } else if (!input.empty()) {
            reports.push_back(run_text(read_all(input)));
        } else {
            reports.push_back(run(command, std::nullopt, s));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Parse);
    }

    int exit_code = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!quiet) {
            if (reports.size() > 1 || !batch_path.empty()) std::cout << "# item " << i + 1 << "\n";
            std::cout << reports[i].text;
        } else if (reports[i].exit != ExitCode::Ok) {
            std::cerr << reports[i].text;
        }
        exit_code = std::max(exit_code, static_cast<int>(reports[i].exit));
    }

    if (!json_path.empty()) {
        Json out;
        if (batch_path.empty()) {
            out = reports.front().json;
        } else {
            out["schema"] = kReportSchema;
            out["batch"] = Json::array();
            for (const auto& r : reports) out["batch"].push_back(r.json);
        }
        if (!write_file(json_path, dump(out))) {
            std::cerr << "error: cannot write '" << json_path << "'\n";
            return static_cast<int>(ExitCode::Domain);
        }
    }
    return exit_code;
}
