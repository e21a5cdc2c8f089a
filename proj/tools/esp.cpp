#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esp/dickson.hpp"
#include "esp/quillen.hpp"
#include "esp/suites.hpp"
#include "esp/theorems.hpp"

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw esp::UsageError("config: expected a boolean, got '" + v + "'");
}

// simple key = value lines; '#' starts a comment
void apply_config_file(const std::string& path, esp::SuiteConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw esp::UsageError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::string s = trim(line.substr(0, line.find('#')));
        if (s.empty()) continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw esp::UsageError("config: expected key = value, got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "p")
            cfg.p = std::stoi(value);
        else if (key == "n")
            cfg.n = std::stoi(value);
        else if (key == "suite") {
            std::string cur;
            for (char c : value + ",") {
                if (c == ',') {
                    if (!trim(cur).empty()) cfg.suites.push_back(trim(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        } else if (key == "degree-bound" || key == "degree_bound")
            cfg.degree_bound = std::stoi(value);
        else if (key == "jobs")
            cfg.jobs = std::stoi(value);
        else if (key == "format")
            cfg.format = value;
        else if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "allow-large" || key == "allow_large")
            cfg.allow_large = parse_bool(value);
        else if (key == "no-timing" || key == "no_timing")
            cfg.no_timing = parse_bool(value);
        else
            throw esp::UsageError("config: unknown key '" + key + "'");
    }
}

esp::RingPtr coord_ring(int p, int m) {
    std::vector<std::string> vars;
    for (int i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
    return esp::PolyRing::make(p, vars);
}

std::vector<int> parse_phi(const std::string& text, std::size_t want) {
    std::vector<int> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    if (out.size() != want)
        throw esp::UsageError("phi needs " + std::to_string(want) +
                              " comma-separated coefficients");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants and restriction diagrams for extraspecial p-groups"};
    app.require_subcommand(1);

    esp::SuiteConfig cfg;
    std::string config_path;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--config", config_path, "config file with key = value lines");
    verify->add_option("--p", cfg.p, "odd prime, 3..13");
    verify->add_option("--n", cfg.n, "symplectic rank");
    verify->add_option("--suite", cfg.suites,
                       "suite name (repeatable, comma-separable); one of: dickson "
                       "symplectic thm52 prop64 lemma71 thm72 prop81 lemma83 "
                       "kernel all")
        ->delimiter(',');
    verify->add_option("--degree-bound", cfg.degree_bound,
                       "bound for degreewise ideal comparisons");
    verify->add_option("--jobs", cfg.jobs, "parallel verifier instances");
    verify->add_option("--format", cfg.format, "text or json");
    verify->add_option("--seed", cfg.seed, "seed for sampled checks");
    verify->add_flag("--allow-large", cfg.allow_large, "permit (p,n)=(3,3)");
    verify->add_flag("--no-timing", cfg.no_timing,
                     "report elapsed_ms as 0 (byte-stable output)");

    std::string what, phi_text;
    int sp = 3, sm = 2, sn = 1, sr = 0, si = 1;
    auto* show = app.add_subcommand("show", "print one invariant or class");
    show->add_option("what", what, "dickson | mui | zeta | chi | kappa")->required();
    show->add_option("--p", sp, "odd prime");
    show->add_option("--m", sm, "number of variables (dickson, mui)");
    show->add_option("--n", sn, "symplectic rank (zeta, chi, kappa)");
    show->add_option("--r", sr, "Dickson / class index");
    show->add_option("--i", si, "zeta index");
    show->add_option("--phi", phi_text, "comma-separated coefficients in E*");

    // config values act as defaults: load before the flags so explicit
    // command-line options override them
    try {
        for (int i = 1; i < argc; ++i) {
            std::string a = argv[i];
            if (a == "--config" && i + 1 < argc)
                apply_config_file(argv[i + 1], cfg);
            else if (a.rfind("--config=", 0) == 0)
                apply_config_file(a.substr(9), cfg);
        }
    } catch (const esp::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) return esp::run_suites(cfg, std::cout, std::cerr);

        // show
        if (what == "dickson") {
            esp::RingPtr ring = coord_ring(sp, sm);
            std::vector<esp::FpPoly> gens;
            for (int k = 0; k < sm; ++k)
                gens.push_back(esp::FpPoly::variable(ring, static_cast<std::size_t>(k)));
            std::cout << esp::dickson_invariant(ring, gens, sr).str() << "\n";
        } else if (what == "mui") {
            esp::RingPtr base = coord_ring(sp, sm);
            esp::RingPtr ext = esp::extend_ring(base, "X");
            std::vector<esp::FpPoly> gens;
            for (int k = 0; k < sm; ++k)
                gens.push_back(esp::FpPoly::variable(ext, static_cast<std::size_t>(k)));
            std::cout << esp::mui_poly(gens, esp::FpPoly::variable(ext, "X")).str()
                      << "\n";
        } else if (what == "zeta") {
            esp::SpacePtr E = esp::SymplecticSpace::make(sp, sn);
            std::cout << esp::zeta(*E, si).str() << "\n";
        } else if (what == "kappa") {
            esp::SpacePtr E = esp::SymplecticSpace::make(sp, sn);
            std::cout << esp::class_kappa(E, sr).str() << "\n";
        } else if (what == "chi") {
            esp::SpacePtr E = esp::SymplecticSpace::make(sp, sn);
            std::vector<int> phi = parse_phi(phi_text, E->dim());
            std::cout << esp::class_chi(E, sr, phi).str() << "\n";
        } else {
            std::cerr << "error: unknown object '" << what << "'\n";
            return 2;
        }
    } catch (const esp::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
