#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvetower/report.hpp"

namespace {

using namespace curvetower;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitGerm = 3;
constexpr int kExitNonRational = 4;
constexpr int kExitPrecision = 5;

long max_degree_cap() {
    const char* env = std::getenv("CURVETOWER_MAX_DEGREE");
    if (!env) return 64;
    try {
        return std::stol(env);
    } catch (...) {
        return 64;
    }
}

std::string read_poly_arg(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return arg;
}

BiPoly parse_checked(const std::string& text, CoefRing ring) {
    BiPoly p = parse_bipoly(text, ring);
    long cap = max_degree_cap();
    if (p.deg_x() > cap || p.deg_y() > cap)
        throw GermError("input degree exceeds CURVETOWER_MAX_DEGREE = " + std::to_string(cap));
    return p;
}

int run_guarded(const std::function<std::string()>& action) {
    try {
        std::cout << action();
        return kExitOk;
    } catch (const SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonRationalRoot& e) {
        std::cerr << "non-rational root: " << e.what() << "\n";
        return kExitNonRational;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const GermError& e) {
        std::cerr << "germ error: " << e.what() << "\n";
        return kExitGerm;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGerm;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvetower: exact analyzer for plane curve singularities"};
    app.require_subcommand(1);

    std::string poly, with_poly, family, format = "text";
    long index = 0, deform_m = 0;
    bool with_table = false, with_diagram = false, with_oracle = false, timing = false;
    bool inf_ams = false, inf_classify = false;
    int max_precision = 6;
    std::string weights_csv, batch_file;

    auto* analyze = app.add_subcommand("analyze", "tower, roots, Puiseux pairs, zeta, mu");
    analyze->add_option("--poly", poly, "polynomial expression (or - for stdin)")->required();
    analyze->add_option("--format", format, "text|json");
    analyze->add_flag("--with-table", with_table, "include the intersection table");
    analyze->add_flag("--with-diagram", with_diagram, "include the ASCII Newton diagram");
    analyze->add_flag("--timing", timing, "include timing in JSON output");
    analyze->add_option("--max-precision", max_precision, "cap on precision retries");
    analyze->add_option("--batch", batch_file, "file with one polynomial per line");

    auto* roots = app.add_subcommand("roots", "approximate root H_a");
    roots->add_option("--poly", poly)->required();
    roots->add_option("--index", index, "divisor a of deg_y f")->required();

    auto* intersect = app.add_subcommand("intersect", "local intersection number at the origin");
    intersect->add_option("--poly", poly)->required();
    intersect->add_option("--with", with_poly)->required();
    intersect->add_flag("--oracle", with_oracle, "also run the resultant oracle");

    auto* equising = app.add_subcommand("equising", "equisingularity certification");
    equising->add_option("--family", family, "f(x,y,t) over Q[t]");
    equising->add_option("--deform", poly, "base polynomial f(x,y)");
    equising->add_option("--m", deform_m, "deformation exponent for f + t x^m");

    auto* infinity = app.add_subcommand("infinity", "analysis at infinity");
    infinity->add_option("--poly", poly)->required();
    infinity->add_flag("--ams", inf_ams, "embedded-line test");
    infinity->add_flag("--classify", inf_classify, "low-genus classification");

    auto* generate = app.add_subcommand("generate", "embedded-line family curve");
    generate->add_option("--weights", weights_csv, "comma-separated a_1,a_2,...")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    if (analyze->parsed()) {
        AnalyzeOptions opts;
        opts.with_table = with_table;
        opts.with_diagram = with_diagram;
        opts.timing = timing;
        opts.max_precision_retries = max_precision;
        bool json = (format == "json");
        if (!batch_file.empty()) {
            std::ifstream in(batch_file);
            if (!in) {
                std::cerr << "cannot open batch file\n";
                return kExitParse;
            }
            std::vector<std::string> lines;
            for (std::string line; std::getline(in, line);)
                if (!line.empty()) lines.push_back(line);
            // independent analyses, deterministic input-ordered assembly
            std::vector<std::future<std::pair<int, std::string>>> futs;
            futs.reserve(lines.size());
            for (const auto& line : lines) {
                futs.push_back(std::async(std::launch::async, [line, opts, json] {
                    std::ostringstream os;
                    int rc = kExitOk;
                    try {
                        BiPoly f = parse_checked(line, CoefRing::Q);
                        os << (json ? analyze_json(f, opts) : analyze_text(f, opts));
                    } catch (const Error& e) {
                        os << "error: " << e.what() << "\n";
                        rc = kExitGerm;
                    }
                    return std::make_pair(rc, os.str());
                }));
            }
            int rc = kExitOk;
            for (auto& fut : futs) {
                auto [code, text] = fut.get();
                std::cout << text;
                if (code != kExitOk) rc = code;
            }
            return rc;
        }
        return run_guarded([&] {
            BiPoly f = parse_checked(read_poly_arg(poly), CoefRing::Q);
            return json ? analyze_json(f, opts) : analyze_text(f, opts);
        });
    }
    if (roots->parsed()) {
        return run_guarded([&] {
            BiPoly f = parse_checked(read_poly_arg(poly), CoefRing::Q);
            return roots_text(f, index);
        });
    }
    if (intersect->parsed()) {
        return run_guarded([&] {
            BiPoly f = parse_checked(read_poly_arg(poly), CoefRing::Q);
            BiPoly g = parse_checked(with_poly, CoefRing::Q);
            return intersect_text(f, g, with_oracle);
        });
    }
    if (equising->parsed()) {
        if (!family.empty()) {
            return run_guarded([&] {
                BiPoly f = parse_checked(family, CoefRing::Qt);
                return equising_text_family(f);
            });
        }
        if (poly.empty() || deform_m <= 0) {
            std::cerr << "equising needs --family or (--deform and --m)\n";
            return kExitParse;
        }
        return run_guarded([&] {
            BiPoly f = parse_checked(poly, CoefRing::Q);
            return equising_text_deform(f, deform_m);
        });
    }
    if (infinity->parsed()) {
        return run_guarded([&] {
            BiPoly F = parse_checked(read_poly_arg(poly), CoefRing::Q);
            return infinity_text(F, inf_ams, inf_classify);
        });
    }
    if (generate->parsed()) {
        return run_guarded([&] {
            std::vector<long> ws;
            std::stringstream ss(weights_csv);
            for (std::string item; std::getline(ss, item, ',');) ws.push_back(std::stol(item));
            return generate_text(ws);
        });
    }
    return kExitParse;
}
