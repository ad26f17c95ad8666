// Command-line front end. Everything goes through the C API in cimred.h;
// this translation unit never touches the C++ core directly.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cimred.h"

namespace {

int fail_with(cimred_status status) {
    std::cerr << "error: " << cimred_status_name(status);
    const char* detail = cimred_last_error();
    if (detail && *detail) std::cerr << ": " << detail;
    std::cerr << "\n";
    // Malformed input of any kind exits 2; a rejected post-transform exits 4.
    return status == CIMRED_BAD_TRANSFORM ? 4 : 2;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("input", "cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct QuiverHandle {
    cimred_quiver* q = nullptr;
    ~QuiverHandle() { cimred_quiver_free(q); }
};

struct ReportHandle {
    cimred_report* r = nullptr;
    ~ReportHandle() { cimred_report_free(r); }
};

int emit(const ReportHandle& rep, bool json) {
    std::cout << (json ? cimred_report_json(rep.r) : cimred_report_text(rep.r));
    return cimred_report_exit_code(rep.r);
}

std::vector<double> parse_point(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--u0", "expected comma-separated reals");
        }
    }
    return vals;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cimred: mutation-periodic quivers, cluster iteration maps and their "
                 "symplectic reduction"};
    app.require_subcommand(1);
    app.fallthrough(); // common flags may follow the subcommand

    cimred_options opts;
    cimred_options_defaults(&opts);
    std::string scale_str, transform_path;
    bool json = false;

    app.add_option("--seed", opts.seed, "RNG seed for the verification harness (default 42)");
    app.add_option("--trials", opts.trials, "random points per verifier (default 100)");
    app.add_option("--tol", opts.tol, "residual tolerance (default 1e-8)");
    app.add_option("--max-period", opts.max_period, "period search bound (default 12)");
    app.add_flag("--json", json, "emit the JSON report instead of text");

    std::string doc_path;
    auto add_doc = [&](CLI::App* sub) {
        sub->add_option("document", doc_path, "quiver document JSON file ('-' = stdin)")->required();
    };

    auto* c_period = app.add_subcommand("period", "detect the mutation period with certificates");
    add_doc(c_period);

    auto* c_reduce = app.add_subcommand("reduce", "Darboux basis, reduced variables and verifiers");
    add_doc(c_reduce);
    c_reduce->add_option("--scale", scale_str, "rational multiple p/q of the standard form");
    c_reduce->add_option("--post-transform", transform_path,
                         "JSON file with an exact symplectic change of basis");

    auto* c_verify = app.add_subcommand("verify", "pullback/invariance checks");
    add_doc(c_verify);

    auto* c_orbit = app.add_subcommand("orbit", "iterate the cluster map, project, check reduction");
    add_doc(c_orbit);
    std::string u0_str;
    int steps = 20;
    c_orbit->add_option("--u0", u0_str, "start point as comma-separated positive reals (default all ones)");
    c_orbit->add_option("--steps", steps, "number of iterations (default 20)");
    c_orbit->add_option("--scale", scale_str, "rational multiple p/q of the standard form");
    c_orbit->add_option("--post-transform", transform_path,
                        "JSON file with an exact symplectic change of basis");

    auto* c_example = app.add_subcommand("example", "write a family quiver document");
    std::string family = "fomin6";
    std::vector<int64_t> params;
    std::string out_path;
    c_example->add_option("family", family, "family name (fomin6)")->required();
    c_example->add_option("params", params, "family parameters r s t p")->expected(4)->required();
    c_example->add_option("-o,--output", out_path, "write the document here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    std::string transform_text;
    if (!scale_str.empty()) opts.scale = scale_str.c_str();
    if (!transform_path.empty()) {
        try {
            transform_text = read_input(transform_path);
        } catch (const CLI::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        opts.post_transform_json = transform_text.c_str();
    }

    if (c_example->parsed()) {
        if (family != "fomin6") {
            std::cerr << "error: unknown family: " << family << "\n";
            return 2;
        }
        QuiverHandle q;
        cimred_status st =
            cimred_quiver_fomin6(params[0], params[1], params[2], params[3], &q.q);
        if (st != CIMRED_OK) return fail_with(st);
        char* text = nullptr;
        st = cimred_quiver_to_json(q.q, nullptr, &text);
        if (st != CIMRED_OK) return fail_with(st);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            f << text;
        }
        cimred_string_free(text);
        return 0;
    }

    std::string doc_text;
    try {
        doc_text = read_input(doc_path);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    QuiverHandle q;
    cimred_status st = cimred_quiver_from_json(doc_text.c_str(), &q.q);
    if (st != CIMRED_OK) return fail_with(st);

    ReportHandle rep;
    if (c_period->parsed()) {
        st = cimred_cmd_period(q.q, &opts, &rep.r);
    } else if (c_reduce->parsed()) {
        st = cimred_cmd_reduce(q.q, &opts, &rep.r);
    } else if (c_verify->parsed()) {
        st = cimred_cmd_verify(q.q, &opts, &rep.r);
    } else if (c_orbit->parsed()) {
        std::vector<double> u0;
        if (!u0_str.empty()) u0 = parse_point(u0_str);
        st = cimred_cmd_orbit(q.q, &opts, u0.empty() ? nullptr : u0.data(), int(u0.size()), steps,
                              &rep.r);
    } else {
        return 2;
    }
    if (st != CIMRED_OK) return fail_with(st);
    return emit(rep, json);
}
