#include "cimred/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "cimred/forms.hpp"
#include "cimred/reduction.hpp"
#include "cimred/rng.hpp"

namespace cimred {

using Json = nlohmann::ordered_json;

namespace {

std::string fmt3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double round3(double x) { return std::strtod(fmt3(x).c_str(), nullptr); }

std::string fmt9(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double round9(double x) { return std::strtod(fmt9(x).c_str(), nullptr); }

Json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

Json intmat_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(bigint_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json ratmat_to_json(const RatMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string intmat_text(const IntMat& m, const std::string& indent) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << m(i, j).get_str();
        }
        os << "]\n";
    }
    return os.str();
}

std::string ratrow_text(const RatMat& m, int row) {
    std::ostringstream os;
    os << "[";
    for (int j = 0; j < m.cols(); ++j) {
        if (j) os << ", ";
        os << rational_to_string(m(row, j));
    }
    os << "]";
    return os.str();
}

const char* kDot = "·";

std::string exponent_string(const Rational& e) {
    if (e.get_den() == 1) return e.get_num().get_str();
    return "(" + rational_to_string(e) + ")";
}

// "u2·u4^(7/2)·u6^(5/2)/(u3^(13/2)·u5^(13/2))" from one exponent row.
std::string monomial_string(const RatMat& g, int row) {
    std::string num, den;
    for (int j = 0; j < g.cols(); ++j) {
        const Rational& e = g(row, j);
        if (e == 0) continue;
        std::string factor = "u" + std::to_string(j + 1);
        Rational mag = e < 0 ? Rational(-e) : e;
        if (mag != 1) factor += "^" + exponent_string(mag);
        std::string& side = e > 0 ? num : den;
        if (!side.empty()) side += kDot;
        side += factor;
    }
    if (num.empty()) num = "1";
    if (den.empty()) return num;
    return num + "/(" + den + ")";
}

std::vector<ClusterPoint> make_points(SplitMix64& rng, int count, int dim) {
    std::vector<ClusterPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        auto logs = sample_log_point(rng, dim);
        std::vector<double> vals(dim);
        for (int j = 0; j < dim; ++j) vals[j] = std::exp(logs[j]);
        pts.emplace_back(std::move(vals));
    }
    return pts;
}

std::vector<std::vector<double>> make_raw_points(SplitMix64& rng, int count, int dim) {
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        auto logs = sample_log_point(rng, dim);
        std::vector<double> vals(dim);
        for (int j = 0; j < dim; ++j) vals[j] = std::exp(logs[j]);
        pts.push_back(std::move(vals));
    }
    return pts;
}

std::string point_string(const std::vector<double>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt9(v[i]);
    }
    return s + ")";
}

// Orbit values can outgrow double range; fall back to exp(log) rendering.
std::string value_string(QuadReal logq_v) {
    long double logv = quad_to_ld(logq_v);
    if (std::abs((double)logv) < 700.0) return fmt9(double(std::exp(logv)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "exp(%.9Lg)", logv);
    return buf;
}

Json value_json(QuadReal logq_v) {
    long double logv = quad_to_ld(logq_v);
    if (std::abs((double)logv) < 700.0) return Json(round9(double(std::exp(logv))));
    char buf[64];
    std::snprintf(buf, sizeof buf, "exp(%.9Lg)", logv);
    return Json(std::string(buf));
}

} // namespace

QuiverDocument parse_document(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::parse_error, "document must be a JSON object");

    QuiverDocument doc;
    if (j.contains("schema_version")) {
        if (!j["schema_version"].is_string()) fail(Errc::parse_error, "schema_version must be a string");
        doc.schema_version = j["schema_version"].get<std::string>();
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) fail(Errc::parse_error, "label must be a string");
        doc.label = j["label"].get<std::string>();
    }
    const bool has_matrix = j.contains("matrix");
    const bool has_family = j.contains("family");
    if (has_matrix == has_family)
        fail(Errc::parse_error, "document must contain exactly one of 'matrix' or 'family'");

    if (has_matrix) {
        const Json& m = j["matrix"];
        if (!m.is_array() || m.empty()) fail(Errc::parse_error, "'matrix' must be a non-empty array");
        const int n = int(m.size());
        IntMat mat(n, n);
        for (int i = 0; i < n; ++i) {
            if (!m[i].is_array() || int(m[i].size()) != n)
                fail(Errc::parse_error, "'matrix' must be square");
            for (int jj = 0; jj < n; ++jj) {
                const Json& e = m[i][jj];
                if (!e.is_number_integer())
                    fail(Errc::parse_error, "matrix entries must be integers");
                mat(i, jj) = BigInt((long)e.get<int64_t>());
            }
        }
        ExchangeMatrix validated(mat); // document invariant: matrix is a valid quiver
        doc.matrix = std::move(mat);
    } else {
        const Json& f = j["family"];
        if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
            fail(Errc::parse_error, "'family' must be an object with a 'name'");
        if (f["name"].get<std::string>() != "fomin6")
            fail(Errc::unknown_family, "unknown family: " + f["name"].get<std::string>());
        QuiverFamilyParams params;
        for (auto [key, dst] : {std::pair{"r", &params.r}, {"s", &params.s}, {"t", &params.t},
                                {"p", &params.p}}) {
            if (!f.contains(key) || !f[key].is_number_integer())
                fail(Errc::parse_error, std::string("family parameter '") + key + "' must be an integer");
            *dst = f[key].get<long long>();
            if (*dst < 1) fail(Errc::parse_error, std::string("family parameter '") + key + "' must be >= 1");
        }
        doc.family = params;
    }
    return doc;
}

std::string document_to_json(const QuiverDocument& doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    if (!doc.label.empty()) j["label"] = doc.label;
    if (doc.family) {
        j["family"] = Json{{"name", "fomin6"},
                           {"r", doc.family->r},
                           {"s", doc.family->s},
                           {"t", doc.family->t},
                           {"p", doc.family->p}};
    } else if (doc.matrix) {
        j["matrix"] = intmat_to_json(*doc.matrix);
    }
    return j.dump(2) + "\n";
}

ExchangeMatrix document_matrix(const QuiverDocument& doc) {
    if (doc.family) return fomin6(*doc.family);
    if (doc.matrix) return ExchangeMatrix(*doc.matrix);
    fail(Errc::parse_error, "document has neither matrix nor family");
}

QuiverDocument example_document(const std::string& family_name, long long r, long long s,
                                long long t, long long p) {
    if (family_name != "fomin6") fail(Errc::unknown_family, "unknown family: " + family_name);
    QuiverFamilyParams params{r, s, t, p};
    fomin6(params); // validates
    QuiverDocument doc;
    doc.family = params;
    std::ostringstream label;
    label << "fomin6(" << r << "," << s << "," << t << "," << p << ")";
    doc.label = label.str();
    return doc;
}

void validate_config(const RunConfig& config) {
    if (!(config.tol > 0)) fail(Errc::parse_error, "tol must be > 0");
    if (config.trials < 1) fail(Errc::parse_error, "trials must be >= 1");
    if (config.max_period < 1) fail(Errc::parse_error, "max-period must be >= 1");
    if (config.scale == 0) fail(Errc::zero_scale, "scale must be nonzero");
}

RatMat parse_rational_matrix(const std::string& json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) fail(Errc::parse_error, "expected a JSON array of arrays");
    const int rows = int(j.size());
    const int cols = int(j[0].is_array() ? j[0].size() : 0);
    if (cols == 0) fail(Errc::parse_error, "expected a JSON array of arrays");
    RatMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || int(j[i].size()) != cols)
            fail(Errc::parse_error, "ragged rational matrix");
        for (int c = 0; c < cols; ++c) {
            const Json& e = j[i][c];
            if (e.is_number_integer())
                m(i, c) = Rational((long)e.get<int64_t>());
            else if (e.is_string())
                m(i, c) = rational_from_string(e.get<std::string>());
            else
                fail(Errc::parse_error, "rational entries must be integers or \"p/q\" strings");
        }
    }
    return m;
}

// ---- period ------------------------------------------------------------

Report cmd_period(const QuiverDocument& doc, const RunConfig& config) {
    validate_config(config);
    ExchangeMatrix b = document_matrix(doc);
    PeriodResult pr = detect_period(b, config.max_period);

    std::ostringstream text;
    Json j;
    j["command"] = "period";
    if (!doc.label.empty()) {
        text << "label: " << doc.label << "\n";
        j["label"] = doc.label;
    }
    j["max_period"] = pr.bound;
    if (pr.period) {
        text << "period: " << *pr.period << "\n";
        text << "certificate: mu_" << *pr.period << "...mu_1(B) == sigma^-" << *pr.period
             << " B sigma^" << *pr.period << " (exact)\n";
        text << "mutated:\n" << intmat_text(pr.mutated.entries(), "  ");
        text << "conjugated:\n" << intmat_text(pr.conjugated.entries(), "  ");
        j["period"] = *pr.period;
        j["match"] = true;
        if (*pr.period <= b.size()) {
            std::string rec = render_recurrence(b, *pr.period);
            Json lines = Json::array();
            text << "recurrence:\n";
            std::istringstream rs(rec);
            for (std::string line; std::getline(rs, line);) {
                text << "  " << line << "\n";
                lines.push_back(line);
            }
            j["recurrence"] = std::move(lines);
        }
    } else {
        text << "period: none up to " << pr.bound << "\n";
        j["period"] = nullptr;
        j["match"] = false;
    }
    j["mutated"] = intmat_to_json(pr.mutated.entries());
    j["conjugated"] = intmat_to_json(pr.conjugated.entries());
    return Report{text.str(), j.dump(2) + "\n", 0};
}

// ---- reduce ------------------------------------------------------------

Report cmd_reduce(const QuiverDocument& doc, const RunConfig& config) {
    validate_config(config);
    ExchangeMatrix b = document_matrix(doc);
    const int n = b.size();
    PeriodResult pr = detect_period(b, config.max_period);

    LogTwoForm w = standard_form(b);
    if (config.scale != 1) w = scale_form(w, config.scale);
    RankKernel rk = rank_and_kernel(w);

    std::ostringstream text;
    Json j;
    j["command"] = "reduce";
    if (!doc.label.empty()) {
        text << "label: " << doc.label << "\n";
        j["label"] = doc.label;
    }
    if (pr.period)
        text << "period: " << *pr.period << "\n";
    else
        text << "period: none up to " << pr.bound << "\n";
    j["period"] = pr.period ? Json(*pr.period) : Json(nullptr);
    text << "rank: " << rk.rank << "\n";
    j["rank"] = rk.rank;
    j["kernel_dim"] = n - rk.rank;
    if (config.scale != 1) {
        text << "scale: " << rational_to_string(config.scale) << "\n";
        j["scale"] = rational_to_string(config.scale);
    }

    std::vector<std::string> notices;
    int exit_code = 0;

    if (rk.rank == 0) {
        text << "rank 0: nothing to reduce\n";
        j["notices"] = Json::array({"rank 0: nothing to reduce"});
        return Report{text.str(), j.dump(2) + "\n", 0};
    }

    DarbouxBasis g = cartan_reduce(w);
    if (config.post_transform) {
        SymplecticChange t = make_symplectic_change(*config.post_transform); // throws -> exit 4
        if (t.t.cols() != g.g.rows())
            fail(Errc::not_symplectic_change, "post-transform size does not match rank");
        g = apply_post_transform(g, t);
        notices.push_back("post-transform applied");
        j["post_transform"] = ratmat_to_json(t.t);
    }
    Section s = build_section(g);

    text << "kernel dimension: " << n - rk.rank << "\n";
    text << "pivot rule: lexicographically first nonzero pair\n";
    text << "g (Darboux basis rows, log coordinates):\n";
    Json gj = Json::array();
    for (int i = 0; i < g.g.rows(); ++i) {
        text << "  g" << i + 1 << " = " << ratrow_text(g.g, i) << "\n";
        Json row = Json::array();
        for (int c = 0; c < g.g.cols(); ++c) row.push_back(rational_to_string(g.g(i, c)));
        gj.push_back(std::move(row));
    }
    j["g"] = std::move(gj);

    text << "f (reduced variables):\n";
    Json fj = Json::array();
    for (int i = 0; i < g.g.rows(); ++i) {
        std::string f = monomial_string(g.g, i);
        text << "  f" << i + 1 << " = " << f << "\n";
        fj.push_back(f);
    }
    j["f"] = std::move(fj);

    text << "section (lift exponents, " << n << "x" << g.g.rows() << "):\n";
    for (int i = 0; i < s.s.rows(); ++i) text << "  " << ratrow_text(s.s, i) << "\n";
    j["section"] = ratmat_to_json(s.s);

    if (rk.rank == n) {
        notices.push_back("full rank: reduction gains no dimension (2k = N)");
        exit_code = 3;
    }

    Json vj;
    vj["seed"] = config.seed;
    vj["trials"] = config.trials;
    vj["tol"] = config.tol;
    if (pr.period) {
        SplitMix64 rng(config.seed);
        auto points = make_points(rng, config.trials, n);
        PointReport comm = verify_commutation(b, *pr.period, g, s, points, config.tol);

        text << "commutation: " << (comm.pass ? "pass" : "FAIL") << " (max residual "
             << fmt3(comm.max_residual) << ")\n";

        Json fiberj;
        bool fiber_pass = true;
        if (rk.rank < n) {
            auto fpoints = make_points(rng, config.trials, n);
            PointReport fiber = verify_fiber_invariance(g, b, *pr.period, fpoints, config.tol, rng);
            fiber_pass = fiber.pass;
            fiberj = Json{{"pass", fiber.pass}, {"max_residual", round3(fiber.max_residual)}};
            text << "fiber invariance: " << (fiber.pass ? "pass" : "FAIL") << " (max residual "
                 << fmt3(fiber.max_residual) << ")\n";
        } else {
            fiberj = Json{{"skipped", "full rank"}};
            text << "fiber invariance: skipped (full rank)\n";
        }

        ReducedMapEvaluator eval(b, *pr.period, g, s);
        auto ypoints = make_raw_points(rng, config.trials, g.g.rows());
        PointReport symp = verify_symplectic(eval, ypoints, config.tol);
        text << "symplecticity: " << (symp.pass ? "pass" : "FAIL") << " (max residual "
             << fmt3(symp.max_residual) << ")\n";
        text << "verification: seed " << config.seed << ", trials " << config.trials << ", tol "
             << fmt3(config.tol) << "\n";

        vj["commutation"] = Json{{"pass", comm.pass}, {"max_residual", round3(comm.max_residual)}};
        vj["fiber_invariance"] = std::move(fiberj);
        vj["symplecticity"] = Json{{"pass", symp.pass}, {"max_residual", round3(symp.max_residual)}};
        if (!(comm.pass && fiber_pass && symp.pass) && exit_code == 0) exit_code = 5;
    } else {
        notices.push_back("no verified period up to bound: map verifications skipped");
        text << "verification: skipped (no verified period up to " << pr.bound << ")\n";
        vj["skipped"] = "no verified period";
    }
    j["verification"] = std::move(vj);

    for (const auto& nmsg : notices) text << "notice: " << nmsg << "\n";
    j["notices"] = notices;
    return Report{text.str(), j.dump(2) + "\n", exit_code};
}

// ---- verify ------------------------------------------------------------

Report cmd_verify(const QuiverDocument& doc, const RunConfig& config) {
    validate_config(config);
    ExchangeMatrix b = document_matrix(doc);
    const int n = b.size();
    PeriodResult pr = detect_period(b, config.max_period);

    std::ostringstream text;
    Json j;
    j["command"] = "verify";
    if (!doc.label.empty()) {
        text << "label: " << doc.label << "\n";
        j["label"] = doc.label;
    }
    j["seed"] = config.seed;
    j["trials"] = config.trials;
    j["tol"] = config.tol;

    bool all_pass = true;
    double worst_residual = 0.0;
    std::vector<double> worst_point;

    SplitMix64 rng(config.seed);

    // Invariance of the standard form at the detected period.
    if (pr.period) {
        auto points = make_points(rng, config.trials, n);
        InvarianceReport inv = check_form_invariance(b, *pr.period, points, config.tol);
        text << "period: " << *pr.period << "\n";
        text << "invariance: exact " << (inv.exact_holds ? "holds" : "FAILS") << ", numeric max residual "
             << fmt3(inv.max_residual) << (inv.numeric_pass ? " < " : " >= ") << fmt3(config.tol)
             << ", verdicts " << (inv.verdicts_agree ? "agree" : "DISAGREE") << "\n";
        j["period"] = *pr.period;
        j["invariance"] = Json{{"exact", inv.exact_holds},
                               {"numeric_pass", inv.numeric_pass},
                               {"max_residual", round3(inv.max_residual)},
                               {"verdicts_agree", inv.verdicts_agree}};
        if (!(inv.exact_holds && inv.numeric_pass && inv.verdicts_agree)) all_pass = false;
        if (inv.max_residual > worst_residual) {
            worst_residual = inv.max_residual;
            worst_point = inv.worst_point;
        }
    } else {
        text << "period: none up to " << pr.bound << "\n";
        text << "invariance: skipped (no verified period up to bound)\n";
        j["period"] = nullptr;
        j["invariance"] = Json{{"skipped", "no verified period"}};
    }

    // Mutation pullback congruence spot checks, one random point per node.
    const RatMat brat = to_rational(b.entries());
    double mut_worst = 0.0;
    std::vector<double> mut_point;
    for (int k = 1; k <= n; ++k) {
        auto pts = make_points(rng, 1, n);
        LogJacobian d = log_jacobian(mutation_log_map(b, k), pts[0]);
        RatMat target = to_rational(mutate_matrix(b, k).entries());
        double r = congruence_residual(d, brat, target);
        if (r > mut_worst) {
            mut_worst = r;
            mut_point = pts[0].values;
        }
    }
    const bool mut_pass = mut_worst < config.tol;
    text << "mutation pullback (per node): max residual " << fmt3(mut_worst) << ": "
         << (mut_pass ? "pass" : "FAIL") << "\n";
    j["mutation_pullback"] = Json{{"pass", mut_pass}, {"max_residual", round3(mut_worst)}};
    if (!mut_pass) all_pass = false;
    if (mut_worst > worst_residual) {
        worst_residual = mut_worst;
        worst_point = mut_point;
    }

    // Shift pullback: exact conjugation identities.
    LogTwoForm w = standard_form(b);
    bool shift_pass = true;
    for (int m = 0; m <= n; ++m) {
        LogTwoForm pm = pullback_by_sigma(w, m);
        if (!is_skew_symmetric(pm.w)) shift_pass = false;
        if (m >= 1) {
            LogTwoForm step = pullback_by_sigma(pullback_by_sigma(w, m - 1), 1);
            if (step.w != pm.w) shift_pass = false;
        }
    }
    if (pullback_by_sigma(w, n).w != w.w) shift_pass = false;
    {
        LogTwoForm p1 = pullback_by_sigma(w, 1);
        for (int col = 1; col < n; ++col)
            if (p1.w(0, col) != -w.w(col - 1, n - 1)) shift_pass = false;
    }
    text << "shift pullback (exact): " << (shift_pass ? "pass" : "FAIL") << "\n";
    j["shift_pullback"] = Json{{"pass", shift_pass}};
    if (!shift_pass) all_pass = false;

    text << "overall: " << (all_pass ? "pass" : "FAIL") << "\n";
    if (!all_pass && !worst_point.empty())
        text << "worst residual " << fmt3(worst_residual) << " at point " << point_string(worst_point)
             << "\n";
    j["pass"] = all_pass;
    if (!all_pass) {
        j["worst_residual"] = round3(worst_residual);
        if (!worst_point.empty()) {
            Json wp = Json::array();
            for (double x : worst_point) wp.push_back(round9(x));
            j["worst_point"] = std::move(wp);
        }
    }
    return Report{text.str(), j.dump(2) + "\n", all_pass ? 0 : 5};
}

// ---- orbit -------------------------------------------------------------

Report cmd_orbit(const QuiverDocument& doc, const RunConfig& config, const ClusterPoint& u0,
                 int steps) {
    validate_config(config);
    if (steps < 0) fail(Errc::parse_error, "steps must be >= 0");
    ExchangeMatrix b = document_matrix(doc);
    const int n = b.size();
    if (u0.size() != n) fail(Errc::shape_mismatch, "start point dimension does not match quiver");
    PeriodResult pr = detect_period(b, config.max_period);
    if (!pr.period) fail(Errc::not_periodic, "orbit needs a periodic quiver (none up to bound)");
    const int m = *pr.period;

    LogTwoForm w = standard_form(b);
    if (config.scale != 1) w = scale_form(w, config.scale);
    RankKernel rk = rank_and_kernel(w);
    const bool reduced = rk.rank > 0 && rk.rank < n;

    std::optional<DarbouxBasis> g;
    std::optional<ReducedMapEvaluator> eval;
    if (reduced) {
        DarbouxBasis basis = cartan_reduce(w);
        if (config.post_transform) {
            SymplecticChange t = make_symplectic_change(*config.post_transform);
            if (t.t.cols() != basis.g.rows())
                fail(Errc::not_symplectic_change, "post-transform size does not match rank");
            basis = apply_post_transform(basis, t);
        }
        Section s = build_section(basis);
        eval.emplace(b, m, basis, s);
        g = std::move(basis);
    }

    // Iterate in quad-precision log domain; orbit growth is doubly
    // exponential and the per-step residual cancels huge log values.
    std::vector<std::vector<QuadReal>> orbit;
    orbit.push_back(to_quad_logs(u0));
    for (int step = 0; step < steps; ++step)
        orbit.push_back(iteration_map_log(b, m, orbit.back()));

    std::ostringstream text;
    Json j;
    j["command"] = "orbit";
    if (!doc.label.empty()) {
        text << "label: " << doc.label << "\n";
        j["label"] = doc.label;
    }
    text << "period: " << m << "\n";
    text << "rank: " << rk.rank << "\n";
    j["period"] = m;
    j["rank"] = rk.rank;
    j["steps"] = steps;

    text << "orbit:\n";
    Json rows = Json::array();
    for (size_t i = 0; i < orbit.size(); ++i) {
        text << "  " << i << ":";
        Json uj = Json::array();
        for (QuadReal lv : orbit[i]) {
            text << " " << value_string(lv);
            uj.push_back(value_json(lv));
        }
        text << "\n";
        rows.push_back(Json{{"step", i}, {"u", std::move(uj)}});
    }

    int exit_code = 0;
    if (reduced) {
        text << "projected orbit (f) with reduced-map residual:\n";
        double worst = 0.0;
        std::vector<std::vector<QuadReal>> fs;
        for (const auto& logu : orbit) fs.push_back(apply_rational_matrix_log(g->g, logu));
        for (size_t i = 0; i < fs.size(); ++i) {
            text << "  " << i << ":";
            Json fj = Json::array();
            for (QuadReal lv : fs[i]) {
                text << " " << value_string(lv);
                fj.push_back(value_json(lv));
            }
            rows[i]["f"] = std::move(fj);
            if (i + 1 < fs.size()) {
                auto pred = eval->eval_log(fs[i]);
                double rel = 0.0;
                for (size_t c = 0; c < pred.size(); ++c)
                    rel = std::max(rel, quad_rel_err(pred[c], fs[i + 1][c]));
                worst = std::max(worst, rel);
                text << "  residual " << fmt3(rel);
                rows[i]["reduced_map_residual"] = round3(rel);
            }
            text << "\n";
        }
        const bool pass = worst < config.tol;
        text << "reduced-map check: " << (pass ? "pass" : "FAIL") << " (max residual " << fmt3(worst)
             << ", tol " << fmt3(config.tol) << ")\n";
        j["reduced_map_check"] = Json{{"pass", pass}, {"max_residual", round3(worst)}, {"tol", config.tol}};
        if (!pass) exit_code = 5;
    }
    j["rows"] = std::move(rows);
    return Report{text.str(), j.dump(2) + "\n", exit_code};
}

} // namespace cimred
