// Command-line front end; talks to the library only through gres.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gres.h"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;

struct CliError {
    int code;
    std::string message;
};

int exit_code(gres_status s) {
    switch (s) {
        case GRES_OK: return 0;
        case GRES_ERR_UNSUPPORTED: return kExitUnsupported;
        case GRES_ERR_INTERNAL: return 1;
        default: return kExitInput;
    }
}

void check(gres_status s) {
    if (s != GRES_OK) throw CliError{exit_code(s), gres_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitInput, "cannot open " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CmHandle {
    gres_cm* p = nullptr;
    ~CmHandle() { gres_cm_destroy(p); }
};

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

gres_resource parse_resource(const std::string& s) {
    if (s == "nonclassicality") return GRES_NONCLASSICALITY;
    if (s == "entanglement") return GRES_ENTANGLEMENT;
    throw CliError{kExitInput, "unknown resource '" + s + "' (nonclassicality|entanglement)"};
}

gres_method parse_method(const std::string& s) {
    if (s == "auto") return GRES_METHOD_AUTO;
    if (s == "analytic") return GRES_METHOD_ANALYTIC;
    if (s == "numeric") return GRES_METHOD_NUMERIC;
    throw CliError{kExitInput, "unknown method '" + s + "' (auto|analytic|numeric)"};
}

std::optional<gres_family> parse_family(const std::string& s) {
    if (s == "single-mode") return GRES_FAMILY_SINGLE_MODE;
    if (s == "two-mode-standard") return GRES_FAMILY_TWO_MODE_STANDARD;
    if (s == "symmetric") return GRES_FAMILY_SYMMETRIC;
    if (s == "ghz") return GRES_FAMILY_GHZ;
    return std::nullopt;
}

struct Params {
    int n = 3;
    double a = 1, b = 1, c = 0, c1 = 0, c2 = 0, r = 0, eta = 0, nu = 0;
    bool has_nu = false;
};

gres_family_params to_c(gres_family f, const Params& p) {
    gres_family_params g{};
    g.family = f;
    g.n = p.n;
    g.a = p.a;
    g.b = p.b;
    g.c = p.c;
    g.c1 = p.c1;
    g.c2 = p.c2;
    g.r = p.r;
    g.eta = p.eta;
    if (f == GRES_FAMILY_SINGLE_MODE && p.has_nu) {
        // Squeezed thermal state diag(nu e^{2r}, nu e^{-2r}).
        g.a = p.nu * std::exp(2 * p.r);
        g.b = p.nu * std::exp(-2 * p.r);
        g.c = 0;
    }
    return g;
}

nlohmann::json bounds_json(gres_resource r, const gres_bounds& b) {
    nlohmann::json j;
    j["resource"] = r == GRES_NONCLASSICALITY ? "nonclassicality" : "entanglement";
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["gap"] = b.gap;
    j["lower_method"] = b.lower_method;
    j["upper_method"] = b.upper_method;
    j["converged"] = b.converged != 0;
    j["conjecture_conditional"] = b.conjecture_conditional != 0;
    if (std::isfinite(b.numeric_lower)) j["numeric_lower"] = b.numeric_lower;
    if (std::isfinite(b.numeric_upper)) j["numeric_upper"] = b.numeric_upper;
    return j;
}

int threads_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* e = std::getenv("GRES_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end != e && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, hw));
    }
    return static_cast<int>(hw);
}

// ---- classify ----

int cmd_classify(const std::string& path, bool as_json) {
    const std::string text = read_file(path);
    CmHandle cm;
    check(gres_cm_from_json(text.c_str(), &cm.p));
    gres_classification c{};
    check(gres_classify(cm.p, &c));
    if (as_json) {
        nlohmann::json j;
        j["n"] = gres_cm_modes(cm.p);
        j["physical"] = c.physical != 0;
        j["min_eigenvalue"] = c.min_eigenvalue;
        if (c.physical) {
            j["classical"] = c.classical != 0;
            j["classical_margin"] = c.classical_margin;
            if (c.separability_known) j["separable"] = c.separable != 0;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (!c.physical) {
        std::cout << "unphysical (min eigenvalue of gamma + i Delta = " << fmt17(c.min_eigenvalue) << ")\n";
        return 0;
    }
    std::string line = "physical, ";
    line += c.classical ? "classical" : "nonclassical";
    if (c.separability_known) line += c.separable ? ", separable" : ", entangled";
    std::cout << line << "\n";
    std::cout << "classicality margin: " << fmt17(c.classical_margin) << "\n";
    if (!c.separability_known) std::cout << "separability: not decided for this input\n";
    return 0;
}

// ---- robustness ----

int cmd_robustness(const std::string& resource, const std::string& family, const std::string& method,
                   const std::string& cm_path, const Params& p) {
    const gres_resource r = parse_resource(resource);
    const gres_method m = parse_method(method);
    gres_bounds b{};
    if (family == "cm") {
        if (cm_path.empty()) throw CliError{kExitInput, "--family cm needs --cm FILE"};
        CmHandle cm;
        check(gres_cm_from_json(read_file(cm_path).c_str(), &cm.p));
        check(gres_robustness_cm(cm.p, r, m, &b));
    } else {
        auto f = parse_family(family);
        if (!f)
            throw CliError{kExitUnsupported, "unsupported family '" + family +
                                                 "' (single-mode|two-mode-standard|symmetric|ghz|cm)"};
        const gres_family_params gp = to_c(*f, p);
        check(gres_robustness(&gp, r, m, &b));
    }
    std::cout << bounds_json(r, b).dump(2) << "\n";
    if (!b.converged) std::cerr << "warning: optimizer did not converge; best values reported\n";
    return 0;
}

// ---- sweep ----

struct Range {
    double start = 0, stop = 0, step = 0;
};

Range parse_range(const std::string& s) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw CliError{kExitInput, "range must be start:stop:step"};
    if (!(r.step > 0)) throw CliError{kExitInput, "range step must be positive"};
    if (r.stop < r.start) throw CliError{kExitInput, "range is empty"};
    return r;
}

std::vector<double> range_points(const Range& r) {
    std::vector<double> pts;
    const long count = static_cast<long>(std::floor((r.stop - r.start) / r.step * (1 + 1e-12))) + 1;
    for (long i = 0; i < count; ++i) pts.push_back(r.start + i * r.step);
    if (pts.empty()) throw CliError{kExitInput, "range is empty"};
    return pts;
}

struct Curve {
    std::string label;  // emitted as a comment line
    gres_family family;
    Params base;
    std::string swept;
    std::vector<double> values;
};

struct Row {
    double swept = 0;
    bool ok = false;
    std::string error;
    gres_bounds b{};
};

double& param_ref(Params& p, const std::string& name) {
    if (name == "a") return p.a;
    if (name == "b") return p.b;
    if (name == "c") return p.c;
    if (name == "c1") return p.c1;
    if (name == "c2") return p.c2;
    if (name == "r") return p.r;
    if (name == "eta") return p.eta;
    if (name == "nu") return p.nu;
    throw CliError{kExitInput, "unknown swept parameter '" + name + "'"};
}

void set_param(Params& p, const std::string& name, double v) {
    if (name == "n")
        p.n = static_cast<int>(std::lround(v));
    else
        param_ref(p, name) = v;
}

bool valid_for(gres_family f, const std::string& name) {
    switch (f) {
        case GRES_FAMILY_SINGLE_MODE: return name == "a" || name == "b" || name == "c" || name == "r" || name == "nu";
        case GRES_FAMILY_TWO_MODE_STANDARD: return name == "a" || name == "b" || name == "c1" || name == "c2";
        case GRES_FAMILY_SYMMETRIC: return name == "n" || name == "a" || name == "b" || name == "c1" || name == "c2";
        case GRES_FAMILY_GHZ: return name == "n" || name == "r" || name == "eta";
    }
    return false;
}

std::vector<Curve> fig1_curves(int points) {
    std::vector<Curve> out;
    for (double c1 : {1.8, 1.6, 1.4, 1.2}) {
        Curve c;
        c.family = GRES_FAMILY_TWO_MODE_STANDARD;
        c.base.a = 2.4;
        c.base.b = 2.0;
        c.base.c1 = c1;
        c.swept = "c2";
        c.label = "c1=" + fmt17(c1);
        for (int k = 1; k <= points; ++k) c.values.push_back(c1 * k / points);
        out.push_back(c);
    }
    return out;
}

int cmd_sweep(const std::string& preset, const std::string& family, const std::string& resource,
              const std::string& method, const std::string& param, const std::string& range, const std::string& format,
              const std::string& output, int points, Params base) {
    gres_resource r = GRES_NONCLASSICALITY;
    std::vector<Curve> curves;
    if (!preset.empty()) {
        if (preset == "fig1a") {
            r = GRES_NONCLASSICALITY;
        } else if (preset == "fig1b") {
            r = GRES_ENTANGLEMENT;
        } else {
            throw CliError{kExitInput, "unknown preset '" + preset + "' (fig1a|fig1b)"};
        }
        if (points < 1) throw CliError{kExitInput, "--points must be positive"};
        curves = fig1_curves(points);
        if (!range.empty()) {
            const auto pts = range_points(parse_range(range));
            for (auto& c : curves) c.values = pts;
        }
    } else {
        r = parse_resource(resource);
        auto f = parse_family(family);
        if (!f || *f == GRES_FAMILY_SINGLE_MODE)
            throw CliError{kExitUnsupported, "sweeps support two-mode-standard, symmetric and ghz families"};
        if (param.empty() || range.empty()) throw CliError{kExitInput, "sweep needs --param and --range"};
        if (!valid_for(*f, param)) throw CliError{kExitInput, "parameter '" + param + "' is not valid for " + family};
        Curve c;
        c.family = *f;
        c.base = base;
        c.swept = param;
        c.values = range_points(parse_range(range));
        if (param == "n")
            for (double v : c.values)
                if (v != std::round(v) || v < 2) throw CliError{kExitInput, "mode counts must be integers >= 2"};
        curves.push_back(c);
    }
    if (format != "csv" && format != "json") throw CliError{kExitInput, "format must be csv or json"};
    const gres_method m = parse_method(method);

    struct Job {
        size_t curve, index;
    };
    std::vector<Job> jobs;
    std::vector<std::vector<Row>> rows(curves.size());
    for (size_t ci = 0; ci < curves.size(); ++ci) {
        rows[ci].resize(curves[ci].values.size());
        for (size_t i = 0; i < curves[ci].values.size(); ++i) jobs.push_back({ci, i});
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t j = next++; j < jobs.size(); j = next++) {
            const Curve& c = curves[jobs[j].curve];
            Row& row = rows[jobs[j].curve][jobs[j].index];
            Params p = c.base;
            row.swept = c.values[jobs[j].index];
            set_param(p, c.swept, row.swept);
            const gres_family_params gp = to_c(c.family, p);
            const gres_status s = gres_robustness(&gp, r, m, &row.b);
            row.ok = s == GRES_OK;
            if (!row.ok) row.error = gres_last_error();
        }
    };
    const int nthreads = std::max(1, std::min<int>(threads_from_env(), static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) throw CliError{kExitInput, "cannot write " + output};
    }
    std::ostream& out = output.empty() ? std::cout : file;
    int nonconverged = 0, skipped = 0;
    if (format == "csv") {
        out << "swept,lower,upper,log_lower,log_upper,gap,lower_method,upper_method,converged\n";
        for (size_t ci = 0; ci < curves.size(); ++ci) {
            if (curves.size() > 1 || !preset.empty()) out << "# " << curves[ci].label << "\n";
            for (const Row& row : rows[ci]) {
                if (!row.ok) {
                    out << "# skipped " << curves[ci].swept << "=" << fmt17(row.swept) << ": " << row.error << "\n";
                    ++skipped;
                    continue;
                }
                if (!row.b.converged) ++nonconverged;
                const double ll = std::log(row.b.lower), lu = std::log(row.b.upper);
                out << fmt17(row.swept) << "," << fmt17(row.b.lower) << "," << fmt17(row.b.upper) << "," << fmt17(ll)
                    << "," << fmt17(lu) << "," << fmt17(lu - ll) << "," << row.b.lower_method << ","
                    << row.b.upper_method << "," << (row.b.converged ? "true" : "false") << "\n";
            }
        }
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (size_t ci = 0; ci < curves.size(); ++ci) {
            nlohmann::json cj;
            cj["curve"] = curves[ci].label;
            cj["swept_parameter"] = curves[ci].swept;
            cj["rows"] = nlohmann::json::array();
            for (const Row& row : rows[ci]) {
                if (!row.ok) {
                    cj["skipped"].push_back({{"swept", row.swept}, {"reason", row.error}});
                    ++skipped;
                    continue;
                }
                if (!row.b.converged) ++nonconverged;
                nlohmann::json rj = bounds_json(r, row.b);
                rj["swept"] = row.swept;
                rj["log_lower"] = std::log(row.b.lower);
                rj["log_upper"] = std::log(row.b.upper);
                cj["rows"].push_back(rj);
            }
            arr.push_back(cj);
        }
        out << arr.dump(2) << "\n";
    }
    if (nonconverged > 0) std::cerr << "warning: " << nonconverged << " nonconverged point(s)\n";
    if (skipped > 0) std::cerr << "note: " << skipped << " point(s) skipped (invalid or unphysical parameters)\n";
    return 0;
}

// ---- verify-witness ----

int cmd_verify_witness(int n, int cutoff, double aw, double bw, double cw1, double cw2, int starts,
                       std::uint64_t seed) {
    gres_witness_request req{n, aw, bw, cw1, cw2, cutoff, starts, seed};
    gres_witness_report rep{};
    const auto t0 = std::chrono::steady_clock::now();
    check(gres_verify_witness(&req, &rep));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool vacuum = rep.vacuum_overlap > 1.0 - 1e-8;
    nlohmann::json j;
    j["n"] = n;
    j["cutoff"] = cutoff;
    j["presqueeze_y"] = rep.y;
    j["prefactor"] = rep.prefactor;
    j["M0"] = rep.m0;
    j["maximizer"] = vacuum ? "vacuum" : "non-vacuum product state";
    j["vacuum_overlap"] = rep.vacuum_overlap;
    j["converged"] = rep.converged != 0;
    j["wall_time_s"] = secs;
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robustness of nonclassicality and entanglement for Gaussian states"};
    app.require_subcommand(1);

    auto* classify = app.add_subcommand("classify", "Physicality, classicality and separability of a CM file");
    std::string cm_path;
    bool classify_json = false;
    classify->add_option("--cm", cm_path, "CM JSON file")->required();
    classify->add_flag("--json", classify_json, "JSON output");

    Params p;
    auto add_params = [&p](CLI::App* sub) {
        sub->add_option("--n", p.n, "mode count (symmetric, ghz)");
        sub->add_option("--a", p.a);
        sub->add_option("--b", p.b);
        sub->add_option("--c", p.c, "single-mode correlation");
        sub->add_option("--c1", p.c1);
        sub->add_option("--c2", p.c2);
        sub->add_option("--r", p.r, "squeezing (ghz, or single-mode with --nu)");
        sub->add_option("--eta", p.eta, "thermal parameter (ghz)");
        sub->add_option("--nu", p.nu, "single-mode symplectic eigenvalue");
    };

    auto* rob = app.add_subcommand("robustness", "Lower and upper bounds as JSON");
    std::string resource = "nonclassicality", family, method = "auto", rob_cm;
    rob->add_option("--resource", resource, "nonclassicality|entanglement");
    rob->add_option("--family", family, "single-mode|two-mode-standard|symmetric|ghz|cm")->required();
    rob->add_option("--method", method, "auto|analytic|numeric");
    rob->add_option("--cm", rob_cm, "CM JSON file for --family cm");
    add_params(rob);

    auto* sweep = app.add_subcommand("sweep", "Bounds over a parameter grid (CSV or JSON)");
    std::string preset, sweep_family, sweep_resource = "nonclassicality", sweep_method = "auto", param, range,
                                      format = "csv", output;
    int points = 24;
    sweep->add_option("--preset", preset, "fig1a|fig1b");
    sweep->add_option("--family", sweep_family, "two-mode-standard|symmetric|ghz");
    sweep->add_option("--resource", sweep_resource);
    sweep->add_option("--method", sweep_method);
    sweep->add_option("--param", param, "swept parameter (a, b, c1, c2, r, eta, or n for symmetric and ghz)");
    sweep->add_option("--range", range, "start:stop:step");
    sweep->add_option("--points", points, "grid points per preset curve, c2 = c1 k / points");
    sweep->add_option("--format", format, "csv|json");
    sweep->add_option("--output,-o", output, "output file (default stdout)");
    add_params(sweep);

    auto* vw = app.add_subcommand("verify-witness", "Product-state maximum of a symmetric Gaussian witness");
    int wn = 3, cutoff = 4, starts = 8;
    double aw = 2.0, bw = 2.0, cw1 = 0.5, cw2 = -0.3;
    std::uint64_t seed = 12345;
    vw->add_option("--n", wn);
    vw->add_option("--cutoff", cutoff);
    vw->add_option("--aw", aw);
    vw->add_option("--bw", bw);
    vw->add_option("--cw1", cw1);
    vw->add_option("--cw2", cw2);
    vw->add_option("--starts", starts, "random product-state restarts besides the vacuum");
    vw->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        for (CLI::App* sub : {rob, sweep})
            if (sub->parsed()) p.has_nu = sub->count("--nu") > 0;
        if (classify->parsed()) return cmd_classify(cm_path, classify_json);
        if (rob->parsed()) return cmd_robustness(resource, family, method, rob_cm, p);
        if (sweep->parsed())
            return cmd_sweep(preset, sweep_family, sweep_resource, sweep_method, param, range, format, output, points,
                             p);
        if (vw->parsed()) return cmd_verify_witness(wn, cutoff, aw, bw, cw1, cw2, starts, seed);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
    return 0;
}
