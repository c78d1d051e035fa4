#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hessk/matform.hpp"
#include "hessk/matrix_io.hpp"
#include "hessk/report_io.hpp"
#include "hessk/scalarform.hpp"
#include "hessk/sympoly.hpp"
#include "hessk/verify.hpp"

namespace {

using nlohmann::ordered_json;

std::vector<double> parse_lambda(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.size() < 2) throw hessk::BadRangeError("--lambda needs at least two comma-separated values");
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) throw hessk::Error("cannot write output file: " + output_path);
        out << text << "\n";
    }
}

hessk::GammaSchedule resolve_schedule(int n, int k, double gamma) {
    const bool free_branch = (k == 2 || k == 3 || k == 4 || k == n - 2 || k == n - 1);
    if (free_branch) return hessk::gamma_schedule(n, k, gamma);
    return hessk::gamma_schedule(n, k);
}

struct SuiteOptions {
    std::string suite;
    int n = 5;
    int k = 3;
    double delta = 0.05;
    double mu = -1.0; // negative = derive the sampler-feasible cap
    double gamma = 0.5;
    int samples = 1000;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::string output;
    bool timing = false;
};

hessk::verify::VerificationReport run_suite(const SuiteOptions& opt) {
    using namespace hessk;
    const GammaSchedule sched = resolve_schedule(opt.n, opt.k, opt.gamma);
    const double mu = opt.mu >= 0.0 ? opt.mu : verify::feasible_mu(opt.n, sched, opt.delta);
    if (opt.suite == "reduced-bounds") {
        return verify::suite_reduced_bounds(opt.n, opt.k, AdmissibilityParams(opt.delta, mu, sched),
                                            opt.samples, opt.seed);
    }
    if (opt.suite == "symmetric-definiteness") {
        return verify::suite_symmetric_definiteness(sched, opt.delta, opt.samples, opt.seed);
    }
    if (opt.suite == "dconcavity") {
        return verify::suite_dconcavity(sched, opt.delta, mu, opt.samples, opt.seed);
    }
    if (opt.suite == "ratio-bounds") {
        return verify::suite_ratio_bounds(sched, opt.samples, opt.seed);
    }
    throw hessk::BadRangeError("unknown suite: " + opt.suite);
}

std::string render_reports(const std::vector<hessk::verify::VerificationReport>& reports,
                           const std::string& format, bool timing) {
    if (format == "csv") {
        std::string text = hessk::verify::report_csv_header();
        for (const auto& r : reports) {
            text += "\n";
            text += hessk::verify::report_csv_row(r, timing);
        }
        return text;
    }
    if (reports.size() == 1) {
        return hessk::verify::report_to_json(reports.front(), timing).dump(2);
    }
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(hessk::verify::report_to_json(r, timing));
    return arr.dump(2);
}

// Minimal write-only SVG artifacts for sweep results.
std::string svg_gamma_plot(const std::vector<hessk::verify::VerificationReport>& rows) {
    double gmin = 1e300, gmax = -1e300;
    int kmin = 1 << 30, kmax = 0;
    for (const auto& r : rows) {
        gmin = std::min(gmin, r.ledger.gamma_k_uniform);
        gmax = std::max(gmax, r.ledger.gamma_k_uniform);
        kmin = std::min(kmin, r.k);
        kmax = std::max(kmax, r.k);
    }
    if (rows.empty() || !(gmax > 0)) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";
    if (gmin == gmax) gmin = 0.0;
    const double w = 640, h = 480, ml = 70, mb = 40, mt = 20, mr = 20;
    auto xof = [&](double k) {
        return kmax == kmin ? ml + (w - ml - mr) / 2
                            : ml + (k - kmin) / double(kmax - kmin) * (w - ml - mr);
    };
    auto yof = [&](double g) { return h - mb - (g - gmin) / (gmax - gmin) * (h - mb - mt); };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"15\" text-anchor=\"middle\" font-size=\"13\">empirical uniform definiteness constant vs k</text>\n";
    // axes
    s += "<line x1=\"" + hessk::repr(ml) + "\" y1=\"" + hessk::repr(h - mb) + "\" x2=\"" +
         hessk::repr(w - mr) + "\" y2=\"" + hessk::repr(h - mb) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + hessk::repr(ml) + "\" y1=\"" + hessk::repr(mt) + "\" x2=\"" +
         hessk::repr(ml) + "\" y2=\"" + hessk::repr(h - mb) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"10\" y=\"" + hessk::repr(yof(gmax) + 4) + "\" font-size=\"11\">" +
         hessk::repr(gmax) + "</text>\n";
    s += "<text x=\"10\" y=\"" + hessk::repr(yof(gmin) + 4) + "\" font-size=\"11\">" +
         hessk::repr(gmin) + "</text>\n";
    const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
                            "#a6761d", "#666666"};
    int color_idx = 0;
    int current_n = -1;
    std::string path;
    auto flush_path = [&]() {
        if (!path.empty()) {
            s += "<polyline fill=\"none\" stroke=\"" +
                 std::string(colors[color_idx % 8]) + "\" points=\"" + path + "\"/>\n";
            ++color_idx;
            path.clear();
        }
    };
    for (const auto& r : rows) {
        if (r.n != current_n) {
            flush_path();
            current_n = r.n;
            s += "<text x=\"" + hessk::repr(w - mr - 50) + "\" y=\"" +
                 hessk::repr(mt + 14.0 * (color_idx + 1)) + "\" font-size=\"11\" fill=\"" +
                 colors[color_idx % 8] + "\">n=" + std::to_string(r.n) + "</text>\n";
        }
        path += hessk::repr(xof(r.k)) + "," + hessk::repr(yof(r.ledger.gamma_k_uniform)) + " ";
    }
    flush_path();
    s += "<text x=\"320\" y=\"" + hessk::repr(h - 8) +
         "\" text-anchor=\"middle\" font-size=\"12\">k</text>\n";
    s += "</svg>";
    return s;
}

std::string svg_margin_heatmap(const std::vector<hessk::verify::VerificationReport>& rows) {
    if (rows.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>";
    int nmin = 1 << 30, nmax = 0, kmin = 1 << 30, kmax = 0;
    for (const auto& r : rows) {
        nmin = std::min(nmin, r.n);
        nmax = std::max(nmax, r.n);
        kmin = std::min(kmin, r.k);
        kmax = std::max(kmax, r.k);
    }
    const double cell = 54;
    const double ml = 60, mt = 40;
    const double w = ml + (kmax - kmin + 1) * cell + 20;
    const double h = mt + (nmax - nmin + 1) * cell + 20;
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + hessk::repr(w) +
                    "\" height=\"" + hessk::repr(h) + "\">\n";
    s += "<rect width=\"" + hessk::repr(w) + "\" height=\"" + hessk::repr(h) +
         "\" fill=\"white\"/>\n";
    s += "<text x=\"" + hessk::repr(w / 2) +
         "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">worst d-concavity margin per (n, k)</text>\n";
    for (const auto& r : rows) {
        const double x = ml + (r.k - kmin) * cell;
        const double y = mt + (r.n - nmin) * cell;
        const char* fill = r.violations > 0 ? "#e34a33" : "#a1d99b";
        s += "<rect x=\"" + hessk::repr(x) + "\" y=\"" + hessk::repr(y) + "\" width=\"" +
             hessk::repr(cell - 2) + "\" height=\"" + hessk::repr(cell - 2) + "\" fill=\"" + fill +
             "\"/>\n";
        char label[40];
        std::snprintf(label, sizeof(label), "%.2g", r.worst_margin);
        s += "<text x=\"" + hessk::repr(x + cell / 2 - 1) + "\" y=\"" +
             hessk::repr(y + cell / 2 + 3) + "\" text-anchor=\"middle\" font-size=\"10\">" + label +
             "</text>\n";
    }
    for (int n = nmin; n <= nmax; ++n) {
        s += "<text x=\"20\" y=\"" + hessk::repr(mt + (n - nmin + 0.5) * cell) +
             "\" font-size=\"11\">n=" + std::to_string(n) + "</text>\n";
    }
    for (int k = kmin; k <= kmax; ++k) {
        s += "<text x=\"" + hessk::repr(ml + (k - kmin + 0.35) * cell) + "\" y=\"" +
             hessk::repr(mt - 6) + "\" font-size=\"11\">k=" + std::to_string(k) + "</text>\n";
    }
    s += "</svg>";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hessk: symmetric-polynomial and log-minor concavity toolkit"};
    app.require_subcommand(1);

    // eval
    std::string eval_fn, eval_input, eval_lambda, eval_output;
    int eval_k = 2;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate sigma/fk on a spectrum or Sk/Fk on a matrix");
    eval_cmd->add_option("--fn", eval_fn, "One of sigma, fk, Sk, Fk")->required();
    eval_cmd->add_option("--k", eval_k, "Degree k")->required();
    eval_cmd->add_option("--input", eval_input, "Matrix JSON file (for Sk/Fk)");
    eval_cmd->add_option("--lambda", eval_lambda, "Comma-separated spectrum (for sigma/fk)");
    eval_cmd->add_option("--output", eval_output, "Output file (default stdout)");

    // check-cone
    std::string cone_lambda, cone_output;
    int cone_k = 2;
    double cone_gamma = -1.0;
    auto* cone_cmd = app.add_subcommand("check-cone", "Cone membership of a spectrum");
    cone_cmd->add_option("--lambda", cone_lambda, "Comma-separated spectrum")->required();
    cone_cmd->add_option("--k", cone_k, "Degree k")->required();
    cone_cmd->add_option("--gamma", cone_gamma, "Free-branch gamma in (0,1)");
    cone_cmd->add_option("--output", cone_output, "Output file");

    // check-admissible
    std::string adm_input, adm_output;
    double adm_delta = 0.1, adm_mu = 0.0, adm_gamma = -1.0;
    int adm_k = 0;
    auto* adm_cmd = app.add_subcommand("check-admissible", "Admissible-set membership of a matrix");
    adm_cmd->add_option("--input", adm_input, "Matrix JSON file")->required();
    adm_cmd->add_option("--delta", adm_delta, "delta in [0,1)")->required();
    adm_cmd->add_option("--mu", adm_mu, "skew norm cap mu")->required();
    adm_cmd->add_option("--k", adm_k, "Degree for the spectrum restriction (optional)");
    adm_cmd->add_option("--gamma", adm_gamma, "Free-branch gamma for the restriction");
    adm_cmd->add_option("--output", adm_output, "Output file");

    // estimate-gamma
    int est_n = 5, est_k = 3, est_samples = 1000;
    double est_gamma = 0.5;
    std::uint64_t est_seed = 42;
    std::string est_output;
    auto* est_cmd = app.add_subcommand("estimate-gamma",
                                       "Estimate the uniform definiteness constant on the slice");
    est_cmd->add_option("--n", est_n, "Dimension")->required();
    est_cmd->add_option("--k", est_k, "Degree")->required();
    est_cmd->add_option("--gamma", est_gamma, "Free-branch gamma (default 0.5)");
    est_cmd->add_option("--samples", est_samples, "Sampling budget");
    est_cmd->add_option("--seed", est_seed, "RNG seed");
    est_cmd->add_option("--output", est_output, "Output file");

    // ledger
    int led_n = 5, led_k = 3, led_samples = 1000;
    double led_delta = 0.05, led_gamma = 0.5, led_gamma_uniform = -1.0;
    std::uint64_t led_seed = 42;
    std::string led_output;
    auto* led_cmd = app.add_subcommand("ledger", "Constants ledger for (n, k, delta, gamma)");
    led_cmd->add_option("--n", led_n, "Dimension")->required();
    led_cmd->add_option("--k", led_k, "Degree")->required();
    led_cmd->add_option("--delta", led_delta, "delta in [0,1)")->required();
    led_cmd->add_option("--gamma", led_gamma, "Free-branch gamma (default 0.5)");
    led_cmd->add_option("--gamma-uniform", led_gamma_uniform,
                        "Use this uniform constant instead of estimating");
    led_cmd->add_option("--samples", led_samples, "Estimation budget when not given");
    led_cmd->add_option("--seed", led_seed, "RNG seed for the estimate");
    led_cmd->add_option("--output", led_output, "Output file");

    // verify
    SuiteOptions vopt;
    auto* ver_cmd = app.add_subcommand("verify", "Run one inequality suite");
    ver_cmd->add_option("--suite", vopt.suite,
                        "reduced-bounds | symmetric-definiteness | dconcavity | ratio-bounds")
        ->required();
    ver_cmd->add_option("--n", vopt.n, "Dimension")->required();
    ver_cmd->add_option("--k", vopt.k, "Degree")->required();
    ver_cmd->add_option("--delta", vopt.delta, "delta in [0,1)");
    ver_cmd->add_option("--mu", vopt.mu, "Skew cap (default: sampler-feasible)");
    ver_cmd->add_option("--gamma", vopt.gamma, "Free-branch gamma (default 0.5)");
    ver_cmd->add_option("--samples", vopt.samples, "Samples / pairs");
    ver_cmd->add_option("--seed", vopt.seed, "RNG seed");
    ver_cmd->add_option("--format", vopt.format, "json | csv");
    ver_cmd->add_option("--output", vopt.output, "Output file");
    ver_cmd->add_flag("--timing", vopt.timing, "Emit measured wall_ms (breaks byte determinism)");

    // sweep
    int sw_nmin = 4, sw_nmax = 8, sw_kmin = 2, sw_kmax = 1 << 20, sw_samples = 200;
    double sw_delta = 0.05, sw_gamma = 0.5;
    std::uint64_t sw_seed = 42;
    std::string sw_format = "csv", sw_output, sw_plot_dir = ".";
    bool sw_plot = false;
    bool sw_timing = false;
    auto* sw_cmd = app.add_subcommand("sweep", "Estimate and verify across an (n, k) grid");
    sw_cmd->add_option("--n-min", sw_nmin, "Smallest n");
    sw_cmd->add_option("--n-max", sw_nmax, "Largest n");
    sw_cmd->add_option("--k-min", sw_kmin, "Smallest k (clamped to 2)");
    sw_cmd->add_option("--k-max", sw_kmax, "Largest k (clamped to n-1)");
    sw_cmd->add_option("--delta", sw_delta, "delta in [0,1)");
    sw_cmd->add_option("--gamma", sw_gamma, "Free-branch gamma (default 0.5)");
    sw_cmd->add_option("--samples", sw_samples, "Pairs per cell");
    sw_cmd->add_option("--seed", sw_seed, "RNG seed");
    sw_cmd->add_option("--format", sw_format, "json | csv");
    sw_cmd->add_option("--output", sw_output, "Output file");
    sw_cmd->add_flag("--plot", sw_plot, "Write SVG plots");
    sw_cmd->add_option("--plot-dir", sw_plot_dir, "Directory for the SVG artifacts");
    sw_cmd->add_flag("--timing", sw_timing, "Emit measured wall_ms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        using namespace hessk;
        if (*eval_cmd) {
            ordered_json out;
            out["fn"] = eval_fn;
            out["k"] = eval_k;
            if (eval_fn == "sigma" || eval_fn == "fk") {
                if (eval_lambda.empty()) throw BadRangeError("--lambda is required for " + eval_fn);
                Spectrum lam(parse_lambda(eval_lambda));
                out["value"] = (eval_fn == "sigma") ? sigma(eval_k, lam) : f_k(eval_k, lam);
            } else if (eval_fn == "Sk" || eval_fn == "Fk") {
                if (eval_input.empty()) throw BadRangeError("--input is required for " + eval_fn);
                const DenseMatrix m = load_matrix(eval_input);
                out["n"] = static_cast<int>(m.rows());
                out["value"] = (eval_fn == "Sk") ? S_k(m, eval_k) : F_k(m, eval_k);
            } else {
                throw BadRangeError("unknown --fn: " + eval_fn);
            }
            emit(out.dump(2), eval_output);
            return 0;
        }
        if (*cone_cmd) {
            Spectrum lam(parse_lambda(cone_lambda));
            ordered_json out;
            out["k"] = cone_k;
            out["in_gamma_cone"] = in_gamma_cone(lam, cone_k);
            const int n = lam.size();
            if (cone_k >= 2 && cone_k <= n - 1) {
                const bool free_branch = (cone_k == 2 || cone_k == 3 || cone_k == 4 ||
                                          cone_k == n - 2 || cone_k == n - 1);
                if (!free_branch || cone_gamma > 0.0) {
                    const GammaSchedule sched =
                        free_branch ? gamma_schedule(n, cone_k, cone_gamma)
                                    : gamma_schedule(n, cone_k);
                    out["gamma_k"] = sched.gamma_k;
                    out["branch"] = to_string(sched.branch);
                    out["in_sigma_gamma"] = in_sigma_gamma(lam, sched);
                }
            }
            emit(out.dump(2), cone_output);
            return 0;
        }
        if (*adm_cmd) {
            const DenseMatrix m = load_matrix(adm_input);
            const AugmentedMatrix r = AugmentedMatrix::from(m);
            std::optional<GammaSchedule> sched;
            if (adm_k >= 2) {
                const int n = static_cast<int>(m.rows());
                const bool free_branch = (adm_k == 2 || adm_k == 3 || adm_k == 4 ||
                                          adm_k == n - 2 || adm_k == n - 1);
                sched = free_branch ? gamma_schedule(n, adm_k, adm_gamma > 0 ? adm_gamma : 0.5)
                                    : gamma_schedule(n, adm_k);
            }
            const AdmissibilityParams params(adm_delta, adm_mu, sched);
            ordered_json out;
            out["admissible"] = in_admissible(r, params);
            out["lambda_min"] = r.lambda_min();
            out["beta_norm"] = op_norm(r.beta());
            emit(out.dump(2), adm_output);
            return 0;
        }
        if (*est_cmd) {
            const GammaSchedule sched = resolve_schedule(est_n, est_k, est_gamma);
            const verify::GammaEstimate est =
                verify::estimate_gamma_uniform(sched, est_samples, est_seed);
            ordered_json out;
            out["n"] = est_n;
            out["k"] = est_k;
            out["gamma_k"] = sched.gamma_k;
            out["branch"] = to_string(sched.branch);
            out["samples"] = est_samples;
            out["seed"] = est_seed;
            out["gamma_uniform"] = est.value;
            out["minimizer"] = est.minimizer;
            emit(out.dump(2), est_output);
            return 0;
        }
        if (*led_cmd) {
            const GammaSchedule sched = resolve_schedule(led_n, led_k, led_gamma);
            double gu = led_gamma_uniform;
            if (gu < 0.0) {
                gu = verify::estimate_gamma_uniform(sched, led_samples, led_seed).value;
            }
            const verify::ConstantsLedger led =
                verify::build_ledger(led_n, led_k, led_delta, sched, gu);
            ordered_json out = verify::ledger_to_json(led);
            out["seed"] = led_seed;
            emit(out.dump(2), led_output);
            return 0;
        }
        if (*ver_cmd) {
            const verify::VerificationReport rep = run_suite(vopt);
            emit(render_reports({rep}, vopt.format, vopt.timing), vopt.output);
            return rep.violations > 0 ? 2 : 0;
        }
        if (*sw_cmd) {
            std::vector<verify::VerificationReport> rows;
            for (int n = sw_nmin; n <= sw_nmax; ++n) {
                for (int k = std::max(2, sw_kmin); k <= std::min(n - 1, sw_kmax); ++k) {
                    const GammaSchedule sched = resolve_schedule(n, k, sw_gamma);
                    const double mu = verify::feasible_mu(n, sched, sw_delta);
                    rows.push_back(
                        verify::suite_dconcavity(sched, sw_delta, mu, sw_samples, sw_seed));
                }
            }
            emit(render_reports(rows, sw_format, sw_timing), sw_output);
            if (sw_plot) {
                std::ofstream g(sw_plot_dir + "/gamma_uniform.svg");
                g << svg_gamma_plot(rows) << "\n";
                std::ofstream m(sw_plot_dir + "/dconcavity_margins.svg");
                m << svg_margin_heatmap(rows) << "\n";
            }
            for (const auto& r : rows) {
                if (r.violations > 0) return 2;
            }
            return 0;
        }
    } catch (const hessk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
