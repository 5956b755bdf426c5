// qev: command-line front end for complex evidence combination and the
// evidential quantum decision model.
//
// Exit codes: 0 success, 1 unexpected failure, 2 bad input (unreadable or
// malformed documents, mismatched frames, invalid flags), 3 CBBA validation
// failure, 4 total conflict (|1 - K| too small to combine).

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "qev/evidence.hpp"
#include "qev/fitting.hpp"
#include "qev/io.hpp"
#include "qev/quantum.hpp"

namespace {

using namespace qev;

int exit_code(Errc code) {
    switch (code) {
        case Errc::Validation: return 3;
        case Errc::TotalConflict: return 4;
        case Errc::Parse:
        case Errc::Io:
        case Errc::BadGridStep:
        case Errc::BadWeights:
        case Errc::BadConfig:
        case Errc::BadFrame:
        case Errc::FrameMismatch:
        case Errc::UnknownLabel:
        case Errc::ParamOutOfRange:
        case Errc::OutOfRange:
        case Errc::NonFinite: return 2;
        default: return 1;
    }
}

struct ModelFlags {
    double t = std::numbers::pi / 2.0;
    std::string scaling = "paper-literal";
    std::string alone_measure = "attack-consistent";

    void attach(CLI::App* app) {
        app->add_option("--t", t, "Evolution time")->capture_default_str();
        app->add_option("--scaling", scaling, "Hamiltonian scaling: paper-literal | unit-spectrum")->capture_default_str();
        app->add_option("--alone-measure", alone_measure, "Decide-alone measurement: paper-literal | attack-consistent")
            ->capture_default_str();
    }

    ModelConfig config() const {
        ModelConfig m;
        if (!std::isfinite(t) || t < 0.0) throw Error(Errc::BadConfig, "--t must be a non-negative number");
        m.t = t;
        m.scaling = parse_scaling(scaling);
        m.alone_measure = parse_alone_measure(alone_measure);
        return m;
    }
};

struct FitFlags {
    ModelFlags model;
    int starts = 64;
    double tol = 1e-10;
    int max_iters = 2000;
    unsigned threads = 1;
    std::vector<double> bounds{-10.0, 10.0};

    void attach(CLI::App* app) {
        model.attach(app);
        app->add_option("--starts", starts, "Multistart count")->capture_default_str();
        app->add_option("--tol", tol, "SSE convergence tolerance")->capture_default_str();
        app->add_option("--max-iters", max_iters, "Simplex iterations per start")->capture_default_str();
        app->add_option("--threads", threads, "Worker threads for the multistart")->capture_default_str();
        app->add_option("--bounds", bounds, "Parameter interval as lo,hi")->delimiter(',')->expected(2);
    }

    FitConfig config() const {
        FitConfig cfg;
        cfg.model = model.config();
        cfg.starts = starts;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.threads = threads;
        cfg.bounds = {bounds.at(0), bounds.at(1)};
        return cfg;
    }
};

void print_combination(const Cbba& fused, const std::vector<ConflictReport>& steps) {
    if (steps.empty()) {
        std::cout << "K = " << io::fixed(Complex{}, 6) << "\n|K| = " << io::fixed(0.0, 6) << "\n";
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string tag = steps.size() > 1 ? "[" + std::to_string(i + 1) + "]" : "";
        std::cout << "K" << tag << " = " << io::fixed(steps[i].k, 6) << "\n";
        std::cout << "|K" << tag << "| = " << io::fixed(steps[i].k_abs, 6) << "\n";
    }
    for (const auto& [h, z] : fused.masses()) {
        std::cout << "m(" << fused.frame().name(h) << ") = " << io::fixed(z, 6) << "\n";
    }
}

int run_combine(const std::vector<std::string>& inputs, const std::string& output) {
    std::vector<Cbba> docs;
    for (const auto& p : inputs) docs.push_back(io::load_cbba(p));

    Cbba fused = docs.front();
    std::vector<ConflictReport> steps;
    for (std::size_t i = 1; i < docs.size(); ++i) {
        Combination c = combine_detailed(fused, docs[i]);
        for (const auto& w : c.warnings) std::cerr << "warning: " << w.message << "\n";
        steps.push_back(c.conflict);
        fused = std::move(c.fused);
    }
    print_combination(fused, steps);
    if (!output.empty()) io::write_file_atomic(output, io::serialize(io::to_document(fused)));
    return 0;
}

int run_inspect(const std::string& input) {
    const Cbba m = io::load_cbba(input);
    const Frame& f = m.frame();
    const auto bet = pignistic(m);
    for (std::uint32_t mask = 1; mask <= f.full().mask(); ++mask) {
        const Hypothesis h(mask);
        std::cout << "Bel(" << f.name(h) << ") = " << io::fixed(belief(m, h), 6) << "  Pl(" << f.name(h)
                  << ") = " << io::fixed(plausibility(m, h), 6) << "  1-Bel(~" << f.name(h)
                  << ") = " << io::fixed(plausibility_complement(m, h), 6) << "\n";
    }
    for (std::size_t e = 0; e < f.size(); ++e) {
        std::cout << "Bet(" << f.label(e) << ") = " << io::fixed(bet[e], 6) << "\n";
    }
    return 0;
}

int run_surface(double step, const std::string& output) {
    const std::string csv = io::surface_csv(conflict_surface(step));
    if (output.empty()) {
        std::cout << csv;
    } else {
        io::write_file_atomic(output, csv);
    }
    return 0;
}

int run_predict(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& model,
                const std::string& condition) {
    if (condition != "c-then-d" && condition != "d-alone") {
        throw Error(Errc::BadConfig, "--condition must be c-then-d or d-alone");
    }
    if (condition == "c-then-d") {
        const CtdPrediction p = predict_ctd(params, w, model);
        std::cout << "P(A|G) = " << io::fixed(p.p_a_given_g, 4) << "\n"
                  << "P(A|B) = " << io::fixed(p.p_a_given_b, 4) << "\n"
                  << "P_T = " << io::fixed(p.p_total, 4) << "\n";
        if (p.out_of_range) std::cerr << "warning: a conditional attack probability exceeds 1\n";
    } else {
        const AlonePrediction p = predict_alone(params, w, model);
        std::cout << "P(A) = " << io::fixed(p.p_attack, 4) << "\n";
        if (p.clamped) std::cerr << "warning: P(A) exceeded 1 and was clamped\n";
    }
    return 0;
}

void print_fit(const char* label, const FitResult& r, bool with_hu) {
    std::cout << label << ": h_g = " << io::fixed(r.params.h_g, 6) << ", h_b = " << io::fixed(r.params.h_b, 6);
    if (with_hu) std::cout << ", h_u = " << io::fixed(r.params.h_u, 6);
    std::cout << ", sse = " << r.sse << ", start = " << r.start_index
              << (r.converged ? "" : ", NOT CONVERGED (best so far)") << "\n";
}

int run_fit(const std::string& dataset, const std::string& condition, const FitConfig& cfg, const std::string& report) {
    if (condition != "both" && condition != "c-then-d" && condition != "d-alone") {
        throw Error(Errc::BadConfig, "--condition must be both, c-then-d or d-alone");
    }
    const ObservedDataset obs = io::load_dataset(dataset);
    std::cout << "dataset: " << obs.name << "\n";

    std::optional<FitResult> ctd;
    std::optional<FitResult> alone;
    if (condition != "d-alone") {
        ctd = fit_ctd(obs, cfg);
        print_fit("c-then-d", *ctd, true);
        const auto& p = ctd->predictions;
        std::cout << "  P(A|G) = " << io::fixed(p.p_a_given_g, 4) << ", P(A|B) = " << io::fixed(p.p_a_given_b, 4)
                  << ", P_T = " << io::fixed(p.p_total, 4) << "\n";
    }
    if (condition != "c-then-d") {
        alone = fit_alone(obs, cfg);
        print_fit("d-alone", *alone, false);
        std::cout << "  P(A) = " << io::fixed(alone->predictions.p_a_alone, 4) << "\n";
    }
    const Predictions& cond = ctd ? ctd->predictions : alone->predictions;
    const double p_a = alone ? alone->predictions.p_a_alone : ctd->predictions.p_a_alone;
    if (ctd && alone) std::cout << "interference P(A) - P_T = " << io::fixed(p_a - cond.p_total, 4) << "\n";

    if (!report.empty()) {
        const std::vector<ReportRow> rows{
            {obs.name, "observed", obs.p_g, obs.p_a_given_g, obs.p_b, obs.p_a_given_b, obs.total(), obs.p_a},
            {obs.name, "fitted", obs.p_g, cond.p_a_given_g, obs.p_b, cond.p_a_given_b, cond.p_total, p_a},
        };
        io::write_file_atomic(report, io::rows_csv(rows));
    }
    return 0;
}

int run_report(const std::vector<std::string>& datasets, const FitConfig& cfg, const std::string& csv) {
    std::vector<ObservedDataset> obs;
    for (const auto& p : datasets) obs.push_back(io::load_dataset(p));
    const Report rep = evaluate_report(obs, cfg);
    std::cout << io::report_table(rep);
    if (!csv.empty()) io::write_file_atomic(csv, io::report_csv(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex-valued evidence combination and evidential quantum decision model"};
    app.require_subcommand(1);

    std::vector<std::string> combine_inputs;
    std::string combine_output;
    auto* combine = app.add_subcommand("combine", "Fuse CBBA documents left to right");
    combine->add_option("inputs", combine_inputs, "CBBA documents")->required();
    combine->add_option("--output", combine_output, "Write the fused CBBA document here");

    std::string inspect_input;
    auto* inspect = app.add_subcommand("inspect", "Belief, plausibility and pignistic values of a CBBA");
    inspect->add_option("input", inspect_input, "CBBA document")->required();

    double grid_step = 0.05;
    std::string surface_output;
    auto* surface = app.add_subcommand("surface", "Conflict magnitude over the two-element example family");
    surface->add_option("--grid-step", grid_step, "Grid spacing in (0, 0.5]")->capture_default_str();
    surface->add_option("--output", surface_output, "CSV path (stdout when omitted)");

    HamiltonianParams params;
    CategoryWeights weights{0.5, 0.5, 0.0};
    ModelFlags predict_model;
    std::string predict_condition = "c-then-d";
    auto* predict = app.add_subcommand("predict", "Model predictions for given parameters");
    predict->add_option("--h-g", params.h_g)->capture_default_str();
    predict->add_option("--h-b", params.h_b)->capture_default_str();
    predict->add_option("--h-u", params.h_u)->capture_default_str();
    predict->add_option("--p-g", weights.p_g)->capture_default_str();
    predict->add_option("--p-b", weights.p_b)->capture_default_str();
    predict->add_option("--p-u", weights.p_u)->capture_default_str();
    predict->add_option("--condition", predict_condition, "c-then-d | d-alone")->capture_default_str();
    predict_model.attach(predict);

    std::string fit_dataset;
    std::string fit_condition = "both";
    std::string fit_report;
    FitFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "Fit Hamiltonian parameters to one dataset");
    fit->add_option("--dataset", fit_dataset, "Dataset document")->required();
    fit->add_option("--condition", fit_condition, "both | c-then-d | d-alone")->capture_default_str();
    fit->add_option("--report", fit_report, "CSV with observed and fitted rows");
    fit_flags.attach(fit);

    std::vector<std::string> report_datasets;
    std::string report_csv;
    FitFlags report_flags;
    auto* report = app.add_subcommand("report", "Fit every dataset and print the comparison table");
    report->add_option("datasets", report_datasets, "Dataset documents")->required();
    report->add_option("--csv", report_csv, "Also write the table as CSV");
    report_flags.attach(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*combine) return run_combine(combine_inputs, combine_output);
        if (*inspect) return run_inspect(inspect_input);
        if (*surface) return run_surface(grid_step, surface_output);
        if (*predict) return run_predict(params, weights, predict_model.config(), predict_condition);
        if (*fit) return run_fit(fit_dataset, fit_condition, fit_flags.config(), fit_report);
        if (*report) return run_report(report_datasets, report_flags.config(), report_csv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
