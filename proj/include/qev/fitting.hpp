#pragma once

// Least-squares estimation of the Hamiltonian parameters against observed
// categorisation-decision probabilities, and the batch comparison report.

#include <optional>
#include <string>
#include <vector>

#include "qev/quantum.hpp"
#include "qev/simplex.hpp"

namespace qev {

struct ObservedDataset {
    std::string name;
    double p_g = 0.0;
    double p_a_given_g = 0.0;
    double p_b = 0.0;
    double p_a_given_b = 0.0;
    double p_t = 0.0;  // as printed; fitting never reads it
    double p_a = 0.0;  // decide-alone attack rate

    CategoryWeights weights() const { return {p_g, p_b, 0.0}; }
    /// P(G) P(A|G) + P(B) P(A|B) from the conditional columns.
    double total() const;
    /// Empty when every value is in [0, 1], P(G) + P(B) = 1 within 1e-6 and
    /// the printed P_T agrees with total() within 0.01.
    std::vector<std::string> violations() const;
};

struct FitConfig {
    Box bounds{-10.0, 10.0};
    int starts = 64;
    double tol = 1e-10;
    int max_iters = 2000;
    ModelConfig model;
    unsigned threads = 1;
    bool keep_all_starts = false;
};

struct Predictions {
    double p_a_given_g = 0.0;
    double p_a_given_b = 0.0;
    double p_total = 0.0;
    double p_a_alone = 0.0;
};

struct StartResult {
    HamiltonianParams params;
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct FitResult {
    HamiltonianParams params;
    double sse = 0.0;
    Predictions predictions;
    int start_index = 0;
    /// False when no start met the tolerance within max_iters; the result is
    /// then the best point seen.
    bool converged = false;
    std::vector<StartResult> starts;  // only with FitConfig::keep_all_starts
};

/// Both prediction pipelines at one parameter point. The decide-alone value
/// ignores h_u.
Predictions predict_all(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& model);

/// (P(A|G) - obs)^2 + (P(A|B) - obs)^2.
double sse_ctd(const HamiltonianParams& params, const ObservedDataset& obs, const ModelConfig& model);

/// (P(A) - obs)^2; h_u is unused.
double sse_alone(const HamiltonianParams& params, const ObservedDataset& obs, const ModelConfig& model);

/// Fits (h_g, h_b, h_u) to the categorise-then-decide conditionals.
FitResult fit_ctd(const ObservedDataset& obs, const FitConfig& cfg);

/// Fits (h_g, h_b) to the decide-alone attack rate; h_u is reported as 0.
FitResult fit_alone(const ObservedDataset& obs, const FitConfig& cfg);

/// One table row in the P(G), P(A|G), P(B), P(A|B), P_T, P(A) layout.
struct ReportRow {
    std::string dataset;
    std::string method;
    double p_g = 0.0;
    double p_a_given_g = 0.0;
    double p_b = 0.0;
    double p_a_given_b = 0.0;
    double p_t = 0.0;
    double p_a = 0.0;
};

struct DatasetReport {
    ObservedDataset observed;
    FitResult ctd;
    FitResult alone;
    ReportRow observed_row;
    ReportRow fitted_row;
    /// Fitted minus observed, column by column (P(G)/P(B) are copied, so 0).
    ReportRow deviation;
    /// P(A) - P_T of the fitted row.
    double interference = 0.0;
};

struct Report {
    std::vector<DatasetReport> datasets;
    ReportRow observed_average;
    ReportRow fitted_average;
    /// Published comparison rows for datasets this library knows by name.
    std::vector<ReportRow> references;
};

/// Fits both conditions for every dataset. Throws BadConfig on an empty list.
Report evaluate_report(const std::vector<ObservedDataset>& datasets, const FitConfig& cfg);

/// Published comparison rows (EM, QBAE, MBA and the evidential quantum model)
/// for the four narrow-face datasets, keyed by dataset name. Empty for others.
std::vector<ReportRow> published_rows(const std::string& dataset);

}  // namespace qev
