#include "qev/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

namespace qev {

namespace {

void require_valid(const ObservedDataset& obs) {
    const auto v = obs.violations();
    if (!v.empty()) throw Error(Errc::Validation, "dataset '" + obs.name + "': " + v.front());
}

void require_valid(const FitConfig& cfg) {
    if (!std::isfinite(cfg.bounds.lo) || !std::isfinite(cfg.bounds.hi) || !(cfg.bounds.lo < cfg.bounds.hi)) {
        throw Error(Errc::BadConfig, "fit bounds must be a finite, non-empty interval");
    }
    if (std::max(std::abs(cfg.bounds.lo), std::abs(cfg.bounds.hi)) > cfg.model.h_max) {
        throw Error(Errc::BadConfig, "fit bounds exceed h_max");
    }
    if (cfg.starts < 1) throw Error(Errc::BadConfig, "need at least one start");
    if (cfg.max_iters < 1 || !(cfg.tol >= 0.0)) throw Error(Errc::BadConfig, "bad convergence settings");
}

HamiltonianParams params_from(std::span<const double> x) {
    return {x[0], x[1], x.size() > 2 ? x[2] : 0.0};
}

// Runs every start (possibly on several threads) and keeps the lowest SSE,
// breaking ties by start index. Each start writes only its own slot, so the
// outcome does not depend on scheduling.
FitResult multistart(const Objective& f, std::size_t dim, const ObservedDataset& obs, const FitConfig& cfg) {
    const auto starts = halton_starts(static_cast<std::size_t>(cfg.starts), dim, cfg.bounds);
    SimplexOptions opt;
    opt.f_tol = cfg.tol;
    opt.max_iters = cfg.max_iters;

    std::vector<SimplexResult> results(starts.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(starts.size())));
    auto run = [&](unsigned w) {
        for (std::size_t i = w; i < starts.size(); i += workers) {
            results[i] = minimize_simplex(f, starts[i], cfg.bounds, opt);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    std::size_t win = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].f < results[win].f) win = i;
    }

    FitResult out;
    out.params = params_from(results[win].x);
    out.sse = results[win].f;
    out.start_index = static_cast<int>(win);
    out.converged = std::any_of(results.begin(), results.end(), [](const auto& r) { return r.converged; });
    out.predictions = predict_all(out.params, obs.weights(), cfg.model);
    if (cfg.keep_all_starts) {
        for (const auto& r : results) out.starts.push_back({params_from(r.x), r.f, r.iterations, r.converged});
    }
    return out;
}

ReportRow average(const std::vector<ReportRow>& rows, const std::string& method) {
    ReportRow a{"average", method};
    for (const auto& r : rows) {
        a.p_g += r.p_g;
        a.p_a_given_g += r.p_a_given_g;
        a.p_b += r.p_b;
        a.p_a_given_b += r.p_a_given_b;
        a.p_t += r.p_t;
        a.p_a += r.p_a;
    }
    const double n = static_cast<double>(rows.size());
    for (double* v : {&a.p_g, &a.p_a_given_g, &a.p_b, &a.p_a_given_b, &a.p_t, &a.p_a}) *v /= n;
    return a;
}

struct Published {
    const char* dataset;
    const char* method;
    std::array<double, 6> row;
};

// Comparison rows as published alongside the observed data.
constexpr Published kPublished[] = {
    {"busemeyer2009-narrow", "EM", {0.17, 0.39, 0.83, 0.61, 0.57, 0.69}},
    {"busemeyer2009-narrow", "QBAE", {0.17, 0.41, 0.83, 0.66, 0.62, 0.68}},
    {"busemeyer2009-narrow", "MBA", {0.17, 0.40, 0.83, 0.63, 0.59, 0.59}},
    {"busemeyer2009-narrow", "evidential quantum", {0.17, 0.41, 0.83, 0.56, 0.53, 0.60}},
    {"wang2016-exp1", "EM", {0.21, 0.42, 0.79, 0.58, 0.55, 0.60}},
    {"wang2016-exp1", "QBAE", {0.21, 0.45, 0.79, 0.54, 0.52, 0.57}},
    {"wang2016-exp1", "MBA", {0.21, 0.39, 0.79, 0.60, 0.55, 0.55}},
    {"wang2016-exp1", "evidential quantum", {0.21, 0.41, 0.79, 0.56, 0.53, 0.58}},
    {"wang2016-exp2", "EM", {0.24, 0.38, 0.76, 0.62, 0.56, 0.61}},
    {"wang2016-exp2", "QBAE", {0.21, 0.33, 0.79, 0.68, 0.61, 0.63}},
    {"wang2016-exp2", "MBA", {0.23, 0.39, 0.77, 0.66, 0.60, 0.59}},
    {"wang2016-exp2", "evidential quantum", {0.24, 0.41, 0.76, 0.56, 0.52, 0.56}},
    {"wang2016-exp3", "EM", {0.25, 0.34, 0.75, 0.66, 0.58, 0.64}},
    {"wang2016-exp3", "QBAE", {0.21, 0.32, 0.79, 0.69, 0.61, 0.63}},
    {"wang2016-exp3", "MBA", {0.23, 0.47, 0.77, 0.55, 0.53, 0.53}},
    {"wang2016-exp3", "evidential quantum", {0.24, 0.35, 0.76, 0.56, 0.51, 0.55}},
};

}  // namespace

double ObservedDataset::total() const { return p_g * p_a_given_g + p_b * p_a_given_b; }

std::vector<std::string> ObservedDataset::violations() const {
    std::vector<std::string> out;
    const std::pair<const char*, double> fields[] = {{"p_g", p_g}, {"p_a_given_g", p_a_given_g}, {"p_b", p_b},
                                                     {"p_a_given_b", p_a_given_b}, {"p_t", p_t}, {"p_a", p_a}};
    for (const auto& [key, v] : fields) {
        if (!(v >= 0.0 && v <= 1.0)) out.push_back(std::string(key) + " outside [0, 1]");
    }
    if (std::abs(p_g + p_b - 1.0) > 1e-6) out.emplace_back("p_g + p_b must equal 1");
    if (std::abs(total() - p_t) > 0.01) out.emplace_back("p_t disagrees with p_g p_a_given_g + p_b p_a_given_b");
    return out;
}

Predictions predict_all(const HamiltonianParams& params, const CategoryWeights& w, const ModelConfig& model) {
    const CtdPrediction c = predict_ctd(params, w, model);
    const AlonePrediction a = predict_alone(params, {w.p_g, w.p_b, 0.0}, model);
    return {c.p_a_given_g, c.p_a_given_b, c.p_total, a.p_attack};
}

double sse_ctd(const HamiltonianParams& params, const ObservedDataset& obs, const ModelConfig& model) {
    const CtdPrediction c = predict_ctd(params, obs.weights(), model);
    const double dg = c.p_a_given_g - obs.p_a_given_g;
    const double db = c.p_a_given_b - obs.p_a_given_b;
    return dg * dg + db * db;
}

double sse_alone(const HamiltonianParams& params, const ObservedDataset& obs, const ModelConfig& model) {
    const double d = predict_alone(params, obs.weights(), model).p_attack - obs.p_a;
    return d * d;
}

FitResult fit_ctd(const ObservedDataset& obs, const FitConfig& cfg) {
    require_valid(obs);
    require_valid(cfg);
    const Objective f = [&](std::span<const double> x) { return sse_ctd(params_from(x), obs, cfg.model); };
    return multistart(f, 3, obs, cfg);
}

FitResult fit_alone(const ObservedDataset& obs, const FitConfig& cfg) {
    require_valid(obs);
    require_valid(cfg);
    const Objective f = [&](std::span<const double> x) { return sse_alone(params_from(x), obs, cfg.model); };
    return multistart(f, 2, obs, cfg);
}

Report evaluate_report(const std::vector<ObservedDataset>& datasets, const FitConfig& cfg) {
    if (datasets.empty()) throw Error(Errc::BadConfig, "report needs at least one dataset");
    Report rep;
    std::vector<ReportRow> observed;
    std::vector<ReportRow> fitted;
    for (const auto& obs : datasets) {
        DatasetReport d;
        d.observed = obs;
        d.ctd = fit_ctd(obs, cfg);
        d.alone = fit_alone(obs, cfg);
        d.observed_row = {obs.name, "observed", obs.p_g, obs.p_a_given_g, obs.p_b, obs.p_a_given_b, obs.total(), obs.p_a};
        d.fitted_row = {obs.name,
                        "fitted",
                        obs.p_g,
                        d.ctd.predictions.p_a_given_g,
                        obs.p_b,
                        d.ctd.predictions.p_a_given_b,
                        d.ctd.predictions.p_total,
                        d.alone.predictions.p_a_alone};
        const ReportRow& o = d.observed_row;
        const ReportRow& p = d.fitted_row;
        d.deviation = {obs.name,
                       "deviation",
                       p.p_g - o.p_g,
                       p.p_a_given_g - o.p_a_given_g,
                       p.p_b - o.p_b,
                       p.p_a_given_b - o.p_a_given_b,
                       p.p_t - o.p_t,
                       p.p_a - o.p_a};
        d.interference = p.p_a - p.p_t;
        observed.push_back(d.observed_row);
        fitted.push_back(d.fitted_row);
        for (auto& r : published_rows(obs.name)) rep.references.push_back(std::move(r));
        rep.datasets.push_back(std::move(d));
    }
    rep.observed_average = average(observed, "observed");
    rep.fitted_average = average(fitted, "fitted");
    return rep;
}

std::vector<ReportRow> published_rows(const std::string& dataset) {
    std::vector<ReportRow> out;
    for (const auto& p : kPublished) {
        if (dataset != p.dataset) continue;
        const auto& r = p.row;
        out.push_back({dataset, std::string(p.method) + " (published)", r[0], r[1], r[2], r[3], r[4], r[5]});
    }
    return out;
}

}  // namespace qev
