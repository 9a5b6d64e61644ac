#include "ccdiv/perf_ratio.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ccdiv/errors.hpp"
#include "ccdiv/rng.hpp"
#include "ccdiv/stats.hpp"

namespace ccdiv {

using nlohmann::json;

// Acklam's rational approximation to the standard normal quantile, sharpened
// by one Halley step against erfc. Good to ~1e-15 over (0, 1).
static double inverse_normal_cdf(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double k_theta(double theta) {
    if (!(theta > 0.5 && theta < 1.0))
        throw std::invalid_argument("theta must be in (0.5, 1)");
    return inverse_normal_cdf(theta);
}

RatioReport compute_ratio_report(std::vector<double> per_run_a1, std::vector<double> per_run_a2,
                                 double theta) {
    if (per_run_a1.size() != per_run_a2.size())
        throw std::invalid_argument("per-run objective lists differ in length");
    if (per_run_a1.size() < 2)
        throw std::invalid_argument("at least two paired runs are needed for a spread");
    const double k = k_theta(theta);

    RatioReport report;
    report.per_run_a1 = std::move(per_run_a1);
    report.per_run_a2 = std::move(per_run_a2);
    report.ratios.resize(report.per_run_a1.size());
    for (std::size_t i = 0; i < report.ratios.size(); ++i) {
        if (!(report.per_run_a1[i] > 0.0) || !(report.per_run_a2[i] > 0.0))
            throw std::invalid_argument("per-run objectives must be positive");
        report.ratios[i] = report.per_run_a1[i] / report.per_run_a2[i];
    }
    report.mean_ratio = stats::mean(report.ratios);
    report.std_ratio = stats::sample_std(report.ratios);
    report.discounted = report.mean_ratio - k * report.std_ratio;
    return report;
}

RatioReport discounted_ratio(const ChanceInstance& inst, const SolverConfig& alg1,
                             const SolverConfig& alg2, int runs, double theta,
                             std::uint64_t seed, int max_parallel) {
    if (runs < 2) throw std::invalid_argument("at least two runs are needed for a spread");
    (void)k_theta(theta);
    inst.validate();

    // Seeds are keyed to the algorithm name, not the argument position, so
    // swapping alg1/alg2 reproduces each run and yields reciprocal ratios.
    const auto task_config = [&](const SolverConfig& cfg, int run) {
        SolverConfig c = cfg;
        c.seed = rng::derive_seed(seed, std::string("run-") + to_string(cfg.algorithm),
                                  static_cast<std::uint64_t>(run));
        return c;
    };

    std::vector<double> a1(static_cast<std::size_t>(runs)), a2(static_cast<std::size_t>(runs));
    const int tasks = 2 * runs;
    const int workers = std::clamp(max_parallel, 1, tasks);

    auto run_task = [&](int t) {
        const int i = t / 2;
        if (t % 2 == 0)
            a1[static_cast<std::size_t>(i)] = best_objective(inst, task_config(alg1, i));
        else
            a2[static_cast<std::size_t>(i)] = best_objective(inst, task_config(alg2, i));
    };

    if (workers <= 1) {
        for (int t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (int t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) run_task(t);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    return compute_ratio_report(std::move(a1), std::move(a2), theta);
}

double threshold_from(double r_prime_baseline) {
    if (!(r_prime_baseline > 1.0))
        throw std::invalid_argument("baseline R' must exceed 1 (instance not discriminating)");
    return 0.8 * (r_prime_baseline - 1.0) + 1.0;
}

std::string to_json(const RatioReport& report) {
    json doc;
    doc["discounted"] = report.discounted;
    doc["mean_ratio"] = report.mean_ratio;
    doc["per_run_a1"] = report.per_run_a1;
    doc["per_run_a2"] = report.per_run_a2;
    doc["ratios"] = report.ratios;
    doc["std_ratio"] = report.std_ratio;
    return doc.dump(2) + "\n";
}

RatioReport ratio_report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("ratio report: ") + e.what());
    }
    RatioReport report;
    try {
        report.per_run_a1 = doc.at("per_run_a1").get<std::vector<double>>();
        report.per_run_a2 = doc.at("per_run_a2").get<std::vector<double>>();
        report.ratios = doc.at("ratios").get<std::vector<double>>();
        report.mean_ratio = doc.at("mean_ratio").get<double>();
        report.std_ratio = doc.at("std_ratio").get<double>();
        report.discounted = doc.at("discounted").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("ratio report: ") + e.what());
    }
    if (report.per_run_a1.size() != report.per_run_a2.size() ||
        report.ratios.size() != report.per_run_a1.size())
        throw ValidationError("ratio report: per-run lists differ in length");
    for (double r : report.ratios)
        if (!(r > 0.0)) throw ValidationError("ratio report: ratios must be positive");
    return report;
}

}  // namespace ccdiv
