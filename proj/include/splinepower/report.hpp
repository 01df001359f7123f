#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splinepower/bounds.hpp"
#include "splinepower/estimate.hpp"
#include "splinepower/tensor.hpp"

namespace splinepower {

/// 12 significant digits, C locale; the byte-stable table format.
[[nodiscard]] std::string fmt12(double v);
/// Full-precision string for JSON payloads.
[[nodiscard]] std::string fmt_full(double v);

/// Worker-count cap: SPLINEPOWER_THREADS, else hardware concurrency.
[[nodiscard]] int thread_cap();

/// Deterministic parallel map: body(i) runs for i in [0, count), results
/// assembled in index order regardless of the schedule.
void parallel_for(int count, const std::function<void(int)>& body);

struct ReproduceReport {
    std::string text;
    bool all_passed = false;
};

/// The printed-ratio checks (4-decimal truncated prefixes), the p=2 openness
/// checks, region-closure consistency, and both region grids as CSV.
[[nodiscard]] ReproduceReport build_reproduce_report();

enum class OutputFormat { Csv, Json };

struct EstimateRow {
    int p, k, n, q;
    std::optional<ConstantEstimate> estimate;
    std::string status;  // "ok", "not_converged", or an error
};

/// Runs estimates over explicit (p,k,n,q) tuples; rows keep sweep order.
[[nodiscard]] std::vector<EstimateRow> run_estimate_sweep(
    const std::vector<std::array<int, 4>>& tuples, const EstimateOptions& opts);

[[nodiscard]] std::string estimate_table(const std::vector<EstimateRow>& rows, OutputFormat fmt);

[[nodiscard]] std::string bounds_table(const std::vector<std::array<int, 3>>& tuples,
                                       OutputFormat fmt);

[[nodiscard]] std::string ratio_table(const std::vector<std::array<int, 3>>& tuples,
                                      OutputFormat fmt);

/// Bookkeeping + bound report for one broken configuration; optionally runs
/// the numerical estimate.
[[nodiscard]] std::string broken_report(const BrokenSpec& spec, bool with_estimate,
                                        const EstimateOptions& opts, OutputFormat fmt);

/// Demo tensor report: per-direction closed-form constants and the factored
/// 2D projection error for f(x,y) = sin(pi x) sin(pi y) when d = 2.
[[nodiscard]] std::string tensor_report(const TensorSpec& spec, OutputFormat fmt);

}  // namespace splinepower
