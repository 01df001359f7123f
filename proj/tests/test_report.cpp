#include <doctest.h>

#include "splinepower/report.hpp"
#include "splinepower/tensor.hpp"

using namespace splinepower;

TEST_CASE("reproduce report passes and is deterministic") {
    const ReproduceReport a = build_reproduce_report();
    const ReproduceReport b = build_reproduce_report();
    CHECK(a.all_passed);
    CHECK(a.text == b.text);
    CHECK(a.text.find("check theta p=38 k=0 n=2 expect 0.9851") != std::string::npos);
    CHECK(a.text.find("check fem-p2-limit") != std::string::npos);
    CHECK(a.text.find("grid fem csv:") != std::string::npos);
    CHECK(a.text.find("grid dg csv:") != std::string::npos);
    CHECK(a.text.find("FAIL") == std::string::npos);
}

TEST_CASE("estimate table") {
    // empty sweep keeps the header
    CHECK(estimate_table({}, OutputFormat::Csv) ==
          "p,k,n,q,estimate,lower,upper,converged,condition,bracket_ok,status\n");
    CHECK(estimate_table({}, OutputFormat::Json) == "[]");

    EstimateOptions opts;
    auto rows = run_estimate_sweep({{0, -1, 1, 0}, {1, 0, 2, 1}}, opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ok");
    const std::string csv = estimate_table(rows, OutputFormat::Csv);
    CHECK(csv.find("0,-1,1,0,0.318") != std::string::npos);
    CHECK(csv.find(",true,") != std::string::npos);
    // determinism
    auto rows2 = run_estimate_sweep({{0, -1, 1, 0}, {1, 0, 2, 1}}, opts);
    CHECK(estimate_table(rows2, OutputFormat::Csv) == csv);

    // JSON rows carry the status inside each estimate object
    const std::string json = estimate_table(rows, OutputFormat::Json);
    CHECK(json.find("\"status\":\"ok\"}") != std::string::npos);
    CHECK(json.find("\"trace\"") != std::string::npos);
}

TEST_CASE("bounds and ratio tables") {
    const std::string bt = bounds_table({{0, -1, 1}, {1, 0, 1}}, OutputFormat::Csv);
    CHECK(bt.find("0,-1,1,0.288675134595,0.318309886184") != std::string::npos);
    const std::string rt = ratio_table({{3, 0, 7}}, OutputFormat::Csv);
    CHECK(rt.find("3,0,7,19,") != std::string::npos);
    CHECK(rt.find("smooth_better") != std::string::npos);
    const std::string rj = ratio_table({{3, 0, 7}}, OutputFormat::Json);
    CHECK(rj.find("\"matched_m\":19") != std::string::npos);
}

TEST_CASE("broken report") {
    BrokenSpec spec(SplineSpaceSpec(2, -1, 4), {Rational(1, 3)}, {-1});
    EstimateOptions opts;
    const std::string csv = broken_report(spec, false, opts, OutputFormat::Csv);
    CHECK(csv.find(",10,") != std::string::npos);  // matched m
    CHECK(csv.find("sigma-second-branch") != std::string::npos);
    const std::string json = broken_report(spec, false, opts, OutputFormat::Json);
    CHECK(json.find("\"matched_m\":10") != std::string::npos);
    CHECK(json.find("\"grid_hits\":0") != std::string::npos);
    CHECK(broken_report(spec, false, opts, OutputFormat::Csv) == csv);
}

TEST_CASE("tensor report") {
    TensorSpec spec({{SplineSpaceSpec(2, 1, 4), SobolevTarget(2)},
                     {SplineSpaceSpec(2, 1, 4), SobolevTarget(2)}});
    const std::string csv = tensor_report(spec, OutputFormat::Csv);
    CHECK(csv.find("bound,") != std::string::npos);
    CHECK(csv.find("error_2d,") != std::string::npos);
    const std::string json = tensor_report(spec, OutputFormat::Json);
    CHECK(json.find("\"error_2d\"") != std::string::npos);
}

TEST_CASE("formatting helpers") {
    CHECK(fmt12(0.25) == "0.25");
    CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt_full(0.5) == "0.5");
}

TEST_CASE("thread cap honors the environment, output unchanged") {
    EstimateOptions opts;
    const std::vector<std::array<int, 4>> tuples = {{1, -1, 2, 1}, {2, 0, 3, 2}, {1, 0, 4, 0}};
    setenv("SPLINEPOWER_THREADS", "1", 1);
    CHECK(thread_cap() == 1);
    const std::string serial = estimate_table(run_estimate_sweep(tuples, opts), OutputFormat::Csv);
    setenv("SPLINEPOWER_THREADS", "2", 1);
    CHECK(thread_cap() == 2);
    const std::string parallel = estimate_table(run_estimate_sweep(tuples, opts), OutputFormat::Csv);
    unsetenv("SPLINEPOWER_THREADS");
    CHECK(serial == parallel);
}
