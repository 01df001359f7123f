// Batch front-end: closed-form brackets and ratios, verdict region grids,
// sharp-constant estimation sweeps, broken-space and tensor reports, and the
// self-checking reproduce command.

#include <array>
#include <clocale>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splinepower/projection.hpp"
#include "splinepower/report.hpp"
#include "splinepower/tensor.hpp"

namespace {

using namespace splinepower;

// "a", "a:b", or "a,b,c".
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const int a = std::stoi(text.substr(0, colon));
        const int b = std::stoi(text.substr(colon + 1));
        for (int v = a; v <= b; ++v) out.push_back(v);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        const auto comma = text.find(',', pos);
        const std::string tok =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!tok.empty()) out.push_back(Rational::from_string(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"spline approximation power tables"};

    std::string command, p_arg, k_arg, n_arg, q_arg, xi_arg, s_arg;
    std::string format = "csv", out_path, kind = "both", dump_gram;
    double tolerance = 1e-6;
    int max_refine = 6;
    bool extended = false, with_estimate = false;

    app.add_option("--command", command,
                   "one of: bounds, ratio, region, estimate, broken, tensor, reproduce")
        ->required();
    app.add_option("--p", p_arg, "degree (single, a:b range, or comma list)");
    app.add_option("--k", k_arg, "smoothness (single, a:b range, or comma list)");
    app.add_option("--n", n_arg, "segments (single, a:b range, or comma list)");
    app.add_option("--q", q_arg, "Sobolev order (single, a:b range, or comma list)");
    app.add_option("--xi", xi_arg, "breakpoints as comma-separated rationals num/den");
    app.add_option("--s", s_arg, "breakpoint smoothness values, comma-separated");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--kind", kind, "region kind: fem, dg, or both")
        ->check(CLI::IsMember({"fem", "dg", "both"}));
    app.add_option("--tolerance", tolerance, "estimation convergence tolerance");
    app.add_option("--max-refine", max_refine, "maximum refinement levels");
    app.add_flag("--extended-precision", extended, "run estimates in 80-bit precision");
    app.add_flag("--with-estimate", with_estimate, "run the numerical estimate in broken reports");
    app.add_option("--dump-gram", dump_gram,
                   "write the Gram matrix of the single (p,k,n) space as dense text");

    CLI11_PARSE(app, argc, argv);

    const OutputFormat fmt = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    EstimateOptions opts;
    opts.tolerance = tolerance;
    opts.max_refine = max_refine;
    opts.extended_precision = extended;

    try {
        if (command == "reproduce") {
            const ReproduceReport report = build_reproduce_report();
            emit(report.text, out_path);
            return report.all_passed ? 0 : 2;
        }
        if (command == "bounds" || command == "ratio") {
            std::vector<std::array<int, 3>> tuples;
            for (int p : parse_int_list(p_arg))
                for (int k : parse_int_list(k_arg))
                    for (int n : parse_int_list(n_arg))
                        if (k >= -1 && k <= p - 1 && n >= 1) tuples.push_back({p, k, n});
            emit(command == "bounds" ? bounds_table(tuples, fmt) : ratio_table(tuples, fmt),
                 out_path);
            return 0;
        }
        if (command == "region") {
            const auto ps = parse_int_list(p_arg);
            const auto ns = parse_int_list(n_arg);
            std::string out;
            auto one = [&](RegionKind which, int def_p, int def_n) {
                const int p_max = ps.empty() ? def_p : ps.back();
                const int n_max = ns.empty() ? def_n : ns.back();
                const RegionGrid grid = region_grid(which, p_max, n_max);
                out += fmt == OutputFormat::Csv ? region_to_csv(grid) : region_to_json(grid);
                if (fmt == OutputFormat::Json) out += "\n";
            };
            if (kind == "fem" || kind == "both") one(RegionKind::Fem, 40, 8);
            if (kind == "dg" || kind == "both") one(RegionKind::Dg, 23, 7);
            emit(out, out_path);
            return 0;
        }
        if (command == "estimate") {
            std::vector<std::array<int, 4>> tuples;
            for (int p : parse_int_list(p_arg))
                for (int k : parse_int_list(k_arg))
                    for (int n : parse_int_list(n_arg))
                        for (int q : parse_int_list(q_arg))
                            if (k >= -1 && k <= p - 1 && n >= 1 && q >= 0 && q <= p)
                                tuples.push_back({p, k, n, q});
            if (!dump_gram.empty()) {
                if (tuples.empty()) throw std::invalid_argument("--dump-gram: no valid space");
                const auto [p, k, n, q] = tuples.front();
                emit(matrix_to_text(gram_matrix(SplineSpaceSpec(p, k, n))), dump_gram);
            }
            emit(estimate_table(run_estimate_sweep(tuples, opts), fmt), out_path);
            return 0;
        }
        if (command == "broken") {
            const auto ps = parse_int_list(p_arg), ks = parse_int_list(k_arg),
                       ns = parse_int_list(n_arg);
            if (ps.size() != 1 || ks.size() != 1 || ns.size() != 1)
                throw std::invalid_argument("broken: provide single --p, --k, --n");
            BrokenSpec spec(SplineSpaceSpec(ps[0], ks[0], ns[0]), parse_rational_list(xi_arg),
                            parse_int_list(s_arg));
            emit(broken_report(spec, with_estimate, opts, fmt), out_path);
            return 0;
        }
        if (command == "tensor") {
            const auto ps = parse_int_list(p_arg), ks = parse_int_list(k_arg),
                       ns = parse_int_list(n_arg), qs = parse_int_list(q_arg);
            const std::size_t d = ps.size();
            if (d < 1 || ks.size() != d || ns.size() != d || qs.size() != d)
                throw std::invalid_argument("tensor: --p/--k/--n/--q lists must share a length");
            std::vector<std::pair<SplineSpaceSpec, SobolevTarget>> dirs;
            for (std::size_t i = 0; i < d; ++i)
                dirs.emplace_back(SplineSpaceSpec(ps[i], ks[i], ns[i]), SobolevTarget(qs[i]));
            emit(tensor_report(TensorSpec(std::move(dirs)), fmt), out_path);
            return 0;
        }
        std::cerr << "unknown command: " << command << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
