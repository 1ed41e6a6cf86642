#include "ecfft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "ecfft/algorithms.hpp"
#include "json.hpp"

namespace ecfft {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw PreconditionError("slope fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

const std::vector<std::string>& bench_operations()
{
    static const std::vector<std::string> ops = {"extend", "enter", "exit", "mult", "naive_mult"};
    return ops;
}

namespace {

std::vector<Fe> random_values(const Field& F, std::size_t n, std::mt19937_64& rng)
{
    std::vector<Fe> out(n);
    for (auto& x : out) x = random_fe(F, rng);
    return out;
}

BenchPoint measure(std::size_t n, const std::function<void()>& run)
{
    run(); // warm lazily built advice
    reset_op_counts();
    const auto t0 = std::chrono::steady_clock::now();
    run();
    const auto t1 = std::chrono::steady_clock::now();
    return BenchPoint{n, op_counts().total(), std::chrono::duration<double>(t1 - t0).count()};
}

} // namespace

std::vector<BenchReport> run_bench(const FFTree& tree, unsigned lo, unsigned hi, std::uint64_t seed,
                                   const std::vector<std::string>& ops)
{
    if (hi < lo + 3) throw PreconditionError("bench: need at least four sizes");
    if (hi > tree.depth()) {
        throw PreconditionError("bench: tree depth " + std::to_string(tree.depth()) + " is below the largest size 2^" +
                                std::to_string(hi));
    }
    for (const auto& op : ops) {
        if (std::find(bench_operations().begin(), bench_operations().end(), op) == bench_operations().end()) {
            throw PreconditionError("bench: unknown operation '" + op + "'");
        }
    }
    const std::vector<std::string>& chosen = ops.empty() ? bench_operations() : ops;
    const Field& F = tree.field();
    std::mt19937_64 rng(seed);
    std::optional<FFTree> sibling;
    if (std::find(chosen.begin(), chosen.end(), "extend") != chosen.end()) sibling.emplace(build_sibling_tree(tree, seed));

    std::vector<BenchReport> reports;
    for (const auto& op : chosen) {
        BenchReport r;
        r.op = op;
        for (unsigned a = lo; a <= hi; ++a) {
            const std::size_t n = std::size_t{1} << a;
            const BasicSet U = tree.standard_set(a);
            if (op == "extend") {
                const EvalTable t{U, random_values(F, n, rng)};
                r.points.push_back(measure(n, [&] { (void)extend(tree, t, *sibling, sibling->standard_set(a)); }));
            } else if (op == "enter") {
                const Poly P(random_values(F, n, rng));
                r.points.push_back(measure(n, [&] { (void)enter_coeffs(tree, U, P); }));
            } else if (op == "exit") {
                const EvalTable t{U, random_values(F, n, rng)};
                r.points.push_back(measure(n, [&] { (void)exit_coeffs(tree, t); }));
            } else if (op == "mult") {
                const BasicSet S0 = tree.child(U, 0);
                const EvalTable P{S0, random_values(F, n / 2, rng)};
                const EvalTable Q{S0, random_values(F, n / 2, rng)};
                r.points.push_back(measure(n, [&] { (void)mult(tree, U, 0, P, Q); }));
            } else {
                const Poly P(random_values(F, n / 2, rng));
                const Poly Q(random_values(F, n / 2, rng));
                r.points.push_back(measure(n, [&] { (void)poly_mul_naive(F, P, Q); }));
            }
        }
        std::vector<double> xs, ops_y, time_y;
        for (const auto& pt : r.points) {
            xs.push_back(static_cast<double>(pt.n));
            ops_y.push_back(static_cast<double>(std::max<std::uint64_t>(1, pt.ops)));
            time_y.push_back(std::max(pt.seconds, 1e-9));
        }
        r.slope_ops = loglog_slope(xs, ops_y);
        r.slope_time = loglog_slope(xs, time_y);
        if (op == "extend") r.max_slope = 1.25;
        if (op == "enter" || op == "exit") r.max_slope = 1.35;
        if (op == "naive_mult") r.min_slope = 1.8;
        r.pass = (!r.max_slope || r.slope_ops <= *r.max_slope) && (!r.min_slope || r.slope_ops >= *r.min_slope);
        reports.push_back(std::move(r));
    }
    return reports;
}

std::string bench_report_json(const BenchReport& r)
{
    nlohmann::ordered_json j;
    j["op"] = r.op;
    nlohmann::ordered_json sizes = nlohmann::ordered_json::array(), ops = nlohmann::ordered_json::array(),
                           secs = nlohmann::ordered_json::array();
    for (const auto& pt : r.points) {
        sizes.push_back(pt.n);
        ops.push_back(pt.ops);
        secs.push_back(pt.seconds);
    }
    j["sizes"] = sizes;
    j["field_ops"] = ops;
    j["seconds"] = secs;
    j["slope_ops"] = r.slope_ops;
    j["slope_time"] = r.slope_time;
    if (r.max_slope) j["max_slope"] = *r.max_slope;
    if (r.min_slope) j["min_slope"] = *r.min_slope;
    j["pass"] = r.pass;
    return j.dump();
}

} // namespace ecfft
