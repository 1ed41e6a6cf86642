// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "ecfft/bench.hpp"
#include "ecfft/classical.hpp"
#include "ecfft/curve.hpp"
#include "ecfft/oracle_suite.hpp"
#include "ecfft/serialize.hpp"

using namespace ecfft;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::uint64_t smallest_prime_at_least(std::uint64_t n)
{
    while (!is_prime(n)) ++n;
    return n;
}

std::vector<std::size_t> pow2_sizes(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

Outcome suite_outcome(const FFTree& tree, std::size_t max_n)
{
    SuiteOptions o;
    o.sizes = pow2_sizes(2, max_n);
    o.instances = 50;
    o.seed = kSeed;
    const auto results = run_oracle_suite(tree, o);
    std::size_t checks = 0;
    for (const auto& r : results) {
        checks += r.instances;
        if (r.failures) {
            return {false, r.op + " n=" + std::to_string(r.n) + " failed " + std::to_string(r.failures) + "/" +
                               std::to_string(r.instances) + ": " + r.counterexample};
        }
    }
    return {true, std::to_string(results.size()) + " op/size pairs, " + std::to_string(checks) + " instances, p=" +
                      std::to_string(tree.field().modulus())};
}

const FFTree& main_tree()
{
    static const FFTree t = build_fftree(smallest_prime_at_least(std::uint64_t{1} << 22), 12, kSeed);
    return t;
}

Outcome criterion1() { return suite_outcome(main_tree(), 1024); }

Outcome criterion2()
{
    std::size_t primes = 0;
    for (std::uint64_t p = 7; p <= 1000; ++p) {
        if (!is_prime(p)) continue;
        ++primes;
        std::uint64_t K = 1;
        while ((2 * K) * (2 * K) <= 4 * p) K *= 2;
        const Field F(p);
        try {
            const auto r = find_curve(F, K, kSeed);
            if (r.order % K || r.order <= 2 * K || curve_order_character_sum(F, r.curve) != r.order || K * K <= p) {
                return {false, "p=" + std::to_string(p) + " K=" + std::to_string(K) + ": bad curve"};
            }
        } catch (const std::exception& e) {
            return {false, "p=" + std::to_string(p) + " K=" + std::to_string(K) + ": " + e.what()};
        }
    }
    return {true, std::to_string(primes) + " primes, each with K > sqrt(p)"};
}

Outcome criterion3()
{
    std::uint64_t p = std::uint64_t{1} << 22;
    while (!(is_prime(p) && p % 4 == 3)) ++p;
    const FFTree t = build_fftree(p, 10, kSeed);
    Outcome o = suite_outcome(t, 512);
    o.detail += ", v2(p-1)=" + std::to_string(two_adic_valuation(p - 1));
    return o;
}

Outcome criterion4()
{
    std::size_t total = 0;
    for (std::size_t n : pow2_sizes(2, 256)) {
        const SuiteResult r = run_decomposition_check(main_tree(), n, 100, kSeed);
        total += r.instances;
        if (r.failures) return {false, "n=" + std::to_string(n) + ": " + r.counterexample};
    }
    return {true, std::to_string(total) + " instances"};
}

Outcome criterion5()
{
    const auto reports = run_bench(main_tree(), 6, 12, kSeed);
    Outcome o{true, ""};
    for (const auto& r : reports) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%s %.3f", o.detail.empty() ? "" : ", ", r.op.c_str(), r.slope_ops);
        o.detail += buf;
        o.pass = o.pass && r.pass;
    }
    return o;
}

Outcome criterion6()
{
    const FFTree& t = main_tree();
    const Field& F = t.field();
    std::mt19937_64 rng(kSeed);
    auto fresh = [&](std::size_t m) {
        std::set<Fe> seen;
        std::vector<Fe> out;
        while (out.size() < m) {
            const Fe x = random_fe(F, rng);
            if (seen.insert(x).second) out.push_back(x);
        }
        return out;
    };
    for (std::size_t n : pow2_sizes(8, 512)) {
        const auto alphas = fresh(n);
        const auto want = sym_oracle(F, alphas);
        if (sym_eval(t, alphas, SymMode::Mult) != want || sym_eval(t, alphas, SymMode::Mextend) != want) {
            return {false, "sym_eval n=" + std::to_string(n)};
        }
    }
    struct Case {
        std::size_t m, n, on_leaves;
    };
    const std::vector<Case> cases = {{1, 1, 0},    {7, 7, 0},      {64, 64, 0},   {100, 100, 30},
                                     {512, 512, 0}, {512, 512, 200}, {512, 64, 0}, {300, 37, 50}};
    for (const Case& c : cases) {
        auto pts = fresh(c.m);
        const auto leaves = t.layer(0);
        for (std::size_t i = 0; i < c.on_leaves; ++i) pts[i] = leaves[(i * 7) % leaves.size()];
        std::set<Fe> uniq(pts.begin(), pts.end());
        if (uniq.size() != pts.size()) return {false, "test setup produced duplicate points"};
        const std::string tag = "m=" + std::to_string(c.m) + " n=" + std::to_string(c.n);

        const Poly P = random_poly_exact(F, c.n, rng);
        const EvalPlan ep = make_eval_plan(t, pts, c.n);
        if (multipoint_eval(t, ep, P) != poly_eval_many(F, P, pts)) return {false, "multipoint_eval " + tag};

        const Poly Q = random_poly_exact(F, c.m, rng);
        const InterpPlan ip = make_interp_plan(t, pts);
        const auto ys = poly_eval_many(F, Q, pts);
        const Poly R = interpolate_general(t, ip, ys);
        if (R != Q || multipoint_eval(t, make_eval_plan(t, pts, c.m), R) != ys) {
            return {false, "interpolate_general " + tag};
        }
    }
    return {true, "sym 8..512; eval/interp " + std::to_string(cases.size()) +
                      " point sets, leaf overlap and m > n included"};
}

Outcome criterion7()
{
    const std::string text = serialize_tree(main_tree());
    const FFTree back = deserialize_tree(text);
    if (serialize_tree(back) != text) return {false, "re-serialization differs"};
    const std::uint64_t p = main_tree().field().modulus();
    if (serialize_tree(build_fftree(p, 12, kSeed)) != text) return {false, "same-seed rebuild differs"};
    Outcome o = suite_outcome(back, 1024);
    o.detail = "reloaded tree: " + o.detail + "; same-seed bytes identical (" + std::to_string(text.size()) + " bytes)";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7},
    };
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
