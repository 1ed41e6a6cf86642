#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecfft/fftree.hpp"

namespace ecfft {

struct BenchPoint {
    std::size_t n = 0;
    std::uint64_t ops = 0; // field additions + multiplications + inversions
    double seconds = 0;
};

struct BenchReport {
    std::string op;
    std::vector<BenchPoint> points;
    double slope_ops = 0;  // least-squares slope of log(ops) against log(n)
    double slope_time = 0;
    std::optional<double> max_slope;
    std::optional<double> min_slope;
    bool pass = true;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

const std::vector<std::string>& bench_operations();

/// Measures each operation for n = 2^lo .. 2^hi (at least four sizes).
/// extend runs between matching standard sets of the tree and of a sibling
/// tree in its forest; advice is warmed before counting. Throws
/// PreconditionError when the tree is too shallow.
std::vector<BenchReport> run_bench(const FFTree& tree, unsigned lo, unsigned hi, std::uint64_t seed,
                                   const std::vector<std::string>& ops = {});

std::string bench_report_json(const BenchReport& r);

} // namespace ecfft
