#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecfft/fftree.hpp"

namespace ecfft {

/// Every operation checked against the naive reference routines.
const std::vector<std::string>& suite_operations();

struct SuiteOptions {
    std::vector<std::size_t> sizes;      // powers of two
    std::size_t instances = 50;          // per operation and size
    std::uint64_t seed = 1;
    std::vector<std::string> ops;        // empty: all of suite_operations()
    unsigned threads = 0;                // 0: hardware concurrency
};

struct SuiteResult {
    std::string op;
    std::size_t n = 0;
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::string counterexample; // first failure, empty if none
};

/// Runs the oracle comparisons. Sizes the tree cannot host are reported as
/// failures with an explanatory counterexample string, never skipped.
std::vector<SuiteResult> run_oracle_suite(const FFTree& tree, const SuiteOptions& opts);

/// Decomposition ground truth: for random P with deg P < n on a basic set
/// of size n, the (P0, P1) produced by the M_t matrices coincide with the
/// pair obtained by solving P = (P0(psi) + X P1(psi)) v^(n/2-1) as a linear
/// system in the coefficients, the system has full rank, and the identity
/// holds at every point of the set.
SuiteResult run_decomposition_check(const FFTree& tree, std::size_t n, std::size_t instances, std::uint64_t seed);

/// Coefficients of prod (X - alpha_i) by repeated multiplication, turned into
/// (Sym_1..Sym_n); the quadratic reference for sym_eval.
std::vector<Fe> sym_oracle(const Field& F, const std::vector<Fe>& alphas);

} // namespace ecfft
