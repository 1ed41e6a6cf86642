#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecfft/algorithms.hpp"

namespace ecfft {

enum class SymMode {
    Auto,     // Mult when the tree is large enough, otherwise Mextend
    Mult,     // products kept on U_{j+1}, combined by EXTEND + pointwise products; needs 2N <= |L|
    Mextend,  // monic products kept on U_j, combined by MEXTEND; needs N <= |L|
};

/// (Sym_1, ..., Sym_n) of the inputs: the elementary symmetric polynomials,
/// read off the coefficients of prod (X - alpha_i). Inputs are padded with
/// zeros to N = 2^ceil(log2 n).
std::vector<Fe> sym_eval(const FFTree& tree, std::span<const Fe> alphas, SymMode mode = SymMode::Auto);

/// A node of the half-disjoint subproduct tree. A node at `level` j holds at
/// most 2^(j-1) points and its vanishing polynomial avoids one moiety of U_j.
struct SubproductNode {
    unsigned level = 0;
    std::vector<std::uint32_t> points; // indices into the plan's point list
    Poly vanishing;
    std::vector<SubproductNode> children; // none (single point) or two
    std::optional<ModAdvice> mod;         // reduction on U_level (evaluation plans)
    std::optional<CrtAdvice> crt;         // recombination on U_(level-1) (interpolation plans)
};

struct EvalPlan {
    std::vector<Fe> points;
    std::size_t n = 0; // inputs have degree < n
    unsigned a = 0;    // inputs enter at U_a
    std::vector<SubproductNode> parts;
};

/// Throws PreconditionError on duplicate points, n >= p, n = 0 or n > |L|.
EvalPlan make_eval_plan(const FFTree& tree, std::vector<Fe> points, std::size_t n);
/// P(b) for every plan point, in plan order.
std::vector<Fe> multipoint_eval(const FFTree& tree, const EvalPlan& plan, const Poly& P);

struct InterpPlan {
    std::vector<Fe> points;
    unsigned top = 0; // the interpolant is assembled on U_top
    SubproductNode root;
};

/// Throws PreconditionError on duplicate points, an empty set or |B| > |L|.
InterpPlan make_interp_plan(const FFTree& tree, std::vector<Fe> points);
/// The unique polynomial of degree < |B| taking the given values.
Poly interpolate_general(const FFTree& tree, const InterpPlan& plan, std::span<const Fe> values);

/// Plan files record the inputs only; advice is rebuilt on load.
struct PlanFile {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::vector<Fe> points;
};

std::string serialize_plan(const PlanFile& plan);
PlanFile deserialize_plan(const std::string& text);

} // namespace ecfft
