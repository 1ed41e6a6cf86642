#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ecfft/classical.hpp"
#include "ecfft/oracle_suite.hpp"

using namespace ecfft;

namespace {

const FFTree& tree()
{
    static const FFTree t = build_fftree(4194319, 9, 6);
    return t;
}

std::vector<Fe> distinct_points(std::size_t m, std::mt19937_64& rng)
{
    std::set<Fe> seen;
    std::vector<Fe> out;
    while (out.size() < m) {
        const Fe x = random_fe(tree().field(), rng);
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

} // namespace

TEST(classical, sym_matches_oracle)
{
    std::mt19937_64 rng(1);
    for (std::size_t n : {1u, 3u, 8u, 100u, 256u}) {
        const auto alphas = distinct_points(n, rng);
        const auto want = sym_oracle(tree().field(), alphas);
        EXPECT_EQ(sym_eval(tree(), alphas, SymMode::Mextend), want) << n;
        if (2 * n <= tree().leaf_count()) {
            EXPECT_EQ(sym_eval(tree(), alphas, SymMode::Mult), want) << n;
        }
    }
}

TEST(classical, sym_rejects_too_many_inputs)
{
    std::mt19937_64 rng(2);
    const auto alphas = distinct_points(300, rng);
    EXPECT_THROW(sym_eval(tree(), alphas, SymMode::Mult), PreconditionError);
}

TEST(classical, eval_matches_horner)
{
    std::mt19937_64 rng(3);
    const Field& F = tree().field();
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {5, 7}, {64, 64}, {200, 64}, {33, 200}}) {
        const auto pts = distinct_points(m, rng);
        const EvalPlan plan = make_eval_plan(tree(), pts, n);
        const Poly P = random_poly_exact(F, n, rng);
        EXPECT_EQ(multipoint_eval(tree(), plan, P), poly_eval_many(F, P, pts));
    }
}

TEST(classical, eval_on_leaves)
{
    std::mt19937_64 rng(4);
    const Field& F = tree().field();
    auto pts = distinct_points(20, rng);
    const auto leaves = tree().layer(0);
    pts.insert(pts.end(), leaves.begin(), leaves.begin() + 40);
    const Poly P = random_poly_exact(F, 60, rng);
    EXPECT_EQ(multipoint_eval(tree(), make_eval_plan(tree(), pts, 60), P), poly_eval_many(F, P, pts));
}

TEST(classical, interp_round_trip)
{
    std::mt19937_64 rng(5);
    const Field& F = tree().field();
    for (std::size_t m : {1u, 2u, 31u, 128u}) {
        auto pts = distinct_points(m, rng);
        if (m == 128) std::copy(tree().layer(0).begin(), tree().layer(0).begin() + 10, pts.begin());
        const Poly P = random_poly_exact(F, m, rng);
        const InterpPlan plan = make_interp_plan(tree(), pts);
        EXPECT_EQ(interpolate_general(tree(), plan, poly_eval_many(F, P, pts)), P);
    }
}

TEST(classical, plan_preconditions)
{
    std::mt19937_64 rng(6);
    auto pts = distinct_points(4, rng);
    EXPECT_THROW(make_eval_plan(tree(), pts, 0), PreconditionError);
    EXPECT_THROW(make_eval_plan(tree(), pts, 1024), PreconditionError);
    pts.push_back(pts[0]);
    EXPECT_THROW(make_eval_plan(tree(), pts, 4), PreconditionError);
    EXPECT_THROW(make_interp_plan(tree(), pts), PreconditionError);
    EXPECT_THROW(make_interp_plan(tree(), {}), PreconditionError);
}

TEST(classical, plan_file_round_trip)
{
    PlanFile pf{4194319, 3, {Fe{1}, Fe{2}, Fe{9}}};
    const PlanFile back = deserialize_plan(serialize_plan(pf));
    EXPECT_EQ(back.p, pf.p);
    EXPECT_EQ(back.n, pf.n);
    EXPECT_EQ(back.points, pf.points);
    EXPECT_THROW(deserialize_plan("[]"), FormatError);
}
