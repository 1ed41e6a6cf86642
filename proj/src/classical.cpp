#include "ecfft/classical.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace ecfft {

namespace {

unsigned ceil_log2(std::size_t x)
{
    unsigned a = 0;
    while ((std::size_t{1} << a) < x) ++a;
    return a;
}

void reject_duplicates(std::span<const Fe> points)
{
    std::unordered_set<std::uint64_t> seen;
    for (const Fe x : points) {
        if (!seen.insert(x.v).second) throw PreconditionError("duplicate point " + std::to_string(x.v));
    }
}

std::vector<Fe> gather(const std::vector<Fe>& points, const std::vector<std::uint32_t>& idx)
{
    std::vector<Fe> out;
    out.reserve(idx.size());
    for (const auto i : idx) out.push_back(points[i]);
    return out;
}

// Splits the points of a level-j node into two children, each avoiding one
// moiety of U_(j-1) and holding at most 2^(j-2) points.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> split_half_disjoint(
    const FFTree& tree, const std::vector<Fe>& points, const std::vector<std::uint32_t>& idx, BasicSet ref)
{
    const BasicSet left = tree.child(ref, 0), right = tree.child(ref, 1);
    const std::size_t cap = left.size();
    std::vector<std::uint32_t> L, R, O;
    for (const auto i : idx) {
        if (tree.contains(left, points[i])) {
            L.push_back(i);
        } else if (tree.contains(right, points[i])) {
            R.push_back(i);
        } else {
            O.push_back(i);
        }
    }
    if (idx.size() > 2 * cap) throw InvariantViolation("subproduct node exceeds its capacity");
    std::vector<std::uint32_t> c1, c2;
    if (L.empty() || R.empty()) {
        const std::size_t h = (idx.size() + 1) / 2;
        c1.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h));
        c2.assign(idx.begin() + static_cast<std::ptrdiff_t>(h), idx.end());
        return {c1, c2};
    }
    const std::size_t lo = O.size() + R.size() > cap ? O.size() + R.size() - cap : 0;
    const std::size_t hi = std::min(O.size(), cap - L.size());
    const std::size_t want = idx.size() / 2 > L.size() ? idx.size() / 2 - L.size() : 0;
    const std::size_t o1 = std::clamp(want, lo, hi);
    c1 = L;
    c1.insert(c1.end(), O.begin(), O.begin() + static_cast<std::ptrdiff_t>(o1));
    c2 = R;
    c2.insert(c2.end(), O.begin() + static_cast<std::ptrdiff_t>(o1), O.end());
    return {c1, c2};
}

SubproductNode make_node(const FFTree& tree, const std::vector<Fe>& points, std::vector<std::uint32_t> idx,
                         unsigned level, bool for_eval)
{
    SubproductNode node;
    node.level = level;
    node.points = std::move(idx);
    node.vanishing = vanishing_poly(tree.field(), gather(points, node.points));
    if (for_eval) node.mod = make_mod_advice(tree, tree.standard_set(level), node.vanishing);
    if (node.points.size() >= 2) {
        auto [c1, c2] = split_half_disjoint(tree, points, node.points, tree.standard_set(level - 1));
        node.children.push_back(make_node(tree, points, std::move(c1), level - 1, for_eval));
        node.children.push_back(make_node(tree, points, std::move(c2), level - 1, for_eval));
        if (!for_eval) {
            node.crt = make_crt_advice(tree, tree.standard_set(level - 1), 0, node.children[0].vanishing,
                                       node.children[1].vanishing);
        }
    }
    return node;
}

void eval_node(const FFTree& tree, const SubproductNode& node, const EvalTable& on_level, std::vector<Fe>& out)
{
    const EvalTable r = mod_reduce(tree, *node.mod, on_level);
    if (node.children.empty()) {
        out[node.points[0]] = r.values[0];
        return;
    }
    const EvalTable below = restrict_to_child(tree, r, 0);
    for (const auto& c : node.children) eval_node(tree, c, below, out);
}

EvalTable interp_node(const FFTree& tree, const SubproductNode& node, std::span<const Fe> values)
{
    const BasicSet on = tree.standard_set(node.level - 1);
    if (node.children.empty()) return EvalTable{on, std::vector<Fe>(on.size(), values[node.points[0]])};
    const EvalTable t1 = interp_node(tree, node.children[0], values);
    const EvalTable t2 = interp_node(tree, node.children[1], values);
    return crt(tree, *node.crt, t1, t2);
}

} // namespace

std::vector<Fe> sym_eval(const FFTree& tree, std::span<const Fe> alphas, SymMode mode)
{
    const Field& F = tree.field();
    const std::size_t n = alphas.size();
    if (n == 0) return {};
    const unsigned a = ceil_log2(n);
    const std::size_t N = std::size_t{1} << a;
    if (mode == SymMode::Auto) mode = a + 1 <= tree.depth() ? SymMode::Mult : SymMode::Mextend;
    if (mode == SymMode::Mult && a + 1 > tree.depth()) throw PreconditionError("sym: tree too small (needs 2N <= |L|)");
    if (a > tree.depth()) throw PreconditionError("sym: tree too small (needs N <= |L|)");

    std::vector<Fe> padded(alphas.begin(), alphas.end());
    padded.resize(N, F.zero());
    const unsigned base = mode == SymMode::Mult ? 1 : 0;
    std::vector<EvalTable> level;
    const BasicSet leaf_set = tree.standard_set(base);
    const auto xs = tree.elements(leaf_set);
    for (const Fe alpha : padded) {
        EvalTable t{leaf_set, {}};
        for (const Fe x : xs) t.values.push_back(F.sub(x, alpha));
        level.push_back(std::move(t));
    }
    for (unsigned j = 0; j < a; ++j) {
        std::vector<EvalTable> next;
        const BasicSet up = tree.standard_set(base + j + 1);
        for (std::size_t q = 0; q < level.size(); q += 2) {
            if (mode == SymMode::Mult) {
                next.push_back(mult(tree, up, 0, level[q], level[q + 1]));
            } else {
                const BasicSet sib = tree.child(up, 1);
                const EvalTable A = mextend(tree, level[q], sib);
                const EvalTable B = mextend(tree, level[q + 1], sib);
                EvalTable prod{up, {}};
                for (std::size_t i = 0; i < level[q].values.size(); ++i) {
                    prod.values.push_back(F.mul(level[q].values[i], level[q + 1].values[i]));
                }
                for (std::size_t i = 0; i < A.values.size(); ++i) prod.values.push_back(F.mul(A.values[i], B.values[i]));
                next.push_back(std::move(prod));
            }
        }
        level = std::move(next);
    }
    Poly P = exit_coeffs(tree, level[0]);
    if (mode == SymMode::Mextend) P = poly_add(F, P, vanishing_of(tree, level[0].set));
    std::vector<Fe> out(n);
    for (std::size_t t = 1; t <= n; ++t) {
        const Fe c = P.coeff(N - t);
        out[t - 1] = (t % 2 == 1) ? F.neg(c) : c;
    }
    return out;
}

EvalPlan make_eval_plan(const FFTree& tree, std::vector<Fe> points, std::size_t n)
{
    if (n == 0) throw PreconditionError("plan: n must be positive");
    if (n >= tree.field().modulus()) throw PreconditionError("plan: n must be below p");
    for (const Fe x : points) {
        if (x.v >= tree.field().modulus()) throw PreconditionError("plan: point not reduced modulo p");
    }
    reject_duplicates(points);
    EvalPlan plan;
    plan.n = n;
    plan.a = std::max(1u, ceil_log2(n));
    if (plan.a > tree.depth()) throw PreconditionError("plan: tree too small for degree bound " + std::to_string(n));
    plan.points = std::move(points);

    const BasicSet top = tree.standard_set(plan.a);
    const BasicSet left = tree.child(top, 0), right = tree.child(top, 1);
    const std::size_t cap = left.size();
    std::vector<std::uint32_t> L, R, O;
    for (std::uint32_t i = 0; i < plan.points.size(); ++i) {
        if (tree.contains(left, plan.points[i])) {
            L.push_back(i);
        } else if (tree.contains(right, plan.points[i])) {
            R.push_back(i);
        } else {
            O.push_back(i);
        }
    }
    std::vector<std::vector<std::uint32_t>> parts;
    std::size_t next_outside = 0;
    for (auto* bucket : {&L, &R}) {
        if (bucket->empty()) continue;
        std::vector<std::uint32_t> part = *bucket;
        while (part.size() < cap && next_outside < O.size()) part.push_back(O[next_outside++]);
        parts.push_back(std::move(part));
    }
    while (next_outside < O.size()) {
        std::vector<std::uint32_t> part;
        while (part.size() < cap && next_outside < O.size()) part.push_back(O[next_outside++]);
        parts.push_back(std::move(part));
    }
    for (auto& part : parts) plan.parts.push_back(make_node(tree, plan.points, std::move(part), plan.a, true));
    return plan;
}

std::vector<Fe> multipoint_eval(const FFTree& tree, const EvalPlan& plan, const Poly& P)
{
    if (P.size() > plan.n) throw PreconditionError("eval: polynomial degree exceeds the plan's bound");
    std::vector<Fe> out(plan.points.size());
    if (plan.points.empty()) return out;
    const EvalTable top = enter_coeffs(tree, tree.standard_set(plan.a), P);
    for (const auto& part : plan.parts) eval_node(tree, part, top, out);
    return out;
}

InterpPlan make_interp_plan(const FFTree& tree, std::vector<Fe> points)
{
    if (points.empty()) throw PreconditionError("plan: no interpolation points");
    for (const Fe x : points) {
        if (x.v >= tree.field().modulus()) throw PreconditionError("plan: point not reduced modulo p");
    }
    reject_duplicates(points);
    InterpPlan plan;
    plan.top = ceil_log2(points.size());
    if (plan.top > tree.depth()) throw PreconditionError("plan: tree too small for " + std::to_string(points.size()) + " points");
    plan.points = std::move(points);
    std::vector<std::uint32_t> all(plan.points.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    plan.root = make_node(tree, plan.points, std::move(all), plan.top + 1, false);
    return plan;
}

Poly interpolate_general(const FFTree& tree, const InterpPlan& plan, std::span<const Fe> values)
{
    if (values.size() != plan.points.size()) throw PreconditionError("interp: value count differs from the plan");
    return exit_coeffs(tree, interp_node(tree, plan.root, values));
}

std::string serialize_plan(const PlanFile& plan)
{
    nlohmann::ordered_json doc;
    doc["format"] = "ecfft-plan";
    doc["version"] = 1;
    doc["p"] = std::to_string(plan.p);
    doc["n"] = plan.n;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const Fe x : plan.points) pts.push_back(std::to_string(x.v));
    doc["points"] = pts;
    return doc.dump(1) + "\n";
}

PlanFile deserialize_plan(const std::string& text)
{
    try {
        const auto doc = nlohmann::ordered_json::parse(text);
        if (doc.value("format", "") != "ecfft-plan" || doc.value("version", 0) != 1) {
            throw FormatError("not a version 1 plan file");
        }
        PlanFile plan;
        plan.p = std::stoull(doc.at("p").get<std::string>());
        plan.n = doc.at("n").get<std::size_t>();
        for (const auto& x : doc.at("points")) plan.points.push_back(Fe{std::stoull(x.get<std::string>())});
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed plan file: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("malformed plan file: ") + e.what());
    }
}

} // namespace ecfft
