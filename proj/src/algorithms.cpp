#include "ecfft/algorithms.hpp"

#include <algorithm>

namespace ecfft {

namespace {

std::string key(const char* kind, BasicSet s)
{
    return std::string(kind) + ":" + std::to_string(s.level) + ":" + std::to_string(s.index);
}

std::string key(const char* kind, BasicSet s, BasicSet t)
{
    return key(kind, s) + ":" + std::to_string(t.level) + ":" + std::to_string(t.index);
}

// One EXTEND recursion level. `in` holds the table on src.levels[i], `out`
// receives the table on dst.levels[i]; scratch needs 4n entries.
void extend_rec(const Field& F, const NodeAdvice& src, const NodeAdvice& dst, unsigned i, const Fe* in, Fe* out,
                std::size_t n, Fe* scratch)
{
    if (n == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t h = n / 2;
    Fe* p0 = scratch;
    Fe* p1 = scratch + h;
    Fe* r0 = scratch + n;
    Fe* r1 = scratch + n + h;
    const auto& mats = src.levels[i].mats;
    for (std::size_t q = 0; q < h; ++q) {
        const auto& m = mats[q];
        const Fe a = in[2 * q], b = in[2 * q + 1];
        p0[q] = F.add(F.mul(m[0], a), F.mul(m[1], b));
        p1[q] = F.add(F.mul(m[2], a), F.mul(m[3], b));
    }
    extend_rec(F, src, dst, i + 1, p0, r0, h, scratch + 2 * n);
    extend_rec(F, src, dst, i + 1, p1, r1, h, scratch + 2 * n);
    const auto& elems = dst.levels[i].elems;
    const auto& scale = dst.levels[i].scale;
    for (std::size_t q = 0; q < h; ++q) {
        for (std::size_t b = 0; b < 2; ++b) {
            const std::size_t j = 2 * q + b;
            out[j] = F.mul(F.add(r0[q], F.mul(elems[j], r1[q])), scale[j]);
        }
    }
}

std::vector<Fe> extend_values(const FFTree& from_tree, BasicSet from, const FFTree& to_tree, BasicSet to,
                              const std::vector<Fe>& values)
{
    const ExtendAdvice adv = extend_advice(from_tree, from, to_tree, to);
    const std::size_t n = from.size();
    if (values.size() != n) throw PreconditionError("extend: table size differs from its set");
    std::vector<Fe> out(n);
    std::vector<Fe> scratch(4 * n);
    extend_rec(from_tree.field(), *adv.source, *adv.target, 0, values.data(), out.data(), n, scratch.data());
    return out;
}

std::vector<Fe> extend_values(const FFTree& tree, BasicSet from, BasicSet to, const std::vector<Fe>& values)
{
    return extend_values(tree, from, tree, to, values);
}

std::vector<Fe> evaluate_on(const FFTree& tree, BasicSet set, const Poly& P)
{
    const auto xs = tree.elements(set);
    return poly_eval_many(tree.field(), P, xs);
}

std::vector<Fe> inverted(const Field& F, std::vector<Fe> xs)
{
    F.batch_invert(xs);
    return xs;
}

std::vector<Fe> concat(const std::vector<Fe>& a, const std::vector<Fe>& b)
{
    std::vector<Fe> out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<Fe> half_of(const std::vector<Fe>& v, unsigned which)
{
    const std::size_t h = v.size() / 2;
    return std::vector<Fe>(v.begin() + static_cast<std::ptrdiff_t>(which * h),
                           v.begin() + static_cast<std::ptrdiff_t>((which + 1) * h));
}

// Table on S assembled from the tables on moiety m and on the other one.
std::vector<Fe> join_moieties(unsigned m, const std::vector<Fe>& on_m, const std::vector<Fe>& on_other)
{
    return m == 0 ? concat(on_m, on_other) : concat(on_other, on_m);
}

bool has_zero_on(const Field& F, const Poly& A, std::span<const Fe> xs)
{
    for (const Fe x : xs) {
        if (poly_eval(F, A, x).v == 0) return true;
    }
    return false;
}

struct ExitAdvice {
    unsigned moiety = 0;
    ModAdvice mod;             // modulo X^(n/2)
    std::vector<Fe> inv_xh_s0; // X^(-n/2) on S_0
};

const ExitAdvice& exit_advice(const FFTree& tree, BasicSet set)
{
    const std::function<ExitAdvice()> build = [&tree, set]() {
        const Field& F = tree.field();
        ExitAdvice adv;
        adv.moiety = zero_free_moiety(tree, set);
        const std::size_t h = set.size() / 2;
        adv.mod = make_mod_advice(tree, set, Poly::monomial(F.one(), h), adv.moiety);
        const BasicSet s0 = tree.child(set, adv.moiety);
        std::vector<Fe> xs;
        for (const Fe x : tree.elements(s0)) xs.push_back(F.pow(x, h));
        adv.inv_xh_s0 = inverted(F, std::move(xs));
        return adv;
    };
    return *tree.cache().get_or_build<ExitAdvice>(key("exit", set), build);
}

const std::vector<Fe>& xh_on(const FFTree& tree, BasicSet set)
{
    const std::function<std::vector<Fe>()> build = [&tree, set]() {
        const Field& F = tree.field();
        std::vector<Fe> out;
        for (const Fe x : tree.elements(set)) out.push_back(F.pow(x, set.size() / 2));
        return out;
    };
    return *tree.cache().get_or_build<std::vector<Fe>>(key("xh", set), build);
}

// 1/Z_{child m} on the other child.
const std::vector<Fe>& inv_vanishing_other(const FFTree& tree, BasicSet set, unsigned m)
{
    const std::function<std::vector<Fe>()> build = [&tree, set, m]() {
        const Field& F = tree.field();
        const auto zm = tree.elements(tree.child(set, m));
        const auto other = tree.elements(tree.child(set, 1 - m));
        std::vector<Fe> out(other.size(), F.one());
        for (std::size_t j = 0; j < other.size(); ++j) {
            for (const Fe r : zm) out[j] = F.mul(out[j], F.sub(other[j], r));
        }
        return inverted(F, std::move(out));
    };
    return *tree.cache().get_or_build<std::vector<Fe>>(key(m == 0 ? "zinv0" : "zinv1", set), build);
}

DegreeValue degree_rec(const FFTree& tree, BasicSet set, const std::vector<Fe>& values)
{
    const Field& F = tree.field();
    if (set.level == 0) return values[0].v == 0 ? DegreeValue{} : DegreeValue{0};
    const BasicSet s0 = tree.child(set, 0), s1 = tree.child(set, 1);
    const std::vector<Fe> pi0 = half_of(values, 0), pi1 = half_of(values, 1);
    const std::vector<Fe> g = extend_values(tree, s0, s1, pi0);
    if (g == pi1) return degree_rec(tree, s0, pi0);
    const auto& inv_z0 = inv_vanishing_other(tree, set, 0);
    std::vector<Fe> q(pi1.size());
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = F.mul(F.sub(pi1[j], g[j]), inv_z0[j]);
    const DegreeValue rest = degree_rec(tree, s1, q);
    return set.size() / 2 + *rest;
}

std::vector<Fe> redc_values(const FFTree& tree, const ModAdvice& adv, const std::vector<Fe>& values)
{
    const Field& F = tree.field();
    const unsigned m = adv.moiety;
    const BasicSet s0 = tree.child(adv.set, m), s1 = tree.child(adv.set, 1 - m);
    const std::vector<Fe> pi0 = half_of(values, m), pi1 = half_of(values, 1 - m);
    const std::size_t h = pi0.size();
    std::vector<Fe> x0(h);
    for (std::size_t j = 0; j < h; ++j) x0[j] = F.mul(pi0[j], adv.inv_a_s0[j]);
    const std::vector<Fe> g1 = extend_values(tree, s0, s1, x0);
    std::vector<Fe> h1(h);
    for (std::size_t j = 0; j < h; ++j) h1[j] = F.mul(F.sub(pi1[j], F.mul(g1[j], adv.a_s1[j])), adv.inv_z0_s1[j]);
    const std::vector<Fe> h0 = extend_values(tree, s1, s0, h1);
    return join_moieties(m, h0, h1);
}

std::vector<Fe> mod_values(const FFTree& tree, const ModAdvice& adv, const std::vector<Fe>& values)
{
    const Field& F = tree.field();
    std::vector<Fe> q = redc_values(tree, adv, values);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = F.mul(q[j], adv.c_s[j]);
    return redc_values(tree, adv, q);
}

void check_advice_set(const EvalTable& t, BasicSet set)
{
    if (!(t.set == set)) throw PreconditionError("table and advice refer to different basic sets");
}

Poly exit_rec(const FFTree& tree, BasicSet set, const std::vector<Fe>& values)
{
    const Field& F = tree.field();
    if (set.level == 0) return Poly::constant(values[0]);
    const ExitAdvice& adv = exit_advice(tree, set);
    const unsigned m = adv.moiety;
    const BasicSet s0 = tree.child(set, m);
    const std::vector<Fe> u = mod_values(tree, adv.mod, values);
    const std::vector<Fe> u0 = half_of(u, m);
    const std::vector<Fe> pi0 = half_of(values, m);
    std::vector<Fe> v0(u0.size());
    for (std::size_t j = 0; j < v0.size(); ++j) v0[j] = F.mul(F.sub(pi0[j], u0[j]), adv.inv_xh_s0[j]);
    const Poly U = exit_rec(tree, s0, u0);
    const Poly V = exit_rec(tree, s0, v0);
    const std::size_t h = set.size() / 2;
    std::vector<Fe> c(set.size());
    for (std::size_t i = 0; i < U.size(); ++i) c[i] = U.coeffs()[i];
    for (std::size_t i = 0; i < V.size(); ++i) c[h + i] = V.coeffs()[i];
    return Poly(std::move(c));
}

std::vector<Fe> enter_rec(const FFTree& tree, BasicSet set, const std::vector<Fe>& coeffs)
{
    const Field& F = tree.field();
    if (set.level == 0) return {coeffs[0]};
    const std::size_t h = set.size() / 2;
    const BasicSet s0 = tree.child(set, 0), s1 = tree.child(set, 1);
    const std::vector<Fe> lo(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(h));
    const std::vector<Fe> hi(coeffs.begin() + static_cast<std::ptrdiff_t>(h), coeffs.end());
    const std::vector<Fe> u0 = enter_rec(tree, s0, lo);
    const std::vector<Fe> v0 = enter_rec(tree, s0, hi);
    const std::vector<Fe> u = concat(u0, extend_values(tree, s0, s1, u0));
    const std::vector<Fe> v = concat(v0, extend_values(tree, s0, s1, v0));
    const auto& xh = xh_on(tree, set);
    std::vector<Fe> out(set.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = F.add(u[j], F.mul(xh[j], v[j]));
    return out;
}

} // namespace

EvalTable table_of(const FFTree& tree, BasicSet set, const Poly& P)
{
    return EvalTable{set, evaluate_on(tree, set, P)};
}

void check_table(const FFTree& tree, const EvalTable& t)
{
    tree.check_node(t.set);
    if (t.values.size() != t.set.size()) {
        throw PreconditionError("table has " + std::to_string(t.values.size()) + " values but its set has " +
                                std::to_string(t.set.size()) + " points");
    }
}

EvalTable restrict_to_child(const FFTree& tree, const EvalTable& t, unsigned which)
{
    check_table(tree, t);
    return EvalTable{tree.child(t.set, which), half_of(t.values, which)};
}

EvalTable join_children(const FFTree& tree, BasicSet parent, const EvalTable& c0, const EvalTable& c1)
{
    if (!(tree.child(parent, 0) == c0.set) || !(tree.child(parent, 1) == c1.set)) {
        throw PreconditionError("join: tables are not the two children of the parent set");
    }
    check_table(tree, c0);
    check_table(tree, c1);
    return EvalTable{parent, concat(c0.values, c1.values)};
}

unsigned zero_free_moiety(const FFTree& tree, BasicSet set)
{
    return tree.contains(tree.child(set, 0), tree.field().zero()) ? 1 : 0;
}

EvalTable extend(const FFTree& tree, const EvalTable& t, BasicSet to)
{
    return extend(tree, t, tree, to);
}

EvalTable extend(const FFTree& from_tree, const EvalTable& t, const FFTree& to_tree, BasicSet to)
{
    check_table(from_tree, t);
    to_tree.check_node(to);
    if (t.set.level != to.level) throw PreconditionError("extend: source and target sets differ in size");
    return EvalTable{to, extend_values(from_tree, t.set, to_tree, to, t.values)};
}

const Poly& vanishing_of(const FFTree& tree, BasicSet s)
{
    tree.check_node(s);
    const std::function<Poly()> build = [&tree, s]() { return vanishing_poly(tree.field(), tree.elements(s)); };
    return *tree.cache().get_or_build<Poly>(key("van", s), build);
}

const std::vector<Fe>& vanishing_on(const FFTree& tree, BasicSet s, BasicSet to)
{
    tree.check_node(to);
    const std::function<std::vector<Fe>()> build = [&tree, s, to]() {
        return evaluate_on(tree, to, vanishing_of(tree, s));
    };
    return *tree.cache().get_or_build<std::vector<Fe>>(key("vanon", s, to), build);
}

EvalTable mextend(const FFTree& tree, const EvalTable& t, BasicSet to)
{
    EvalTable out = extend(tree, t, to);
    const auto& z = vanishing_on(tree, t.set, to);
    const Field& F = tree.field();
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] = F.add(out.values[j], z[j]);
    return out;
}

EvalTable mult(const FFTree& tree, BasicSet set, unsigned moiety, const EvalTable& P, const EvalTable& Q)
{
    tree.check_node(set);
    if (set.level == 0 || moiety > 1) throw PreconditionError("mult: needs a set of size at least 2 and moiety 0 or 1");
    const BasicSet s0 = tree.child(set, moiety), s1 = tree.child(set, 1 - moiety);
    check_advice_set(P, s0);
    check_advice_set(Q, s0);
    check_table(tree, P);
    check_table(tree, Q);
    const Field& F = tree.field();
    const std::vector<Fe> p1 = extend_values(tree, s0, s1, P.values);
    const std::vector<Fe> q1 = extend_values(tree, s0, s1, Q.values);
    std::vector<Fe> on0(P.values.size()), on1(p1.size());
    for (std::size_t j = 0; j < on0.size(); ++j) {
        on0[j] = F.mul(P.values[j], Q.values[j]);
        on1[j] = F.mul(p1[j], q1[j]);
    }
    return EvalTable{set, join_moieties(moiety, on0, on1)};
}

DegreeValue degree(const FFTree& tree, const EvalTable& t)
{
    check_table(tree, t);
    return degree_rec(tree, t.set, t.values);
}

ModAdvice make_mod_advice(const FFTree& tree, BasicSet set, const Poly& A, std::optional<unsigned> moiety)
{
    tree.check_node(set);
    const Field& F = tree.field();
    if (set.level == 0) throw PreconditionError("mod: basic set must have at least 2 points");
    if (A.is_zero()) throw PreconditionError("mod: zero modulus");
    if (*A.degree() > set.size() / 2) throw PreconditionError("mod: deg A exceeds |S|/2");
    if (moiety && *moiety > 1) throw PreconditionError("mod: moiety must be 0 or 1");
    unsigned m = 2;
    for (const unsigned cand : {0u, 1u}) {
        if (moiety && cand != *moiety) continue;
        if (!has_zero_on(F, A, tree.elements(tree.child(set, cand)))) {
            m = cand;
            break;
        }
    }
    if (m == 2) throw PreconditionError("mod: modulus is not half-disjoint from the basic set");

    ModAdvice adv;
    adv.set = set;
    adv.moiety = m;
    adv.modulus = A;
    const BasicSet s0 = tree.child(set, m), s1 = tree.child(set, 1 - m);
    adv.inv_a_s0 = inverted(F, evaluate_on(tree, s0, A));
    adv.a_s1 = evaluate_on(tree, s1, A);
    adv.inv_z0_s1 = inv_vanishing_other(tree, set, m);
    const Poly& z0 = vanishing_of(tree, s0);
    const Poly c = poly_rem(F, poly_mul_naive(F, z0, z0), A);
    adv.c_s = evaluate_on(tree, set, c);
    return adv;
}

EvalTable redc(const FFTree& tree, const ModAdvice& adv, const EvalTable& t)
{
    check_table(tree, t);
    check_advice_set(t, adv.set);
    return EvalTable{t.set, redc_values(tree, adv, t.values)};
}

EvalTable mod_reduce(const FFTree& tree, const ModAdvice& adv, const EvalTable& t)
{
    check_table(tree, t);
    check_advice_set(t, adv.set);
    return EvalTable{t.set, mod_values(tree, adv, t.values)};
}

DivAdvice make_div_advice(const FFTree& tree, BasicSet set, const Poly& A)
{
    tree.check_node(set);
    const Field& F = tree.field();
    if (!A.is_zero() && has_zero_on(F, A, tree.elements(set))) throw PreconditionError("div: divisor vanishes on the set");
    DivAdvice adv;
    adv.mod = make_mod_advice(tree, set, A);
    adv.inv_a_s = inverted(F, evaluate_on(tree, set, A));
    return adv;
}

EvalTable divq(const FFTree& tree, const DivAdvice& adv, const EvalTable& t)
{
    const EvalTable r = mod_reduce(tree, adv.mod, t);
    const Field& F = tree.field();
    EvalTable out{t.set, std::vector<Fe>(t.values.size())};
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        out.values[j] = F.mul(F.sub(t.values[j], r.values[j]), adv.inv_a_s[j]);
    }
    return out;
}

Poly exit_coeffs(const FFTree& tree, const EvalTable& t)
{
    check_table(tree, t);
    return exit_rec(tree, t.set, t.values);
}

EvalTable enter_coeffs(const FFTree& tree, BasicSet set, const Poly& P)
{
    tree.check_node(set);
    if (P.size() > set.size()) throw PreconditionError("enter: polynomial has too many coefficients for the set");
    std::vector<Fe> c(P.coeffs());
    c.resize(set.size());
    return EvalTable{set, enter_rec(tree, set, c)};
}

CrtAdvice make_crt_advice(const FFTree& tree, BasicSet set, unsigned moiety, const Poly& A, const Poly& B)
{
    tree.check_node(set);
    const Field& F = tree.field();
    if (moiety > 1) throw PreconditionError("crt: moiety must be 0 or 1");
    if (A.is_zero() || B.is_zero() || *A.degree() == 0 || *B.degree() == 0) {
        throw PreconditionError("crt: moduli must have positive degree");
    }
    CrtAdvice adv;
    adv.set = set;
    adv.moiety = moiety;
    adv.A = A;
    adv.B = B;
    adv.mod_a = make_mod_advice(tree, set, A);
    adv.mod_b = make_mod_advice(tree, set, B);
    Poly G, H;
    try {
        G = poly_inverse_mod(F, B, A);
        H = poly_inverse_mod(F, A, B);
    } catch (const std::domain_error&) {
        throw PreconditionError("crt: moduli are not coprime");
    }
    adv.g_s = evaluate_on(tree, set, G);
    adv.h_s = evaluate_on(tree, set, H);
    adv.a_s = evaluate_on(tree, set, A);
    adv.b_s = evaluate_on(tree, set, B);
    return adv;
}

EvalTable crt(const FFTree& tree, const CrtAdvice& adv, const EvalTable& P, const EvalTable& Q)
{
    const unsigned m = adv.moiety;
    const BasicSet s0 = tree.child(adv.set, m), s1 = tree.child(adv.set, 1 - m);
    check_advice_set(P, s0);
    check_advice_set(Q, s0);
    check_table(tree, P);
    check_table(tree, Q);
    const Field& F = tree.field();
    const std::vector<Fe> p = join_moieties(m, P.values, extend_values(tree, s0, s1, P.values));
    const std::vector<Fe> q = join_moieties(m, Q.values, extend_values(tree, s0, s1, Q.values));
    std::vector<Fe> pg(p.size()), qh(q.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        pg[j] = F.mul(p[j], adv.g_s[j]);
        qh[j] = F.mul(q[j], adv.h_s[j]);
    }
    const std::vector<Fe> r1 = mod_values(tree, adv.mod_a, pg);
    const std::vector<Fe> r2 = mod_values(tree, adv.mod_b, qh);
    std::vector<Fe> out(p.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = F.add(F.mul(r1[j], adv.b_s[j]), F.mul(r2[j], adv.a_s[j]));
    }
    return EvalTable{adv.set, std::move(out)};
}

} // namespace ecfft
