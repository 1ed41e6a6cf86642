#include "ecfft/oracle_suite.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "ecfft/algorithms.hpp"

namespace ecfft {

namespace {

std::string show(const std::vector<Fe>& xs, std::size_t limit = 8)
{
    std::ostringstream ss;
    ss << "[";
    for (std::size_t i = 0; i < xs.size() && i < limit; ++i) ss << (i ? "," : "") << xs[i].v;
    if (xs.size() > limit) ss << ",... (" << xs.size() << " values)";
    ss << "]";
    return ss.str();
}

std::string show(const Poly& P) { return show(P.coeffs()); }

std::string mismatch(const std::vector<Fe>& got, const std::vector<Fe>& want)
{
    std::ostringstream ss;
    if (got.size() != want.size()) {
        ss << "size " << got.size() << " vs expected " << want.size();
        return ss.str();
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i] != want[i]) {
            ss << "first mismatch at index " << i << ": got " << got[i].v << ", expected " << want[i].v;
            break;
        }
    }
    ss << "; got " << show(got) << " expected " << show(want);
    return ss.str();
}

long signed_degree(const Poly& P)
{
    return P.is_zero() ? -1 : static_cast<long>(*P.degree());
}

// Random polynomial with deg < len (zero allowed with small probability only
// through the field draw).
Poly random_below(const Field& F, std::size_t len, std::mt19937_64& rng)
{
    std::vector<Fe> c(len);
    for (auto& x : c) x = random_fe(F, rng);
    return Poly(std::move(c));
}

struct Ctx {
    const FFTree& tree;
    const Field& F;
    std::size_t n;
    unsigned a;
    std::mt19937_64 rng;
    std::size_t instance = 0;

    BasicSet node()
    {
        // first instance on the standard set, the rest on random vertices
        if (instance == 0) return tree.standard_set(a);
        const std::size_t count = tree.layer(a).size();
        return BasicSet{a, static_cast<std::uint32_t>(rng() % count)};
    }

    BasicSet other(BasicSet s)
    {
        const std::size_t count = tree.layer(a).size();
        if (count == 1) return s;
        if (instance == 0 && a < tree.depth()) return tree.child(tree.standard_set(a + 1), 1);
        for (;;) {
            const BasicSet t{a, static_cast<std::uint32_t>(rng() % count)};
            if (!(t == s)) return t;
        }
    }

    std::string where(BasicSet s) const { return tree.set_name(s); }
};

using Check = std::function<std::string(Ctx&)>; // empty string: pass

std::string check_extend(Ctx& c)
{
    const BasicSet S = c.node(), T = c.other(S);
    const Poly P = random_below(c.F, c.n, c.rng);
    const auto got = extend(c.tree, table_of(c.tree, S, P), T).values;
    const auto want = table_of(c.tree, T, P).values;
    if (got == want) return {};
    return "extend " + c.where(S) + " -> " + c.where(T) + " P=" + show(P) + ": " + mismatch(got, want);
}

std::string check_mextend(Ctx& c)
{
    const BasicSet S = c.node(), T = c.other(S);
    std::vector<Fe> coeffs = random_below(c.F, c.n, c.rng).coeffs();
    coeffs.resize(c.n + 1);
    coeffs[c.n] = c.F.one();
    const Poly P(std::move(coeffs));
    const auto got = mextend(c.tree, table_of(c.tree, S, P), T).values;
    const auto want = table_of(c.tree, T, P).values;
    if (got == want) return {};
    return "mextend " + c.where(S) + " -> " + c.where(T) + " P=" + show(P) + ": " + mismatch(got, want);
}

std::string check_mult(Ctx& c)
{
    const BasicSet S = c.node();
    const unsigned m = static_cast<unsigned>(c.rng() & 1);
    const BasicSet S0 = c.tree.child(S, m);
    const Poly P = random_below(c.F, c.n / 2, c.rng);
    const Poly Q = random_below(c.F, c.n / 2, c.rng);
    const auto got = mult(c.tree, S, m, table_of(c.tree, S0, P), table_of(c.tree, S0, Q)).values;
    const auto want = table_of(c.tree, S, poly_mul_naive(c.F, P, Q)).values;
    if (got == want) return {};
    return "mult on " + c.where(S) + " moiety " + std::to_string(m) + " P=" + show(P) + " Q=" + show(Q) + ": " +
           mismatch(got, want);
}

std::string check_degree(Ctx& c)
{
    const BasicSet S = c.node();
    // degree uniformly from {zero, 0, ..., n-1}
    const std::size_t pick = c.rng() % (c.n + 1);
    const Poly P = pick == 0 ? Poly{} : random_poly_exact(c.F, pick, c.rng);
    const DegreeValue got = degree(c.tree, table_of(c.tree, S, P));
    if (got == P.degree()) return {};
    return "degree on " + c.where(S) + " P=" + show(P) + ": got " + degree_to_string(got) + ", expected " +
           degree_to_string(P.degree());
}

Poly random_modulus(Ctx& c, std::size_t min_deg)
{
    const std::size_t d = min_deg + c.rng() % (c.n / 2 - min_deg + 1);
    return random_poly_exact(c.F, d + 1, c.rng);
}

// Random moduli that meet both moieties (or are not coprime) fall outside
// the contract; draw again, a bounded number of times.
template <class T>
T redraw(const std::function<T()>& draw)
{
    for (int attempt = 0;; ++attempt) {
        try {
            return draw();
        } catch (const PreconditionError&) {
            if (attempt == 100) throw;
        }
    }
}

ModAdvice draw_mod_advice(Ctx& c, BasicSet S, Poly& A)
{
    return redraw<ModAdvice>([&] {
        A = random_modulus(c, 0);
        return make_mod_advice(c.tree, S, A);
    });
}

std::string check_redc(Ctx& c)
{
    const BasicSet S = c.node();
    const Poly P = random_below(c.F, c.n, c.rng);
    Poly A;
    const ModAdvice adv = draw_mod_advice(c, S, A);
    const auto got = redc(c.tree, adv, table_of(c.tree, S, P)).values;
    const auto xs = c.tree.elements(S);
    const Poly Q = lagrange_interpolate(c.F, xs, got);
    const Poly& Z0 = vanishing_of(c.tree, c.tree.child(S, adv.moiety));
    const Poly diff = poly_sub(c.F, poly_mul_naive(c.F, Q, Z0), P);
    const long bound = std::max(signed_degree(P) - static_cast<long>(c.n / 2), signed_degree(A) - 1);
    if (poly_rem(c.F, diff, A).is_zero() && signed_degree(Q) <= bound) return {};
    return "redc on " + c.where(S) + " P=" + show(P) + " A=" + show(A) + ": output Q=" + show(Q) +
           " violates Q Z0 = P mod A or deg Q <= " + std::to_string(bound);
}

std::string check_mod(Ctx& c)
{
    const BasicSet S = c.node();
    const Poly P = random_below(c.F, c.n, c.rng);
    Poly A;
    const ModAdvice adv = draw_mod_advice(c, S, A);
    const auto got = mod_reduce(c.tree, adv, table_of(c.tree, S, P)).values;
    const auto want = table_of(c.tree, S, poly_rem(c.F, P, A)).values;
    if (got == want) return {};
    return "mod on " + c.where(S) + " P=" + show(P) + " A=" + show(A) + ": " + mismatch(got, want);
}

std::string check_div(Ctx& c)
{
    const BasicSet S = c.node();
    const Poly P = random_below(c.F, c.n, c.rng);
    Poly A;
    const DivAdvice adv = redraw<DivAdvice>([&] {
        A = random_modulus(c, 0);
        return make_div_advice(c.tree, S, A);
    });
    const auto got = divq(c.tree, adv, table_of(c.tree, S, P)).values;
    const auto want = table_of(c.tree, S, poly_divrem_naive(c.F, P, A).first).values;
    if (got == want) return {};
    return "div on " + c.where(S) + " P=" + show(P) + " A=" + show(A) + ": " + mismatch(got, want);
}

std::string check_enter(Ctx& c)
{
    const BasicSet S = c.node();
    const Poly P = random_below(c.F, c.n, c.rng);
    const auto got = enter_coeffs(c.tree, S, P).values;
    const auto want = table_of(c.tree, S, P).values;
    if (got == want) return {};
    return "enter on " + c.where(S) + " P=" + show(P) + ": " + mismatch(got, want);
}

std::string check_exit(Ctx& c)
{
    const BasicSet S = c.node();
    const Poly P = random_below(c.F, c.n, c.rng);
    const Poly got = exit_coeffs(c.tree, table_of(c.tree, S, P));
    if (got == P) return {};
    return "exit on " + c.where(S) + ": " + mismatch(got.coeffs(), P.coeffs());
}

std::string check_crt(Ctx& c)
{
    const BasicSet S = c.node();
    const unsigned m = static_cast<unsigned>(c.rng() & 1);
    Poly A, B;
    const CrtAdvice adv = redraw<CrtAdvice>([&] {
        A = random_modulus(c, 1);
        B = random_modulus(c, 1);
        return make_crt_advice(c.tree, S, m, A, B);
    });
    const BasicSet S0 = c.tree.child(S, m);
    const Poly P = random_below(c.F, c.n / 2, c.rng);
    const Poly Q = random_below(c.F, c.n / 2, c.rng);
    const auto got = crt(c.tree, adv, table_of(c.tree, S0, P), table_of(c.tree, S0, Q)).values;
    // reference: ((P G) rem A) B + ((Q H) rem B) A with schoolbook arithmetic
    const Field& F = c.F;
    const Poly G = poly_inverse_mod(F, B, A), H = poly_inverse_mod(F, A, B);
    const Poly R = poly_add(F, poly_mul_naive(F, poly_rem(F, poly_mul_naive(F, P, G), A), B),
                            poly_mul_naive(F, poly_rem(F, poly_mul_naive(F, Q, H), B), A));
    if (poly_rem(F, poly_sub(F, R, P), A) != Poly{} || poly_rem(F, poly_sub(F, R, Q), B) != Poly{} ||
        signed_degree(R) >= signed_degree(A) + signed_degree(B)) {
        return "crt reference failed its own congruences";
    }
    const auto want = table_of(c.tree, S, R).values;
    if (got == want) return {};
    return "crt on " + c.where(S) + " A=" + show(A) + " B=" + show(B) + " P=" + show(P) + " Q=" + show(Q) + ": " +
           mismatch(got, want);
}

const std::vector<std::pair<std::string, Check>>& checks()
{
    static const std::vector<std::pair<std::string, Check>> all = {
        {"extend", check_extend}, {"mextend", check_mextend}, {"mult", check_mult}, {"degree", check_degree},
        {"redc", check_redc},     {"mod", check_mod},         {"div", check_div},   {"enter", check_enter},
        {"exit", check_exit},     {"crt", check_crt},
    };
    return all;
}

std::uint64_t job_seed(std::uint64_t seed, const std::string& op, std::size_t n)
{
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
    for (const char ch : op) h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
    return h ^ (static_cast<std::uint64_t>(n) * 0xff51afd7ed558ccdULL);
}

unsigned log2_exact(std::size_t n)
{
    unsigned a = 0;
    while ((std::size_t{1} << a) < n) ++a;
    return a;
}

SuiteResult run_job(const FFTree& tree, const std::string& op, const Check& check, std::size_t n,
                    std::size_t instances, std::uint64_t seed)
{
    SuiteResult r{op, n, instances, 0, {}};
    const unsigned a = log2_exact(n);
    if (n < 2 || (std::size_t{1} << a) != n || a > tree.depth()) {
        r.failures = instances;
        r.counterexample = "size " + std::to_string(n) + " is not a power of two in 2..|L|";
        return r;
    }
    Ctx c{tree, tree.field(), n, a, std::mt19937_64(job_seed(seed, op, n))};
    for (std::size_t i = 0; i < instances; ++i) {
        c.instance = i;
        std::string err;
        try {
            err = check(c);
        } catch (const std::exception& e) {
            err = op + " threw: " + e.what();
        }
        if (!err.empty()) {
            ++r.failures;
            if (r.counterexample.empty()) r.counterexample = "instance " + std::to_string(i) + ": " + err;
        }
    }
    return r;
}

// Gauss-Jordan inverse; empty result when singular.
std::vector<std::vector<Fe>> invert_matrix(const Field& F, std::vector<std::vector<Fe>> M)
{
    const std::size_t n = M.size();
    std::vector<std::vector<Fe>> I(n, std::vector<Fe>(n));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = F.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col].v == 0) ++piv;
        if (piv == n) return {};
        std::swap(M[piv], M[col]);
        std::swap(I[piv], I[col]);
        const Fe inv = F.inv(M[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            M[col][j] = F.mul(M[col][j], inv);
            I[col][j] = F.mul(I[col][j], inv);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col].v == 0) continue;
            const Fe f = M[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                M[r][j] = F.sub(M[r][j], F.mul(f, M[col][j]));
                I[r][j] = F.sub(I[r][j], F.mul(f, I[col][j]));
            }
        }
    }
    return I;
}

} // namespace

const std::vector<std::string>& suite_operations()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : checks()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<SuiteResult> run_oracle_suite(const FFTree& tree, const SuiteOptions& opts)
{
    struct Job {
        std::string op;
        const Check* check;
        std::size_t n;
    };
    std::vector<Job> jobs;
    for (const auto& [name, fn] : checks()) {
        if (!opts.ops.empty() && std::find(opts.ops.begin(), opts.ops.end(), name) == opts.ops.end()) continue;
        for (const std::size_t n : opts.sizes) jobs.push_back(Job{name, &fn, n});
    }
    for (const auto& op : opts.ops) {
        if (std::find(suite_operations().begin(), suite_operations().end(), op) == suite_operations().end()) {
            throw PreconditionError("unknown operation '" + op + "'");
        }
    }
    // biggest sizes first so the pool drains evenly
    std::vector<std::size_t> order(jobs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return jobs[x].n > jobs[y].n; });

    std::vector<SuiteResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= order.size()) return;
            const Job& j = jobs[order[k]];
            results[order[k]] = run_job(tree, j.op, *j.check, j.n, opts.instances, opts.seed);
        }
    };
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

SuiteResult run_decomposition_check(const FFTree& tree, std::size_t n, std::size_t instances, std::uint64_t seed)
{
    SuiteResult r{"decomposition", n, instances, 0, {}};
    const unsigned a = log2_exact(n);
    if (n < 2 || (std::size_t{1} << a) != n || a > tree.depth()) {
        r.failures = instances;
        r.counterexample = "size " + std::to_string(n) + " is not a power of two in 2..|L|";
        return r;
    }
    const Field& F = tree.field();
    const std::size_t h = n / 2;
    const RationalMap& psi = tree.map(0);

    // columns u^j v^(h-1-j) and X u^j v^(h-1-j), j < h
    std::vector<Poly> upow{Poly::constant(F.one())}, vpow{Poly::constant(F.one())};
    for (std::size_t j = 1; j < h; ++j) {
        upow.push_back(poly_mul_naive(F, upow.back(), psi.u));
        vpow.push_back(poly_mul_naive(F, vpow.back(), psi.v));
    }
    std::vector<std::vector<Fe>> M(n, std::vector<Fe>(n));
    const Poly X = Poly::monomial(F.one(), 1);
    for (std::size_t j = 0; j < h; ++j) {
        const Poly base = poly_mul_naive(F, upow[j], vpow[h - 1 - j]);
        const Poly shifted = poly_mul_naive(F, X, base);
        for (std::size_t i = 0; i < n; ++i) {
            M[i][j] = base.coeff(i);
            M[i][h + j] = shifted.coeff(i);
        }
    }
    const auto Minv = invert_matrix(F, M);
    if (Minv.empty()) {
        r.failures = instances;
        r.counterexample = "decomposition map is singular (not a bijection)";
        return r;
    }

    std::mt19937_64 rng(job_seed(seed, "decomposition", n));
    const std::size_t count = tree.layer(a).size();
    for (std::size_t inst = 0; inst < instances; ++inst) {
        const BasicSet S = inst == 0 ? tree.standard_set(a) : BasicSet{a, static_cast<std::uint32_t>(rng() % count)};
        const NodeAdvice& adv = tree.node_advice(S);
        const Poly P = random_below(F, n, rng);
        const auto& s = adv.levels[0].elems;
        const auto& t = adv.levels[1].elems;
        const std::vector<Fe> table = poly_eval_many(F, P, s);

        // through M_t
        std::vector<Fe> p0(h), p1(h);
        for (std::size_t q = 0; q < h; ++q) {
            const auto& m = adv.levels[0].mats[q];
            p0[q] = F.add(F.mul(m[0], table[2 * q]), F.mul(m[1], table[2 * q + 1]));
            p1[q] = F.add(F.mul(m[2], table[2 * q]), F.mul(m[3], table[2 * q + 1]));
        }
        // through the linear system
        std::vector<Fe> sol(n);
        for (std::size_t i = 0; i < n; ++i) {
            Fe acc{};
            for (std::size_t j = 0; j < n; ++j) acc = F.add(acc, F.mul(Minv[i][j], P.coeff(j)));
            sol[i] = acc;
        }
        const Poly P0(std::vector<Fe>(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(h)));
        const Poly P1(std::vector<Fe>(sol.begin() + static_cast<std::ptrdiff_t>(h), sol.end()));
        std::string err;
        if (poly_eval_many(F, P0, t) != p0) err = "P0 from M_t differs from the solved P0: " + mismatch(p0, poly_eval_many(F, P0, t));
        if (err.empty() && poly_eval_many(F, P1, t) != p1) {
            err = "P1 from M_t differs from the solved P1: " + mismatch(p1, poly_eval_many(F, P1, t));
        }
        for (std::size_t j = 0; j < n && err.empty(); ++j) {
            const Fe tj = tree.psi(0, s[j]);
            const Fe w = F.pow(poly_eval(F, psi.v, s[j]), h - 1);
            const Fe rhs = F.mul(F.add(poly_eval(F, P0, tj), F.mul(s[j], poly_eval(F, P1, tj))), w);
            if (rhs != table[j]) {
                err = "identity fails at s=" + std::to_string(s[j].v) + ": P(s)=" + std::to_string(table[j].v) +
                      " reconstructed " + std::to_string(rhs.v);
            }
        }
        if (!err.empty()) {
            ++r.failures;
            if (r.counterexample.empty()) {
                r.counterexample = "instance " + std::to_string(inst) + " on " + tree.set_name(S) + " P=" + show(P) +
                                   ": " + err;
            }
        }
    }
    return r;
}

std::vector<Fe> sym_oracle(const Field& F, const std::vector<Fe>& alphas)
{
    // c holds prod (X - alpha) with c[i] the coefficient of X^i
    std::vector<Fe> c{F.one()};
    for (const Fe a : alphas) {
        c.push_back(Fe{});
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = F.sub(c[i - 1], F.mul(a, c[i]));
        c[0] = F.neg(F.mul(a, c[0]));
    }
    const std::size_t n = alphas.size();
    std::vector<Fe> out(n);
    for (std::size_t t = 1; t <= n; ++t) out[t - 1] = (t % 2 == 1) ? F.neg(c[n - t]) : c[n - t];
    return out;
}

} // namespace ecfft
