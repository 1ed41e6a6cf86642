// ecfft command-line tool. Exit codes: 0 success, 1 verification or
// validation failure, 2 usage or precondition error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecfft/algorithms.hpp"
#include "ecfft/bench.hpp"
#include "ecfft/classical.hpp"
#include "ecfft/curve.hpp"
#include "ecfft/fftree.hpp"
#include "ecfft/oracle_suite.hpp"
#include "ecfft/serialize.hpp"
#include "json.hpp"

using namespace ecfft;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t effective_seed(std::uint64_t seed)
{
    const char* env = std::getenv("ECFFT_SEED");
    if (!env || !*env) return seed;
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw PreconditionError(std::string("ECFFT_SEED is not an unsigned integer: ") + env);
    }
}

std::string slurp(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

std::vector<Fe> read_values(const Field& F, const std::string& path)
{
    std::vector<Fe> out;
    for (const auto& l : lines_of(slurp(path))) out.push_back(F.parse(l));
    return out;
}

Poly read_poly(const Field& F, const std::string& path) { return Poly(read_values(F, path)); }

// Accepts {"set": ..., "values": [...]}, a "set <name>" header followed by
// one value per line, or bare values together with --set.
EvalTable read_table(const FFTree& tree, const std::string& path, const std::string& set_override)
{
    const Field& F = tree.field();
    const std::string text = slurp(path);
    std::string set_name = set_override;
    std::vector<Fe> values;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        ordered_json doc;
        try {
            doc = ordered_json::parse(text);
            const std::string in_file = doc.at("set").get<std::string>();
            if (!set_name.empty() && tree.parse_set(set_name) != tree.parse_set(in_file)) {
                throw PreconditionError("--set disagrees with the set recorded in " + path);
            }
            set_name = in_file;
            for (const auto& v : doc.at("values")) values.push_back(F.parse(v.get<std::string>()));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("malformed table file " + path + ": " + e.what());
        }
    } else {
        auto ls = lines_of(text);
        std::size_t start = 0;
        if (!ls.empty() && ls[0].rfind("set ", 0) == 0) {
            const std::string in_file = ls[0].substr(4);
            if (!set_name.empty() && tree.parse_set(set_name) != tree.parse_set(in_file)) {
                throw PreconditionError("--set disagrees with the set recorded in " + path);
            }
            set_name = in_file;
            start = 1;
        }
        for (std::size_t i = start; i < ls.size(); ++i) values.push_back(F.parse(ls[i]));
    }
    if (set_name.empty()) throw PreconditionError("table " + path + " names no basic set; pass --set");
    EvalTable t{tree.parse_set(set_name), std::move(values)};
    check_table(tree, t);
    return t;
}

ordered_json values_json(const std::vector<Fe>& xs)
{
    ordered_json arr = ordered_json::array();
    for (const Fe x : xs) arr.push_back(std::to_string(x.v));
    return arr;
}

std::string table_text(const FFTree& tree, const EvalTable& t, const std::string& format)
{
    if (format == "json") {
        return ordered_json{{"set", tree.set_name(t.set)}, {"values", values_json(t.values)}}.dump() + "\n";
    }
    std::string out = "set " + tree.set_name(t.set) + "\n";
    for (const Fe x : t.values) out += std::to_string(x.v) + "\n";
    return out;
}

std::string values_text(const std::vector<Fe>& xs, const std::string& key, const std::string& format)
{
    if (format == "json") return ordered_json{{key, values_json(xs)}}.dump() + "\n";
    std::string out;
    for (const Fe x : xs) out += std::to_string(x.v) + "\n";
    return out;
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

std::vector<std::size_t> parse_sizes(const std::string& text)
{
    std::vector<std::size_t> out;
    auto is_pow2 = [](std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; };
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const std::size_t lo = std::stoull(text.substr(0, dots)), hi = std::stoull(text.substr(dots + 2));
            if (!is_pow2(lo) || !is_pow2(hi) || lo > hi) throw PreconditionError("bad size range " + text);
            for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const std::size_t n = std::stoull(item);
                if (!is_pow2(n)) throw PreconditionError("size " + item + " is not a power of two");
                out.push_back(n);
            }
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const PreconditionError*>(&e)) throw;
        throw PreconditionError("bad --sizes value '" + text + "'");
    }
    if (out.empty()) throw PreconditionError("no sizes given");
    return out;
}

struct Common {
    std::string format = "text";
    std::string out;
};

void add_format(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

std::string tree_summary_text(const FFTree& tree)
{
    std::ostringstream ss;
    ss << "p " << tree.field().modulus() << "\n";
    ss << "depth " << tree.depth() << "\n";
    ss << "layer sizes";
    for (const auto& l : tree.layers()) ss << " " << l.size();
    ss << "\n";
    const auto& pv = tree.provenance();
    if (!pv.curves.empty()) {
        ss << "curve a=" << pv.curves[0].a.v << " b=" << pv.curves[0].b.v << " order " << pv.order << "\n";
        ss << "2-Sylow Z/2^" << pv.l1 << " x Z/2^" << pv.l2 << ", subgroup Z/2^" << pv.k1 << " x Z/2^" << pv.k2
           << "\n";
    }
    return ss.str();
}

ordered_json tree_summary_json(const FFTree& tree)
{
    ordered_json j;
    j["p"] = std::to_string(tree.field().modulus());
    j["depth"] = tree.depth();
    ordered_json sizes = ordered_json::array();
    for (const auto& l : tree.layers()) sizes.push_back(l.size());
    j["layer_sizes"] = sizes;
    const auto& pv = tree.provenance();
    if (!pv.curves.empty()) {
        j["curve"] = {{"a", std::to_string(pv.curves[0].a.v)}, {"b", std::to_string(pv.curves[0].b.v)}};
        j["order"] = std::to_string(pv.order);
        j["two_sylow"] = {pv.l1, pv.l2};
        j["subgroup"] = {pv.k1, pv.k2};
    }
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Elliptic-curve FFTrees and polynomial algorithms over prime fields"};
    app.require_subcommand(1);
    std::function<int()> run;
    Common common;

    // find-curve
    std::uint64_t fc_p = 0, fc_K = 0, fc_seed = 1;
    auto* fc = app.add_subcommand("find-curve", "Find a curve with K | N and N > 2K");
    fc->add_option("--p", fc_p, "Prime modulus")->required();
    fc->add_option("--K", fc_K, "Power of two dividing the group order")->required();
    fc->add_option("--seed", fc_seed, "Search seed");
    add_format(fc, common);
    fc->callback([&] {
        run = [&] {
            if (!is_prime(fc_p) || fc_p <= 3) throw PreconditionError("p must be a prime above 3");
            const Field F(fc_p);
            CurveSearchResult r;
            try {
                r = find_curve(F, fc_K, effective_seed(fc_seed));
            } catch (const std::invalid_argument& e) {
                throw PreconditionError(e.what());
            }
            if (common.format == "json") {
                std::cout << ordered_json{{"p", std::to_string(fc_p)},
                                          {"a", std::to_string(r.curve.a.v)},
                                          {"b", std::to_string(r.curve.b.v)},
                                          {"order", std::to_string(r.order)}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "a " << r.curve.a.v << "\nb " << r.curve.b.v << "\norder " << r.order << "\n";
            }
            return kOk;
        };
    });

    // build
    std::uint64_t b_p = 0, b_seed = 1;
    unsigned b_depth = 0;
    auto* build = app.add_subcommand("build", "Build and validate an FFTree");
    build->add_option("--p", b_p, "Prime modulus")->required();
    build->add_option("--depth", b_depth, "Tree depth k (2^k leaves)")->required();
    build->add_option("--seed", b_seed, "Construction seed");
    build->add_option("--out", common.out, "Tree file to write")->required();
    add_format(build, common);
    build->callback([&] {
        run = [&] {
            const FFTree tree = build_fftree(b_p, b_depth, effective_seed(b_seed));
            save_tree(tree, common.out);
            if (common.format == "json") {
                auto j = tree_summary_json(tree);
                j["validated"] = true;
                j["out"] = common.out;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << tree_summary_text(tree) << "validated: sizes, distinctness, 2-to-1 maps, poles, provenance\n";
            }
            return kOk;
        };
    });

    std::string tree_path;
    auto add_tree = [&](CLI::App* sub) { sub->add_option("--tree", tree_path, "Tree file")->required(); };

    // inspect
    int i_layer = -1;
    auto* inspect = app.add_subcommand("inspect", "Describe a tree file");
    add_tree(inspect);
    inspect->add_option("--layer", i_layer, "Also list the elements of this layer");
    add_format(inspect, common);
    inspect->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            if (i_layer > static_cast<int>(tree.depth())) throw PreconditionError("no such layer");
            if (common.format == "json") {
                auto j = tree_summary_json(tree);
                ordered_json sets = ordered_json::array();
                for (const BasicSet s : tree.standard_basic_sets()) sets.push_back(tree.set_name(s));
                j["standard_sets"] = sets;
                if (i_layer >= 0) {
                    const auto l = tree.layer(static_cast<unsigned>(i_layer));
                    j["layer"] = values_json(std::vector<Fe>(l.begin(), l.end()));
                }
                std::cout << j.dump() << "\n";
            } else {
                std::cout << tree_summary_text(tree);
                for (unsigned i = 0; i < tree.depth(); ++i) {
                    const auto& m = tree.map(i);
                    std::cout << "psi" << i << " u=" << values_json(m.u.coeffs()).dump()
                              << " v=" << values_json(m.v.coeffs()).dump() << "\n";
                }
                if (i_layer >= 0) {
                    for (const Fe x : tree.layer(static_cast<unsigned>(i_layer))) std::cout << x.v << "\n";
                }
            }
            return kOk;
        };
    });

    // validate
    auto* validate = app.add_subcommand("validate", "Load a tree file and check every invariant");
    add_tree(validate);
    add_format(validate, common);
    validate->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            if (common.format == "json") {
                std::cout << ordered_json{{"valid", true}, {"depth", tree.depth()}}.dump() << "\n";
            } else {
                std::cout << "valid\n";
            }
            return kOk;
        };
    });

    // verify
    std::string v_sizes = "2..64";
    std::size_t v_instances = 50;
    std::uint64_t v_seed = 1;
    std::vector<std::string> v_ops;
    unsigned v_threads = 0;
    std::size_t v_decomp_max = 256;
    auto* verify = app.add_subcommand("verify", "Check every operation against the naive oracles");
    add_tree(verify);
    verify->add_option("--sizes", v_sizes, "Sizes as lo..hi (powers of two) or a comma list");
    verify->add_option("--instances", v_instances, "Random instances per operation and size");
    verify->add_option("--seed", v_seed, "Instance seed");
    verify->add_option("--ops", v_ops, "Subset of operations")->delimiter(',');
    verify->add_option("--threads", v_threads, "Worker threads (0: all cores)");
    verify->add_option("--decomposition-max", v_decomp_max, "Largest size for the decomposition check (0: off)");
    add_format(verify, common);
    verify->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            SuiteOptions opts;
            opts.sizes = parse_sizes(v_sizes);
            opts.instances = v_instances;
            opts.seed = effective_seed(v_seed);
            opts.ops = v_ops;
            opts.threads = v_threads;
            std::vector<SuiteResult> results = run_oracle_suite(tree, opts);
            if (v_ops.empty() || std::find(v_ops.begin(), v_ops.end(), "decomposition") != v_ops.end()) {
                for (const std::size_t n : opts.sizes) {
                    if (n <= v_decomp_max) results.push_back(run_decomposition_check(tree, n, v_instances, opts.seed));
                }
            }
            std::size_t failed = 0;
            const SuiteResult* first = nullptr;
            for (const auto& r : results) {
                if (r.failures) {
                    ++failed;
                    if (!first) first = &r;
                }
            }
            if (common.format == "json") {
                ordered_json arr = ordered_json::array();
                for (const auto& r : results) {
                    ordered_json j{{"op", r.op}, {"n", r.n}, {"instances", r.instances}, {"failures", r.failures}};
                    if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
                    arr.push_back(j);
                }
                std::cout << ordered_json{{"pass", failed == 0}, {"results", arr}}.dump() << "\n";
            } else {
                std::cout << "op             n  instances  failures\n";
                for (const auto& r : results) {
                    std::printf("%-13s %5zu  %9zu  %8zu\n", r.op.c_str(), r.n, r.instances, r.failures);
                }
                if (first) {
                    std::cout << "FAIL: first counterexample (" << first->op << ", n=" << first->n
                              << "): " << first->counterexample << "\n";
                } else {
                    std::cout << "PASS: " << results.size() << " operation/size combinations\n";
                }
            }
            return failed ? kFail : kOk;
        };
    });

    // bench
    unsigned bn_lo = 6, bn_hi = 12;
    std::uint64_t bn_seed = 1;
    std::vector<std::string> bn_ops;
    auto* bench = app.add_subcommand("bench", "Field-operation counts and growth exponents");
    add_tree(bench);
    bench->add_option("--lo", bn_lo, "Smallest size exponent");
    bench->add_option("--hi", bn_hi, "Largest size exponent");
    bench->add_option("--seed", bn_seed, "Input seed");
    bench->add_option("--ops", bn_ops, "Subset of operations")->delimiter(',');
    add_format(bench, common);
    bench->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const auto reports = run_bench(tree, bn_lo, bn_hi, effective_seed(bn_seed), bn_ops);
            bool pass = true;
            for (const auto& r : reports) {
                pass = pass && r.pass;
                if (common.format == "json") {
                    std::cout << bench_report_json(r) << "\n";
                } else {
                    std::printf("%-11s slope(ops) %.3f  slope(time) %.3f", r.op.c_str(), r.slope_ops, r.slope_time);
                    if (r.max_slope) std::printf("  limit <= %.2f", *r.max_slope);
                    if (r.min_slope) std::printf("  limit >= %.2f", *r.min_slope);
                    std::printf("  %s\n", r.pass ? "pass" : "FAIL");
                }
            }
            return pass ? kOk : kFail;
        };
    });

    // table operations
    std::string t_set, t_table, t_table2, t_to, t_to_tree, t_poly, t_mod_a, t_mod_b;
    unsigned t_moiety = 0;
    auto add_table = [&](CLI::App* sub) {
        add_tree(sub);
        sub->add_option("--table", t_table, "Input table")->required();
        sub->add_option("--set", t_set, "Basic set of the input table (U<a> or a path like 0.L.R)");
        sub->add_option("--out", common.out, "Write the result here instead of stdout");
        add_format(sub, common);
    };

    auto* ext = app.add_subcommand("extend", "Extend a table to another basic set of the same size");
    add_table(ext);
    ext->add_option("--to", t_to, "Target basic set")->required();
    ext->add_option("--to-tree", t_to_tree, "Tree of the target set (a sibling in the same forest)");
    ext->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable t = read_table(tree, t_table, t_set);
            if (t_to_tree.empty()) {
                emit(table_text(tree, extend(tree, t, tree.parse_set(t_to)), common.format), common.out);
            } else {
                const FFTree other = load_tree(t_to_tree);
                emit(table_text(other, extend(tree, t, other, other.parse_set(t_to)), common.format), common.out);
            }
            return kOk;
        };
    });

    auto* mext = app.add_subcommand("mextend", "Extend the table of a monic polynomial of degree |S|");
    add_table(mext);
    mext->add_option("--to", t_to, "Target basic set")->required();
    mext->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable t = read_table(tree, t_table, t_set);
            emit(table_text(tree, mextend(tree, t, tree.parse_set(t_to)), common.format), common.out);
            return kOk;
        };
    });

    auto* mul = app.add_subcommand("mult", "Product of two tables given on a moiety");
    add_table(mul);
    mul->add_option("--table2", t_table2, "Second input table")->required();
    mul->add_option("--moiety", t_moiety, "Which child of the output set the inputs live on")->check(CLI::Range(0, 1));
    mul->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable P = read_table(tree, t_table, t_set);
            const EvalTable Q = read_table(tree, t_table2, t_set);
            if (P.set.level >= tree.depth()) throw PreconditionError("mult: input set has no parent");
            const BasicSet parent{P.set.level + 1, tree.parent(P.set.level, P.set.index)};
            if (!(tree.child(parent, t_moiety) == P.set)) throw PreconditionError("mult: --moiety does not match the input set");
            emit(table_text(tree, mult(tree, parent, t_moiety, P, Q), common.format), common.out);
            return kOk;
        };
    });

    auto* deg = app.add_subcommand("degree", "Exact degree of the polynomial behind a table");
    add_table(deg);
    deg->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const DegreeValue d = degree(tree, read_table(tree, t_table, t_set));
            if (common.format == "json") {
                std::cout << ordered_json{{"degree", degree_to_string(d)}}.dump() << "\n";
            } else {
                std::cout << degree_to_string(d) << "\n";
            }
            return kOk;
        };
    });

    auto* modc = app.add_subcommand("mod", "Remainder modulo A, as a table");
    add_table(modc);
    modc->add_option("--modulus", t_mod_a, "Coefficients of A, one per line")->required();
    modc->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable t = read_table(tree, t_table, t_set);
            const ModAdvice adv = make_mod_advice(tree, t.set, read_poly(tree.field(), t_mod_a));
            emit(table_text(tree, mod_reduce(tree, adv, t), common.format), common.out);
            return kOk;
        };
    });

    auto* divc = app.add_subcommand("div", "Quotient by A, as a table");
    add_table(divc);
    divc->add_option("--modulus", t_mod_a, "Coefficients of A, one per line")->required();
    divc->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable t = read_table(tree, t_table, t_set);
            const DivAdvice adv = make_div_advice(tree, t.set, read_poly(tree.field(), t_mod_a));
            emit(table_text(tree, divq(tree, adv, t), common.format), common.out);
            return kOk;
        };
    });

    auto* enter = app.add_subcommand("enter", "Coefficients to a table on a basic set");
    add_tree(enter);
    enter->add_option("--poly", t_poly, "Coefficients, one per line, low degree first")->required();
    enter->add_option("--set", t_set, "Target basic set")->required();
    enter->add_option("--out", common.out, "Write the result here instead of stdout");
    add_format(enter, common);
    enter->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable t = enter_coeffs(tree, tree.parse_set(t_set), read_poly(tree.field(), t_poly));
            emit(table_text(tree, t, common.format), common.out);
            return kOk;
        };
    });

    auto* exitc = app.add_subcommand("exit", "Table to monomial coefficients");
    add_table(exitc);
    exitc->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const Poly P = exit_coeffs(tree, read_table(tree, t_table, t_set));
            emit(values_text(P.coeffs(), "coeffs", common.format), common.out);
            return kOk;
        };
    });

    auto* crtc = app.add_subcommand("crt", "Chinese remaindering of two tables given on a moiety");
    add_table(crtc);
    crtc->add_option("--table2", t_table2, "Table of Q")->required();
    crtc->add_option("--a", t_mod_a, "Coefficients of A")->required();
    crtc->add_option("--b", t_mod_b, "Coefficients of B")->required();
    crtc->add_option("--moiety", t_moiety, "Which child of the output set the inputs live on")->check(CLI::Range(0, 1));
    crtc->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const EvalTable P = read_table(tree, t_table, t_set);
            const EvalTable Q = read_table(tree, t_table2, t_set);
            if (P.set.level >= tree.depth()) throw PreconditionError("crt: input set has no parent");
            const BasicSet parent{P.set.level + 1, tree.parent(P.set.level, P.set.index)};
            if (!(tree.child(parent, t_moiety) == P.set)) throw PreconditionError("crt: --moiety does not match the input set");
            const Field& F = tree.field();
            const CrtAdvice adv = make_crt_advice(tree, parent, t_moiety, read_poly(F, t_mod_a), read_poly(F, t_mod_b));
            emit(table_text(tree, crt(tree, adv, P, Q), common.format), common.out);
            return kOk;
        };
    });

    // classical
    std::string c_alphas, c_points, c_plan, c_mode = "auto";
    std::size_t c_n = 0;
    auto* sym = app.add_subcommand("sym", "Elementary symmetric polynomials of the inputs");
    add_tree(sym);
    sym->add_option("--alphas", c_alphas, "Inputs, one per line")->required();
    sym->add_option("--mode", c_mode, "auto, mult or mextend")->check(CLI::IsMember({"auto", "mult", "mextend"}));
    add_format(sym, common);
    sym->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const SymMode mode = c_mode == "mult" ? SymMode::Mult : c_mode == "mextend" ? SymMode::Mextend : SymMode::Auto;
            std::cout << values_text(sym_eval(tree, read_values(tree.field(), c_alphas), mode), "sym", common.format);
            return kOk;
        };
    });

    auto* plan = app.add_subcommand("plan", "Preprocess a point set for eval and interp");
    add_tree(plan);
    plan->add_option("--points", c_points, "Points, one per line")->required();
    plan->add_option("--n", c_n, "Degree bound for eval (default: number of points)");
    plan->add_option("--out", common.out, "Plan file to write")->required();
    add_format(plan, common);
    plan->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            PlanFile pf;
            pf.p = tree.field().modulus();
            pf.points = read_values(tree.field(), c_points);
            pf.n = c_n ? c_n : pf.points.size();
            const EvalPlan ep = make_eval_plan(tree, pf.points, pf.n);
            const InterpPlan ip = make_interp_plan(tree, pf.points);
            write_file(common.out, serialize_plan(pf));
            if (common.format == "json") {
                std::cout << ordered_json{{"points", pf.points.size()}, {"n", pf.n}, {"parts", ep.parts.size()},
                                          {"interp_top", ip.top}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "points " << pf.points.size() << "\nn " << pf.n << "\nparts " << ep.parts.size() << "\n";
            }
            return kOk;
        };
    });

    auto load_plan = [&](const FFTree& tree) {
        PlanFile pf = deserialize_plan(read_file(c_plan));
        if (pf.p != tree.field().modulus()) throw PreconditionError("plan was made for a different field");
        return pf;
    };

    auto* evalc = app.add_subcommand("eval", "Evaluate a polynomial at the plan's points");
    add_tree(evalc);
    evalc->add_option("--plan", c_plan, "Plan file")->required();
    evalc->add_option("--poly", t_poly, "Coefficients, one per line")->required();
    add_format(evalc, common);
    evalc->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const PlanFile pf = load_plan(tree);
            const EvalPlan ep = make_eval_plan(tree, pf.points, pf.n);
            std::cout << values_text(multipoint_eval(tree, ep, read_poly(tree.field(), t_poly)), "values", common.format);
            return kOk;
        };
    });

    auto* interp = app.add_subcommand("interp", "Interpolate values given at the plan's points");
    add_tree(interp);
    interp->add_option("--plan", c_plan, "Plan file")->required();
    interp->add_option("--table", t_table, "Values, one per line, in plan order")->required();
    add_format(interp, common);
    interp->callback([&] {
        run = [&] {
            const FFTree tree = load_tree(tree_path);
            const PlanFile pf = load_plan(tree);
            const InterpPlan ip = make_interp_plan(tree, pf.points);
            const Poly P = interpolate_general(tree, ip, read_values(tree.field(), t_table));
            std::cout << values_text(P.coeffs(), "coeffs", common.format);
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    auto fail = [&](int code, const char* kind, const std::string& msg) {
        std::cerr << ordered_json{{"error", kind}, {"message", msg}}.dump() << "\n";
        return code;
    };
    try {
        return run();
    } catch (const InvariantViolation& e) {
        return fail(kFail, "invariant", e.what());
    } catch (const FormatError& e) {
        return fail(kFail, "format", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kUsage, "precondition", e.what());
    } catch (const std::domain_error& e) {
        return fail(kUsage, "precondition", e.what());
    } catch (const std::exception& e) {
        return fail(kFail, "failure", e.what());
    }
}
