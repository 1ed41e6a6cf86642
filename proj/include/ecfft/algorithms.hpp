#pragma once

#include <optional>
#include <vector>

#include "ecfft/fftree.hpp"
#include "ecfft/poly.hpp"

namespace ecfft {

/// Values of some function on the leaves of a basic set, in the set's
/// canonical order.
struct EvalTable {
    BasicSet set;
    std::vector<Fe> values;

    friend bool operator==(const EvalTable&, const EvalTable&) = default;
};

/// Direct (Horner) evaluation of a polynomial on a basic set.
EvalTable table_of(const FFTree& tree, BasicSet set, const Poly& P);
/// Throws PreconditionError unless the table matches its set's size.
void check_table(const FFTree& tree, const EvalTable& t);

/// The part of a table living on child 0 or 1 of its set.
EvalTable restrict_to_child(const FFTree& tree, const EvalTable& t, unsigned which);
/// Inverse of restrict_to_child.
EvalTable join_children(const FFTree& tree, BasicSet parent, const EvalTable& c0, const EvalTable& c1);

/// Moiety of `set` not containing 0 (child 0 when neither does).
unsigned zero_free_moiety(const FFTree& tree, BasicSet set);

/// <P | S> -> <P | S'> for deg P < |S|. S' may live in a sibling tree of
/// the same forest.
EvalTable extend(const FFTree& tree, const EvalTable& t, BasicSet to);
EvalTable extend(const FFTree& from_tree, const EvalTable& t, const FFTree& to_tree, BasicSet to);

/// As extend, for monic P with deg P = |S| exactly.
EvalTable mextend(const FFTree& tree, const EvalTable& t, BasicSet to);

/// <P Q | S> from tables of P and Q on the given moiety of S, deg P, deg Q < |S|/2.
EvalTable mult(const FFTree& tree, BasicSet set, unsigned moiety, const EvalTable& P, const EvalTable& Q);

/// Exact degree of the polynomial behind the table; nullopt for zero.
DegreeValue degree(const FFTree& tree, const EvalTable& t);

/// Advice for reducing modulo A on basic set S; S_0 is the moiety on which
/// A has no zeros.
struct ModAdvice {
    BasicSet set;
    unsigned moiety = 0;
    Poly modulus;
    std::vector<Fe> inv_a_s0;  // 1/A on S_0
    std::vector<Fe> a_s1;      // A on S_1
    std::vector<Fe> inv_z0_s1; // 1/Z_0 on S_1
    std::vector<Fe> c_s;       // (Z_0^2 rem A) on S
};

/// Requires 0 <= deg A <= |S|/2 and A zero-free on some moiety (the
/// requested one if given). Throws PreconditionError otherwise.
ModAdvice make_mod_advice(const FFTree& tree, BasicSet set, const Poly& A, std::optional<unsigned> moiety = {});

/// Table of the Q with Q Z_0 = P (mod A) and deg Q <= max(deg P - n/2, deg A - 1).
EvalTable redc(const FFTree& tree, const ModAdvice& adv, const EvalTable& t);
/// <P rem A | S>.
EvalTable mod_reduce(const FFTree& tree, const ModAdvice& adv, const EvalTable& t);

struct DivAdvice {
    ModAdvice mod;
    std::vector<Fe> inv_a_s; // 1/A on all of S
};

/// Additionally requires A to have no zero on S.
DivAdvice make_div_advice(const FFTree& tree, BasicSet set, const Poly& A);
/// Table of the quotient of P by A.
EvalTable divq(const FFTree& tree, const DivAdvice& adv, const EvalTable& t);

/// Monomial coefficients of the polynomial behind the table.
Poly exit_coeffs(const FFTree& tree, const EvalTable& t);
/// <P | S> from coefficients, deg P < |S|.
EvalTable enter_coeffs(const FFTree& tree, BasicSet set, const Poly& P);

struct CrtAdvice {
    BasicSet set;
    unsigned moiety = 0; // inputs live on this child of `set`
    ModAdvice mod_a;
    ModAdvice mod_b;
    Poly A;
    Poly B;
    std::vector<Fe> g_s; // (B^-1 mod A) on S
    std::vector<Fe> h_s; // (A^-1 mod B) on S
    std::vector<Fe> a_s;
    std::vector<Fe> b_s;
};

/// A, B coprime with degrees in 1..|S|/2, each half-disjoint from S.
CrtAdvice make_crt_advice(const FFTree& tree, BasicSet set, unsigned moiety, const Poly& A, const Poly& B);
/// Table on S of the R with deg R < deg A + deg B, R = P mod A, R = Q mod B,
/// from tables of P and Q (degree < |S|/2) on the input moiety.
EvalTable crt(const FFTree& tree, const CrtAdvice& adv, const EvalTable& P, const EvalTable& Q);

/// <Z_S | S'> (cached).
const std::vector<Fe>& vanishing_on(const FFTree& tree, BasicSet s, BasicSet to);
/// Coefficients of Z_S (cached).
const Poly& vanishing_of(const FFTree& tree, BasicSet s);

} // namespace ecfft
