// zel — the ring of multisegments, its two bases, and the partial derivatives.
// SPDX-License-Identifier: MIT
//
// The free abelian group on multisegments carries two distinguished bases:
// the standard one, written pi(a), which multiplies by disjoint union, and
// the irreducible one, written L(a).  The change of basis is unitriangular
// with the Zelevinsky order; its columns are obtained from the quantum layer
// by specializing v = 1.
//
// The derivative D^k acts on the standard basis by truncating sub-multisets
// of the end-k segments, and on the irreducible basis by one of three
// independent routes:
//
//   quantum        divided derivatives of the dual canonical basis,
//   basis_change   conjugate the standard-basis action by the base change,
//   parabolic_theta  reduce to a parabolic-type multisegment, evaluate the
//                  theta formula there, and transport the terms back through
//                  the recovery derivatives.
//
// Route agreement is a library-level theorem and is exercised by the tests;
// the routes share no code beyond the poset primitives.

#ifndef ZEL_RING_HPP
#define ZEL_RING_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zel/canonical.hpp"
#include "zel/error.hpp"
#include "zel/phi.hpp"
#include "zel/poset.hpp"
#include "zel/segment.hpp"

namespace zel {

// --- vectors over the two bases ------------------------------------------------

enum class RingBasis { standard, irreducible };

/// An integer combination of basis elements, tagged with the basis its
/// coordinates refer to.  Zero coefficients are never stored.
struct RingVector {
    RingBasis basis = RingBasis::standard;
    std::map<Multisegment, i64> terms;

    friend bool operator==(const RingVector&, const RingVector&) = default;

    bool is_zero() const { return terms.empty(); }

    i64 coeff(const Multisegment& a) const {
        auto it = terms.find(a);
        return it == terms.end() ? 0 : it->second;
    }

    RingVector& add(const Multisegment& a, i64 c) {
        if (c == 0) return *this;
        auto [it, fresh] = terms.emplace(a, c);
        if (!fresh) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms.erase(it);
        }
        return *this;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        const char* tag = basis == RingBasis::standard ? "pi" : "L";
        std::string out;
        for (const auto& [a, c] : terms) {
            if (!out.empty()) out += "  +  ";
            out += "(" + std::to_string(c) + ")*" + tag + "[" + a.str() + "]";
        }
        return out;
    }
};

inline RingVector standard_unit(const Multisegment& a) { return {RingBasis::standard, {{a, 1}}}; }
inline RingVector irreducible_unit(const Multisegment& a) { return {RingBasis::irreducible, {{a, 1}}}; }

// --- base change ----------------------------------------------------------------

/// Column of the multiplicity matrix: pi(a) = sum_b m(b,a) L(b), read off
/// from the quantum layer at v = 1.
inline std::shared_ptr<const std::map<Multisegment, i64>> m_column(const Multisegment& a) {
    static detail::Memo<Multisegment, std::map<Multisegment, i64>> memo;
    if (auto hit = memo.find(a)) return hit;
    std::map<Multisegment, i64> col;
    for (const auto& [b, c] : expand_in_gstar(unit_evec(a))) {
        const i64 m = c.at_one();
        if (m != 0) col[b] = m;
    }
    ZEL_CHECK(col.count(a) == 1 && col.at(a) == 1, "base change is not unitriangular");
    return memo.store(a, std::move(col));
}

/// Column of the inverse matrix: L(a) = sum_b mtilde(b,a) pi(b), computed by
/// peeling the unitriangular system downward.
inline std::shared_ptr<const std::map<Multisegment, i64>> mtilde_column(const Multisegment& a) {
    static detail::Memo<Multisegment, std::map<Multisegment, i64>> memo;
    if (auto hit = memo.find(a)) return hit;
    std::map<Multisegment, i64> col{{a, 1}};
    for (const auto& [b, m] : *m_column(a)) {
        if (b == a) continue;
        for (const auto& [d, t] : *mtilde_column(b)) {
            auto [it, fresh] = col.emplace(d, 0);
            it->second = checked_add(it->second, checked_mul(-m, t));
            if (it->second == 0) col.erase(it);
        }
    }
    return memo.store(a, std::move(col));
}

inline RingVector to_irreducible(const RingVector& x) {
    if (x.basis == RingBasis::irreducible) return x;
    RingVector out{RingBasis::irreducible, {}};
    for (const auto& [a, c] : x.terms)
        for (const auto& [b, m] : *m_column(a)) out.add(b, checked_mul(c, m));
    return out;
}

inline RingVector to_standard(const RingVector& x) {
    if (x.basis == RingBasis::standard) return x;
    RingVector out{RingBasis::standard, {}};
    for (const auto& [a, c] : x.terms)
        for (const auto& [b, t] : *mtilde_column(a)) out.add(b, checked_mul(c, t));
    return out;
}

/// Product of the ring.  Standard monomials multiply by disjoint union; when
/// either factor arrives in irreducible coordinates the product is computed
/// in the standard basis and converted back.
inline RingVector multiply(const RingVector& x, const RingVector& y) {
    if (x.basis != RingBasis::standard || y.basis != RingBasis::standard)
        return to_irreducible(multiply(to_standard(x), to_standard(y)));
    RingVector out{RingBasis::standard, {}};
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) out.add(a + b, checked_mul(ca, cb));
    return out;
}

// --- derivatives on the standard basis ------------------------------------------

namespace detail {

inline i64 binom(i64 n, i64 r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    i64 out = 1;
    for (i64 i = 1; i <= r; ++i) out = checked_mul(out, n - r + i) / i;
    return out;
}

/// How many subsets of the occurrences of ak have the content of gamma.
inline i64 occurrence_count(const Multisegment& ak, const Multisegment& gamma) {
    i64 n = 1;
    for (const auto& [s, m] : gamma.grouped()) n = checked_mul(n, binom(ak.count(s), m));
    return n;
}

} // namespace detail

/// D^k on the standard basis: every subset of the occurrences of end-k
/// segments gets truncated one step, the empty subset contributing pi(a)
/// itself.  Subsets of equal content pile up on one term.
inline RingVector dk_standard(const RingVector& x, int k) {
    ZEL_REQUIRE(x.basis == RingBasis::standard, "dk_standard expects standard coordinates");
    RingVector out{RingBasis::standard, {}};
    for (const auto& [a, c] : x.terms) {
        const Multisegment ak = a.ending_at(k);
        for (const auto& g : sub_multisets(ak))
            out.add(gamma_truncation(a, k, g), checked_mul(c, detail::occurrence_count(ak, g)));
    }
    return out;
}

inline RingVector reflected(const RingVector& x) {
    RingVector out{x.basis, {}};
    for (const auto& [a, c] : x.terms) out.add(reflect(a), c);
    return out;
}

/// The left derivative ^k D on the standard basis, realized through the
/// reflection symmetry [b,e] <-> [-e,-b].
inline RingVector left_dk_standard(const RingVector& x, int k) {
    return reflected(dk_standard(reflected(x), -k));
}

/// The derivation e'_k: Leibniz over occurrences of end-k segments, with
/// t[k,k] differentiating to the unit (the empty multisegment).
inline RingVector e_prime_standard(const RingVector& x, int k) {
    ZEL_REQUIRE(x.basis == RingBasis::standard, "e_prime_standard expects standard coordinates");
    RingVector out{RingBasis::standard, {}};
    for (const auto& [a, c] : x.terms) {
        const Multisegment ak = a.ending_at(k);
        for (const auto& s : ak.segments()) {
            Multisegment one;
            one.add(s);
            out.add(gamma_truncation(a, k, one), c);
        }
    }
    return out;
}

/// D^k as the divided-power exponential of e'_k.  Every division must be
/// exact; a remainder indicates corrupted coefficients.  Agreement with
/// dk_standard is one of the library-level theorems under test.
inline RingVector dk_via_exp(const RingVector& x, int k) {
    ZEL_REQUIRE(x.basis == RingBasis::standard, "dk_via_exp expects standard coordinates");
    RingVector total = x;
    RingVector layer = x;
    for (i64 n = 1; !layer.is_zero(); ++n) {
        RingVector next{RingBasis::standard, {}};
        for (const auto& [a, c] : e_prime_standard(layer, k).terms) {
            ZEL_CHECK(c % n == 0, "divided power: inexact division");
            next.add(a, c / n);
        }
        layer = std::move(next);
        for (const auto& [a, c] : layer.terms) total.add(a, c);
    }
    return total;
}

// --- derivatives on the irreducible basis ----------------------------------------

enum class DeriveRoute { quantum, basis_change, parabolic_theta };

inline RingVector derive_irreducible(const Multisegment& a, int k, DeriveRoute route);

/// D^k(L_a) through the quantum layer: divided derivatives of the dual
/// canonical basis vector, re-expanded and specialized at v = 1.
inline RingVector derive_quantum(const Multisegment& a, int k) {
    RingVector out{RingBasis::irreducible, {}};
    const int lk = int(a.ending_at(k).size());
    for (int ell = 0; ell <= lk; ++ell)
        for (const auto& [b, c] : expand_in_gstar(divided_derive(k, ell, *gstar(a))))
            out.add(b, c.at_one());
    return out;
}

/// ^k D (L_a) in the irreducible basis, through the reflection symmetry.
inline RingVector left_derive_quantum(const Multisegment& a, int k) {
    return reflected(derive_quantum(reflect(a), -k));
}

/// Membership surrogate for the set S(a)_k: the truncation a^{(k)} survives
/// in D^k(L_a) with coefficient exactly one.
inline bool in_s_right(const Multisegment& a, int k) {
    static detail::Memo<std::pair<Multisegment, int>, bool> memo;
    const std::pair<Multisegment, int> key{a, k};
    if (auto hit = memo.find(key)) return *hit;
    const bool ok = derive_quantum(a, k).coeff(truncate_k(a, k)) == 1;
    return *memo.store(key, ok);
}

/// Left-handed surrogate: ^{(k)}a survives in ^k D(L_a) with coefficient one.
inline bool in_s_left(const Multisegment& a, int k) { return in_s_right(reflect(a), -k); }

/// Membership in the right transfer filter at k1: d precedes c below k, loses
/// as many segments at k1 as c does, truncates into the filter downstairs,
/// and is clean at k1.
inline bool in_gamma_filter_right(const Multisegment& d, const Multisegment& c, int k, int k1) {
    if (!prec_k(d, c, k)) return false;
    if (d.ending_at(k1).size() != c.ending_at(k1).size()) return false;
    if (!prec_k(truncate_k(d, k1), truncate_k(c, k1), k)) return false;
    return in_s_right(d, k1);
}

inline bool in_gamma_filter_left(const Multisegment& d, const Multisegment& c, int k, int k1) {
    if (!prec_k(d, c, k)) return false;
    if (d.beginning_at(k1).size() != c.beginning_at(k1).size()) return false;
    if (!prec_k(left_truncate(d, k1), left_truncate(c, k1), k)) return false;
    return in_s_left(d, k1);
}

/// Full enumerations of the filters, used by the bijectivity checks.
inline std::set<Multisegment> gamma_filter_right(const Multisegment& c, int k, int k1) {
    std::set<Multisegment> out;
    for (const auto& d : gamma_set(c, k))
        if (in_gamma_filter_right(d, c, k, k1)) out.insert(d);
    return out;
}

inline std::set<Multisegment> gamma_filter_left(const Multisegment& c, int k, int k1) {
    std::set<Multisegment> out;
    for (const auto& d : gamma_set(c, k))
        if (in_gamma_filter_left(d, c, k, k1)) out.insert(d);
    return out;
}

// --- reduction to parabolic type ---------------------------------------------------

/// Outcome of the reduction recipe: a multisegment with pairwise distinct
/// beginnings and nothing ending at k+1, together with the recovery pipeline.
/// `rights` then `lefts` list the derivative indices that carry the terms of
/// D^k(L_{c'}) back down to the terms of D^k(L_c), in application order.
struct ParabolicReduction {
    Multisegment c_prime;
    std::vector<int> lefts;
    std::vector<int> rights;
};

/// Repeatedly clear the least duplicated beginning by extending everything
/// left of it, plus the largest segment sitting on it, one step to the left;
/// finally push every end beyond k one step to the right.  Each pass is
/// undone by one left derivative per fresh beginning (largest first); the
/// right extension is undone by one right derivative per fresh end (smallest
/// first).
inline ParabolicReduction reduce_to_parabolic(const Multisegment& c, int k) {
    ZEL_REQUIRE(!c.empty(), "reduce_to_parabolic: empty multisegment");
    ParabolicReduction out;
    Multisegment cur = c;
    std::vector<std::vector<int>> passes;
    for (;;) {
        std::map<int, int> mult;
        for (const auto& s : cur.segments()) ++mult[s.b];
        int i0 = 0;
        bool dup = false;
        for (const auto& [b, m] : mult)
            if (m > 1) {
                i0 = b;
                dup = true;
                break;
            }
        if (!dup) break;
        int top = i0;
        for (const auto& s : cur.segments())
            if (s.b == i0) top = std::max(top, s.e);
        const Segment delta0(i0, top);
        Multisegment next;
        std::vector<int> fresh;
        bool moved = false;
        for (const auto& s : cur.segments()) {
            if (s.b < i0) {
                next.add(Segment(s.b - 1, s.e));
                fresh.push_back(s.b - 1);
            } else if (!moved && s == delta0) {
                next.add(Segment(s.b - 1, s.e));
                moved = true;
            } else {
                next.add(s);
            }
        }
        ZEL_CHECK(moved, "reduction: chosen segment vanished");
        fresh.push_back(i0 - 1);
        std::sort(fresh.begin(), fresh.end(), std::greater<int>());
        passes.push_back(std::move(fresh));
        cur = std::move(next);
    }
    if (!cur.ending_at(k + 1).empty()) {
        std::set<int> fresh;
        Multisegment next;
        for (const auto& s : cur.segments()) {
            if (s.e > k) {
                next.add(Segment(s.b, s.e + 1));
                fresh.insert(s.e + 1);
            } else {
                next.add(s);
            }
        }
        cur = std::move(next);
        out.rights.assign(fresh.begin(), fresh.end());
    }
    for (auto it = passes.rbegin(); it != passes.rend(); ++it)
        out.lefts.insert(out.lefts.end(), it->begin(), it->end());
    std::set<int> begins;
    for (const auto& s : cur.segments())
        ZEL_CHECK(begins.insert(s.b).second, "reduction left duplicate beginnings");
    ZEL_CHECK(cur.ending_at(k + 1).empty(), "reduction left segments ending at k+1");
    out.c_prime = std::move(cur);
    return out;
}

namespace detail {

/// The base of the parabolic family containing c: same beginnings, ends
/// sorted ascending.  Distinct beginnings guarantee honest rows.
inline Multisegment family_base(const Multisegment& c) {
    Profile rows = rows_of(c);
    std::vector<int> ends;
    ends.reserve(rows.rows.size());
    for (const auto& r : rows.rows) ends.push_back(r.e);
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i < rows.rows.size(); ++i) rows.rows[i].e = ends[i];
    return rows.to_multisegment();
}

/// D^k(L_c) by reduction: evaluate the theta formula over the parabolic
/// destination, then walk the recovery pipeline, at each step keeping the
/// filtered terms and truncating their labels.
inline RingVector derive_by_reduction(const Multisegment& a, int k) {
    const ParabolicReduction red = reduce_to_parabolic(a, k);
    RingVector terms{RingBasis::irreducible, {}};
    if (red.c_prime.ending_at(k).empty()) {
        terms.add(red.c_prime, 1);
    } else {
        const Multisegment base = family_base(red.c_prime);
        const std::set<int> J = parabolic_J(base);
        const Permutation w = phi_invert(J, base, red.c_prime);
        for (const auto& t : parabolic_derivative_terms(base, w, k)) terms.add(t.label, t.coeff.at_one());
    }
    Multisegment level = red.c_prime;
    const auto step = [&](int k1, bool right) {
        ZEL_CHECK(right ? in_s_right(level, k1) : in_s_left(level, k1),
                  "transport: recovery step is not clean");
        RingVector next{RingBasis::irreducible, {}};
        for (const auto& [d, n] : terms.terms) {
            const bool keep = right ? in_gamma_filter_right(d, level, k, k1)
                                    : in_gamma_filter_left(d, level, k, k1);
            if (!keep) continue;
            const Multisegment image = right ? truncate_k(d, k1) : left_truncate(d, k1);
            ZEL_CHECK(next.coeff(image) == 0, "transport: filter image collision");
            next.add(image, n);
        }
        terms = std::move(next);
        level = right ? truncate_k(level, k1) : left_truncate(level, k1);
    };
    for (int k1 : red.rights) {
        ZEL_CHECK(k1 > k + 1, "transport: right recovery index in the forbidden band");
        step(k1, true);
    }
    for (int k1 : red.lefts) step(k1, false);
    ZEL_CHECK(level == a, "transport: recovery pipeline missed the input");
    ZEL_CHECK(terms.coeff(a) == 1, "transport: leading coefficient distorted");
    return terms;
}

} // namespace detail

inline RingVector derive_irreducible(const Multisegment& a, int k, DeriveRoute route) {
    switch (route) {
    case DeriveRoute::quantum: return derive_quantum(a, k);
    case DeriveRoute::basis_change:
        return to_irreducible(dk_standard(to_standard(irreducible_unit(a)), k));
    case DeriveRoute::parabolic_theta: return detail::derive_by_reduction(a, k);
    }
    throw internal_error("derive_irreducible: unknown route");
}

// --- the minimal-degree dichotomy ---------------------------------------------------

struct MinimalDegree {
    bool clean = false;
    std::optional<Multisegment> min_term;
};

/// Either L_{a^{(k)}} occurs in D^k(L_a) with coefficient one and is the
/// only term of the least conceivable degree, or no term of that degree
/// occurs at all.  Any other outcome is an internal error.
inline MinimalDegree minimal_degree_analysis(const Multisegment& a, int k) {
    const RingVector d = derive_quantum(a, k);
    const Multisegment trunc = truncate_k(a, k);
    const i64 lead = d.coeff(trunc);
    ZEL_CHECK(lead == 0 || lead == 1, "minimal degree dichotomy: leading coefficient not 0 or 1");
    for (const auto& [b, n] : d.terms)
        ZEL_CHECK(b == trunc || b.deg() > trunc.deg(),
                  "minimal degree dichotomy: stray term at the floor degree");
    MinimalDegree out;
    out.clean = lead == 1;
    if (out.clean) out.min_term = trunc;
    return out;
}

} // namespace zel

#endif // ZEL_RING_HPP
