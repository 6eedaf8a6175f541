// zel — the algebra B_q in the dual PBW basis {E*(a)}.
//
// Elements are finite Z[v,v^-1]-combinations of basis vectors E*(a) indexed
// by multisegments.  E*(a) is the canonical-order product of the generators
// T_s over the members of a, normalized by v^{sum_s C(m_s,2)}.  Products of
// generators in arbitrary order are straightened with the two-term relations
//
//   T_x T_y = v^c T_y T_x                      (x, y not linked)
//   T_x T_y = v^c (T_y T_x + (v^-1 - v) T_{x∩y} T_{x∪y})   (x, y linked)
//
// for x after y in the monomial order, where c = [ends equal] - [begins
// equal] in the unlinked case and c = 1 (disjoint) or 0 (overlapping) in the
// linked case; an empty intersection contributes no factor.
//
// Everything here is exact Laurent arithmetic; divided powers divide out
// q-factorials with an exactness assertion.
// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <vector>

#include "zel/laurent.hpp"
#include "zel/poset.hpp"
#include "zel/segment.hpp"

namespace zel {

/// A vector in the E*-basis: finitely supported map multisegment -> scalar.
using EVec = std::map<Multisegment, Laurent>;

inline void evec_add(EVec& dst, const Multisegment& a, const Laurent& c) {
    if (c.is_zero()) return;
    auto& slot = dst[a];
    slot += c;
    if (slot.is_zero()) dst.erase(a);
}

inline void evec_add_scaled(EVec& dst, const EVec& src, const Laurent& c) {
    if (c.is_zero()) return;
    for (const auto& [a, x] : src) evec_add(dst, a, x * c);
}

inline EVec evec_scaled(const EVec& x, const Laurent& c) {
    EVec out;
    evec_add_scaled(out, x, c);
    return out;
}

inline EVec unit_evec(const Multisegment& a) { return EVec{{a, Laurent(1)}}; }

/// Weight shared by all labels of a nonzero vector.
inline Weight evec_weight(const EVec& x) {
    ZEL_REQUIRE(!x.empty(), "weight of the zero vector is undefined");
    Weight w = x.begin()->first.weight();
    for (const auto& [a, c] : x) ZEL_CHECK(a.weight() == w, "mixed-weight vector");
    return w;
}

inline std::string evec_str(const EVec& x) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [a, c] : x) {
        if (!out.empty()) out += "  +  ";
        out += "(" + c.str() + ")*E[" + a.str() + "]";
    }
    return out;
}

/// Exponent of the PBW normalization: sum over distinct members of C(m,2).
inline i64 estar_exponent(const Multisegment& a) {
    i64 n = 0;
    for (const auto& [s, m] : a.grouped()) n += i64(m) * (m - 1) / 2;
    return n;
}

namespace detail {
inline const Laurent& vinv_minus_v() {
    static const Laurent x = Laurent::monomial(1, -1) - Laurent::v_pow(1);
    return x;
}
} // namespace detail

std::shared_ptr<const EVec> insert_seg(const Segment& s, const Multisegment& a);

/// T_s * x for a vector x in the E*-basis.
inline EVec apply_T(const Segment& s, const EVec& x) {
    EVec out;
    for (const auto& [a, c] : x) evec_add_scaled(out, *insert_seg(s, a), c);
    return out;
}

/// T_s * E*(a), straightened.  The recursion peels the smallest member t of
/// a, commutes T_s past it with the two-term relation, and re-inserts; it
/// terminates because every non-trivial recursive product is strictly below
/// the starting multiset s+a in the (weight, classical-order) ranking.
inline std::shared_ptr<const EVec> insert_seg(const Segment& s, const Multisegment& a) {
    using Key = std::pair<Segment, Multisegment>;
    static detail::Memo<Key, EVec> memo;
    const Key key{s, a};
    if (auto hit = memo.find(key)) return hit;

    EVec out;
    if (a.empty() || !(a.segments().front() < s)) {
        Multisegment sum = a;
        sum.add(s);
        out.emplace(std::move(sum), Laurent::v_pow(-a.count(s)));
        return memo.store(key, std::move(out));
    }
    const Segment t = a.segments().front();
    Multisegment rest = a;
    rest.remove(t);
    const int m = rest.count(t);

    const auto ops = seg_link_ops(s, t);
    int c;
    if (ops.linked)
        c = ops.inter ? 0 : 1;
    else
        c = int(s.e == t.e) - int(s.b == t.b);

    evec_add_scaled(out, apply_T(t, *insert_seg(s, rest)), Laurent::v_pow(m + c));
    if (ops.linked) {
        const Laurent corr = Laurent::v_pow(m + c) * detail::vinv_minus_v();
        const EVec upper = *insert_seg(*ops.uni, rest);
        if (ops.inter)
            evec_add_scaled(out, apply_T(*ops.inter, upper), corr);
        else
            evec_add_scaled(out, upper, corr);
    }
    return memo.store(key, std::move(out));
}

/// Straighten a generator word T_{w_1} ... T_{w_n} (times a scalar) into the
/// E*-basis.
inline EVec straighten_word(const std::vector<Segment>& word, const Laurent& pre = Laurent(1)) {
    EVec acc = EVec{{Multisegment{}, pre}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) acc = apply_T(*it, acc);
    return acc;
}

/// Product in B_q of two vectors in the E*-basis.
inline EVec multiply(const EVec& x, const EVec& y) {
    EVec out;
    for (const auto& [a, ca] : x) {
        EVec chain = y;
        const auto& segs = a.segments();
        for (auto it = segs.rbegin(); it != segs.rend(); ++it) chain = apply_T(*it, chain);
        evec_add_scaled(out, chain, ca * Laurent::v_pow(int(estar_exponent(a))));
    }
    return out;
}

/// bar(T_s) in the E*-basis.  bar fixes every degree-one generator and
/// inverts v; longer segments unwind through the q-commutator that defines
/// them:  (1 - v^-2) T*_{[b,e]} = T_{[e]} T_{[b,e-1]} - v^-1 T_{[b,e-1]} T_{[e]}
/// after applying bar to the defining relation.
inline std::shared_ptr<const EVec> bar_T(const Segment& s) {
    static detail::Memo<Segment, EVec> memo;
    if (auto hit = memo.find(s)) return hit;

    EVec out;
    if (s.b == s.e) {
        out = unit_evec(Multisegment{}.add(s));
    } else {
        const Segment head(s.e, s.e), body(s.b, s.e - 1);
        const auto inner = bar_T(body);
        EVec num = apply_T(head, *inner);
        evec_add_scaled(num, multiply(*inner, unit_evec(Multisegment{}.add(head))),
                        Laurent::monomial(-1, -1));
        const Laurent den = Laurent(1) - Laurent::v_pow(-2);
        for (const auto& [b, cc] : num) out.emplace(b, cc.exact_div(den));
    }
    return memo.store(s, std::move(out));
}

/// bar(E*(a)) in the E*-basis.
inline std::shared_ptr<const EVec> bar_estar(const Multisegment& a) {
    static detail::Memo<Multisegment, EVec> memo;
    if (auto hit = memo.find(a)) return hit;

    EVec acc = unit_evec(Multisegment{});
    for (const Segment& s : a.segments()) acc = multiply(acc, *bar_T(s));
    EVec out = evec_scaled(acc, Laurent::v_pow(-int(estar_exponent(a))));
    return memo.store(a, std::move(out));
}

/// The bar involution on a vector in the E*-basis.
inline EVec bar(const EVec& x) {
    EVec out;
    for (const auto& [a, c] : x) evec_add_scaled(out, *bar_estar(a), c.bar());
    return out;
}

/// E_i'(E*(a)): the twisted derivation with generator action
/// E_i'(T_{[b,e]}) = [e = i] T_{[b,e-1]}.
inline std::shared_ptr<const EVec> ei_prime(int i, const Multisegment& a) {
    using Key = std::pair<int, Multisegment>;
    static detail::Memo<Key, EVec> memo;
    const Key key{i, a};
    if (auto hit = memo.find(key)) return hit;

    EVec out;
    if (!a.empty()) {
        const Segment s0 = a.segments().front();
        Multisegment rest = a;
        rest.remove(s0);
        const int m = rest.count(s0);

        if (s0.e == i) {
            if (auto shorter = truncate_segment(s0))
                evec_add_scaled(out, apply_T(*shorter, unit_evec(rest)), Laurent::v_pow(m));
            else
                evec_add(out, rest, Laurent::v_pow(m));
        }
        Weight ws;
        ws.add(s0);
        const Laurent twist = Laurent::v_pow(m - ws.cartan_with_alpha(i));
        evec_add_scaled(out, apply_T(s0, *ei_prime(i, rest)), twist);
    }
    return memo.store(key, std::move(out));
}

/// E_i' extended linearly.
inline EVec q_derive_evec(int i, const EVec& x) {
    EVec out;
    for (const auto& [a, c] : x) evec_add_scaled(out, *ei_prime(i, a), c);
    return out;
}

/// Divided power (1/[ell]!) E_i'^ell; the division must be exact.
inline EVec divided_derive(int i, int ell, const EVec& x) {
    ZEL_REQUIRE(ell >= 0, "divided power wants a nonnegative exponent");
    EVec y = x;
    for (int j = 0; j < ell; ++j) y = q_derive_evec(i, y);
    const Laurent fact = q_factorial(ell);
    EVec out;
    for (const auto& [a, c] : y) out.emplace(a, c.exact_div(fact));
    return out;
}

} // namespace zel
