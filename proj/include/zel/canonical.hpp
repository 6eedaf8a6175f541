// zel — canonical basis of B_q and the machinery around it.
//
// The straightening basis E*(a) carries its stated binomial prefactor grouped
// by equal segments; the normalization in which the bar involution becomes
// unitriangular groups the prefactor by equal segment *ends* instead.  The
// gap is the monomial v^{kappa(a)} with kappa(a) >= 0 counting pairs of
// distinct segments that share an end (weighted by multiplicities); bar's
// diagonal entry, transported to the PBW side, is exactly v^{2 kappa(a)}.
// All canonical-basis machinery therefore works in the rescaled coordinates
// v^{kappa(a)} E*(a): the involution adapted to dual canonical bases is
// sigma, whose matrix there is a rescaling of bar's by explicit scalars
// (signs, powers of v, and ratios of the h-polynomials h_m), with unit
// diagonal.  G*(a) is the unique sigma-fixed vector equal to the rescaled
// E*(a) plus a correction in v.Z[v] supported strictly below a; computation
// is lazy per lower set, so large weights stay tractable when only a small
// order ideal is involved.
// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "zel/estar.hpp"

namespace zel {

enum class Basis { Estar, E, G, Gstar, Word };

/// A tagged vector: terms are coordinates in the tagged basis.
struct QVector {
    Basis basis = Basis::Estar;
    EVec terms;

    Weight weight() const { return evec_weight(terms); }
    std::string str() const { return evec_str(terms); }
    friend bool operator==(const QVector&, const QVector&) = default;
};

/// Unitriangular base-change matrix for one weight: entry (a, b) with b <= a
/// is the coefficient of G*(b) in E*(a) (equivalently, of E(a) in G(b)'s
/// dual-side expansion).
struct PMatrix {
    Weight weight;
    std::vector<Multisegment> labels;
    std::map<std::pair<Multisegment, Multisegment>, Laurent> entries;

    Laurent p(const Multisegment& a, const Multisegment& b) const {
        auto it = entries.find({a, b});
        return it == entries.end() ? Laurent() : it->second;
    }
};

/// Product of h-polynomials over the distinct members of a.
inline Laurent hprod(const Multisegment& a) {
    Laurent out(1);
    for (const auto& [s, m] : a.grouped()) out = out * h_poly(m);
    return out;
}

namespace detail {
inline i64 t_stat(const Multisegment& a) {
    i64 t = 0;
    for (const auto& [s, m] : a.grouped()) t += i64(m) * (m + 1) / 2;
    return t;
}
} // namespace detail

/// Normalization defect of the straightening basis at label a: the number of
/// pairs of distinct segments of a sharing an end, counted with
/// multiplicities.  Equivalently, the end-grouped binomial prefactor minus
/// the segment-grouped one, so bar's diagonal entry at a, transported to the
/// PBW side, is v^{2 kappa(a)}.
inline int kappa(const Multisegment& a) {
    std::map<int, i64> ends;
    i64 k = 0;
    for (const auto& [s, m] : a.grouped()) {
        ends[s.e] += m;
        k -= i64(m) * (m - 1) / 2;
    }
    for (const auto& [e, total] : ends) k += total * (total - 1) / 2;
    return int(k);
}

/// Matrix entry S_{b,c} (b <= c) of the involution sigma in the rescaled
/// basis v^{kappa} E*: sigma(v^{kappa(c)} E*(c)) = sum_{b <= c} S_{b,c}
/// v^{kappa(b)} E*(b), with S_{c,c} = 1.
inline Laurent sigma_entry(const Multisegment& b, const Multisegment& c) {
    const auto& barb = *bar_estar(b);
    auto it = barb.find(c);
    if (it == barb.end()) return Laurent();
    const Laurent beta = it->second;

    const int d = b.deg();
    const int nb = int(b.size());
    const i64 tb = detail::t_stat(b);
    Laurent r = (beta * hprod(c)).exact_div(hprod(b));
    r = r * Laurent::monomial((d - nb) % 2 == 0 ? 1 : -1, int(2 * tb - 2 * d));
    return r.bar().shifted(kappa(b) + kappa(c));
}

/// G*(a) expanded in the E*-basis.  Solved top-down over the lower set of a
/// in the rescaled coordinates (coefficients of v^{kappa(b)} E*(b)): the
/// correction coefficient at each label is the unique element of v.Z[v]
/// whose bar-antisymmetrization matches the already-solved part.  The output
/// therefore has leading coefficient v^{kappa(a)} at a itself.
inline std::shared_ptr<const EVec> gstar(const Multisegment& a) {
    static detail::Memo<Multisegment, EVec> memo;
    if (auto hit = memo.find(a)) return hit;

    const auto ideal = below_set(a);
    std::vector<Multisegment> order(ideal->begin(), ideal->end());
    std::sort(order.begin(), order.end(), [&](const Multisegment& x, const Multisegment& y) {
        const int ex = ell(x, a), ey = ell(y, a);
        return ex != ey ? ex < ey : x < y;
    });
    ZEL_CHECK(!order.empty() && order.front() == a, "lower set must start at its top");

    std::map<Multisegment, Laurent> g;
    g.emplace(a, Laurent(1));
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Multisegment& b = order[i];
        Laurent k;
        for (std::size_t j = 0; j < i; ++j) {
            const Multisegment& c = order[j];
            const Laurent& gc = g.at(c);
            if (gc.is_zero() || !leq(b, c)) continue;
            k += gc.bar() * sigma_entry(b, c);
        }
        ZEL_CHECK(k.bar() == Laurent() - k, "sigma solve lost bar-antisymmetry");
        g.emplace(b, k.positive_part());
    }

    EVec out;
    for (auto& [b, c] : g) evec_add(out, b, c.shifted(kappa(b)));
    return memo.store(a, std::move(out));
}

/// Rewrite a vector from the E*-basis into the G*-basis by peeling maximal
/// labels; returns the map label -> coefficient of G*(label).  The peel
/// divides by the leading monomial v^{kappa(label)} of G*(label).
inline EVec expand_in_gstar(EVec work) {
    EVec out;
    while (!work.empty()) {
        const Multisegment* top = nullptr;
        for (const auto& [cand, c] : work) {
            bool maximal = true;
            for (const auto& [other, c2] : work)
                if (!(other == cand) && leq(cand, other)) {
                    maximal = false;
                    break;
                }
            if (maximal) {
                top = &cand;
                break;
            }
        }
        ZEL_CHECK(top != nullptr, "no maximal label in a finite support");
        const Multisegment label = *top;
        const Laurent coeff = work.at(label).shifted(-kappa(label));
        evec_add_scaled(work, *gstar(label), Laurent() - coeff);
        ZEL_CHECK(work.find(label) == work.end(), "peeled label failed to cancel");
        evec_add(out, label, coeff);
    }
    return out;
}

/// All multisegments of the given weight, in canonical order.  Backtracking:
/// the first still-uncovered point must be the begin of the next segment, and
/// equal-begin segments are chosen with non-increasing ends so each multiset
/// is produced exactly once.
inline std::vector<Multisegment> enumerate_weight(const Weight& phi) {
    ZEL_REQUIRE(phi.nonnegative(), "weights of multisegments are nonnegative");
    std::vector<Multisegment> out;
    Weight rem = phi;
    std::vector<Segment> chosen;
    auto rec = [&](auto&& self) -> void {
        int p = rem.lo;
        while (p <= rem.hi() && rem.at(p) == 0) ++p;
        if (p > rem.hi()) {
            Multisegment a;
            for (const auto& s : chosen) a.add(s);
            out.push_back(std::move(a));
            return;
        }
        int emax = p;
        while (rem.at(emax + 1) > 0) ++emax;
        if (!chosen.empty() && chosen.back().b == p) emax = std::min(emax, chosen.back().e);
        for (int e = emax; e >= p; --e) {
            const Segment s(p, e);
            rem.add(s, -1);
            chosen.push_back(s);
            self(self);
            chosen.pop_back();
            rem.add(s, 1);
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

inline constexpr int kDefaultWeightBound = 10;

/// Full P-matrix of one weight: P_{a,b} is the coefficient of G*(b) in the
/// rescaled vector v^{kappa(a)} E*(a), so the diagonal is identically 1 and
/// all off-diagonal entries lie in v.Z[v].
inline PMatrix canonical_basis(const Weight& phi, int degree_bound = kDefaultWeightBound) {
    ZEL_REQUIRE(phi.total() <= degree_bound, "canonical_basis degree bound exceeded");
    PMatrix pm;
    pm.weight = phi;
    pm.labels = enumerate_weight(phi);
    for (const auto& a : pm.labels) {
        EVec col = expand_in_gstar(unit_evec(a));
        const int ka = kappa(a);
        for (auto& [b, c] : col)
            pm.entries.emplace(std::make_pair(a, b), c.shifted(ka));
    }
    return pm;
}

/// Kashiwara-style bilinear form on the E*-basis, as an exact fraction: the
/// basis is orthogonal with
///   (E*(a), E*(a)) = v^{-2 kappa(a)} prod_s h_{m_s} / (1-q)^{deg a},
/// so the rescaled vectors v^{kappa} E* carry the bare h-product norms.
/// Weight mismatch pairs to zero.
inline LaurentFraction kashiwara_pair(const EVec& x, const EVec& y) {
    if (x.empty() || y.empty()) return LaurentFraction{Laurent(), Laurent(1)};
    const Weight wx = evec_weight(x);
    if (!(wx == evec_weight(y))) return LaurentFraction{Laurent(), Laurent(1)};
    Laurent num;
    for (const auto& [a, cx] : x) {
        auto it = y.find(a);
        if (it != y.end()) num += (cx * it->second * hprod(a)).shifted(-2 * kappa(a));
    }
    return LaurentFraction{num, one_minus_q_pow(wx.total())};
}

/// Coefficients of (1/[ell]!) E_k'^ell (E*(a)) in the G*-basis, where ell is
/// forced by the weights.  n_poly reads off one entry; at v = 1 the column
/// lists the irreducible multiplicities in the ell-th k-derivative of the
/// standard element attached to a.
inline EVec derivative_gstar_column(const Multisegment& a, int k, int ell) {
    return expand_in_gstar(divided_derive(k, ell, unit_evec(a)));
}

inline Laurent n_poly(const Multisegment& b, const Multisegment& a, int k) {
    const Weight diff = a.weight() - b.weight();
    ZEL_REQUIRE(diff.nonnegative() && diff.at(k) == diff.total(),
                "weights must differ by a multiple of the k-th coordinate");
    const EVec col = derivative_gstar_column(a, k, diff.total());
    auto it = col.find(b);
    return it == col.end() ? Laurent() : it->second;
}

// ---- tagged wrappers -------------------------------------------------------

inline QVector straighten(const std::vector<Segment>& word, const Laurent& pre = Laurent(1)) {
    return QVector{Basis::Estar, straighten_word(word, pre)};
}

inline QVector bar(const QVector& x) {
    ZEL_REQUIRE(x.basis == Basis::Estar, "bar acts on E*-coordinates");
    return QVector{Basis::Estar, bar(x.terms)};
}

inline QVector q_derive(int i, const QVector& x) {
    ZEL_REQUIRE(x.basis == Basis::Estar, "q_derive acts on E*-coordinates");
    return QVector{Basis::Estar, q_derive_evec(i, x.terms)};
}

/// Coordinates in the E*-basis of a tagged vector.
inline EVec to_estar(const QVector& x) {
    if (x.basis == Basis::Estar) return x.terms;
    ZEL_REQUIRE(x.basis == Basis::Gstar, "only E*- and G*-coordinates convert");
    EVec out;
    for (const auto& [a, c] : x.terms) evec_add_scaled(out, *gstar(a), c);
    return out;
}

inline LaurentFraction kashiwara_pair(const QVector& x, const QVector& y) {
    return kashiwara_pair(to_estar(x), to_estar(y));
}

} // namespace zel
