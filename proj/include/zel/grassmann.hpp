// Partition combinatorics of the two-block quotient.
//
// A base multisegment with pairwise distinct begins whose ends take exactly
// the two values k-1 (r times) and k (ell times) has its orbit family indexed
// by partitions inside an r x ell box.  The indexing runs through two maps:
//
//   sigma2 : partitions (l_1 <= ... <= l_r <= ell)  ->  row sets in R_r(r+ell),
//            sigma2(lambda) = (l_1 + 1, ..., l_r + r);
//   sigma1 : minimal coset representatives for the two-block generator set
//            J = {s_i : i != r}  ->  row sets, sigma1(w) = (w^{-1}(1), ...,
//            w^{-1}(r)).
//
// The member attached to a row set x keeps end k-1 exactly on the rows listed
// in x and end k elsewhere.  Three orders on row sets drive the structure
// theory: set containment (selects the truncations a_Gamma), componentwise
// dominance (the Bruhat/closure order), and the mixed order x >= y' >= y
// ("succeq") which characterizes when the simple module indexed by x
// contributes to a derivative of the one indexed by y.
//
// The flat/sharp pair implements the weight drop of the derivative: mu_flat
// forgets the first r0 rows of x_mu (they return to end k), while sharp_lift
// rebuilds the distinguished maximal preimage with ends k, k-1 and k+1.  The
// orbit count n(a_mu, a_{mu_flat}) -- the derivative multiplicity -- is the
// number of members c of the once-extended family S(a_1) that truncate back
// to a_{mu_flat} and dominate the sharp lift.
// SPDX-License-Identifier: MIT
#ifndef ZEL_GRASSMANN_HPP
#define ZEL_GRASSMANN_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "zel/phi.hpp"
#include "zel/poset.hpp"

namespace zel {

// ---------------------------------------------------------------------------
// Partitions in a box.

/// A partition with at most r parts, each at most ell, stored weakly
/// increasing (l_1 <= ... <= l_r, zeros kept so the length is always r).
struct GrPartition {
    std::vector<int> parts;
    int r = 0;
    int ell = 0;

    GrPartition(std::vector<int> p, int r_, int ell_) : parts(std::move(p)), r(r_), ell(ell_) {
        ZEL_REQUIRE(r >= 0 && ell >= 0, "GrPartition: negative box");
        ZEL_REQUIRE(int(parts.size()) == r, "GrPartition: expected exactly r parts");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            ZEL_REQUIRE(parts[i] >= 0 && parts[i] <= ell, "GrPartition: part outside the box");
            ZEL_REQUIRE(i == 0 || parts[i - 1] <= parts[i],
                        "GrPartition: parts must increase weakly");
        }
    }

    auto operator<=>(const GrPartition&) const = default;

    /// Rendered as "(l_1,...,l_r)"; the r = 0 partition as "()".
    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts[i]);
        }
        return out + ")";
    }
};

/// Box-capped run-length encoding (a_1,...,a_m; b_0,...,b_{m-1}): the
/// distinct part values v_1 < ... < v_m with v_m = ell (an empty final run is
/// appended when the largest part falls short), a_i the multiplicity of v_i,
/// and b_j = v_{j+1} - v_j the gaps from v_0 = 0.
struct OmegaForm {
    std::vector<int> a;
    std::vector<int> b;
    auto operator<=>(const OmegaForm&) const = default;
};

inline OmegaForm to_omega(const GrPartition& lam) {
    OmegaForm out;
    int prev = 0;
    std::size_t i = 0;
    while (i < lam.parts.size()) {
        std::size_t j = i;
        while (j < lam.parts.size() && lam.parts[j] == lam.parts[i]) ++j;
        out.a.push_back(int(j - i));
        out.b.push_back(lam.parts[i] - prev);
        prev = lam.parts[i];
        i = j;
    }
    if (prev < lam.ell) {
        out.a.push_back(0);
        out.b.push_back(lam.ell - prev);
    }
    return out;
}

inline GrPartition from_omega(const OmegaForm& om) {
    ZEL_REQUIRE(om.a.size() == om.b.size(), "from_omega: mismatched run lengths");
    std::vector<int> parts;
    int value = 0, r = 0, ell = 0;
    for (std::size_t i = 0; i < om.a.size(); ++i) {
        ZEL_REQUIRE(om.a[i] >= 0 && om.b[i] >= 0, "from_omega: negative count");
        value += om.b[i];
        ell = value;
        r += om.a[i];
        parts.insert(parts.end(), std::size_t(om.a[i]), value);
    }
    return GrPartition(std::move(parts), r, ell);
}

/// Containment of Young diagrams: every part of mu at least the matching
/// part of lam.  Both live in the same box.
inline bool partition_geq(const GrPartition& mu, const GrPartition& lam) {
    ZEL_REQUIRE(mu.r == lam.r && mu.ell == lam.ell, "partition_geq: ambient mismatch");
    for (int i = 0; i < mu.r; ++i)
        if (mu.parts[std::size_t(i)] < lam.parts[std::size_t(i)]) return false;
    return true;
}

/// Every partition in the r x ell box, ordered lexicographically.
inline std::vector<GrPartition> all_partitions(int r, int ell) {
    ZEL_REQUIRE(r >= 0 && ell >= 0, "all_partitions: negative box");
    std::vector<GrPartition> out;
    std::vector<int> cur(std::size_t(r), 0);
    while (true) {
        out.emplace_back(cur, r, ell);
        int i = r - 1;
        while (i >= 0 && cur[std::size_t(i)] == ell) --i;
        if (i < 0) break;
        int next = cur[std::size_t(i)] + 1;
        for (int j = i; j < r; ++j) cur[std::size_t(j)] = next;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Row sets.

/// A strictly increasing tuple 1 <= x_1 < ... < x_r <= n of row positions.
struct RowIndex {
    std::vector<int> entries;
    int n = 0;

    RowIndex(std::vector<int> e, int n_) : entries(std::move(e)), n(n_) {
        ZEL_REQUIRE(n >= 0, "RowIndex: negative ambient");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            ZEL_REQUIRE(entries[i] >= 1 && entries[i] <= n, "RowIndex: entry out of range");
            ZEL_REQUIRE(i == 0 || entries[i - 1] < entries[i],
                        "RowIndex: entries must increase strictly");
        }
    }

    auto operator<=>(const RowIndex&) const = default;

    std::vector<int> complement() const {
        std::vector<int> out;
        std::size_t at = 0;
        for (int v = 1; v <= n; ++v) {
            if (at < entries.size() && entries[at] == v)
                ++at;
            else
                out.push_back(v);
        }
        return out;
    }
};

/// x contains y as a set.
inline bool row_supseteq(const RowIndex& x, const RowIndex& y) {
    ZEL_REQUIRE(x.n == y.n, "row_supseteq: ambient mismatch");
    return std::includes(x.entries.begin(), x.entries.end(), y.entries.begin(), y.entries.end());
}

/// Componentwise dominance of equal-length row sets.
inline bool row_geq(const RowIndex& x, const RowIndex& y) {
    ZEL_REQUIRE(x.n == y.n, "row_geq: ambient mismatch");
    ZEL_REQUIRE(x.entries.size() == y.entries.size(), "row_geq: length mismatch");
    for (std::size_t i = 0; i < x.entries.size(); ++i)
        if (x.entries[i] < y.entries[i]) return false;
    return true;
}

/// x >= y' for some superset y' of y with |y'| = |x|.  Padding y with the
/// smallest available complement entries yields the componentwise-least
/// superset, so testing that single candidate decides the order.
inline bool row_succeq(const RowIndex& x, const RowIndex& y) {
    ZEL_REQUIRE(x.n == y.n, "row_succeq: ambient mismatch");
    ZEL_REQUIRE(x.entries.size() >= y.entries.size(), "row_succeq: x must be the longer tuple");
    std::vector<int> padded = y.entries;
    for (int c : y.complement()) {
        if (padded.size() == x.entries.size()) break;
        padded.push_back(c);
    }
    std::sort(padded.begin(), padded.end());
    return row_geq(x, RowIndex(std::move(padded), x.n));
}

// ---------------------------------------------------------------------------
// The two indexing maps.

/// sigma2(lambda) = (l_1 + 1, ..., l_r + r) inside R_r(r + ell).
inline RowIndex sigma2(const GrPartition& lam) {
    std::vector<int> e(static_cast<std::size_t>(lam.r));
    for (int i = 0; i < lam.r; ++i) e[std::size_t(i)] = lam.parts[std::size_t(i)] + i + 1;
    return RowIndex(std::move(e), lam.r + lam.ell);
}

inline GrPartition sigma2_inv(const RowIndex& x) {
    const int r = int(x.entries.size());
    std::vector<int> parts(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) parts[std::size_t(i)] = x.entries[std::size_t(i)] - i - 1;
    return GrPartition(std::move(parts), r, x.n - r);
}

/// The two-block generator set {s_i : i != r} of S_n.
inline std::set<int> two_block_J(int r, int n) {
    ZEL_REQUIRE(1 <= r && r < n, "two_block_J: r must cut the interval");
    std::set<int> J;
    for (int i = 1; i < n; ++i)
        if (i != r) J.insert(i);
    return J;
}

/// sigma1(w) = (w^{-1}(1), ..., w^{-1}(r)) for a minimal representative of
/// the two-block quotient.
inline RowIndex sigma1(const Permutation& w, int r) {
    const int n = w.n();
    ZEL_REQUIRE(is_min_coset_rep(w, two_block_J(r, n)),
                "sigma1: w is not a minimal two-block representative");
    const Permutation wi = w.inverse();
    std::vector<int> e(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) e[std::size_t(i) - 1] = wi(i);
    return RowIndex(std::move(e), n);
}

// ---------------------------------------------------------------------------
// Members of the family.

/// The standard base: begins 1..r+ell, the first r rows ending at k-1 and the
/// rest at k.  Separation k >= r + ell + 1 keeps every row nonempty.
inline Multisegment grassmann_base(int r, int ell, int k) {
    ZEL_REQUIRE(r >= 1 && ell >= 1, "grassmann_base: both blocks must be nonempty");
    ZEL_REQUIRE(k >= r + ell + 1, "grassmann_base: need k >= r + ell + 1");
    Multisegment out;
    for (int j = 1; j <= r + ell; ++j) out.add(Segment(j, j <= r ? k - 1 : k));
    return out;
}

namespace detail {
/// Validated shape of a two-valued base: strictly increasing begins, ends
/// k-1 then k along the begin order, everything fitting below k-1.
struct GrShape {
    std::vector<int> begins; // ascending
    int r = 0;
    int ell = 0;
};

inline GrShape gr_shape(const Multisegment& base, int k) {
    GrShape sh;
    for (const auto& row : rows_of(base).rows) {
        ZEL_REQUIRE(row.e == k - 1 || row.e == k, "grassmann: base ends must be k-1 or k");
        ZEL_REQUIRE(row.b <= k - 1, "grassmann: base begins must stay below k-1");
        if (row.e == k - 1) {
            ZEL_REQUIRE(sh.ell == 0, "grassmann: base ends must ascend with the begins");
            ++sh.r;
        } else {
            ++sh.ell;
        }
        sh.begins.push_back(row.b);
    }
    ZEL_REQUIRE(sh.r >= 1 && sh.ell >= 1, "grassmann: base needs both end values");
    return sh;
}
} // namespace detail

/// a_lambda: end k-1 exactly on the rows selected by sigma2(lambda), end k on
/// the rest.  The box of lambda may redistribute the base's row split (the
/// flattened families use r + r0 rows at k-1) but must exhaust its rows.
inline Multisegment multisegment_of_partition(const Multisegment& base, const GrPartition& lam,
                                              int k) {
    const auto sh = detail::gr_shape(base, k);
    const int n = int(sh.begins.size());
    ZEL_REQUIRE(lam.r + lam.ell == n, "multisegment_of_partition: box must exhaust the rows");
    const RowIndex x = sigma2(lam);
    Multisegment out;
    std::size_t at = 0;
    for (int j = 1; j <= n; ++j) {
        bool selected = at < x.entries.size() && x.entries[at] == j;
        if (selected) ++at;
        out.add(Segment(sh.begins[std::size_t(j) - 1], selected ? k - 1 : k));
    }
    return out;
}

/// mu_flat: drop the first r0 = r(mu) - r rows of x_mu and reindex in the
/// r x ell box.
inline GrPartition mu_flat(const GrPartition& mu, int r) {
    const int r0 = mu.r - r;
    ZEL_REQUIRE(r0 >= 0, "mu_flat: target rank exceeds the rank of mu");
    const RowIndex x = sigma2(mu);
    std::vector<int> rest(x.entries.begin() + r0, x.entries.end());
    return sigma2_inv(RowIndex(std::move(rest), x.n));
}

/// The sharp lift of a_{mu_flat}: the first r0 rows of x_mu end at k, the
/// remaining r at k-1, and the complement rows jump to k+1.
inline Multisegment sharp_lift(const GrPartition& mu, const Multisegment& base, int k) {
    const auto sh = detail::gr_shape(base, k);
    const int n = int(sh.begins.size());
    ZEL_REQUIRE(mu.r + mu.ell == n, "sharp_lift: box must exhaust the rows");
    const int r0 = mu.r - sh.r;
    ZEL_REQUIRE(r0 >= 0, "sharp_lift: mu has fewer rows at k-1 than the base");
    const RowIndex x = sigma2(mu);
    Multisegment out;
    for (int j = 0; j < mu.r; ++j)
        out.add(Segment(sh.begins[std::size_t(x.entries[std::size_t(j)]) - 1], j < r0 ? k : k - 1));
    for (int y : x.complement()) out.add(Segment(sh.begins[std::size_t(y) - 1], k + 1));
    return out;
}

/// n(a_mu, a_{mu_flat}): members of the extended family S(a_1) truncating to
/// a_{mu_flat} above the sharp lift.  a_1 extends the last ell - r0 rows of
/// the base to k+1.
inline i64 orbit_count_n(const GrPartition& mu, const Multisegment& base, int k) {
    const auto sh = detail::gr_shape(base, k);
    const int r0 = mu.r - sh.r;
    ZEL_REQUIRE(r0 >= 0 && r0 <= sh.ell, "orbit_count_n: row split out of range");
    const Multisegment a1 = parabolic_J_split(base, k, sh.ell - r0).a1;
    const Multisegment target = multisegment_of_partition(base, mu_flat(mu, sh.r), k);
    const Multisegment sharp = sharp_lift(mu, base, k);
    i64 count = 0;
    for (const auto& c : *below_set(a1))
        if (truncate_k(c, k + 1) == target && leq(sharp, c)) ++count;
    return count;
}

} // namespace zel

#endif // ZEL_GRASSMANN_HPP
