// zel — parabolic-type multisegments, the orbit map Phi, and the theta system.
// SPDX-License-Identifier: MIT
#ifndef ZEL_PHI_HPP
#define ZEL_PHI_HPP

#include <optional>
#include <tuple>

#include "kl.hpp"
#include "segment.hpp"

namespace zel {

/*
  A multisegment with pairwise distinct beginnings can be resolved into
  rows: row j owns the beginning b_j (ascending) and carries some end.  A
  *base* is such a multisegment whose ends are also weakly ascending along
  the rows; it is the identity point of its family.  For a permutation w,
  row j of Phi(w) keeps b_j but receives the end of row w(j):

      Phi_{J,0}(w) = sum_j [b_j, e_{w(j)}],

  where J collects the simple transpositions inside blocks of equal ends
  and w runs over the minimal representatives of S_J \ S_n.  A row may
  degenerate to [b, b-1]; such formally empty rows are kept here so that
  every family member sees the same ambient S_n, and are dropped only when
  converting back to a multisegment.

  On top of Phi this header implements the end-k surgery pieces used by the
  derivative formulas — the r0-splits a_1/a_2 of a base, the flat and sharp
  lifts v -> v_flat -> t_v — and the theta coefficients, solved from the
  unitriangular linear system

      sum_rho q^{ell(rho)} P^{J1,0}_{rho w, t_v} = sum_u theta(u, t_v) P^{J,0}_{w,u}

  (rho over minimal representatives of S_J1 \ S_J) by descending induction
  on the length of w.
*/

struct ProfileRow {
    int b = 0;
    int e = 0; // e == b-1 encodes a formally empty row
    bool empty() const { return e < b; }
    auto operator<=>(const ProfileRow&) const = default;
};

struct Profile {
    std::vector<ProfileRow> rows; // begins strictly ascending

    int n() const { return int(rows.size()); }

    Multisegment to_multisegment() const {
        Multisegment m;
        for (const auto& r : rows)
            if (!r.empty()) m.add(Segment(r.b, r.e));
        return m;
    }

    /// Simple transpositions inside blocks of equal ends (row order).
    std::set<int> block_set() const {
        std::set<int> J;
        for (int i = 1; i < n(); ++i)
            if (rows[std::size_t(i - 1)].e == rows[std::size_t(i)].e) J.insert(i);
        return J;
    }

    bool ends_ascending() const {
        for (int i = 1; i < n(); ++i)
            if (rows[std::size_t(i - 1)].e > rows[std::size_t(i)].e) return false;
        return true;
    }

    int count_end(int e) const {
        int c = 0;
        for (const auto& r : rows) c += (r.e == e);
        return c;
    }

    auto operator<=>(const Profile&) const = default;
};

/// Resolve a multisegment with distinct beginnings into rows, begin-ascending.
inline Profile rows_of(const Multisegment& a) {
    Profile p;
    for (const auto& s : a.segments()) p.rows.push_back({s.b, s.e});
    std::sort(p.rows.begin(), p.rows.end(), [](const ProfileRow& x, const ProfileRow& y) { return x.b < y.b; });
    for (int i = 1; i < p.n(); ++i)
        ZEL_REQUIRE(p.rows[std::size_t(i - 1)].b < p.rows[std::size_t(i)].b,
                    "profile: beginnings must be pairwise distinct");
    return p;
}

/// A base is row-resolvable with weakly ascending ends.
inline bool is_parabolic_type(const Multisegment& a) {
    std::set<int> begins;
    for (const auto& s : a.segments())
        if (!begins.insert(s.b).second) return false;
    return a.empty() || rows_of(a).ends_ascending();
}

inline Profile parabolic_base(const Multisegment& a) {
    Profile p = rows_of(a);
    ZEL_REQUIRE(p.ends_ascending(), "parabolic base: ends must be weakly ascending along rows");
    return p;
}

inline std::set<int> parabolic_J(const Multisegment& a) { return parabolic_base(a).block_set(); }

/// Row j keeps its beginning and receives the end of row w(j); nullopt when
/// some row would fall below its formal floor b-1.
inline std::optional<Profile> phi_profile(const Profile& base, const Permutation& w) {
    ZEL_REQUIRE(w.n() == base.n(), "phi: permutation rank must match row count");
    Profile out = base;
    for (int j = 1; j <= base.n(); ++j) {
        out.rows[std::size_t(j - 1)].e = base.rows[std::size_t(w(j) - 1)].e;
        if (out.rows[std::size_t(j - 1)].empty() &&
            out.rows[std::size_t(j - 1)].e != out.rows[std::size_t(j - 1)].b - 1)
            return std::nullopt;
    }
    return out;
}

inline Multisegment phi_map(const std::set<int>& J, const Permutation& w, const Multisegment& base) {
    Profile p = parabolic_base(base);
    ZEL_REQUIRE(J == p.block_set(), "phi_map: J must match the equal-end blocks of the base");
    ZEL_REQUIRE(is_min_coset_rep(w, J), "phi_map: w must be a minimal coset representative");
    auto out = phi_profile(p, w);
    ZEL_REQUIRE(out.has_value(), "phi_map: w sends some row below its beginning");
    return out->to_multisegment();
}

/// Invert Phi on a row profile: assign to row j the smallest unused base row
/// carrying its end.  The greedy choice is exactly the minimal coset
/// representative of the fibre.
inline Permutation phi_invert_profile(const Profile& base, const Profile& target) {
    ZEL_REQUIRE(base.n() == target.n(), "phi_invert: row count mismatch");
    const int n = base.n();
    std::vector<char> used(std::size_t(n) + 1, 0);
    std::vector<int> img(static_cast<std::size_t>(n), 0);
    for (int j = 1; j <= n; ++j) {
        ZEL_REQUIRE(target.rows[std::size_t(j - 1)].b == base.rows[std::size_t(j - 1)].b,
                    "phi_invert: row beginnings differ from the base");
        int pick = 0;
        for (int i = 1; i <= n; ++i)
            if (!used[std::size_t(i)] && base.rows[std::size_t(i - 1)].e == target.rows[std::size_t(j - 1)].e) {
                pick = i;
                break;
            }
        ZEL_REQUIRE(pick != 0, "phi_invert: target ends are not a rearrangement of the base ends");
        used[std::size_t(pick)] = 1;
        img[std::size_t(j - 1)] = pick;
    }
    return Permutation(std::move(img));
}

/// Invert Phi on a multisegment: base rows not present in the target are
/// reconstructed as formally empty rows.
inline Permutation phi_invert(const std::set<int>& J, const Multisegment& base, const Multisegment& target) {
    Profile pb = parabolic_base(base);
    ZEL_REQUIRE(J == pb.block_set(), "phi_invert: J must match the equal-end blocks of the base");
    std::map<int, int> end_of; // begin -> end among target rows
    for (const auto& s : target.segments()) {
        ZEL_REQUIRE(!end_of.count(s.b), "phi_invert: target beginnings must be pairwise distinct");
        end_of[s.b] = s.e;
    }
    Profile pt = pb;
    for (auto& r : pt.rows) {
        auto it = end_of.find(r.b);
        r.e = it == end_of.end() ? r.b - 1 : it->second;
        if (it != end_of.end()) end_of.erase(it);
    }
    ZEL_REQUIRE(end_of.empty(), "phi_invert: target has beginnings outside the base");
    return phi_invert_profile(pb, pt);
}

// --- the r0-splits of a base around end k ------------------------------------

struct ParabolicSplit {
    std::set<int> J1, J2;
    Profile p1, p2;
    Multisegment a1, a2;
};

/// a_1 pushes the r0 end-k rows with the largest beginnings out to k+1;
/// a_2 pulls the r0 end-k rows with the smallest beginnings back to k-1.
/// Requires that nothing ends at k+1, so the families stay disjoint.
inline ParabolicSplit parabolic_J_split(const Multisegment& a, int k, int r0) {
    Profile p = parabolic_base(a);
    const int lk = p.count_end(k);
    ZEL_REQUIRE(lk >= 1, "parabolic split: no row ends at k");
    ZEL_REQUIRE(p.count_end(k + 1) == 0, "parabolic split: a row already ends at k+1");
    ZEL_REQUIRE(r0 >= 0 && r0 <= lk, "parabolic split: r0 out of range");
    ParabolicSplit out;
    out.p1 = p;
    out.p2 = p;
    int seen = 0;
    for (int i = 0; i < p.n(); ++i) {
        if (p.rows[std::size_t(i)].e != k) continue;
        ++seen; // rows arrive begin-ascending
        if (seen > lk - r0) out.p1.rows[std::size_t(i)].e = k + 1;
        if (seen <= r0) out.p2.rows[std::size_t(i)].e = k - 1;
    }
    ZEL_CHECK(out.p1.ends_ascending() && out.p2.ends_ascending(), "parabolic split: rows lost their order");
    out.J1 = out.p1.block_set();
    out.J2 = out.p2.block_set();
    out.a1 = out.p1.to_multisegment();
    out.a2 = out.p2.to_multisegment();
    return out;
}

// --- flat and sharp lifts -----------------------------------------------------

/// Extend the r0 end-(k-1) rows with the smallest beginnings back to k.
inline Profile flat_profile(const Profile& av, int k, int r0) {
    Profile out = av;
    int done = 0;
    for (auto& r : out.rows) {
        if (done == r0) break;
        if (r.e == k - 1) {
            r.e = k;
            ++done;
        }
    }
    ZEL_REQUIRE(done == r0, "flat: fewer than r0 rows end at k-1");
    return out;
}

/// Extend to k+1 the rows that ended at k *before* the flat lift.
inline Profile sharp_profile(const Profile& av_flat, const Profile& av, int k) {
    ZEL_REQUIRE(av_flat.n() == av.n(), "sharp: profiles belong to different bases");
    Profile out = av_flat;
    for (int i = 0; i < av.n(); ++i)
        if (av.rows[std::size_t(i)].e == k) {
            ZEL_CHECK(out.rows[std::size_t(i)].e == k, "sharp: flat lift moved an end-k row");
            out.rows[std::size_t(i)].e = k + 1;
        }
    return out;
}

/// v ranges over the a_2(r0,k) family; v_flat names the minimal member of
/// the a family whose end-k truncations reach Phi(v).
inline Permutation w_flat(const Multisegment& a, int k, int r0, const Permutation& v) {
    const auto split = parabolic_J_split(a, k, r0);
    ZEL_REQUIRE(is_min_coset_rep(v, split.J2), "w_flat: v must be minimal for J2");
    auto av = phi_profile(split.p2, v);
    ZEL_REQUIRE(av.has_value(), "w_flat: v does not name a family member");
    return phi_invert_profile(parabolic_base(a), flat_profile(*av, k, r0));
}

/// t_v in the a_1(l_k - r0, k) family, defined by its profile: flatten
/// Phi(v), then push the surviving end-k rows out to k+1.
inline Permutation t_of_v(const Multisegment& a, int k, int r0, const Permutation& v) {
    const auto split = parabolic_J_split(a, k, r0);
    ZEL_REQUIRE(is_min_coset_rep(v, split.J2), "t_of_v: v must be minimal for J2");
    auto av = phi_profile(split.p2, v);
    ZEL_REQUIRE(av.has_value(), "t_of_v: v does not name a family member");
    const int lk = parabolic_base(a).count_end(k);
    const auto lift = parabolic_J_split(a, k, lk - r0);
    Profile sharped = sharp_profile(flat_profile(*av, k, r0), *av, k);
    return phi_invert_profile(lift.p1, sharped);
}

// --- the theta system ---------------------------------------------------------

namespace detail {
inline std::map<Permutation, QPoly> theta_solve(const std::set<int>& J, const std::set<int>& J1,
                                                const Permutation& tv) {
    const int n = tv.n();
    const auto rho_reps = subgroup_coset_reps(J1, J, n);
    std::vector<Permutation> reps = min_coset_reps(J, n);
    std::sort(reps.begin(), reps.end(), [](const Permutation& x, const Permutation& y) {
        return x.length() > y.length() || (x.length() == y.length() && x < y);
    });
    std::map<Permutation, QPoly> theta;
    for (const auto& u : reps) {
        QPoly lhs;
        for (const auto& rho : rho_reps)
            lhs = lhs + q_power(rho.length()) * parabolic_kl(J1, rho * u, tv);
        for (const auto& [u2, th] : theta)
            if (u2.length() > u.length() && !th.is_zero())
                lhs = lhs - th * parabolic_kl(J, u, u2);
        theta.emplace(u, std::move(lhs));
    }
    return theta;
}
} // namespace detail

/// theta_J^{J1}(w, t_v): the coefficient system of the parabolic derivative
/// formula, solved once per (J, J1, t_v) and memoized.
inline QPoly theta(const std::set<int>& J, const std::set<int>& J1, const Permutation& w,
                   const Permutation& tv) {
    ZEL_REQUIRE(w.n() == tv.n(), "theta: rank mismatch");
    ZEL_REQUIRE(is_min_coset_rep(w, J), "theta: w must be minimal for J");
    ZEL_REQUIRE(is_min_coset_rep(tv, J1), "theta: t_v must be minimal for J1");
    for (int s : J1) ZEL_REQUIRE(J.count(s), "theta: J1 must sit inside J");
    using Key = std::tuple<std::set<int>, std::set<int>, Permutation>;
    static detail::Memo<Key, std::map<Permutation, QPoly>> memo;
    const Key key{J, J1, tv};
    auto table = memo.find(key);
    if (!table) table = memo.store(key, detail::theta_solve(J, J1, tv));
    auto it = table->find(w);
    ZEL_CHECK(it != table->end(), "theta: w missing from the solved table");
    return it->second;
}

/// One term of the parabolic derivative formula.
struct ParabolicTerm {
    Permutation v;
    Multisegment label; // Phi(v) in the a_2(r0,k) family
    int r0 = 0;
    QPoly coeff; // theta_J^{J1(l_k - r0, k)}(w, t_v)
};

/// All terms of D^k applied to the member w of the family of the base a:
/// for every split depth r0 and every valid v in the a_2(r0,k) family, the
/// multiplicity of L_{Phi(v)} is theta(w, t_v) at q = 1.
inline std::vector<ParabolicTerm> parabolic_derivative_terms(const Multisegment& a, const Permutation& w,
                                                             int k) {
    Profile base = parabolic_base(a);
    const std::set<int> J = base.block_set();
    ZEL_REQUIRE(is_min_coset_rep(w, J), "parabolic derivative: w must be minimal for J");
    const int lk = base.count_end(k);
    ZEL_REQUIRE(lk >= 1 && base.count_end(k + 1) == 0,
                "parabolic derivative: base must end at k and avoid k+1");
    std::vector<ParabolicTerm> out;
    for (int r0 = 0; r0 <= lk; ++r0) {
        const auto split2 = parabolic_J_split(a, k, r0);
        const auto split1 = parabolic_J_split(a, k, lk - r0);
        for (const auto& v : min_coset_reps(split2.J2, base.n())) {
            auto av = phi_profile(split2.p2, v);
            if (!av) continue; // v names no family member
            const Permutation tv = t_of_v(a, k, r0, v);
            QPoly th = theta(J, split1.J1, w, tv);
            if (th.is_zero()) continue;
            out.push_back({v, av->to_multisegment(), r0, std::move(th)});
        }
    }
    return out;
}

} // namespace zel

#endif // ZEL_PHI_HPP
