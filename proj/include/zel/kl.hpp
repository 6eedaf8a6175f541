// zel — Kazhdan–Lusztig polynomials and their parabolic quotients.
// SPDX-License-Identifier: MIT
#ifndef ZEL_KL_HPP
#define ZEL_KL_HPP

#include <utility>

#include "laurent.hpp"
#include "perm.hpp"
#include "poset.hpp"

namespace zel {

/*
  Inside this header (and everything layered on it: parabolic polynomials,
  the theta system, the derivative formulas) a Laurent exponent counts
  powers of q, not of v.  The two conventions never meet in one expression:
  the quantum side hands over plain integers (values at v = 1), and the
  Weyl side hands back plain integers (values at q = 1).

  kl_poly implements the classical recursion on ell(y) through left
  multiplication.  Pick a left descent s of y.  When s is not a descent of
  x the polynomial is unchanged by sliding x up: P_{x,y} = P_{sx,y}.  When
  it is,
      P_{x,y} = P_{sx,sy} + q P_{x,sy}
                - sum_z mu(z, sy) q^{(ell(y)-ell(z))/2} P_{x,z}
  over the z <= sy with left descent s, where mu(z, sy) is the coefficient
  of the top admissible degree (ell(sy)-ell(z)-1)/2 in P_{z,sy}.
*/

using QPoly = Laurent; // exponents in units of q

inline QPoly q_power(int k) { return Laurent::monomial(1, k); }

/// Render with q as the variable: "1+q^2", "2", "0".
inline std::string q_str(const QPoly& p) { return p.str("q"); }

namespace detail {
inline QPoly kl_poly_impl(const Permutation& x, const Permutation& y);

inline QPoly kl_poly_memo(const Permutation& x, const Permutation& y) {
    static Memo<std::pair<Permutation, Permutation>, QPoly> memo;
    const auto key = std::make_pair(x, y);
    if (auto hit = memo.find(key)) return *hit;
    QPoly value = kl_poly_impl(x, y);
    return *memo.store(key, std::move(value));
}

inline i64 mu_impl(const Permutation& x, const Permutation& y) {
    const int gap = y.length() - x.length();
    if (gap <= 0 || gap % 2 == 0) return 0;
    return kl_poly_memo(x, y).coeff((gap - 1) / 2);
}

inline QPoly kl_poly_impl(const Permutation& x, const Permutation& y) {
    if (x == y) return q_power(0);
    if (!bruhat_leq(x, y)) return QPoly{};
    int s = 0;
    for (int i = 1; i < y.n(); ++i)
        if (left_descent(y, i)) {
            s = i;
            break;
        }
    ZEL_CHECK(s != 0, "kl_poly: y below x yet without descents");
    const Permutation si = simple(s, y.n());
    const Permutation sy = si * y;
    const Permutation sx = si * x;
    if (!left_descent(x, s)) return kl_poly_memo(sx, y);

    QPoly p = kl_poly_memo(sx, sy) + q_power(1) * kl_poly_memo(x, sy);
    const int ly = y.length();
    for (const auto& z : *all_perms(y.n())) {
        if (!left_descent(z, s)) continue;
        const int lz = z.length();
        if (lz < x.length() || lz >= sy.length() || (ly - lz) % 2 != 0) continue;
        if (!bruhat_leq(x, z)) continue;
        const i64 m = mu_impl(z, sy);
        if (m == 0) continue;
        p = p + QPoly::monomial(-m, (ly - lz) / 2) * kl_poly_memo(x, z);
    }
    // Classical sanity: constant term 1 and degree at most (ell(y)-ell(x)-1)/2.
    ZEL_CHECK(!p.is_zero() && p.lo() == 0 && p.coeff(0) == 1, "kl_poly: constant term must be 1");
    ZEL_CHECK(2 * p.hi() <= ly - x.length() - 1, "kl_poly: degree bound violated");
    return p;
}
} // namespace detail

/// P_{x,y}(q); the zero polynomial when x is not below y.
inline QPoly kl_poly(const Permutation& x, const Permutation& y) {
    ZEL_REQUIRE(x.n() == y.n(), "kl_poly: rank mismatch");
    return detail::kl_poly_memo(x, y);
}

/// mu(x,y): coefficient of q^{(ell(y)-ell(x)-1)/2} in P_{x,y}.
inline i64 mu(const Permutation& x, const Permutation& y) {
    ZEL_REQUIRE(x.n() == y.n(), "mu: rank mismatch");
    return detail::mu_impl(x, y);
}

/// Parabolic polynomial attached to the quotient S_J \ S_n at minimal
/// representatives w, v: intersection cohomology on P_J\G pulls back to the
/// Schubert cells of the *maximal* coset representatives, so
/// P^{J,0}_{w,v} = P_{w_J w, w_J v}.
inline QPoly parabolic_kl(const std::set<int>& J, const Permutation& w, const Permutation& v) {
    ZEL_REQUIRE(w.n() == v.n(), "parabolic_kl: rank mismatch");
    ZEL_REQUIRE(is_min_coset_rep(w, J) && is_min_coset_rep(v, J),
                "parabolic_kl: arguments must be minimal coset representatives");
    const Permutation wj = longest_element(J, w.n());
    return kl_poly(wj * w, wj * v);
}

} // namespace zel

#endif // ZEL_KL_HPP
