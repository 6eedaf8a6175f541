// zel — exact Laurent-polynomial arithmetic over Z in one variable.
// SPDX-License-Identifier: MIT
#ifndef ZEL_LAURENT_HPP
#define ZEL_LAURENT_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace zel {

using i64 = std::int64_t;

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    ZEL_CHECK(!__builtin_add_overflow(a, b, &r), "integer overflow in +");
    return r;
}
inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    ZEL_CHECK(!__builtin_mul_overflow(a, b, &r), "integer overflow in *");
    return r;
}

/// Laurent polynomial with integer coefficients, stored densely.  The
/// variable is called v throughout the quantum layer (with q = v^2); the
/// Kazhdan-Lusztig layer reuses the same type with exponents read in units
/// of q.  Exact arithmetic only: division is available solely in its exact
/// form and throws when a remainder appears.
class Laurent {
public:
    Laurent() = default;
    Laurent(i64 constant) { // NOLINT: implicit by design
        if (constant != 0) c_ = {constant};
    }

    static Laurent monomial(i64 coeff, int exp) {
        Laurent r;
        if (coeff != 0) {
            r.lo_ = exp;
            r.c_ = {coeff};
        }
        return r;
    }
    static Laurent v_pow(int exp) { return monomial(1, exp); }

    bool is_zero() const { return c_.empty(); }
    /// Lowest / highest exponent with nonzero coefficient; zero poly has none.
    int lo() const {
        ZEL_CHECK(!is_zero(), "lo() of zero polynomial");
        return lo_;
    }
    int hi() const {
        ZEL_CHECK(!is_zero(), "hi() of zero polynomial");
        return lo_ + int(c_.size()) - 1;
    }
    i64 coeff(int exp) const {
        if (is_zero() || exp < lo_ || exp > hi()) return 0;
        return c_[std::size_t(exp - lo_)];
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    std::strong_ordering operator<=>(const Laurent& o) const {
        if (is_zero() != o.is_zero()) return is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = lo_ <=> o.lo_; c != 0) return c;
        return c_ <=> o.c_;
    }

    Laurent& operator+=(const Laurent& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
        std::vector<i64> nc(std::size_t(nhi - nlo + 1), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) nc[std::size_t(lo_ - nlo) + i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            auto& slot = nc[std::size_t(o.lo_ - nlo) + i];
            slot = checked_add(slot, o.c_[i]);
        }
        lo_ = nlo;
        c_ = std::move(nc);
        trim();
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += -o; }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Laurent r;
        r.lo_ = a.lo_ + b.lo_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = checked_add(r.c_[i + j], checked_mul(a.c_[i], b.c_[j]));
        }
        r.trim();
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    /// Multiply by v^exp.
    Laurent shifted(int exp) const {
        Laurent r = *this;
        if (!r.is_zero()) r.lo_ += exp;
        return r;
    }

    /// The bar involution v -> v^{-1}.
    Laurent bar() const {
        Laurent r = *this;
        if (r.is_zero()) return r;
        std::reverse(r.c_.begin(), r.c_.end());
        r.lo_ = -hi();
        return r;
    }

    /// Exact division; nullopt when the division leaves a remainder.
    std::optional<Laurent> try_div(const Laurent& d) const {
        ZEL_CHECK(!d.is_zero(), "division by zero polynomial");
        if (is_zero()) return Laurent{};
        if (c_.size() < d.c_.size()) return std::nullopt;
        std::vector<i64> rem = c_;
        std::vector<i64> quot(c_.size() - d.c_.size() + 1, 0);
        const i64 lead = d.c_.back();
        for (std::size_t k = quot.size(); k-- > 0;) {
            i64 top = rem[k + d.c_.size() - 1];
            if (top == 0) continue;
            if (top % lead != 0) return std::nullopt;
            i64 q = top / lead;
            quot[k] = q;
            for (std::size_t j = 0; j < d.c_.size(); ++j)
                rem[k + j] = checked_add(rem[k + j], -checked_mul(q, d.c_[j]));
        }
        for (i64 x : rem)
            if (x != 0) return std::nullopt;
        Laurent result;
        result.lo_ = lo_ - d.lo_;
        result.c_ = std::move(quot);
        result.trim();
        return result;
    }
    Laurent exact_div(const Laurent& d) const {
        auto q = try_div(d);
        ZEL_CHECK(q.has_value(), "division was not exact");
        return *q;
    }

    /// Value at v = 1 (equivalently q = 1 for the KL layer).
    i64 at_one() const {
        i64 s = 0;
        for (i64 x : c_) s = checked_add(s, x);
        return s;
    }

    bool nonnegative() const {
        return std::all_of(c_.begin(), c_.end(), [](i64 x) { return x >= 0; });
    }
    /// True when the polynomial lies in v·Z[v] (zero counts as inside).
    bool in_v_zv() const { return is_zero() || lo_ >= 1; }

    /// Terms with strictly positive exponent.
    Laurent positive_part() const {
        Laurent r;
        if (is_zero() || hi() < 1) return r;
        int start = std::max(lo_, 1);
        r.lo_ = start;
        r.c_.assign(c_.begin() + (start - lo_), c_.end());
        r.trim();
        return r;
    }

    std::string str(const std::string& var = "v") const {
        if (is_zero()) return "0";
        std::string out;
        for (int e = hi(); e >= lo_; --e) {
            i64 a = coeff(e);
            if (a == 0) continue;
            if (!out.empty()) {
                out += (a > 0) ? " + " : " - ";
                if (a < 0) a = -a;
            } else if (a < 0) {
                out += "-";
                a = -a;
            }
            if (e == 0) {
                out += std::to_string(a);
            } else {
                if (a != 1) out += std::to_string(a) + "*";
                out += var;
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    /// Dense coefficient access for serialization: (lo, coefficients).
    const std::vector<i64>& raw_coeffs() const { return c_; }
    int raw_lo() const { return lo_; }
    static Laurent from_raw(int lo, std::vector<i64> coeffs) {
        Laurent r;
        r.lo_ = lo;
        r.c_ = std::move(coeffs);
        r.trim();
        return r;
    }

private:
    void trim() {
        std::size_t drop = 0;
        while (drop < c_.size() && c_[drop] == 0) ++drop;
        if (drop) {
            c_.erase(c_.begin(), c_.begin() + long(drop));
            lo_ += int(drop);
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) lo_ = 0;
    }

    int lo_ = 0;          // exponent of c_[0]
    std::vector<i64> c_;  // zero poly <=> empty; otherwise ends are nonzero
};

// --- small combinatorial helpers -------------------------------------------

inline i64 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    i64 r = 1;
    for (int i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
    return r;
}

/// Balanced quantum integer [m]_v = v^{m-1} + v^{m-3} + ... + v^{1-m}.
inline Laurent q_int(int m) {
    Laurent r;
    for (int e = 1 - m; e <= m - 1; e += 2) r += Laurent::monomial(1, e);
    return r;
}

inline Laurent q_factorial(int m) {
    Laurent r{1};
    for (int i = 2; i <= m; ++i) r *= q_int(i);
    return r;
}

/// h_k = (1-q)(1-q^2)...(1-q^k) written in v (q = v^2).
inline Laurent h_poly(int k) {
    Laurent r{1};
    for (int i = 1; i <= k; ++i) r *= Laurent{1} - Laurent::v_pow(2 * i);
    return r;
}

/// (1-q)^d in v.
inline Laurent one_minus_q_pow(int d) {
    Laurent base = Laurent{1} - Laurent::v_pow(2), r{1};
    for (int i = 0; i < d; ++i) r *= base;
    return r;
}

/// Exact rational function num/den of v.  Only the handful of operations the
/// Kashiwara pairing needs; never reduced to lowest terms.
struct LaurentFraction {
    Laurent num, den{1};

    bool is_zero() const { return num.is_zero(); }
    friend LaurentFraction operator+(const LaurentFraction& a, const LaurentFraction& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend LaurentFraction operator*(const LaurentFraction& a, const LaurentFraction& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend bool operator==(const LaurentFraction& a, const LaurentFraction& b) {
        return a.num * b.den == b.num * a.den;
    }
    /// If the fraction is an exact Laurent polynomial, return it.
    std::optional<Laurent> as_laurent() const { return num.try_div(den); }

    /// Laurent-series coefficients of num/den at v = 0, for exponents up to
    /// |hi| inclusive.  Requires den != 0; the series exists because the
    /// lowest coefficient of den is invertible over Z in all our uses
    /// (it is +-1) — checked.
    std::vector<std::pair<int, i64>> series_up_to(int hi) const {
        ZEL_CHECK(!den.is_zero(), "series of fraction with zero denominator");
        std::vector<std::pair<int, i64>> out;
        if (num.is_zero()) return out;
        const i64 d0 = den.coeff(den.lo());
        ZEL_CHECK(d0 == 1 || d0 == -1, "denominator lowest coefficient not a unit");
        int start = num.lo() - den.lo();
        if (start > hi) return out;
        // long division in ascending order
        Laurent rem = num;
        for (int e = start; e <= hi; ++e) {
            i64 c = rem.coeff(e + den.lo());
            i64 q = c / d0;
            if (q != 0) {
                out.emplace_back(e, q);
                rem -= Laurent::monomial(q, e) * den;
            }
            if (rem.is_zero()) break;
        }
        return out;
    }
};

} // namespace zel

#endif // ZEL_LAURENT_HPP
