// zel — symmetric groups: one-line permutations, Bruhat order, parabolic data.
// SPDX-License-Identifier: MIT
#ifndef ZEL_PERM_HPP
#define ZEL_PERM_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace zel {

/*
  Permutations of {1..n} in one-line notation.  Composition is the usual
  function composition, (x*y)(i) = x(y(i)), so simple(i) * w swaps the
  *values* i and i+1 inside the one-line word of w — that is what "left
  multiplication" means everywhere below.  Subsets J of {1..n-1} name sets
  of simple transpositions and cut out parabolic subgroups S_J; the minimal
  representatives of the left quotient S_J \ S_n are the permutations
  without a left descent in J.
*/
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            ZEL_REQUIRE(v >= 1 && v <= int(img_.size()), "permutation image out of range");
            ZEL_REQUIRE(!seen[std::size_t(v - 1)], "permutation image repeated");
            seen[std::size_t(v - 1)] = 1;
        }
    }

    static Permutation identity(int n) {
        ZEL_REQUIRE(n >= 0, "identity: negative rank");
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 1);
        return Permutation(std::move(img));
    }

    int n() const { return int(img_.size()); }
    int operator()(int i) const {
        ZEL_REQUIRE(i >= 1 && i <= n(), "permutation applied outside {1..n}");
        return img_[std::size_t(i - 1)];
    }
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const {
        std::vector<int> inv(img_.size());
        for (int i = 1; i <= n(); ++i) inv[std::size_t(img_[std::size_t(i - 1)] - 1)] = i;
        return Permutation(std::move(inv));
    }

    /// Coxeter length = number of inversions.
    int length() const {
        int inv = 0;
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j)
                if (img_[std::size_t(i)] > img_[std::size_t(j)]) ++inv;
        return inv;
    }

    friend Permutation operator*(const Permutation& x, const Permutation& y) {
        ZEL_REQUIRE(x.n() == y.n(), "permutation product: rank mismatch");
        std::vector<int> img(x.img_.size());
        for (int i = 1; i <= x.n(); ++i) img[std::size_t(i - 1)] = x(y(i));
        return Permutation(std::move(img));
    }

    auto operator<=>(const Permutation&) const = default;

    std::string str() const {
        std::ostringstream os;
        for (int i = 0; i < n(); ++i) os << (i ? " " : "") << img_[std::size_t(i)];
        return os.str();
    }

private:
    std::vector<int> img_;
};

/// The simple transposition sigma_i in S_n (swaps i and i+1).
inline Permutation simple(int i, int n) {
    ZEL_REQUIRE(i >= 1 && i < n, "simple reflection index out of range");
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::swap(img[std::size_t(i - 1)], img[std::size_t(i)]);
    return Permutation(std::move(img));
}

/// One-line notation parser: "3 1 2 4" (whitespace separated).
inline Permutation parse_permutation(const std::string& text) {
    std::istringstream is(text);
    std::vector<int> img;
    int v = 0;
    while (is >> v) img.push_back(v);
    ZEL_REQUIRE(!is.fail() || is.eof(), "permutation parse: not an integer list");
    return Permutation(std::move(img));
}

/// Left descent: ell(sigma_i w) < ell(w), i.e. i appears after i+1 in the word.
inline bool left_descent(const Permutation& w, int i) {
    ZEL_REQUIRE(i >= 1 && i < w.n(), "left_descent: index out of range");
    return w.inverse()(i) > w.inverse()(i + 1);
}

/// Right descent: ell(w sigma_i) < ell(w).
inline bool right_descent(const Permutation& w, int i) {
    ZEL_REQUIRE(i >= 1 && i < w.n(), "right_descent: index out of range");
    return w(i) > w(i + 1);
}

/// Bruhat order via the rank-matrix (dot) criterion:
/// x <= y iff #{ k <= i : x(k) >= j } <= #{ k <= i : y(k) >= j } for all i, j.
inline bool bruhat_leq(const Permutation& x, const Permutation& y) {
    ZEL_REQUIRE(x.n() == y.n(), "bruhat_leq: rank mismatch");
    const int n = x.n();
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            int cx = 0, cy = 0;
            for (int k = 1; k <= i; ++k) {
                if (x(k) >= j) ++cx;
                if (y(k) >= j) ++cy;
            }
            if (cx > cy) return false;
        }
    }
    return true;
}

/// All of S_n in lexicographic one-line order; memoized per n.
inline std::shared_ptr<const std::vector<Permutation>> all_perms(int n) {
    static std::mutex m;
    static std::map<int, std::shared_ptr<const std::vector<Permutation>>> table;
    {
        std::lock_guard lock(m);
        auto it = table.find(n);
        if (it != table.end()) return it->second;
    }
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    auto sp = std::make_shared<const std::vector<Permutation>>(std::move(out));
    std::lock_guard lock(m);
    return table.emplace(n, sp).first->second;
}

/// Longest element of the parabolic subgroup S_J: reverse every maximal run
/// of consecutive indices in J.
inline Permutation longest_element(const std::set<int>& J, int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    int i = 1;
    while (i < n) {
        if (!J.count(i)) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && J.count(j)) ++j; // run i..j-1 acts on positions i..j
        std::reverse(img.begin() + (i - 1), img.begin() + j);
        i = j + 1;
    }
    for (int s : J) ZEL_REQUIRE(s >= 1 && s < n, "longest_element: index out of range");
    return Permutation(std::move(img));
}

/// Membership in the parabolic subgroup S_J: w moves points only inside the
/// intervals carved out by the runs of J.
inline bool in_parabolic_subgroup(const Permutation& w, const std::set<int>& J) {
    const int n = w.n();
    std::vector<int> block(std::size_t(n) + 1);
    int id = 0;
    for (int i = 1; i <= n; ++i) {
        block[std::size_t(i)] = id;
        if (!J.count(i)) ++id; // sigma_i absent: i and i+1 live in different blocks
    }
    for (int i = 1; i <= n; ++i)
        if (block[std::size_t(w(i))] != block[std::size_t(i)]) return false;
    return true;
}

/// Minimal representatives of S_J \ S_n: no left descent inside J.
inline std::vector<Permutation> min_coset_reps(const std::set<int>& J, int n) {
    std::vector<Permutation> out;
    for (const auto& w : *all_perms(n)) {
        bool rep = true;
        for (int s : J) {
            ZEL_REQUIRE(s >= 1 && s < n, "min_coset_reps: index out of range");
            if (left_descent(w, s)) {
                rep = false;
                break;
            }
        }
        if (rep) out.push_back(w);
    }
    return out;
}

inline bool is_min_coset_rep(const Permutation& w, const std::set<int>& J) {
    for (int s : J)
        if (left_descent(w, s)) return false;
    return true;
}

/// Minimal-length representatives of the right cosets S_J1 \ S_J (J1 ⊆ J):
/// elements of S_J without a left descent in J1.
inline std::vector<Permutation> subgroup_coset_reps(const std::set<int>& J1, const std::set<int>& J, int n) {
    for (int s : J1) ZEL_REQUIRE(J.count(s), "subgroup_coset_reps: J1 must sit inside J");
    std::vector<Permutation> out;
    for (const auto& w : *all_perms(n))
        if (in_parabolic_subgroup(w, J) && is_min_coset_rep(w, J1)) out.push_back(w);
    return out;
}

/// Generator sets rendered as "s1,s3"; the empty set as "-".
inline std::string j_set_str(const std::set<int>& J) {
    if (J.empty()) return "-";
    std::string out;
    for (int s : J) {
        if (!out.empty()) out += ',';
        out += 's' + std::to_string(s);
    }
    return out;
}

inline std::set<int> parse_j_set(const std::string& text) {
    std::set<int> J;
    if (text == "-" || text.empty()) return J;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(pos, end - pos);
        ZEL_REQUIRE(tok.size() >= 2 && (tok[0] == 's' || tok[0] == 'S'),
                    "parse_j_set: expected tokens like \"s2\", got \"" + tok + "\"");
        int idx = 0;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            ZEL_REQUIRE(tok[i] >= '0' && tok[i] <= '9',
                        "parse_j_set: bad generator index in \"" + tok + "\"");
            idx = idx * 10 + (tok[i] - '0');
        }
        ZEL_REQUIRE(idx >= 1, "parse_j_set: generator index must be positive");
        J.insert(idx);
        pos = end + 1;
    }
    return J;
}

} // namespace zel

#endif // ZEL_PERM_HPP
