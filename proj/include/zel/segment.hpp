// zel — segments, multisegments, weights, and the text grammar.
// SPDX-License-Identifier: MIT
#ifndef ZEL_SEGMENT_HPP
#define ZEL_SEGMENT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"

namespace zel {

/*
  A segment [b,e] is the interval of consecutive integers b, b+1, ..., e
  (so b <= e always; the empty segment is represented by absence, never by
  a Segment value).  A multisegment is a finite multiset of segments.

  The canonical total order on segments sorts by end ascending and, among
  equal ends, by begin descending.  It extends the dominance order in which
  a segment with smaller end comes first, and it is the order in which
  PBW-type monomials are written throughout the quantum layer, so every
  module in the library agrees on what an "ordered product" means.
*/
struct Segment {
    int b = 0, e = 0;

    Segment() = default;
    Segment(int begin, int end) : b(begin), e(end) {
        ZEL_REQUIRE(begin <= end, "segment must have begin <= end");
    }

    int length() const { return e - b + 1; }
    bool contains(int i) const { return b <= i && i <= e; }
    bool contains(const Segment& o) const { return b <= o.b && o.e <= e; }

    /// Canonical order: end ascending, then begin descending.
    std::strong_ordering operator<=>(const Segment& o) const {
        if (auto c = e <=> o.e; c != 0) return c;
        return o.b <=> b;
    }
    friend bool operator==(const Segment&, const Segment&) = default;

    std::string str() const {
        if (b == e) return "[" + std::to_string(b) + "]";
        return "[" + std::to_string(b) + "," + std::to_string(e) + "]";
    }
};

/// [i,j] |-> [-j,-i]; an order-reversing involution on the set of segments.
inline Segment reflect(const Segment& s) { return Segment(-s.e, -s.b); }

/// Weight function: for each integer i, how many segments contain i.
/// Stored densely over its support.
struct Weight {
    int lo = 0;
    std::vector<int> counts; // counts[i] is the multiplicity of lo+i

    bool is_zero() const { return counts.empty(); }
    int at(int i) const {
        if (is_zero() || i < lo || i >= lo + int(counts.size())) return 0;
        return counts[std::size_t(i - lo)];
    }
    int hi() const { return lo + int(counts.size()) - 1; }
    int total() const {
        int s = 0;
        for (int c : counts) s += c;
        return s;
    }

    void add(int i, int m) {
        if (m == 0) return;
        if (counts.empty()) {
            lo = i;
            counts = {0};
        } else if (i < lo) {
            counts.insert(counts.begin(), std::size_t(lo - i), 0);
            lo = i;
        } else if (i > hi()) {
            counts.resize(std::size_t(i - lo + 1), 0);
        }
        counts[std::size_t(i - lo)] += m;
        trim();
    }
    void add(const Segment& s, int m = 1) {
        for (int i = s.b; i <= s.e; ++i) add(i, m);
    }

    friend Weight operator-(Weight a, const Weight& b) {
        for (int i = 0; i < int(b.counts.size()); ++i) a.add(b.lo + i, -b.counts[std::size_t(i)]);
        return a;
    }
    friend Weight operator+(Weight a, const Weight& b) {
        for (int i = 0; i < int(b.counts.size()); ++i) a.add(b.lo + i, b.counts[std::size_t(i)]);
        return a;
    }
    bool nonnegative() const {
        return std::all_of(counts.begin(), counts.end(), [](int c) { return c >= 0; });
    }

    auto operator<=>(const Weight&) const = default;

    /// Cartan pairing of the simple root at i with this weight (type A):
    /// (alpha_i, w) = 2 w(i) - w(i-1) - w(i+1).
    int cartan_with_alpha(int i) const { return 2 * at(i) - at(i - 1) - at(i + 1); }

    static Weight chi(int i) {
        Weight w;
        w.add(i, 1);
        return w;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out = std::to_string(lo) + ":";
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(counts[i]);
        }
        return out;
    }

private:
    void trim() {
        std::size_t drop = 0;
        while (drop < counts.size() && counts[drop] == 0) ++drop;
        if (drop) {
            counts.erase(counts.begin(), counts.begin() + long(drop));
            lo += int(drop);
        }
        while (!counts.empty() && counts.back() == 0) counts.pop_back();
        if (counts.empty()) lo = 0;
    }
};

/// A multiset of segments kept sorted in the canonical order.
class Multisegment {
public:
    Multisegment() = default;
    explicit Multisegment(std::vector<Segment> segs) : s_(std::move(segs)) {
        std::sort(s_.begin(), s_.end());
    }
    Multisegment(std::initializer_list<Segment> segs) : Multisegment(std::vector<Segment>(segs)) {}

    const std::vector<Segment>& segments() const { return s_; }
    bool empty() const { return s_.empty(); }
    std::size_t size() const { return s_.size(); }

    /// Total number of integers covered, with multiplicity.
    int deg() const {
        int d = 0;
        for (const auto& s : s_) d += s.length();
        return d;
    }

    Weight weight() const {
        Weight w;
        for (const auto& s : s_) w.add(s);
        return w;
    }

    int count(const Segment& s) const {
        auto [first, last] = std::equal_range(s_.begin(), s_.end(), s);
        return int(last - first);
    }

    Multisegment& add(const Segment& s, int mult = 1) {
        for (int i = 0; i < mult; ++i) s_.insert(std::upper_bound(s_.begin(), s_.end(), s), s);
        return *this;
    }
    /// Remove one copy; precondition: present.
    Multisegment& remove(const Segment& s) {
        auto it = std::lower_bound(s_.begin(), s_.end(), s);
        ZEL_REQUIRE(it != s_.end() && *it == s, "segment not present in multisegment");
        s_.erase(it);
        return *this;
    }
    bool contains_all(const Multisegment& sub) const {
        for (const auto& [seg, m] : sub.grouped())
            if (count(seg) < m) return false;
        return true;
    }
    friend Multisegment operator+(Multisegment a, const Multisegment& b) {
        for (const auto& s : b.s_) a.add(s);
        return a;
    }
    /// Multiset difference; precondition: b is contained in a.
    friend Multisegment operator-(Multisegment a, const Multisegment& b) {
        for (const auto& s : b.s_) a.remove(s);
        return a;
    }

    /// Segments with the given end (the sub-multiset usually written a(k)).
    Multisegment ending_at(int k) const {
        Multisegment r;
        for (const auto& s : s_)
            if (s.e == k) r.add(s);
        return r;
    }
    Multisegment beginning_at(int k) const {
        Multisegment r;
        for (const auto& s : s_)
            if (s.b == k) r.add(s);
        return r;
    }

    /// Distinct segments with multiplicities, in canonical order.
    std::vector<std::pair<Segment, int>> grouped() const {
        std::vector<std::pair<Segment, int>> g;
        for (const auto& s : s_) {
            if (!g.empty() && g.back().first == s)
                ++g.back().second;
            else
                g.emplace_back(s, 1);
        }
        return g;
    }

    auto operator<=>(const Multisegment&) const = default;

    std::string str() const {
        if (s_.empty()) return "0";
        std::string out;
        for (const auto& [seg, m] : grouped()) {
            if (!out.empty()) out += "+";
            if (m > 1) out += std::to_string(m);
            out += seg.str();
        }
        return out;
    }

private:
    std::vector<Segment> s_;
};

inline Multisegment reflect(const Multisegment& a) {
    std::vector<Segment> out;
    out.reserve(a.size());
    for (const auto& s : a.segments()) out.push_back(reflect(s));
    return Multisegment(std::move(out));
}

/*
  Text grammar (the universal interchange format of the command line tool
  and the caches):

      msum  :=  term ('+' term)*          |  '0'
      term  :=  [mult] '[' int [',' int] ']'
      mult  :=  positive decimal integer
      int   :=  ['-'] decimal integer

  Examples: "2[1,3]+[2,5]+[4]", "[-2,0]", "0" (the empty multisegment).
  Whitespace is permitted around tokens.  Errors carry the offset of the
  offending character.
*/
class MsParser {
public:
    explicit MsParser(std::string_view text) : t_(text) {}

    Multisegment parse() {
        skip_ws();
        if (peek() == '0') {
            ++p_;
            skip_ws();
            if (p_ != t_.size()) throw parse_error("unexpected trailing input", p_);
            return {};
        }
        Multisegment a;
        term(a);
        skip_ws();
        while (p_ < t_.size() && peek() == '+') {
            ++p_;
            term(a);
            skip_ws();
        }
        if (p_ != t_.size()) throw parse_error("expected '+' or end of input", p_);
        return a;
    }

private:
    char peek() const { return p_ < t_.size() ? t_[p_] : '\0'; }
    void skip_ws() {
        while (p_ < t_.size() && (t_[p_] == ' ' || t_[p_] == '\t')) ++p_;
    }
    int integer() {
        skip_ws();
        std::size_t start = p_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++p_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error("expected an integer", start);
        long val = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            val = val * 10 + (peek() - '0');
            if (val > 1000000) throw parse_error("integer out of supported range", start);
            ++p_;
        }
        return int(neg ? -val : val);
    }
    void term(Multisegment& a) {
        skip_ws();
        int mult = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t start = p_;
            mult = integer();
            if (mult <= 0) throw parse_error("multiplicity must be positive", start);
        }
        skip_ws();
        if (peek() != '[') throw parse_error("expected '['", p_);
        ++p_;
        int b = integer();
        int e = b;
        skip_ws();
        if (peek() == ',') {
            ++p_;
            e = integer();
            skip_ws();
        }
        if (peek() != ']') throw parse_error("expected ']'", p_);
        std::size_t bracket = p_;
        ++p_;
        if (b > e) throw parse_error("segment must have begin <= end", bracket);
        a.add(Segment(b, e), mult);
    }

    std::string_view t_;
    std::size_t p_ = 0;
};

inline Multisegment parse_multisegment(std::string_view text) { return MsParser(text).parse(); }

} // namespace zel

#endif // ZEL_SEGMENT_HPP
