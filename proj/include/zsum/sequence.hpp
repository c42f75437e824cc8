#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

/// A finite multiset of group elements (the free abelian monoid over G),
/// stored as a multiplicity vector indexed by canonical element order.
/// Equal multisets compare equal and print identically, which makes the
/// multiplicity vector the canonical form used everywhere for dedup.
///
/// Value type: copies are independent, const operations are pure.
class Sequence {
public:
    explicit Sequence(Group g)
        : group_(std::move(g)), counts_(group_.size(), 0) {}

    const Group& group() const { return group_; }
    std::uint32_t length() const { return length_; }
    bool empty() const { return length_ == 0; }

    /// v_g: multiplicity of an element (0 when absent).
    std::uint32_t multiplicity(Elem g) const { return counts_[g]; }

    /// h(S): maximum multiplicity.
    std::uint32_t max_multiplicity() const {
        std::uint16_t m = 0;
        for (std::uint16_t c : counts_) m = std::max(m, c);
        return m;
    }

    /// sigma(S); the empty sum is 0.
    Elem sum() const { return sum_; }

    std::vector<Elem> support() const {
        std::vector<Elem> out;
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (counts_[e] != 0) out.push_back(e);
        }
        return out;
    }

    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (counts_[e] != 0) m |= std::uint64_t{1} << e;
        }
        return m;
    }

    Sequence& push(Elem g, std::uint32_t k = 1) {
        if (counts_[g] + static_cast<std::uint64_t>(k) > 60'000) {
            throw DomainError("element multiplicity out of range");
        }
        counts_[g] = static_cast<std::uint16_t>(counts_[g] + k);
        length_ += k;
        sum_ = group_.add(sum_, group_.times(g, k));
        return *this;
    }

    Sequence& pop(Elem g, std::uint32_t k = 1) {
        if (counts_[g] < k) throw DomainError("pop exceeds multiplicity");
        counts_[g] = static_cast<std::uint16_t>(counts_[g] - k);
        length_ -= k;
        sum_ = group_.sub(sum_, group_.times(g, k));
        return *this;
    }

    /// Multiset union (the monoid product in F(G)).
    Sequence plus(const Sequence& o) const {
        require_same(o);
        Sequence out(*this);
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (o.counts_[e] != 0) out.push(e, o.counts_[e]);
        }
        return out;
    }

    /// -S: multiplicity of -g equals v_g(S).
    Sequence negated() const {
        Sequence out(group_);
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (counts_[e] != 0) out.push(group_.neg(e), counts_[e]);
        }
        return out;
    }

    /// Subsequence divisibility: v_g(this) <= v_g(s) for all g.
    bool divides(const Sequence& s) const {
        require_same(s);
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (counts_[e] > s.counts_[e]) return false;
        }
        return true;
    }

    /// Sigma(S) as a bitmask over element indices, via dynamic programming
    /// over the support: per element, grow the reachable set one copy at a
    /// time until it saturates. O(|G| * |S|), never exponential.
    std::uint64_t subsum_mask() const {
        std::uint64_t reach = 0;
        for (Elem e = 0; e < counts_.size(); ++e) {
            for (std::uint32_t c = counts_[e]; c > 0; --c) {
                std::uint64_t next = reach | (std::uint64_t{1} << e);
                for (std::uint64_t rest = reach; rest != 0; rest &= rest - 1) {
                    Elem x = static_cast<Elem>(std::countr_zero(rest));
                    next |= std::uint64_t{1} << group_.add(x, e);
                }
                if (next == reach) break;
                reach = next;
            }
        }
        return reach;
    }

    std::vector<Elem> subsums() const {
        std::vector<Elem> out;
        for (std::uint64_t m = subsum_mask(); m != 0; m &= m - 1) {
            out.push_back(static_cast<Elem>(std::countr_zero(m)));
        }
        return out;
    }

    /// 0 not in Sigma(S). The empty sequence is zero-sum free; any sequence
    /// containing 0 is not.
    bool zero_sum_free() const { return (subsum_mask() & 1) == 0; }

    /// Canonical literal: "(r1,...,rk)^m" terms in canonical element order,
    /// joined by single spaces, exponent omitted when 1. Empty sequence
    /// prints as the empty string.
    std::string to_literal() const {
        std::string out;
        for (Elem e = 0; e < counts_.size(); ++e) {
            if (counts_[e] == 0) continue;
            if (!out.empty()) out += ' ';
            out += '(';
            auto res = group_.residues(e);
            for (std::size_t i = 0; i < res.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(res[i]);
            }
            out += ')';
            if (counts_[e] > 1) {
                out += '^';
                out += std::to_string(counts_[e]);
            }
        }
        return out;
    }

    /// Parses the literal grammar above. Residues may be negative or
    /// unreduced; they are reduced mod the invariant factors.
    static Sequence parse(const Group& g, std::string_view text);

    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.counts_ == b.counts_;
    }
    /// Canonical total order on sequences over one group (lexicographic on
    /// the multiplicity vector).
    friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
        return a.counts_ <=> b.counts_;
    }

    std::span<const std::uint16_t> counts() const { return counts_; }

private:
    void require_same(const Sequence& o) const {
        if (!group_.same_spec(o.group_)) {
            throw SpecMismatchError("sequences belong to different groups");
        }
    }

    Group group_;
    std::vector<std::uint16_t> counts_;
    std::uint32_t length_ = 0;
    Elem sum_ = 0;
};

inline Sequence Sequence::parse(const Group& g, std::string_view text) {
    Sequence out(g);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '(' in sequence literal");
        ++pos;
        std::vector<long long> res;
        while (true) {
            skip_ws();
            bool negative = false;
            if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                negative = text[pos] == '-';
                ++pos;
            }
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
                throw ParseError("expected integer residue in sequence literal");
            }
            long long v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                if (v > 1'000'000'000) throw ParseError("residue out of range");
                ++pos;
            }
            res.push_back(negative ? -v : v);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
        if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')' in sequence literal");
        ++pos;
        std::uint32_t mult = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
                throw ParseError("expected exponent after '^'");
            }
            std::uint64_t m = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                m = m * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                if (m > 60'000) throw ParseError("exponent out of range");
                ++pos;
            }
            if (m == 0) throw ParseError("exponent must be positive");
            mult = static_cast<std::uint32_t>(m);
        }
        out.push(g.from_residues(res), mult);
        skip_ws();
    }
    return out;
}

inline Elem sigma(const Sequence& s) { return s.sum(); }

inline bool is_zero_sum_free(const Sequence& s) { return s.zero_sum_free(); }

inline Sequence negate(const Sequence& s) { return s.negated(); }

inline bool divides(const Sequence& t, const Sequence& s) { return t.divides(s); }

/// s with t removed; requires t | s.
inline Sequence quotient(const Sequence& s, const Sequence& t) {
    if (!t.divides(s)) throw DomainError("quotient of a non-divisor");
    Sequence out(s);
    for (Elem e = 0; e < s.group().size(); ++e) {
        if (t.multiplicity(e) != 0) out.pop(e, t.multiplicity(e));
    }
    return out;
}

/// Image sequence under an automorphism: v_{phi(g)}(out) = v_g(s).
inline Sequence apply(const Automorphism& phi, const Sequence& s) {
    Sequence out(s.group());
    for (Elem e = 0; e < s.group().size(); ++e) {
        if (s.multiplicity(e) != 0) out.push(phi(e), s.multiplicity(e));
    }
    return out;
}

} // namespace zsum
