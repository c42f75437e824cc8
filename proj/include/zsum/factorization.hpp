#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "zsum/atoms.hpp"

namespace zsum {

/// A factorization of a block into atoms: (atom index, multiplicity) pairs
/// with ascending indices into the AtomSet used to produce it.
struct Factorization {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parts;

    std::uint32_t length() const {
        std::uint32_t l = 0;
        for (auto& [idx, mult] : parts) l += mult;
        return l;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
    friend auto operator<=>(const Factorization&, const Factorization&) = default;
};

/// Z(B) together with L(B).
struct FactorizationSet {
    Sequence block;
    std::vector<Factorization> items;    // deterministic (lexicographic) order
    std::vector<std::uint32_t> lengths;  // sorted, distinct
};

namespace detail {

/// Core enumeration: multisets of atoms with product `rem`, visited once by
/// choosing atom indices in non-decreasing order. `candidates` holds the
/// atom indices dividing the original block; divisibility against the
/// current remainder is re-checked as the recursion descends.
struct FactorizationSearch {
    const AtomSet& atoms;
    const std::vector<std::uint32_t>& candidates;
    Deadline deadline;
    std::uint64_t node_budget_tick = 0;
    std::uint64_t leaves = 0;
    std::uint64_t max_leaves;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    const std::function<void(const FactorizationSearch&)>& on_leaf;

    void run(std::vector<std::uint16_t>& rem, std::uint32_t rem_len, std::size_t from) {
        if ((++node_budget_tick & 0xFFF) == 0) deadline.check("factorization search");
        if (rem_len == 0) {
            if (++leaves > max_leaves) {
                throw ResourceError("factorization count cap exceeded");
            }
            on_leaf(*this);
            return;
        }
        for (std::size_t ci = from; ci < candidates.size(); ++ci) {
            const std::uint32_t ai = candidates[ci];
            if (atoms.length(ai) > rem_len) continue;
            const Sequence& a = atoms.atom(ai);
            bool ok = true;
            for (Elem e = 0; e < rem.size() && ok; ++e) {
                ok = a.multiplicity(e) <= rem[e];
            }
            if (!ok) continue;
            for (Elem e = 0; e < rem.size(); ++e) {
                rem[e] = static_cast<std::uint16_t>(rem[e] - a.multiplicity(e));
            }
            if (!stack.empty() && stack.back().first == ai) {
                ++stack.back().second;
            } else {
                stack.emplace_back(ai, 1);
            }
            run(rem, rem_len - atoms.length(ai), ci);
            if (stack.back().second == 1) {
                stack.pop_back();
            } else {
                --stack.back().second;
            }
            for (Elem e = 0; e < rem.size(); ++e) {
                rem[e] = static_cast<std::uint16_t>(rem[e] + a.multiplicity(e));
            }
        }
    }
};

inline void enumerate_factorizations(const Sequence& block, const AtomSet& atoms,
                                     const SearchLimits& limits,
                                     const std::function<void(const FactorizationSearch&)>& on_leaf) {
    if (!block.group().same_spec(atoms.group())) {
        throw SpecMismatchError("block and atom set belong to different groups");
    }
    if (block.sum() != block.group().zero()) {
        throw DomainError("block is not a zero-sum sequence");
    }
    const std::uint32_t cap =
        limits.max_block_length != 0 ? limits.max_block_length : 2 * atoms.davenport();
    if (block.length() > cap) {
        throw ResourceError("block length " + std::to_string(block.length()) +
                            " exceeds the cap " + std::to_string(cap));
    }

    // (0) is a prime of the block monoid: factor it out first and let the
    // caller shift by the zero count.
    std::vector<std::uint32_t> candidates = atoms.dividing(block, /*include_zero_atom=*/false);
    std::vector<std::uint16_t> rem(block.counts().begin(), block.counts().end());
    std::uint32_t rem_len = block.length();
    rem_len -= rem[0];
    rem[0] = 0;

    FactorizationSearch search{atoms, candidates, Deadline::from(limits), 0, 0,
                               limits.max_factorizations, {}, on_leaf};
    search.stack.reserve(rem_len / 2 + 1);
    search.run(rem, rem_len, 0);
}

} // namespace detail

/// Every factorization of `block` into atoms, each exactly once, plus the
/// length set. The zero count of the block contributes one forced part
/// (0)^k to every factorization.
inline FactorizationSet factorizations(const Sequence& block, const AtomSet& atoms,
                                       const SearchLimits& limits = {}) {
    FactorizationSet out{block, {}, {}};
    const std::uint32_t zeros = block.multiplicity(0);
    std::set<std::uint32_t> lens;
    detail::enumerate_factorizations(block, atoms, limits, [&](const detail::FactorizationSearch& s) {
        Factorization f{s.stack};
        if (zeros > 0) {
            f.parts.emplace_back(static_cast<std::uint32_t>(*atoms.zero_index()), zeros);
            std::sort(f.parts.begin(), f.parts.end());
        }
        lens.insert(f.length());
        out.items.push_back(std::move(f));
    });
    std::sort(out.items.begin(), out.items.end());
    out.lengths.assign(lens.begin(), lens.end());
    return out;
}

/// L(B) only; same search, no factorization storage.
inline std::vector<std::uint32_t> length_set(const Sequence& block, const AtomSet& atoms,
                                             const SearchLimits& limits = {}) {
    const std::uint32_t zeros = block.multiplicity(0);
    std::set<std::uint32_t> lens;
    detail::enumerate_factorizations(block, atoms, limits, [&](const detail::FactorizationSearch& s) {
        std::uint32_t l = zeros;
        for (auto& [idx, mult] : s.stack) l += mult;
        lens.insert(l);
    });
    return {lens.begin(), lens.end()};
}

/// Delta(L): successive gaps of a sorted set; empty when |L| <= 1.
inline std::vector<std::uint32_t> delta_of_set(std::span<const std::uint32_t> sorted_lengths) {
    std::set<std::uint32_t> gaps;
    for (std::size_t i = 1; i < sorted_lengths.size(); ++i) {
        gaps.insert(sorted_lengths[i] - sorted_lengths[i - 1]);
    }
    return {gaps.begin(), gaps.end()};
}

/// gcd(z, z') length: part-wise multiset minimum, counted with multiplicity.
inline std::uint32_t common_part_length(const Factorization& a, const Factorization& b) {
    std::uint32_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.parts.size() && j < b.parts.size()) {
        if (a.parts[i].first == b.parts[j].first) {
            common += std::min(a.parts[i].second, b.parts[j].second);
            ++i;
            ++j;
        } else if (a.parts[i].first < b.parts[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return common;
}

/// d(z, z'): cancel the common part, then take the larger leftover length.
inline std::uint32_t distance(const Factorization& a, const Factorization& b) {
    const std::uint32_t common = common_part_length(a, b);
    return std::max(a.length() - common, b.length() - common);
}

namespace detail {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    std::uint32_t components;

    explicit UnionFind(std::uint32_t n) : parent(n), size(n, 1), components(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool merge(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        --components;
        return true;
    }
};

} // namespace detail

/// c(B): 0 when |Z(B)| = 1, otherwise the minimax connectivity threshold of
/// the complete graph on Z(B) under the factorization distance. Computed by
/// sorting the pairwise distances and merging with union-find until the
/// graph is connected; the answer N is the weight of the last merging edge,
/// so edges <= N connect Z(B) while edges <= N-1 do not.
inline std::uint32_t element_catenary(const Sequence& block, const AtomSet& atoms,
                                      const SearchLimits& limits = {}) {
    FactorizationSet fs = factorizations(block, atoms, limits);
    const std::size_t n = fs.items.size();
    if (n <= 1) return 0;
    if (n > limits.max_catenary_factorizations || n > 65'535) {
        throw ResourceError("factorization set too large for the catenary computation (" +
                            std::to_string(n) + " factorizations)");
    }

    std::vector<std::uint32_t> len(n);
    for (std::size_t i = 0; i < n; ++i) len[i] = fs.items[i].length();

    // packed edges: distance << 32 | i << 16 | j
    std::vector<std::uint64_t> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint32_t common = common_part_length(fs.items[i], fs.items[j]);
            const std::uint64_t d = std::max(len[i] - common, len[j] - common);
            edges.push_back(d << 32 | static_cast<std::uint64_t>(i) << 16 | j);
        }
    }
    std::sort(edges.begin(), edges.end());

    detail::UnionFind uf(static_cast<std::uint32_t>(n));
    for (std::uint64_t e : edges) {
        const auto i = static_cast<std::uint32_t>(e >> 16 & 0xFFFF);
        const auto j = static_cast<std::uint32_t>(e & 0xFFFF);
        if (uf.merge(i, j) && uf.components == 1) {
            return static_cast<std::uint32_t>(e >> 32);
        }
    }
    return 0; // unreachable: the complete graph is connected
}

} // namespace zsum
