#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "zsum/limits.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

/// True iff A is a minimal zero-sum sequence: nonempty, sigma(A) = 0, and
/// for every g in the support, A with one copy of g removed is zero-sum
/// free. (Any proper nonempty zero-sum subsequence omits at least one
/// occurrence of some g, hence divides A * g^-1; conversely minimality
/// forbids such subsequences.)
inline bool is_atom(const Sequence& a) {
    if (a.empty() || a.sum() != a.group().zero()) return false;
    for (Elem g : a.support()) {
        Sequence q(a);
        q.pop(g);
        if (!q.zero_sum_free()) return false;
    }
    return true;
}

/// The complete set A(G) of minimal zero-sum sequences, sorted in the
/// canonical sequence order, plus the Davenport constant D(G) = max |A|.
/// Immutable after construction.
class AtomSet {
public:
    AtomSet(Group g, std::vector<Sequence> sorted_atoms)
        : group_(std::move(g)), atoms_(std::move(sorted_atoms)) {
        masks_.reserve(atoms_.size());
        lengths_.reserve(atoms_.size());
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            masks_.push_back(atoms_[i].support_mask());
            lengths_.push_back(atoms_[i].length());
            davenport_ = std::max(davenport_, atoms_[i].length());
            if (atoms_[i].length() == 1 && atoms_[i].multiplicity(0) == 1) zero_index_ = i;
        }
    }

    /// Enumerates A(G) by depth-first search over zero-sum-free sequences
    /// built in canonical non-decreasing element order. Each zero-sum-free S
    /// closes to the candidate atom S * (-sigma(S)); the candidate is
    /// emitted when the forced closing element is >= the last element of S,
    /// which yields each atom exactly once (remove one copy of the maximal
    /// element of any atom to see the matching S). Candidates are verified
    /// with is_atom and deduplicated by canonical-form set insertion. The
    /// atom (0) is added separately.
    static AtomSet enumerate(const Group& g, const SearchLimits& limits = {});

    const Group& group() const { return group_; }
    std::uint32_t davenport() const { return davenport_; }
    std::size_t size() const { return atoms_.size(); }
    const Sequence& atom(std::size_t i) const { return atoms_[i]; }
    std::uint64_t support_mask(std::size_t i) const { return masks_[i]; }
    std::uint32_t length(std::size_t i) const { return lengths_[i]; }

    /// Index of the atom (0), the unique prime of the block monoid. It is
    /// stored but flagged so that invariant searches can skip it.
    std::optional<std::size_t> zero_index() const { return zero_index_; }
    bool is_zero_atom(std::size_t i) const { return zero_index_ && *zero_index_ == i; }

    std::optional<std::size_t> find(const Sequence& a) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
        if (it != atoms_.end() && *it == a) {
            return static_cast<std::size_t>(it - atoms_.begin());
        }
        return std::nullopt;
    }

    /// Indices of atoms dividing `block`, ascending.
    std::vector<std::uint32_t> dividing(const Sequence& block, bool include_zero_atom) const {
        std::vector<std::uint32_t> out;
        const std::uint64_t bm = block.support_mask();
        const std::uint32_t bl = block.length();
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if ((masks_[i] & ~bm) != 0 || lengths_[i] > bl) continue;
            if (!include_zero_atom && is_zero_atom(i)) continue;
            if (atoms_[i].divides(block)) out.push_back(static_cast<std::uint32_t>(i));
        }
        return out;
    }

private:
    Group group_;
    std::vector<Sequence> atoms_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::uint32_t> lengths_;
    std::uint32_t davenport_ = 0;
    std::optional<std::size_t> zero_index_;
};

namespace detail {

/// One zero-sum-free DFS subtree, rooted at sequences whose first element
/// is `first`. Appends closed candidates to `out`.
inline void zsf_dfs(const Group& g, std::vector<std::uint16_t>& counts, std::uint32_t len,
                    Elem sum, std::uint64_t reach, Elem min_e, std::uint32_t max_candidate_len,
                    const Deadline& deadline, std::uint64_t& tick, std::vector<Sequence>& out) {
    if ((++tick & 0xFFF) == 0) deadline.check("atom enumeration");

    // close the current zero-sum-free prefix; the closing element is forced
    const Elem close = g.neg(sum);
    Elem last = min_e; // min_e equals the element just pushed (callers start subtrees there)
    if (close >= last && len + 1 <= max_candidate_len) {
        Sequence atom(g);
        for (Elem e = 0; e < g.size(); ++e) {
            if (counts[e] != 0) atom.push(e, counts[e]);
        }
        atom.push(close);
        out.push_back(std::move(atom));
    }

    if (len + 1 > max_candidate_len - 1) {
        // the candidate cap would be exceeded by any extension; report only
        // if an extension is actually live, so default caps never trigger
        for (Elem e = min_e; e < g.size(); ++e) {
            std::uint64_t next = reach | (std::uint64_t{1} << e);
            for (std::uint64_t rest = reach; rest != 0; rest &= rest - 1) {
                next |= std::uint64_t{1} << g.add(static_cast<Elem>(std::countr_zero(rest)), e);
            }
            if ((next & 1) == 0) {
                throw ResourceError("atom length cap exceeded during enumeration");
            }
        }
        return;
    }

    for (Elem e = min_e; e < g.size(); ++e) {
        std::uint64_t next = reach | (std::uint64_t{1} << e);
        for (std::uint64_t rest = reach; rest != 0; rest &= rest - 1) {
            next |= std::uint64_t{1} << g.add(static_cast<Elem>(std::countr_zero(rest)), e);
        }
        if (next & 1) continue; // extension is no longer zero-sum free
        counts[e] += 1;
        zsf_dfs(g, counts, len + 1, g.add(sum, e), next, e, max_candidate_len, deadline, tick, out);
        counts[e] -= 1;
    }
}

} // namespace detail

inline AtomSet AtomSet::enumerate(const Group& g, const SearchLimits& limits) {
    if (g.size() > limits.max_group_order) {
        throw ResourceError("group order " + std::to_string(g.size()) +
                            " exceeds the configured enumeration cap");
    }
    std::uint32_t formula = 1;
    for (int f : g.invariant_factors()) formula += static_cast<std::uint32_t>(f - 1);
    const std::uint32_t max_len =
        limits.max_atom_length != 0 ? limits.max_atom_length : 2 * formula;
    const Deadline deadline = Deadline::from(limits);

    // DFS forest partitioned by first element; workers pull subtrees and
    // keep worker-local result buckets, merged in first-element order so the
    // outcome is schedule-independent.
    const std::uint32_t n = g.size();
    std::vector<std::vector<Sequence>> buckets(n);
    std::atomic<Elem> next_first{1};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&] {
        std::vector<std::uint16_t> counts(n, 0);
        std::uint64_t tick = 0;
        while (!failed.load(std::memory_order_relaxed)) {
            Elem first = next_first.fetch_add(1);
            if (first >= n) break;
            std::uint64_t reach = std::uint64_t{1} << first;
            if (reach & 1) continue; // element 0 is never zero-sum free
            counts[first] = 1;
            try {
                detail::zsf_dfs(g, counts, 1, first, reach, first, max_len, deadline, tick,
                                buckets[first]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
            counts[first] = 0;
        }
    };

    const unsigned nworkers = std::min<unsigned>(limits.effective_workers(), n);
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);

    std::vector<Sequence> atoms;
    atoms.push_back(Sequence(g).push(0)); // the prime (0)
    for (auto& b : buckets) {
        for (auto& a : b) {
            if (is_atom(a)) atoms.push_back(std::move(a));
        }
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return AtomSet(Group(g), std::move(atoms));
}

/// True iff the computed Davenport constant equals 1 + sum(n_i - 1). Holds
/// whenever G is a p-group or has rank <= 2.
inline bool davenport_matches_formula(const AtomSet& atoms) {
    std::uint32_t formula = 1;
    for (int f : atoms.group().invariant_factors()) formula += static_cast<std::uint32_t>(f - 1);
    return atoms.davenport() == formula;
}

} // namespace zsum
