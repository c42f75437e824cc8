#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zsum/factorization.hpp"

namespace zsum {

/// Representatives of the automorphism orbits on atoms. Atoms are scanned
/// in canonical order; the first unvisited atom of an orbit is its minimum,
/// hence the representative. Cost is one full orbit expansion per orbit.
inline std::vector<std::uint32_t> atom_orbit_representatives(const AtomSet& atoms,
                                                             const std::vector<Automorphism>& auts) {
    std::vector<bool> visited(atoms.size(), false);
    std::vector<std::uint32_t> reps;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (visited[i]) continue;
        reps.push_back(static_cast<std::uint32_t>(i));
        for (const auto& phi : auts) {
            Sequence img = apply(phi, atoms.atom(i));
            auto idx = atoms.find(img);
            if (!idx) throw Error("automorphism image of an atom is missing from the atom set");
            visited[*idx] = true;
        }
    }
    return reps;
}

/// Output of the exhaustive sweep over products of two atoms (the blocks
/// with 2 in their length set). Pairs are reduced modulo the automorphism
/// group by pinning the first factor to an orbit representative; length
/// sets are invariant under simultaneous automorphism, so the sweep still
/// sees every pair orbit. The atom (0) is excluded throughout.
struct PairSweep {
    std::uint32_t daleth = 0;
    std::optional<std::pair<Sequence, Sequence>> daleth_witness;
    std::uint32_t rho2 = 0;
    std::set<std::uint32_t> delta_observed;
    std::uint64_t pairs_examined = 0;
    std::uint64_t pairs_skipped = 0; // per-pair resource errors; result is partial
    bool partial() const { return pairs_skipped > 0; }
};

namespace detail {

struct PairSweepWorker {
    PairSweep result;

    void absorb(const Sequence& u, const Sequence& v, const std::vector<std::uint32_t>& lengths) {
        ++result.pairs_examined;
        for (std::size_t k = 1; k < lengths.size(); ++k) {
            result.delta_observed.insert(lengths[k] - lengths[k - 1]);
        }
        if (!lengths.empty()) {
            result.rho2 = std::max(result.rho2, lengths.back());
        }
        // min(L \ {2}); every L here contains 2 by construction
        for (std::uint32_t l : lengths) {
            if (l == 2) continue;
            if (l > result.daleth ||
                (l == result.daleth && result.daleth_witness &&
                 std::pair(u, v) < *result.daleth_witness)) {
                result.daleth = l;
                result.daleth_witness = std::pair(u, v);
            }
            break;
        }
    }

    void merge(PairSweepWorker&& o) {
        result.pairs_examined += o.result.pairs_examined;
        result.pairs_skipped += o.result.pairs_skipped;
        result.rho2 = std::max(result.rho2, o.result.rho2);
        result.delta_observed.merge(o.result.delta_observed);
        if (o.result.daleth > result.daleth ||
            (o.result.daleth == result.daleth && o.result.daleth_witness &&
             (!result.daleth_witness || *o.result.daleth_witness < *result.daleth_witness))) {
            result.daleth = o.result.daleth;
            result.daleth_witness = o.result.daleth_witness;
        }
    }
};

} // namespace detail

/// Exhaustive pair sweep computing daleth(G) with a maximizing witness,
/// rho_2(G), and the observed distance set (the union of Delta(L(UV)) over
/// all atom pairs; a lower approximation of Delta(G), not a completeness
/// claim). Ordered pairs (representative, any atom) cover every unordered
/// pair orbit. Work is partitioned by representative; partial results merge
/// deterministically (max value, lexicographically least witness).
inline PairSweep atom_pair_sweep(const AtomSet& atoms, const SearchLimits& limits = {}) {
    const std::vector<Automorphism> auts = automorphisms(atoms.group());
    const std::vector<std::uint32_t> reps = atom_orbit_representatives(atoms, auts);
    const Deadline deadline = Deadline::from(limits);

    SearchLimits pair_limits = limits;
    pair_limits.timeout = std::chrono::milliseconds{0}; // deadline handled here

    const unsigned nworkers = limits.effective_workers();
    std::vector<detail::PairSweepWorker> workers(nworkers);
    std::atomic<std::size_t> next_rep{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto body = [&](unsigned wid) {
        auto& w = workers[wid];
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t ri = next_rep.fetch_add(1);
                if (ri >= reps.size()) break;
                deadline.check("pair sweep");
                const std::uint32_t ui = reps[ri];
                if (atoms.is_zero_atom(ui)) continue;
                const Sequence& u = atoms.atom(ui);
                for (std::size_t vi = 0; vi < atoms.size(); ++vi) {
                    if (atoms.is_zero_atom(vi)) continue;
                    if ((vi & 0xFF) == 0) deadline.check("pair sweep");
                    const Sequence& v = atoms.atom(vi);
                    Sequence block = u.plus(v);
                    try {
                        w.absorb(u, v, length_set(block, atoms, pair_limits));
                    } catch (const ResourceError&) {
                        ++w.result.pairs_skipped;
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) threads.emplace_back(body, i);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);

    detail::PairSweepWorker total;
    for (auto& w : workers) total.merge(std::move(w));
    return total.result;
}

/// Observed distance set: the sweep's union over pair blocks extended by
/// any explicitly supplied blocks. Still a lower approximation of the
/// group's distance set, never a completeness claim.
inline std::set<std::uint32_t> observed_distances(const PairSweep& sweep,
                                                  std::span<const Sequence> extra_blocks,
                                                  const AtomSet& atoms,
                                                  const SearchLimits& limits = {}) {
    std::set<std::uint32_t> out = sweep.delta_observed;
    for (const Sequence& b : extra_blocks) {
        for (std::uint32_t d : delta_of_set(length_set(b, atoms, limits))) out.insert(d);
    }
    return out;
}

/// Floor for daleth: max{n_r, 1 + sum(floor(n_i / 2))}.
inline std::uint32_t daleth_lower_bound(const Group& g) {
    std::uint32_t s = 1;
    for (int f : g.invariant_factors()) s += static_cast<std::uint32_t>(f / 2);
    return std::max(static_cast<std::uint32_t>(g.exponent()), s);
}

/// Group catenary degree, exact when certifiable, otherwise a closed
/// interval. Exactness is never guessed:
///  - daleth_closure: daleth >= floor(D/2) + 1 pins c(G) = daleth (upper
///    bound max{floor(D/2)+1, daleth} meets the chain lower bound daleth);
///  - known_class: cyclic groups and elementary 2-groups have c(G) = D(G);
///  - otherwise the certified interval [max(daleth, observed c(B)),
///    max{floor(D/2)+1, daleth}].
struct CatenaryBounds {
    enum class Reason { daleth_closure, known_class, interval_only };
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    Reason reason = Reason::interval_only;
    bool exact() const { return lo == hi; }
};

inline const char* to_string(CatenaryBounds::Reason r) {
    switch (r) {
        case CatenaryBounds::Reason::daleth_closure: return "daleth-closure";
        case CatenaryBounds::Reason::known_class: return "known-class";
        case CatenaryBounds::Reason::interval_only: return "interval-only";
    }
    return "?";
}

inline CatenaryBounds group_catenary(const AtomSet& atoms, const PairSweep& sweep,
                                     const SearchLimits& limits = {},
                                     std::uint32_t interval_samples = 32) {
    const Group& g = atoms.group();
    if (g.size() <= 2) {
        // the block monoid is factorial: every block factors uniquely
        return {0, 0, CatenaryBounds::Reason::known_class};
    }
    const std::uint32_t d = atoms.davenport();
    const std::uint32_t closure = d / 2 + 1;
    if (sweep.daleth >= closure && !sweep.partial()) {
        return {sweep.daleth, sweep.daleth, CatenaryBounds::Reason::daleth_closure};
    }
    if (g.is_cyclic() || g.is_elementary_2()) {
        return {d, d, CatenaryBounds::Reason::known_class};
    }
    // Interval: sharpen the lower bound with element catenary degrees of a
    // few sampled pair blocks (any c(B) is a lower bound for c(G)). A
    // partial sweep may have underestimated daleth, so the upper bound
    // falls back to D(G) in that case.
    std::uint32_t lo = sweep.daleth;
    std::uint32_t sampled = 0;
    for (std::size_t i = 0; i < atoms.size() && sampled < interval_samples; ++i) {
        if (atoms.is_zero_atom(i)) continue;
        Sequence block = atoms.atom(i).plus(atoms.atom(i).negated());
        try {
            lo = std::max(lo, element_catenary(block, atoms, limits));
        } catch (const ResourceError&) {
            // sampling only; skip expensive blocks
        }
        ++sampled;
    }
    const std::uint32_t hi = sweep.partial() ? d : std::max(closure, sweep.daleth);
    return {lo, hi, CatenaryBounds::Reason::interval_only};
}

/// rho_k(G) = sup{ sup L : k in L }. k = 1 is trivially 1; k = 2 scans atom
/// pairs with the bound sup L(UV) <= |UV| / 2 used for pruning; larger k
/// multiplies k atoms and is gated by a work cap.
inline std::uint32_t rho(const AtomSet& atoms, unsigned k, const SearchLimits& limits = {}) {
    if (k == 0) throw DomainError("rho requires k >= 1");
    if (k == 1) return 1;

    const std::vector<Automorphism> auts = automorphisms(atoms.group());
    const std::vector<std::uint32_t> reps = atom_orbit_representatives(atoms, auts);
    const Deadline deadline = Deadline::from(limits);

    // non-zero atom indices, longest first, so the best value appears early
    // and the |block|/2 bound prunes nearly everything afterwards
    std::vector<std::uint32_t> pool;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms.is_zero_atom(i)) pool.push_back(static_cast<std::uint32_t>(i));
    }
    std::sort(pool.begin(), pool.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (atoms.length(a) != atoms.length(b)) return atoms.length(a) > atoms.length(b);
        return a < b;
    });

    if (k > 2) {
        double work = 1.0;
        for (unsigned i = 1; i < k; ++i) work *= static_cast<double>(pool.size());
        if (work > 2e6) {
            throw ResourceError("rho_k search space too large for k = " + std::to_string(k));
        }
    }

    SearchLimits leaf_limits = limits;
    leaf_limits.timeout = std::chrono::milliseconds{0};
    if (leaf_limits.max_block_length == 0) {
        leaf_limits.max_block_length = k * atoms.davenport(); // k factors
    }

    std::uint32_t best = 0;
    std::uint64_t tick = 0;
    // choose k factors, the first restricted to orbit representatives
    auto recurse = [&](auto&& self, const Sequence& acc, unsigned chosen,
                       std::size_t from) -> void {
        if ((++tick & 0xFF) == 0) deadline.check("rho search");
        if (chosen == k) {
            auto lens = length_set(acc, atoms, leaf_limits);
            if (!lens.empty()) best = std::max(best, lens.back());
            return;
        }
        for (std::size_t pi = from; pi < pool.size(); ++pi) {
            const std::uint32_t ai = pool[pi];
            // sup L(block) <= |block| / 2; remaining factors are no longer
            // than this one, so the bound is monotone along the pool
            if ((acc.length() + atoms.length(ai) * (k - chosen)) / 2 <= best) break;
            self(self, acc.plus(atoms.atom(ai)), chosen + 1, pi);
        }
    };
    for (std::uint32_t ui : reps) {
        if (atoms.is_zero_atom(ui)) continue;
        recurse(recurse, atoms.atom(ui), 1, 0);
    }
    return best;
}

/// True iff the pair (U, V) is consistent with the multiplicity bound: when
/// max L(UV) >= 3, then for every g, if L(UV) has no entry in [3, ord(g)],
/// v_g(U) + v_{-g}(V) <= ord(g). Pairs with L(UV) = {2} are outside the
/// statement's hypothesis and pass vacuously. This is a theorem for blocks
/// over abelian groups, so a false return flags an implementation bug.
inline bool pair_multiplicity_bound_holds(const Sequence& u, const Sequence& v,
                                          std::span<const std::uint32_t> lengths) {
    if (lengths.empty() || lengths.back() < 3) return true;
    const Group& g = u.group();
    for (Elem e : u.support()) {
        const std::uint32_t bound = static_cast<std::uint32_t>(g.order(e));
        bool has_mid = false;
        for (std::uint32_t l : lengths) {
            if (l >= 3 && l <= bound) {
                has_mid = true;
                break;
            }
        }
        if (!has_mid && u.multiplicity(e) + v.multiplicity(g.neg(e)) > bound) {
            return false;
        }
    }
    return true;
}

// --- group-class predicates used by the characterization checks ---

/// C2 + C2n with n >= 2.
inline bool is_c2_times_c2n(const Group& g) {
    const auto& f = g.invariant_factors();
    return f.size() == 2 && f[0] == 2 && f[1] >= 4 && f[1] % 2 == 0;
}

/// C2^(r-1) + C4 with r >= 2.
inline bool is_c2r_times_c4(const Group& g) {
    const auto& f = g.invariant_factors();
    if (f.size() < 2 || f.back() != 4) return false;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (f[i] != 2) return false;
    }
    return true;
}

/// Verdict of one named check.
struct Verdict {
    enum class Status { pass, fail, indeterminate, skipped };
    std::string target;
    Status status = Status::skipped;
    std::string detail;
    std::optional<std::pair<Sequence, Sequence>> witness;
    std::uint64_t pairs_searched = 0;
};

inline const char* to_string(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::pass: return "pass";
        case Verdict::Status::fail: return "fail";
        case Verdict::Status::indeterminate: return "indeterminate";
        case Verdict::Status::skipped: return "skipped";
    }
    return "?";
}

/// Checks the exact catenary degree against the known classification:
/// c = D(G) iff cyclic or elementary 2-group; c = 3 iff C3, C2^2, C3^2;
/// c = 4 iff C4, C2+C4, C2^3, C3^3.
inline Verdict verify_catenary_table(const Group& g, std::uint32_t davenport,
                                     const CatenaryBounds& c) {
    Verdict v;
    v.target = "theorem-a";
    v.status = Verdict::Status::pass;
    if (g.size() <= 2) {
        v.status = Verdict::Status::skipped;
        v.detail = "requires |G| >= 3";
        return v;
    }
    if (!c.exact()) {
        v.status = Verdict::Status::indeterminate;
        v.detail = "catenary degree is only bounded to [" + std::to_string(c.lo) + ", " +
                   std::to_string(c.hi) + "]";
        return v;
    }
    const auto& f = g.invariant_factors();
    const bool in_three = f == std::vector<int>{3} || f == std::vector<int>{2, 2} ||
                          f == std::vector<int>{3, 3};
    const bool in_four = f == std::vector<int>{4} || f == std::vector<int>{2, 4} ||
                         f == std::vector<int>{2, 2, 2} || f == std::vector<int>{3, 3, 3};
    const bool extremal = g.is_cyclic() || g.is_elementary_2();
    const std::uint32_t cv = c.lo;

    bool ok = ((cv == davenport) == extremal) && ((cv == 3) == in_three) && ((cv == 4) == in_four);
    v.status = ok ? Verdict::Status::pass : Verdict::Status::fail;
    v.detail = "c = " + std::to_string(cv) + ", D = " + std::to_string(davenport);
    return v;
}

/// The daleth characterization: daleth(G) = D(G) - 1 iff G is C2^(r-1)+C4
/// or C2+C2n, and (when the catenary degree is exact) the same class is
/// equivalent to c(G) = D(G) - 1.
inline Verdict verify_daleth_characterization(const Group& g, std::uint32_t davenport,
                                              std::uint32_t daleth, const CatenaryBounds& c) {
    Verdict v;
    v.target = "theorem-1-1";
    if (g.size() <= 2) {
        v.status = Verdict::Status::skipped;
        v.detail = "requires |G| >= 3";
        return v;
    }
    const bool special = is_c2r_times_c4(g) || is_c2_times_c2n(g);
    const bool daleth_hits = daleth == davenport - 1;

    bool ok = special == daleth_hits;
    if (c.exact()) {
        ok = ok && (special == (c.lo == davenport - 1));
    } else if (c.lo <= davenport - 1 && davenport - 1 <= c.hi) {
        v.status = Verdict::Status::indeterminate;
        v.detail = "catenary interval straddles D - 1";
        return v;
    } else {
        ok = ok && (special == false);
    }
    v.status = ok ? Verdict::Status::pass : Verdict::Status::fail;
    v.detail = std::string(special ? "special family" : "generic group") +
               ", daleth = " + std::to_string(daleth) + ", D = " + std::to_string(davenport);
    return v;
}

/// Length-set patterns of products of two atoms whose existence
/// characterizes group classes. Sizes are pinned by the pattern, so the
/// searches iterate only the matching pairs.
enum class PairPattern {
    full_pair_three_lengths, // L(UV) = {2, D-1, D};   |U| = |V| = D, V = -U forced
    full_pair_two_lengths,   // L(UV) = {2, D-1};      |U| = |V| = D
    mixed_pair_two_lengths,  // L(UV) = {2, D-1};      |U| = D, |V| = D-1
    short_pair_two_lengths,  // L(UV) = {2, D-1};      |U| = |V| = D-1
};

inline const char* target_name(PairPattern p) {
    switch (p) {
        case PairPattern::full_pair_three_lengths: return "prop-3.5";
        case PairPattern::full_pair_two_lengths: return "prop-3.6";
        case PairPattern::mixed_pair_two_lengths: return "prop-3.7";
        case PairPattern::short_pair_two_lengths: return "prop-3.8";
    }
    return "?";
}

/// Group classes in which a witness pair must exist (and outside of which
/// the search must come up empty).
inline bool pattern_predicate(PairPattern p, const Group& g) {
    switch (p) {
        case PairPattern::full_pair_three_lengths:
            return is_c2_times_c2n(g);
        case PairPattern::full_pair_two_lengths:
            return false;
        case PairPattern::mixed_pair_two_lengths:
            return g.is_elementary_2() || g.is_cyclic() || is_c2_times_c2n(g);
        case PairPattern::short_pair_two_lengths:
            return g.is_elementary_2() || is_c2r_times_c4(g) || is_c2_times_c2n(g);
    }
    return false;
}

/// Exhaustive witness search for one pattern; verdict passes iff witness
/// existence matches the class predicate. Applies only when D(G) >= 5.
inline Verdict verify_pair_pattern(PairPattern p, const AtomSet& atoms,
                                   const SearchLimits& limits = {}) {
    Verdict v;
    v.target = target_name(p);
    const Group& g = atoms.group();
    const std::uint32_t d = atoms.davenport();
    if (d < 5) {
        v.status = Verdict::Status::skipped;
        v.detail = "requires D(G) >= 5, here D = " + std::to_string(d);
        return v;
    }

    std::vector<std::uint32_t> want;
    std::uint32_t ulen = 0, vlen = 0;
    switch (p) {
        case PairPattern::full_pair_three_lengths:
            want = {2, d - 1, d};
            ulen = vlen = d;
            break;
        case PairPattern::full_pair_two_lengths:
            want = {2, d - 1};
            ulen = vlen = d;
            break;
        case PairPattern::mixed_pair_two_lengths:
            want = {2, d - 1};
            ulen = d;
            vlen = d - 1;
            break;
        case PairPattern::short_pair_two_lengths:
            want = {2, d - 1};
            ulen = vlen = d - 1;
            break;
    }

    const std::vector<Automorphism> auts = automorphisms(g);
    const std::vector<std::uint32_t> reps = atom_orbit_representatives(atoms, auts);
    const Deadline deadline = Deadline::from(limits);
    SearchLimits pair_limits = limits;
    pair_limits.timeout = std::chrono::milliseconds{0};

    std::optional<std::pair<Sequence, Sequence>> witness;
    std::uint64_t searched = 0;

    auto try_pair = [&](const Sequence& u, const Sequence& v2) {
        ++searched;
        if (witness && !(std::pair(u, v2) < *witness)) return;
        if (length_set(u.plus(v2), atoms, pair_limits) == want) {
            witness = std::pair(u, v2);
        }
    };

    for (std::uint32_t ui : reps) {
        if (atoms.is_zero_atom(ui) || atoms.length(ui) != ulen) continue;
        deadline.check("pattern search");
        const Sequence& u = atoms.atom(ui);
        if (p == PairPattern::full_pair_three_lengths) {
            // D in L(UV) forces a factorization into D two-element atoms,
            // each pairing a U element with a V element, hence V = -U.
            try_pair(u, u.negated());
            continue;
        }
        for (std::size_t vi = 0; vi < atoms.size(); ++vi) {
            if (atoms.is_zero_atom(vi) || atoms.length(vi) != vlen) continue;
            try_pair(u, atoms.atom(vi));
        }
    }

    const bool expected = pattern_predicate(p, g);
    const bool found = witness.has_value();
    v.status = (found == expected) ? Verdict::Status::pass : Verdict::Status::fail;
    v.witness = witness;
    v.pairs_searched = searched;
    if (found) {
        v.detail = "witness U = " + witness->first.to_literal() +
                   ", V = " + witness->second.to_literal();
    } else {
        v.detail = "no witness among " + std::to_string(searched) + " candidate pairs";
    }
    return v;
}

} // namespace zsum
