#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zsum/invariants.hpp"
#include "zsum/krull.hpp"

namespace zsum {

/// Per-group record of every computed invariant plus the verdicts of the
/// named characterization checks.
struct InvariantReport {
    Group group;
    std::uint32_t davenport = 0;
    bool davenport_matches_rank2_formula = false;
    std::uint32_t daleth = 0;
    std::optional<std::pair<Sequence, Sequence>> daleth_witness;
    std::uint32_t daleth_floor = 0;
    CatenaryBounds catenary;
    std::uint32_t rho2 = 0;
    std::vector<std::uint32_t> delta_observed; // observed subset of Delta(G), sorted
    bool sweep_partial = false;
    std::uint64_t pairs_examined = 0;
    std::vector<Verdict> verdicts;

    bool all_verdicts_pass() const {
        for (const auto& v : verdicts) {
            if (v.status == Verdict::Status::fail) return false;
        }
        return true;
    }
};

/// Computes the full report for one group: atom enumeration, the pair
/// sweep, catenary bounds, and all named checks. Enforces the chain
/// daleth <= c_lo <= c_hi <= D and the daleth floor; a violation is an
/// implementation bug, not a mathematical finding, and raises Error.
inline InvariantReport build_report(const Group& g, const SearchLimits& limits = {}) {
    InvariantReport r{g, 0, false, 0, {}, 0, {}, 0, {}, false, 0, {}};

    AtomSet atoms = AtomSet::enumerate(g, limits);
    r.davenport = atoms.davenport();
    r.davenport_matches_rank2_formula = davenport_matches_formula(atoms);

    PairSweep sweep = atom_pair_sweep(atoms, limits);
    r.daleth = sweep.daleth;
    r.daleth_witness = sweep.daleth_witness;
    r.daleth_floor = daleth_lower_bound(g);
    r.rho2 = sweep.rho2;
    r.delta_observed.assign(sweep.delta_observed.begin(), sweep.delta_observed.end());
    r.sweep_partial = sweep.partial();
    r.pairs_examined = sweep.pairs_examined;

    r.catenary = group_catenary(atoms, sweep, limits);

    // the chain and floor statements assume |G| >= 3 (below that every
    // length set is a singleton and daleth degenerates)
    if (!r.sweep_partial && g.size() >= 3) {
        if (r.daleth < r.daleth_floor) {
            throw Error("daleth fell below its lower-bound formula for " + g.name());
        }
        if (r.daleth > r.catenary.lo || r.catenary.hi > r.davenport) {
            throw Error("invariant chain violated for " + g.name());
        }
        if (r.rho2 != r.davenport) {
            throw Error("rho_2 disagrees with the Davenport constant for " + g.name());
        }
        if (r.daleth > 2 &&
            !std::binary_search(r.delta_observed.begin(), r.delta_observed.end(), r.daleth - 2)) {
            throw Error("daleth - 2 is missing from the observed distance set for " + g.name());
        }
    }

    r.verdicts.push_back(verify_catenary_table(g, r.davenport, r.catenary));
    r.verdicts.push_back(verify_daleth_characterization(g, r.davenport, r.daleth, r.catenary));
    r.verdicts.push_back(verify_pair_pattern(PairPattern::full_pair_three_lengths, atoms, limits));
    r.verdicts.push_back(verify_pair_pattern(PairPattern::full_pair_two_lengths, atoms, limits));
    r.verdicts.push_back(verify_pair_pattern(PairPattern::mixed_pair_two_lengths, atoms, limits));
    r.verdicts.push_back(verify_pair_pattern(PairPattern::short_pair_two_lengths, atoms, limits));
    return r;
}

/// Default group suite: covers every class of the characterization checks
/// with D(G) <= 7.
inline std::vector<std::string> default_suite() {
    return {"3",   "4",   "5",     "6",   "2,2", "2,2,2", "2,2,2,2",
            "3,3", "2,4", "2,6", "2,2,4", "3,3,3", "4,4"};
}

} // namespace zsum
