#pragma once

#include <json.hpp>

#include "zsum/report.hpp"

namespace zsum {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json to_json(const Group& g) {
    return json(g.invariant_factors());
}

/// Canonical JSON form of a sequence: one entry per support element in
/// canonical order.
inline json to_json(const Sequence& s) {
    json arr = json::array();
    for (Elem e : s.support()) {
        json item;
        item["element"] = std::vector<int>(s.group().residues(e).begin(),
                                           s.group().residues(e).end());
        item["multiplicity"] = s.multiplicity(e);
        arr.push_back(std::move(item));
    }
    return arr;
}

inline Sequence sequence_from_json(const Group& g, const json& j) {
    Sequence out(g);
    for (const auto& item : j) {
        std::vector<long long> res = item.at("element").get<std::vector<long long>>();
        out.push(g.from_residues(res), item.at("multiplicity").get<std::uint32_t>());
    }
    return out;
}

inline json to_json(const Verdict& v) {
    json j;
    j["target"] = v.target;
    j["status"] = to_string(v.status);
    j["detail"] = v.detail;
    if (v.witness) {
        j["witness"] = json::array({v.witness->first.to_literal(), v.witness->second.to_literal()});
    }
    if (v.pairs_searched != 0) j["pairs_searched"] = v.pairs_searched;
    return j;
}

inline json to_json(const CatenaryBounds& c) {
    json j;
    if (c.exact()) {
        j["catenary"] = c.lo;
    } else {
        j["catenary"] = json{{"lo", c.lo}, {"hi", c.hi}};
    }
    j["exact"] = c.exact();
    j["exactness_reason"] = to_string(c.reason);
    return j;
}

inline json to_json(const InvariantReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = to_json(r.group);
    j["group_name"] = r.group.name();
    j["davenport"] = r.davenport;
    j["davenport_matches_formula"] = r.davenport_matches_rank2_formula;
    j["daleth"] = r.daleth;
    if (r.daleth_witness) {
        j["daleth_witness"] = json::array(
            {r.daleth_witness->first.to_literal(), r.daleth_witness->second.to_literal()});
    }
    j["daleth_floor"] = r.daleth_floor;
    j.update(to_json(r.catenary));
    j["rho2"] = r.rho2;
    j["delta_observed"] = r.delta_observed;
    j["delta_observed_complete"] = false; // observed subset, never a completeness claim
    j["sweep_partial"] = r.sweep_partial;
    j["pairs_examined"] = r.pairs_examined;
    json verdicts;
    for (const auto& v : r.verdicts) verdicts[v.target] = to_json(v);
    j["verdicts"] = std::move(verdicts);
    return j;
}

inline json to_json(const TransferCheck& t, const Group& g, std::uint32_t models,
                    std::uint64_t seed) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = to_json(g);
    j["models"] = models;
    j["seed"] = seed;
    j["samples_checked"] = t.samples;
    j["failures"] = t.failures;
    if (!t.failure_notes.empty()) j["failure_notes"] = t.failure_notes;
    j["pass"] = t.pass();
    return j;
}

} // namespace zsum
