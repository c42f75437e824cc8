#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsum/json_io.hpp"

namespace zsum::cli {

/// Exit codes: 0 success, 1 usage or domain error, 2 a named check came
/// back false (mathematics disagrees with the implementation — CI must
/// treat this differently from a crash), 3 a resource cap or deadline hit.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdictFalse = 2;
inline constexpr int kExitResource = 3;

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string scalar_to_string(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline void flatten(const json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j) scalars = scalars && !v.is_structured();
        if (scalars) {
            std::string joined;
            for (const auto& v : j) {
                if (!joined.empty()) joined += ';';
                joined += scalar_to_string(v);
            }
            out.emplace_back(prefix, joined);
        } else {
            out.emplace_back(prefix, j.dump());
        }
    } else {
        out.emplace_back(prefix, scalar_to_string(j));
    }
}

inline void emit(const json& j, const std::string& format, std::ostream& os) {
    if (format == "json") {
        os << j.dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (format == "csv") {
        std::string header, values;
        for (const auto& [k, v] : rows) {
            if (!header.empty()) {
                header += ',';
                values += ',';
            }
            header += csv_escape(k);
            values += csv_escape(v);
        }
        os << header << '\n' << values << '\n';
    } else { // table
        std::size_t width = 0;
        for (const auto& [k, v] : rows) width = std::max(width, k.size());
        for (const auto& [k, v] : rows) {
            os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
        }
    }
}

inline void emit_rows(const std::vector<json>& objects, const std::string& format,
                      std::ostream& os) {
    if (format == "json") {
        for (const auto& j : objects) os << j.dump() << '\n';
        return;
    }
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (const auto& j : objects) {
        rows.emplace_back();
        flatten(j, "", rows.back());
    }
    if (format == "csv") {
        if (rows.empty()) return;
        // union of keys in first-seen order; rows may differ (e.g. a group
        // without a daleth witness)
        std::vector<std::string> keys;
        for (const auto& row : rows) {
            for (const auto& [k, v] : row) {
                if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
            }
        }
        std::string header;
        for (const auto& k : keys) {
            if (!header.empty()) header += ',';
            header += csv_escape(k);
        }
        os << header << '\n';
        for (const auto& row : rows) {
            std::string line;
            bool first = true;
            for (const auto& k : keys) {
                if (!first) line += ',';
                first = false;
                auto it = std::find_if(row.begin(), row.end(),
                                       [&](const auto& kv) { return kv.first == k; });
                if (it != row.end()) line += csv_escape(it->second);
            }
            os << line << '\n';
        }
    } else {
        for (const auto& row : rows) {
            std::size_t width = 0;
            for (const auto& [k, v] : row) width = std::max(width, k.size());
            for (const auto& [k, v] : row) {
                os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
            }
            os << '\n';
        }
    }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t p = s.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
    return out;
}

} // namespace detail

/// Front end entry point; see the subcommand help for the schemas.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"arithmetic invariants of zero-sum sequences over finite abelian groups"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    SearchLimits limits;
    std::uint32_t timeout_seconds = 600;
    app.add_option("--max-group-order", limits.max_group_order, "group order cap")
        ->envname("ZSUM_MAX_GROUP_ORDER");
    app.add_option("--max-block-length", limits.max_block_length,
                   "block length cap (0: twice the Davenport constant)")
        ->envname("ZSUM_MAX_BLOCK_LENGTH");
    app.add_option("--max-factorizations", limits.max_factorizations, "factorization count cap")
        ->envname("ZSUM_MAX_FACTORIZATIONS");
    app.add_option("--timeout", timeout_seconds, "wall-clock budget per task, seconds (min 1)")
        ->envname("ZSUM_TIMEOUT_SECONDS");
    app.add_option("--workers", limits.workers, "worker threads (0: hardware)")
        ->envname("ZSUM_WORKERS");
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized checks");

    std::string group_spec, block_literal, targets = "all", groups_list;
    unsigned rho_k = 2;
    std::uint32_t models = 200;

    auto* cmd_atoms = app.add_subcommand("atoms", "enumerate the minimal zero-sum sequences");
    cmd_atoms->add_option("--group", group_spec, "group spec, e.g. 2,4 or C2xC4")->required();

    auto* cmd_davenport = app.add_subcommand("davenport", "Davenport constant of a group");
    cmd_davenport->add_option("--group", group_spec)->required();

    auto* cmd_lengths = app.add_subcommand("lengths", "length set of a zero-sum block");
    cmd_lengths->add_option("--group", group_spec)->required();
    cmd_lengths->add_option("--block", block_literal, "sequence literal, e.g. \"(1,0) (0,1)^3\"")
        ->required();

    auto* cmd_cat_elem =
        app.add_subcommand("catenary-element", "catenary degree of one zero-sum block");
    cmd_cat_elem->add_option("--group", group_spec)->required();
    cmd_cat_elem->add_option("--block", block_literal)->required();

    auto* cmd_daleth = app.add_subcommand("daleth", "daleth invariant with witness pair");
    cmd_daleth->add_option("--group", group_spec)->required();

    auto* cmd_catenary =
        app.add_subcommand("catenary", "group catenary degree, exact or certified interval");
    cmd_catenary->add_option("--group", group_spec)->required();

    auto* cmd_rho = app.add_subcommand("rho", "refined elasticity rho_k");
    cmd_rho->add_option("--group", group_spec)->required();
    cmd_rho->add_option("--k", rho_k, "index k")->capture_default_str();

    auto* cmd_verify = app.add_subcommand("verify", "run the named characterization checks");
    cmd_verify->add_option("--group", group_spec)->required();
    cmd_verify
        ->add_option("--target", targets,
                     "theorem-a|theorem-1-1|prop-3.5|prop-3.6|prop-3.7|prop-3.8|all")
        ->capture_default_str();

    auto* cmd_report = app.add_subcommand("report", "full invariant report per group");
    cmd_report->add_option("--groups", groups_list,
                           "semicolon-separated group specs (default: built-in suite)");

    auto* cmd_transfer =
        app.add_subcommand("transfer-check", "randomized length-preservation check");
    cmd_transfer->add_option("--group", group_spec)->required();
    cmd_transfer->add_option("--models", models, "number of random models")->capture_default_str();
    cmd_transfer->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << '\n';
        return kExitUsage;
    }

    if (timeout_seconds < 1) {
        err << "timeout must be at least 1 second\n";
        return kExitUsage;
    }
    if (limits.max_group_order == 0 || limits.max_factorizations == 0) {
        err << "caps must be positive\n";
        return kExitUsage;
    }
    limits.timeout = std::chrono::seconds(timeout_seconds);

    try {
        if (*cmd_atoms || *cmd_davenport) {
            Group g = Group::parse(group_spec);
            AtomSet atoms = AtomSet::enumerate(g, limits);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["group"] = to_json(g);
            j["davenport"] = atoms.davenport();
            if (*cmd_atoms) {
                j["atom_count"] = atoms.size();
                json lits = json::array();
                for (std::size_t i = 0; i < atoms.size(); ++i) {
                    lits.push_back(atoms.atom(i).to_literal());
                }
                j["atoms"] = std::move(lits);
            } else {
                j["atom_count"] = atoms.size();
                j["matches_formula"] = davenport_matches_formula(atoms);
            }
            detail::emit(j, format, out);
            return kExitOk;
        }

        if (*cmd_lengths || *cmd_cat_elem) {
            Group g = Group::parse(group_spec);
            AtomSet atoms = AtomSet::enumerate(g, limits);
            Sequence block = Sequence::parse(g, block_literal);
            FactorizationSet fs = factorizations(block, atoms, limits);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["group"] = to_json(g);
            j["block"] = block.to_literal();
            j["lengths"] = fs.lengths;
            j["delta"] = delta_of_set(fs.lengths);
            if (*cmd_cat_elem) {
                j["catenary"] = element_catenary(block, atoms, limits);
            } else {
                try {
                    j["catenary"] = element_catenary(block, atoms, limits);
                } catch (const ResourceError&) {
                    j["catenary"] = nullptr;
                }
            }
            j["factorization_count"] = fs.items.size();
            detail::emit(j, format, out);
            return kExitOk;
        }

        if (*cmd_daleth || *cmd_catenary || *cmd_rho) {
            Group g = Group::parse(group_spec);
            AtomSet atoms = AtomSet::enumerate(g, limits);
            json j;
            j["schema_version"] = kSchemaVersion;
            j["group"] = to_json(g);
            if (*cmd_rho && rho_k != 2) {
                j["k"] = rho_k;
                j["rho"] = rho(atoms, rho_k, limits);
                detail::emit(j, format, out);
                return kExitOk;
            }
            PairSweep sweep = atom_pair_sweep(atoms, limits);
            if (*cmd_daleth) {
                j["daleth"] = sweep.daleth;
                if (sweep.daleth_witness) {
                    j["witness"] = json::array({sweep.daleth_witness->first.to_literal(),
                                                sweep.daleth_witness->second.to_literal()});
                }
                j["daleth_floor"] = daleth_lower_bound(g);
                j["pairs_examined"] = sweep.pairs_examined;
                j["partial"] = sweep.partial();
            } else if (*cmd_catenary) {
                j.update(to_json(group_catenary(atoms, sweep, limits)));
                j["daleth"] = sweep.daleth;
            } else {
                j["k"] = rho_k;
                j["rho"] = sweep.rho2;
            }
            detail::emit(j, format, out);
            return sweep.partial() ? kExitResource : kExitOk;
        }

        if (*cmd_verify) {
            Group g = Group::parse(group_spec);
            std::vector<std::string> wanted = detail::split(targets, ',');
            const bool all = std::find(wanted.begin(), wanted.end(), "all") != wanted.end();
            auto want = [&](const std::string& t) {
                return all || std::find(wanted.begin(), wanted.end(), t) != wanted.end();
            };
            for (const auto& t : wanted) {
                static const std::vector<std::string> known{
                    "all",      "theorem-a", "theorem-1-1", "prop-3.5",
                    "prop-3.6", "prop-3.7",  "prop-3.8"};
                if (std::find(known.begin(), known.end(), t) == known.end()) {
                    throw DomainError("unknown verify target: " + t);
                }
            }

            AtomSet atoms = AtomSet::enumerate(g, limits);
            std::vector<Verdict> verdicts;
            if (want("theorem-a") || want("theorem-1-1")) {
                PairSweep sweep = atom_pair_sweep(atoms, limits);
                CatenaryBounds c = group_catenary(atoms, sweep, limits);
                if (want("theorem-a")) {
                    verdicts.push_back(verify_catenary_table(g, atoms.davenport(), c));
                }
                if (want("theorem-1-1")) {
                    verdicts.push_back(
                        verify_daleth_characterization(g, atoms.davenport(), sweep.daleth, c));
                }
            }
            if (want("prop-3.5")) {
                verdicts.push_back(
                    verify_pair_pattern(PairPattern::full_pair_three_lengths, atoms, limits));
            }
            if (want("prop-3.6")) {
                verdicts.push_back(
                    verify_pair_pattern(PairPattern::full_pair_two_lengths, atoms, limits));
            }
            if (want("prop-3.7")) {
                verdicts.push_back(
                    verify_pair_pattern(PairPattern::mixed_pair_two_lengths, atoms, limits));
            }
            if (want("prop-3.8")) {
                verdicts.push_back(
                    verify_pair_pattern(PairPattern::short_pair_two_lengths, atoms, limits));
            }

            json j;
            j["schema_version"] = kSchemaVersion;
            j["group"] = to_json(g);
            json vj;
            bool any_false = false;
            for (const auto& v : verdicts) {
                vj[v.target] = to_json(v);
                any_false = any_false || v.status == Verdict::Status::fail;
            }
            j["verdicts"] = std::move(vj);
            j["all_pass"] = !any_false;
            detail::emit(j, format, out);
            return any_false ? kExitVerdictFalse : kExitOk;
        }

        if (*cmd_report) {
            std::vector<std::string> specs =
                groups_list.empty() ? default_suite() : detail::split(groups_list, ';');
            std::vector<json> rows;
            bool any_false = false;
            for (const auto& spec : specs) {
                InvariantReport r = build_report(Group::parse(spec), limits);
                any_false = any_false || !r.all_verdicts_pass();
                rows.push_back(to_json(r));
            }
            detail::emit_rows(rows, format, out);
            return any_false ? kExitVerdictFalse : kExitOk;
        }

        if (*cmd_transfer) {
            Group g = Group::parse(group_spec);
            AtomSet atoms = AtomSet::enumerate(g, limits);
            TransferCheck t = transfer_check(atoms, models, seed, 5, limits);
            detail::emit(to_json(t, g, models, seed), format, out);
            return t.pass() ? kExitOk : kExitVerdictFalse;
        }
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "internal check failed: " << e.what() << '\n';
        return kExitVerdictFalse;
    }
    return kExitUsage;
}

} // namespace zsum::cli
