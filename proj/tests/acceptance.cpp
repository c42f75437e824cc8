// Acceptance suite: runs every top-level criterion at its stated tolerance
// (all exact) and prints one PASS/FAIL line per criterion. Exit code 0 only
// when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zsum/report.hpp"

using namespace zsum;

namespace {

struct GroupData {
    Group group;
    AtomSet atoms;
    PairSweep sweep;
    CatenaryBounds catenary;
};

std::map<std::string, GroupData>& cache() {
    static std::map<std::string, GroupData> c;
    return c;
}

const GroupData& data_for(const std::string& spec) {
    auto it = cache().find(spec);
    if (it == cache().end()) {
        Group g = Group::parse(spec);
        AtomSet atoms = AtomSet::enumerate(g);
        PairSweep sweep = atom_pair_sweep(atoms);
        CatenaryBounds c = group_catenary(atoms, sweep);
        it = cache()
                 .emplace(spec, GroupData{std::move(g), std::move(atoms), std::move(sweep), c})
                 .first;
    }
    return it->second;
}

int failures = 0;
std::vector<std::string> notes;

void criterion(int id, const std::string& title, const std::function<bool()>& body) {
    notes.clear();
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const auto secs = std::chrono::duration_cast<std::chrono::duration<double>>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::printf("%s criterion-%d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs);
    if (!ok) {
        ++failures;
        if (!error.empty()) std::printf("     error: %s\n", error.c_str());
        for (const auto& n : notes) std::printf("     %s\n", n.c_str());
    }
    std::fflush(stdout);
}

bool expect(bool cond, const std::string& note) {
    if (!cond) notes.push_back(note);
    return cond;
}

const std::vector<std::string> kSuite{"3",   "4",   "5",     "6",     "2,2", "2,2,2", "2,2,2,2",
                                      "3,3", "2,4", "2,6", "2,2,4", "3,3,3", "4,4"};

} // namespace

int main() {
    criterion(1, "Davenport constants match the reference table exactly", [&] {
        const std::map<std::string, std::uint32_t> expected{
            {"3", 3},   {"2,2", 3}, {"4", 4},     {"2,2,2", 4}, {"5", 5},
            {"3,3", 5}, {"2,4", 5}, {"6", 6},     {"2,2,4", 6}, {"2,2,2,2", 5},
            {"2,6", 7}, {"3,3,3", 7}, {"4,4", 7}};
        bool good = true;
        for (const auto& [spec, d] : expected) {
            const auto& gd = data_for(spec);
            good &= expect(gd.atoms.davenport() == d,
                           spec + ": D = " + std::to_string(gd.atoms.davenport()) +
                               ", expected " + std::to_string(d));
        }
        return good;
    });

    criterion(2, "daleth values are exact across the suite", [&] {
        const std::map<std::string, std::uint32_t> expected{
            {"2,4", 4}, {"2,2,4", 5}, {"2,6", 6},     {"4,4", 5}, {"3", 3},
            {"2,2", 3}, {"3,3", 3},   {"4", 4},       {"2,2,2", 4}, {"3,3,3", 4}};
        bool good = true;
        for (const auto& [spec, want] : expected) {
            const auto& gd = data_for(spec);
            good &= expect(!gd.sweep.partial(), spec + ": sweep was partial");
            good &= expect(gd.sweep.daleth == want,
                           spec + ": daleth = " + std::to_string(gd.sweep.daleth) +
                               ", expected " + std::to_string(want));
        }
        return good;
    });

    criterion(3, "exact catenary degrees via closure and class lookup", [&] {
        std::map<std::string, std::uint32_t> expected{
            {"3", 3},   {"2,2", 3}, {"3,3", 3},  {"4", 4},     {"2,4", 4},
            {"2,2,2", 4}, {"3,3,3", 4}, {"4,4", 5}, {"2,2,4", 5}, {"2,6", 6}};
        // c = n for cyclic groups up to 7, c = r + 1 for C2^r, r in [2, 4]
        for (int n = 3; n <= 7; ++n) expected[std::to_string(n)] = static_cast<std::uint32_t>(n);
        expected["2,2,2,2"] = 5;
        bool good = true;
        for (const auto& [spec, want] : expected) {
            const auto& gd = data_for(spec);
            good &= expect(gd.catenary.exact(), spec + ": catenary not exact");
            good &= expect(gd.catenary.lo == want,
                           spec + ": c = " + std::to_string(gd.catenary.lo) + ", expected " +
                               std::to_string(want));
        }
        return good;
    });

    criterion(4, "daleth characterization biconditional holds on the whole suite", [&] {
        const std::set<std::string> special{"2,4", "2,2,4", "2,6"};
        bool good = true;
        for (const auto& spec : kSuite) {
            const auto& gd = data_for(spec);
            Verdict v = verify_daleth_characterization(gd.group, gd.atoms.davenport(),
                                                       gd.sweep.daleth, gd.catenary);
            good &= expect(v.status == Verdict::Status::pass,
                           spec + ": verdict " + to_string(v.status) + " (" + v.detail + ")");
            const bool hits = gd.sweep.daleth == gd.atoms.davenport() - 1;
            good &= expect(hits == (special.count(spec) == 1),
                           spec + ": daleth = D - 1 should hold exactly on the special family");
        }
        return good;
    });

    criterion(5, "no full-length pair realizes the two-element length set", [&] {
        bool good = true;
        for (const char* spec : {"2,4", "2,6", "2,2,4", "3,3,3", "4,4"}) {
            const auto& gd = data_for(spec);
            Verdict v = verify_pair_pattern(PairPattern::full_pair_two_lengths, gd.atoms);
            good &= expect(v.status == Verdict::Status::pass && !v.witness.has_value(),
                           std::string(spec) + ": " + v.detail);
            good &= expect(v.pairs_searched > 0,
                           std::string(spec) + ": emptiness certificate searched no pairs");
        }
        return good;
    });

    criterion(6, "pair-pattern witnesses exist exactly on the stated classes", [&] {
        bool good = true;
        for (const auto& spec : kSuite) {
            const auto& gd = data_for(spec);
            if (gd.atoms.davenport() < 5) continue;
            for (PairPattern p :
                 {PairPattern::full_pair_three_lengths, PairPattern::mixed_pair_two_lengths,
                  PairPattern::short_pair_two_lengths}) {
                Verdict v = verify_pair_pattern(p, gd.atoms);
                good &= expect(v.status == Verdict::Status::pass,
                               spec + " " + target_name(p) + ": " + v.detail);
            }
        }
        // the explicit three-length construction U = e1 e2^(2n-1) (e1+e2)
        {
            const auto& gd = data_for("2,4");
            Sequence u = Sequence::parse(gd.group, "(1,0) (0,1)^3 (1,1)");
            good &= expect(is_atom(u), "C2xC4: construction is not an atom");
            good &= expect(length_set(u.plus(u.negated()), gd.atoms) ==
                               std::vector<std::uint32_t>{2, 4, 5},
                           "C2xC4: construction lengths differ from {2,4,5}");
        }
        {
            const auto& gd = data_for("2,6");
            Sequence u = Sequence::parse(gd.group, "(1,0) (0,1)^5 (1,1)");
            good &= expect(is_atom(u), "C2xC6: construction is not an atom");
            good &= expect(length_set(u.plus(u.negated()), gd.atoms) ==
                               std::vector<std::uint32_t>{2, 6, 7},
                           "C2xC6: construction lengths differ from {2,6,7}");
        }
        return good;
    });

    criterion(7, "rho_2 equals the Davenport constant on every suite group", [&] {
        bool good = true;
        for (const auto& spec : kSuite) {
            const auto& gd = data_for(spec);
            good &= expect(gd.sweep.rho2 == gd.atoms.davenport(),
                           spec + ": rho_2 = " + std::to_string(gd.sweep.rho2) + ", D = " +
                               std::to_string(gd.atoms.davenport()));
        }
        return good;
    });

    criterion(8, "property suites: metric axioms, oracles, transfer", [&] {
        bool good = true;

        // distance metric axioms on >= 10^4 sampled factorization pairs
        {
            std::mt19937_64 rng(1'000'003);
            std::uint64_t pairs = 0, triples = 0;
            for (const char* spec : {"2,4", "3,3", "6", "2,2,2", "8", "2,2,2,2", "2,6"}) {
                const auto& gd = data_for(spec);
                const std::uint32_t cap = 2 * gd.atoms.davenport() - 1;
                for (int iter = 0; iter < 400 && pairs < 40'000; ++iter) {
                    Sequence b = oracles::random_block(
                        gd.group, std::min<std::uint32_t>(cap - iter % 4, cap), rng);
                    auto items = factorizations(b, gd.atoms).items;
                    for (std::size_t i = 0; i < items.size() && good; ++i) {
                        for (std::size_t j = i; j < items.size(); ++j) {
                            const std::uint32_t d = distance(items[i], items[j]);
                            ++pairs;
                            good &= expect(d == distance(items[j], items[i]),
                                           "distance asymmetry");
                            good &= expect((d == 0) == (items[i] == items[j]),
                                           "distance identity failure");
                            const std::uint32_t li = items[i].length();
                            const std::uint32_t lj = items[j].length();
                            good &= expect(d >= (li > lj ? li - lj : lj - li) &&
                                               d <= std::max(li, lj),
                                           "distance out of bounds");
                        }
                        for (std::size_t j = i + 1; j < items.size() && triples < 200'000; ++j) {
                            for (std::size_t k = j + 1; k < items.size(); ++k) {
                                ++triples;
                                good &= expect(distance(items[i], items[k]) <=
                                                   distance(items[i], items[j]) +
                                                       distance(items[j], items[k]),
                                               "triangle inequality failure");
                            }
                        }
                    }
                }
            }
            good &= expect(pairs >= 10'000, "only " + std::to_string(pairs) + " pairs sampled");
        }

        // atom sets equal the brute-force enumeration for |G| <= 8
        for (const char* spec : {"3", "4", "2,2", "5", "6", "7", "8", "2,4", "2,2,2"}) {
            const auto& gd = data_for(spec);
            std::uint32_t formula = 1;
            for (int f : gd.group.invariant_factors()) formula += static_cast<std::uint32_t>(f - 1);
            auto expected = oracles::brute_atoms(gd.group, formula + 1);
            bool same = expected.size() == gd.atoms.size();
            for (std::size_t i = 0; same && i < expected.size(); ++i) {
                same = expected[i] == gd.atoms.atom(i);
            }
            good &= expect(same, std::string(spec) + ": atom set differs from brute force");
        }

        // subsum DP against the exponential oracle on >= 10^3 random sequences
        {
            std::mt19937_64 rng(77);
            const std::vector<Group> groups{Group::parse("5"), Group::parse("2,4"),
                                            Group::parse("3,3"), Group::parse("12"),
                                            Group::parse("2,2,2"), Group::parse("2,8")};
            int checked = 0;
            for (int iter = 0; iter < 1200; ++iter) {
                const Group& g = groups[static_cast<std::size_t>(iter) % groups.size()];
                std::uniform_int_distribution<std::uint32_t> len(0, 12);
                Sequence s = oracles::random_sequence(g, len(rng), rng);
                good &= expect(s.subsums() == oracles::brute_subsums(s), "subsum DP mismatch");
                ++checked;
            }
            good &= expect(checked >= 1000, "too few subsum samples");
        }

        // bottleneck catenary against the binary-search oracle on >= 100 blocks
        {
            std::mt19937_64 rng(31'337);
            int checked = 0;
            for (int iter = 0; checked < 120 && iter < 2000; ++iter) {
                const auto& gd = data_for(kSuite[static_cast<std::size_t>(iter) % 8]);
                const std::uint32_t cap = 2 * gd.atoms.davenport() - 1;
                Sequence b = oracles::random_block(
                    gd.group, std::min<std::uint32_t>(4 + iter % 6, cap), rng);
                auto fs = factorizations(b, gd.atoms);
                if (fs.items.size() < 2 || fs.items.size() > 200) continue;
                good &= expect(element_catenary(b, gd.atoms) == oracles::naive_catenary(fs.items),
                               "catenary oracle mismatch on " + b.to_literal());
                ++checked;
            }
            good &= expect(checked >= 100, "only " + std::to_string(checked) + " blocks checked");
        }

        // transfer check: 200 random models across small groups, zero failures
        {
            std::uint32_t models = 0, fail = 0;
            for (const char* spec : {"3", "2,2", "4", "5", "6", "2,4", "2,2,2", "8"}) {
                const auto& gd = data_for(spec);
                TransferCheck t = transfer_check(gd.atoms, 25, 900'001);
                models += t.models;
                fail += t.failures;
            }
            good &= expect(models >= 200, "only " + std::to_string(models) + " models checked");
            good &= expect(fail == 0, std::to_string(fail) + " transfer failures");
        }

        return good;
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
