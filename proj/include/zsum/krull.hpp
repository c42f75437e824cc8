#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zsum/factorization.hpp"

namespace zsum {

/// A simulated Krull monoid with divisor theory: a free monoid over opaque
/// primes, each prime labelled with its divisor class in G. Every class
/// must be hit by at least one prime (the standing hypothesis of the
/// transfer results). The monoid H consists of the prime multisets whose
/// class image is a zero-sum sequence.
class KrullModel {
public:
    KrullModel(Group g, std::vector<Elem> prime_classes, std::vector<std::string> names = {})
        : group_(std::move(g)), class_of_(std::move(prime_classes)), names_(std::move(names)) {
        std::vector<bool> hit(group_.size(), false);
        for (Elem c : class_of_) {
            if (c >= group_.size()) throw DomainError("prime class out of range");
            hit[c] = true;
        }
        for (bool h : hit) {
            if (!h) throw DomainError("every class must contain a prime divisor");
        }
        if (names_.empty()) {
            for (std::size_t i = 0; i < class_of_.size(); ++i) {
                names_.push_back("p" + std::to_string(i));
            }
        }
        if (names_.size() != class_of_.size()) {
            throw DomainError("prime name list does not match the prime count");
        }
    }

    /// Random model with 1..max_per_class primes in every class.
    static KrullModel random(const Group& g, unsigned max_per_class, std::mt19937_64& rng) {
        std::uniform_int_distribution<unsigned> dist(1, max_per_class);
        std::vector<Elem> classes;
        for (Elem c = 0; c < g.size(); ++c) {
            const unsigned k = dist(rng);
            for (unsigned i = 0; i < k; ++i) classes.push_back(c);
        }
        return KrullModel(Group(g), std::move(classes));
    }

    const Group& group() const { return group_; }
    std::size_t prime_count() const { return class_of_.size(); }
    Elem prime_class(std::size_t p) const { return class_of_[p]; }
    const std::string& prime_name(std::size_t p) const { return names_[p]; }

    /// Primes lying in a given class.
    std::vector<std::size_t> primes_in_class(Elem c) const {
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < class_of_.size(); ++p) {
            if (class_of_[p] == c) out.push_back(p);
        }
        return out;
    }

private:
    Group group_;
    std::vector<Elem> class_of_;
    std::vector<std::string> names_;
};

/// An element of the ambient free monoid F(P), as prime exponents.
struct KrullElement {
    std::vector<std::uint32_t> exps;

    explicit KrullElement(std::size_t prime_count) : exps(prime_count, 0) {}

    std::uint32_t length() const {
        std::uint32_t l = 0;
        for (std::uint32_t e : exps) l += e;
        return l;
    }

    friend bool operator==(const KrullElement&, const KrullElement&) = default;
    friend auto operator<=>(const KrullElement&, const KrullElement&) = default;
};

namespace detail {

inline Sequence push_forward(const KrullModel& m, const KrullElement& a) {
    Sequence s(m.group());
    for (std::size_t p = 0; p < a.exps.size(); ++p) {
        if (a.exps[p] != 0) s.push(m.prime_class(p), a.exps[p]);
    }
    return s;
}

} // namespace detail

/// The transfer homomorphism: a member of H maps to the zero-sum sequence
/// of its prime classes, counted with multiplicity.
inline Sequence beta(const KrullModel& m, const KrullElement& a) {
    if (a.exps.size() != m.prime_count()) throw DomainError("exponent vector size mismatch");
    Sequence s = detail::push_forward(m, a);
    if (s.sum() != m.group().zero()) {
        throw DomainError("element is not in the monoid (class sum is non-zero)");
    }
    return s;
}

/// Factorizations of `a` computed natively in H. The atoms of H are
/// exactly the prime multisets whose class image is a minimal zero-sum
/// sequence, so divisors are found by lifting each dividing atom of G to
/// prime exponents in all possible ways.
struct MonoidFactorizations {
    std::vector<std::vector<KrullElement>> items; // each: parts sorted canonically
    std::vector<std::uint32_t> lengths;           // sorted, distinct
};

namespace detail {

/// All H-atoms dividing `rem`, in canonical (exponent-vector) order.
inline std::vector<KrullElement> h_atom_divisors(const KrullModel& m,
                                                 const KrullElement& rem,
                                                 const AtomSet& atoms) {
    std::vector<KrullElement> out;
    const Sequence image = push_forward(m, rem);
    for (std::uint32_t ai : atoms.dividing(image, /*include_zero_atom=*/true)) {
        const Sequence& a = atoms.atom(ai);
        // lift class multiplicities to prime exponents: per class, all ways
        // of distributing v_g(a) over the primes of class g within rem
        std::vector<KrullElement> lifts{KrullElement(m.prime_count())};
        for (Elem gclass : a.support()) {
            const std::uint32_t need = a.multiplicity(gclass);
            const std::vector<std::size_t> primes = m.primes_in_class(gclass);
            std::vector<KrullElement> next;
            for (const KrullElement& partial : lifts) {
                // compositions of `need` over `primes` bounded by rem
                std::vector<std::uint32_t> take(primes.size(), 0);
                auto rec = [&](auto&& self, std::size_t pi, std::uint32_t left) -> void {
                    if (pi + 1 == primes.size()) {
                        if (left > rem.exps[primes[pi]]) return;
                        take[pi] = left;
                        KrullElement e = partial;
                        for (std::size_t q = 0; q < primes.size(); ++q) {
                            e.exps[primes[q]] += take[q];
                        }
                        next.push_back(std::move(e));
                        return;
                    }
                    const std::uint32_t cap = std::min(left, rem.exps[primes[pi]]);
                    for (std::uint32_t t = 0; t <= cap; ++t) {
                        take[pi] = t;
                        self(self, pi + 1, left - t);
                    }
                };
                if (!primes.empty()) rec(rec, 0, need);
            }
            lifts = std::move(next);
            if (lifts.empty()) break;
        }
        out.insert(out.end(), lifts.begin(), lifts.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline MonoidFactorizations factorizations_in_monoid(const KrullModel& m, const KrullElement& a,
                                                     const AtomSet& atoms,
                                                     const SearchLimits& limits = {}) {
    if (!m.group().same_spec(atoms.group())) {
        throw SpecMismatchError("model and atom set belong to different groups");
    }
    beta(m, a); // validates membership
    const std::uint32_t cap =
        limits.max_block_length != 0 ? limits.max_block_length : 2 * atoms.davenport();
    if (a.length() > cap) {
        throw ResourceError("element length exceeds the cap");
    }
    const Deadline deadline = Deadline::from(limits);

    MonoidFactorizations out;
    std::set<std::uint32_t> lens;
    std::vector<KrullElement> stack;
    std::uint64_t leaves = 0;

    // choose H-atom divisors in non-decreasing canonical order
    auto rec = [&](auto&& self, const KrullElement& rem, std::uint32_t rem_len) -> void {
        deadline.check("monoid factorization search");
        if (rem_len == 0) {
            if (++leaves > limits.max_factorizations) {
                throw ResourceError("factorization count cap exceeded");
            }
            out.items.push_back(stack);
            lens.insert(static_cast<std::uint32_t>(stack.size()));
            return;
        }
        for (const KrullElement& atom : detail::h_atom_divisors(m, rem, atoms)) {
            if (!stack.empty() && atom < stack.back()) continue;
            KrullElement next = rem;
            for (std::size_t p = 0; p < next.exps.size(); ++p) next.exps[p] -= atom.exps[p];
            stack.push_back(atom);
            self(self, next, rem_len - atom.length());
            stack.pop_back();
        }
    };
    rec(rec, a, a.length());
    std::sort(out.items.begin(), out.items.end());
    out.lengths.assign(lens.begin(), lens.end());
    return out;
}

/// L_H(a), computed natively in H. Contract: equals the length set of
/// beta(a) in the block monoid.
inline std::vector<std::uint32_t> lengths_in_monoid(const KrullModel& m, const KrullElement& a,
                                                    const AtomSet& atoms,
                                                    const SearchLimits& limits = {}) {
    return factorizations_in_monoid(m, a, atoms, limits).lengths;
}

/// Result of the randomized transfer check: for sampled members a of H,
/// the native length set must equal the length set of the image block.
struct TransferCheck {
    std::uint32_t models = 0;
    std::uint32_t samples = 0;
    std::uint32_t failures = 0;
    std::vector<std::string> failure_notes;
    bool pass() const { return failures == 0; }
};

/// Draws a random member of H: a random sequence of up to 2D(G) - 1 class
/// values closed by the negated sum, lifted to uniformly random primes.
inline KrullElement random_member(const KrullModel& m, const AtomSet& atoms,
                                  std::mt19937_64& rng) {
    const Group& g = m.group();
    const std::uint32_t target =
        std::uniform_int_distribution<std::uint32_t>(0, 2 * atoms.davenport() - 1)(rng);
    Sequence s(g);
    std::uniform_int_distribution<Elem> elem_dist(0, g.size() - 1);
    for (std::uint32_t i = 0; i < target; ++i) s.push(elem_dist(rng));
    if (s.sum() != g.zero()) s.push(g.neg(s.sum()));

    KrullElement a(m.prime_count());
    for (Elem e : s.support()) {
        const auto primes = m.primes_in_class(e);
        std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
        for (std::uint32_t c = 0; c < s.multiplicity(e); ++c) {
            a.exps[primes[pick(rng)]] += 1;
        }
    }
    return a;
}

inline TransferCheck transfer_check(const AtomSet& atoms, std::uint32_t models,
                                    std::uint64_t seed, std::uint32_t samples_per_model = 5,
                                    const SearchLimits& limits = {}) {
    TransferCheck out;
    std::mt19937_64 rng(seed);
    for (std::uint32_t mi = 0; mi < models; ++mi) {
        KrullModel model = KrullModel::random(atoms.group(), 3, rng);
        ++out.models;
        for (std::uint32_t si = 0; si < samples_per_model; ++si) {
            KrullElement a = random_member(model, atoms, rng);
            ++out.samples;
            auto native = lengths_in_monoid(model, a, atoms, limits);
            auto image = length_set(beta(model, a), atoms, limits);
            if (native != image) {
                ++out.failures;
                if (out.failure_notes.size() < 10) {
                    out.failure_notes.push_back("model " + std::to_string(mi) + " sample " +
                                                std::to_string(si) + ": image block " +
                                                beta(model, a).to_literal());
                }
            }
        }
    }
    return out;
}

} // namespace zsum
