#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

/// Index of a group element in the canonical (lexicographic-residue) order.
using Elem = std::uint32_t;

/// Hard ceiling on |G|: subsum sets are kept as 64-bit element masks.
inline constexpr std::uint32_t kHardGroupOrderLimit = 64;

/// Reduce a list of cyclic orders to invariant-factor form n_1 | ... | n_r
/// (Smith normal form of the diagonal relation matrix: repeated gcd/lcm
/// exchanges on pairs). Factors equal to 1 are dropped.
inline std::vector<int> normalize_invariant_factors(std::vector<long long> orders) {
    for (long long v : orders) {
        if (v <= 0) throw ParseError("cyclic orders must be positive integers");
    }
    std::erase(orders, 1LL);
    if (orders.empty()) {
        throw ParseError("the trivial group is not supported (need at least one order >= 2)");
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            for (std::size_t j = i + 1; j < orders.size(); ++j) {
                if (orders[j] % orders[i] != 0) {
                    long long g = std::gcd(orders[i], orders[j]);
                    long long l = orders[i] / g * orders[j];
                    orders[i] = g;
                    orders[j] = l;
                    changed = true;
                }
            }
        }
    }
    std::erase(orders, 1LL);
    std::sort(orders.begin(), orders.end());
    std::vector<int> out;
    out.reserve(orders.size());
    for (long long v : orders) out.push_back(static_cast<int>(v));
    return out;
}

/// A finite abelian group in invariant-factor normal form. Elements are
/// indices into the lexicographic order of residue vectors, so index 0 is
/// the neutral element and index comparison is the global canonical order.
///
/// Instances are immutable; copies share the arithmetic tables.
class Group {
public:
    /// Builds C_{d_1} + ... + C_{d_k} normalized to invariant factors.
    explicit Group(std::vector<long long> orders)
        : t_(build(normalize_invariant_factors(std::move(orders)))) {}

    explicit Group(std::vector<int> orders)
        : Group(std::vector<long long>(orders.begin(), orders.end())) {}

    /// Accepts "2,4" (comma-separated orders) or "C2xC4"; whitespace is
    /// ignored, both forms are normalized.
    static Group parse(std::string_view text);

    const std::vector<int>& invariant_factors() const { return t_->factors; }
    int rank() const { return static_cast<int>(t_->factors.size()); }
    int exponent() const { return t_->factors.back(); }
    std::uint32_t size() const { return t_->n; }

    Elem zero() const { return 0; }
    Elem add(Elem a, Elem b) const { return t_->add[a * t_->n + b]; }
    Elem neg(Elem a) const { return t_->neg[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    /// k * g for any k >= 0.
    Elem times(Elem g, std::uint64_t k) const {
        k %= static_cast<std::uint64_t>(order(g));
        Elem acc = 0;
        for (std::uint64_t i = 0; i < k; ++i) acc = add(acc, g);
        return acc;
    }

    /// Least k >= 1 with k*g = 0.
    int order(Elem a) const { return t_->ord[a]; }

    /// Residue vector of an element, length rank().
    std::span<const int> residues(Elem a) const {
        return {t_->res.data() + static_cast<std::size_t>(a) * t_->factors.size(),
                t_->factors.size()};
    }

    /// Element with the given residues; values are reduced mod n_i
    /// component-wise (negative values allowed).
    Elem from_residues(std::span<const long long> r) const {
        if (r.size() != t_->factors.size()) {
            throw DomainError("residue vector length does not match the group rank");
        }
        Elem idx = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            long long m = t_->factors[i];
            long long v = ((r[i] % m) + m) % m;
            idx = idx * static_cast<Elem>(m) + static_cast<Elem>(v);
        }
        return idx;
    }

    /// All elements in canonical order. Indices are 0..size()-1, so the
    /// list is simply the identity enumeration.
    std::vector<Elem> elements() const {
        std::vector<Elem> out(t_->n);
        std::iota(out.begin(), out.end(), Elem{0});
        return out;
    }

    bool same_spec(const Group& o) const {
        return t_ == o.t_ || t_->factors == o.t_->factors;
    }

    bool is_cyclic() const { return rank() == 1; }
    bool is_elementary_2() const { return exponent() == 2; }

    bool is_p_group() const {
        int m = exponent();
        int p = smallest_prime_factor(m);
        while (m % p == 0) m /= p;
        return m == 1;
    }

    /// "C2xC4" display form.
    std::string name() const {
        std::string s;
        for (int f : t_->factors) {
            if (!s.empty()) s += 'x';
            s += 'C';
            s += std::to_string(f);
        }
        return s;
    }

    /// "2,4" form accepted back by parse().
    std::string spec_string() const {
        std::string s;
        for (int f : t_->factors) {
            if (!s.empty()) s += ',';
            s += std::to_string(f);
        }
        return s;
    }

private:
    struct Tables {
        std::vector<int> factors;
        std::uint32_t n = 0;
        std::vector<Elem> add;
        std::vector<Elem> neg;
        std::vector<int> ord;
        std::vector<int> res; // n * rank, row-major
    };

    static int smallest_prime_factor(int m) {
        for (int p = 2; p * p <= m; ++p) {
            if (m % p == 0) return p;
        }
        return m;
    }

    static std::shared_ptr<const Tables> build(std::vector<int> factors) {
        auto t = std::make_shared<Tables>();
        t->factors = std::move(factors);
        std::uint64_t n = 1;
        for (int f : t->factors) {
            n *= static_cast<std::uint64_t>(f);
            if (n > kHardGroupOrderLimit) {
                throw ResourceError("group order exceeds the 64-element limit");
            }
        }
        t->n = static_cast<std::uint32_t>(n);
        const std::size_t r = t->factors.size();

        t->res.resize(static_cast<std::size_t>(t->n) * r);
        for (Elem e = 0; e < t->n; ++e) {
            Elem rest = e;
            for (std::size_t i = r; i-- > 0;) {
                t->res[static_cast<std::size_t>(e) * r + i] =
                    static_cast<int>(rest % static_cast<Elem>(t->factors[i]));
                rest /= static_cast<Elem>(t->factors[i]);
            }
        }

        t->add.resize(static_cast<std::size_t>(t->n) * t->n);
        for (Elem a = 0; a < t->n; ++a) {
            for (Elem b = 0; b < t->n; ++b) {
                Elem idx = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    int m = t->factors[i];
                    int v = t->res[static_cast<std::size_t>(a) * r + i] +
                            t->res[static_cast<std::size_t>(b) * r + i];
                    if (v >= m) v -= m;
                    idx = idx * static_cast<Elem>(m) + static_cast<Elem>(v);
                }
                t->add[static_cast<std::size_t>(a) * t->n + b] = idx;
            }
        }

        t->neg.resize(t->n);
        t->ord.resize(t->n);
        for (Elem a = 0; a < t->n; ++a) {
            Elem idx = 0;
            long long ordv = 1;
            for (std::size_t i = 0; i < r; ++i) {
                int m = t->factors[i];
                int v = t->res[static_cast<std::size_t>(a) * r + i];
                int nv = v == 0 ? 0 : m - v;
                idx = idx * static_cast<Elem>(m) + static_cast<Elem>(nv);
                ordv = std::lcm(ordv, static_cast<long long>(m / std::gcd(m, v == 0 ? m : v)));
            }
            t->neg[a] = idx;
            t->ord[a] = static_cast<int>(ordv);
        }
        return t;
    }

    std::shared_ptr<const Tables> t_;
};

inline Group Group::parse(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw ParseError("empty group spec");

    std::vector<long long> orders;
    auto parse_int = [](std::string_view tok) -> long long {
        if (tok.empty()) throw ParseError("empty order in group spec");
        long long v = 0;
        for (char c : tok) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw ParseError("invalid character in group spec: '" + std::string(1, c) + "'");
            }
            v = v * 10 + (c - '0');
            if (v > 1'000'000) throw ParseError("order out of range in group spec");
        }
        return v;
    };

    if (s[0] == 'C' || s[0] == 'c') {
        std::size_t pos = 0;
        while (pos < s.size()) {
            if (s[pos] != 'C' && s[pos] != 'c') {
                throw ParseError("expected 'C<order>' at position " + std::to_string(pos));
            }
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            orders.push_back(parse_int(std::string_view(s).substr(start, pos - start)));
            if (pos < s.size()) {
                if (s[pos] != 'x' && s[pos] != 'X' && s[pos] != '*') {
                    throw ParseError("expected 'x' between cyclic factors");
                }
                ++pos;
            }
        }
    } else {
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t comma = s.find(',', start);
            std::string_view tok = std::string_view(s).substr(
                start, comma == std::string_view::npos ? s.size() - start : comma - start);
            orders.push_back(parse_int(tok));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return Group(std::move(orders));
}

/// Closure of gens together with 0 under the group law, sorted canonically.
inline std::vector<Elem> subgroup_generated(const Group& g, std::span<const Elem> gens) {
    std::uint64_t seen = 1; // bit e set <=> e in subgroup
    std::vector<Elem> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Elem x : gens) {
            Elem y = g.add(queue[head], x);
            if (!(seen >> y & 1)) {
                seen |= std::uint64_t{1} << y;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

/// A group automorphism, stored as the full permutation of element indices
/// together with the images of the standard basis.
class Automorphism {
public:
    Automorphism(std::vector<Elem> basis_images, std::vector<Elem> perm)
        : basis_images_(std::move(basis_images)), perm_(std::move(perm)) {}

    Elem operator()(Elem x) const { return perm_[x]; }
    const std::vector<Elem>& basis_images() const { return basis_images_; }
    const std::vector<Elem>& permutation() const { return perm_; }

    /// (*this) after `inner`.
    Automorphism compose(const Automorphism& inner) const {
        std::vector<Elem> perm(perm_.size());
        for (Elem x = 0; x < perm.size(); ++x) perm[x] = perm_[inner.perm_[x]];
        std::vector<Elem> imgs(basis_images_.size());
        for (std::size_t i = 0; i < imgs.size(); ++i) imgs[i] = perm_[inner.basis_images_[i]];
        return Automorphism(std::move(imgs), std::move(perm));
    }

    friend bool operator==(const Automorphism& a, const Automorphism& b) {
        return a.perm_ == b.perm_;
    }
    friend auto operator<=>(const Automorphism& a, const Automorphism& b) {
        return a.perm_ <=> b.perm_;
    }

private:
    std::vector<Elem> basis_images_;
    std::vector<Elem> perm_;
};

/// Every automorphism of the group, complete and duplicate-free, in a
/// deterministic order. Brute force over basis-image tuples whose orders
/// divide the matching invariant factor, keeping the bijective ones.
inline std::vector<Automorphism> automorphisms(const Group& g) {
    const std::uint32_t n = g.size();
    const int r = g.rank();

    std::vector<std::vector<Elem>> candidates(static_cast<std::size_t>(r));
    double tuple_count = 1.0;
    for (int i = 0; i < r; ++i) {
        const int ni = g.invariant_factors()[static_cast<std::size_t>(i)];
        for (Elem e = 0; e < n; ++e) {
            if (ni % g.order(e) == 0) candidates[static_cast<std::size_t>(i)].push_back(e);
        }
        tuple_count *= static_cast<double>(candidates[static_cast<std::size_t>(i)].size());
    }
    if (tuple_count > 1e8) {
        throw ResourceError("automorphism search space too large for " + g.name());
    }

    // mult[i][j] = j * image_i, refreshed per candidate tuple
    std::vector<Automorphism> out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    std::vector<std::vector<Elem>> mult(static_cast<std::size_t>(r));
    std::vector<Elem> perm(n);

    auto rebuild_mult = [&](int i) {
        const int ni = g.invariant_factors()[static_cast<std::size_t>(i)];
        auto& m = mult[static_cast<std::size_t>(i)];
        m.assign(static_cast<std::size_t>(ni), 0);
        Elem img = candidates[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
        for (int j = 1; j < ni; ++j) m[static_cast<std::size_t>(j)] = g.add(m[static_cast<std::size_t>(j - 1)], img);
    };

    for (int i = 0; i < r; ++i) rebuild_mult(i);

    while (true) {
        std::uint64_t seen = 0;
        bool bijective = true;
        for (Elem x = 0; x < n && bijective; ++x) {
            auto res = g.residues(x);
            Elem y = 0;
            for (int i = 0; i < r; ++i) {
                y = g.add(y, mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(res[static_cast<std::size_t>(i)])]);
            }
            perm[x] = y;
            if (seen >> y & 1) {
                bijective = false;
            } else {
                seen |= std::uint64_t{1} << y;
            }
        }
        if (bijective) {
            std::vector<Elem> imgs(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i) {
                imgs[static_cast<std::size_t>(i)] =
                    candidates[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
            }
            out.emplace_back(std::move(imgs), perm);
        }
        // odometer
        int i = r - 1;
        while (i >= 0) {
            if (++pick[static_cast<std::size_t>(i)] < candidates[static_cast<std::size_t>(i)].size()) {
                rebuild_mult(i);
                break;
            }
            pick[static_cast<std::size_t>(i)] = 0;
            rebuild_mult(i);
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

} // namespace zsum
