#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>

#include "zsum/errors.hpp"

namespace zsum {

/// Caps for the enumeration and search routines. A zero value means
/// "derive a default from the group at the call site" where noted.
struct SearchLimits {
    /// Largest group order accepted by enumeration entry points.
    std::uint32_t max_group_order = 32;

    /// Cap on block length for factorization searches; 0 means twice the
    /// Davenport constant of the group at hand.
    std::uint32_t max_block_length = 0;

    /// Cap on atom candidate length; 0 means 2 * (1 + sum(n_i - 1)).
    std::uint32_t max_atom_length = 0;

    /// Cap on the number of factorizations collected for a single block.
    std::uint64_t max_factorizations = 200'000;

    /// Cap on |Z(B)| for the element catenary degree (the edge list is
    /// quadratic in it).
    std::uint32_t max_catenary_factorizations = 4096;

    /// Wall-clock budget per group-level task. Zero disables the deadline.
    std::chrono::milliseconds timeout{600'000};

    /// Worker threads for partitionable searches; 0 means hardware default.
    unsigned workers = 0;

    unsigned effective_workers() const {
        if (workers != 0) return workers;
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
};

/// Wall-clock guard. check() is cheap enough to call from inner loops when
/// throttled by the caller (e.g. every few thousand nodes).
class Deadline {
public:
    Deadline() = default;

    explicit Deadline(std::chrono::milliseconds budget) {
        if (budget.count() > 0) {
            end_ = std::chrono::steady_clock::now() + budget;
        }
    }

    static Deadline from(const SearchLimits& limits) { return Deadline(limits.timeout); }

    bool expired() const {
        return end_ && std::chrono::steady_clock::now() > *end_;
    }

    void check(const char* what) const {
        if (expired()) {
            throw ResourceError(std::string("wall-clock budget exceeded: ") + what);
        }
    }

private:
    std::optional<std::chrono::steady_clock::time_point> end_;
};

} // namespace zsum
