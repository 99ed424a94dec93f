#pragma once

// The overorders S ⊆ T ⊆ O_K, built by a breadth-first closure of minimal
// extensions.

#include "cmorder/cmtype.hpp"
#include "cmorder/order.hpp"

#include <json.hpp>

#include <map>
#include <vector>

namespace cmorder {

/// The smallest subring of K containing U and x.
Order ring_closure(const Order& u, const std::vector<AlgElement>& xs);

/// All V ⊋ U minimal among orders. Throws MathError when U is maximal.
std::vector<Order> minimal_overorders(const Order& u);

struct OverorderLattice {
    Order base;
    /// Sorted by [O_K : T], then by canonical basis; O_K first, base last.
    std::vector<Order> members;
};

/// `threads` > 1 expands each BFS layer on a worker pool; the result does
/// not depend on it.
OverorderLattice overorders(const Order& s, unsigned threads = 1);

struct OverorderSummary {
    std::vector<unsigned> types;  ///< parallel to members
    std::size_t gorenstein = 0;
    std::map<unsigned, std::size_t> by_type;
    unsigned max_type = 1;
};

OverorderSummary classify_overorders(const OverorderLattice& lat, unsigned threads = 1);

nlohmann::json to_json(const OverorderLattice& lat, const OverorderSummary& summary);

/// Runs f(i) for i in [0, n) on up to `threads` workers, rethrowing the
/// first exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

}  // namespace cmorder
