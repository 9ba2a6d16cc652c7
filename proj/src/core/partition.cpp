#include "core/partition.hpp"

#include <algorithm>

#include "core/common.hpp"

namespace ann {

std::int32_t count_nonempty_clusters(std::span<const std::int32_t> labels) {
    std::vector<bool> seen;
    for (std::int32_t l : labels) {
        if (l < 0) throw ArgumentError("labels must be nonnegative");
        if (static_cast<std::size_t>(l) >= seen.size()) seen.resize(static_cast<std::size_t>(l) + 1);
        seen[static_cast<std::size_t>(l)] = true;
    }
    return static_cast<std::int32_t>(std::count(seen.begin(), seen.end(), true));
}

Partition canonicalize(const Partition& p) {
    Partition out;
    out.k = p.k;
    out.labels.resize(p.labels.size(), -1);
    std::vector<std::int32_t> remap;
    std::int32_t next = 0;
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        const std::int32_t l = p.labels[i];
        if (l < 0) throw ArgumentError("canonicalize: labels must be nonnegative");
        if (static_cast<std::size_t>(l) >= remap.size()) remap.resize(static_cast<std::size_t>(l) + 1, -1);
        if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next++;
        out.labels[i] = remap[static_cast<std::size_t>(l)];
    }
    out.degenerate = p.degenerate || next < p.k;
    return out;
}

}  // namespace ann
