#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ann {

// Assignment of each point index to one of k cluster labels.
// `degenerate` marks results where fewer than the requested number of
// clusters ended up nonempty.
struct Partition {
    std::vector<std::int32_t> labels;
    std::int32_t k = 0;
    bool degenerate = false;
};

// Relabels clusters in order of first member index, so two partitions that
// agree as set systems compare equal element-wise. Unused labels are
// compacted away; k is preserved and the degenerate flag set accordingly.
Partition canonicalize(const Partition& p);

std::int32_t count_nonempty_clusters(std::span<const std::int32_t> labels);

}  // namespace ann
