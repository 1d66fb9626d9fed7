#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ral/error.hpp"

namespace ral {

// Address of one tile: image index plus the pixel coordinates of the tile's
// top-left corner. Ordering is lexicographic (image, row, col) and is the
// tie-break order used everywhere in the library.
struct RegionId {
    int32_t image_index = 0;
    int32_t row = 0;
    int32_t col = 0;

    auto operator<=>(const RegionId&) const = default;
};

struct ImageDim {
    int32_t index = 0;
    int32_t height = 0;
    int32_t width = 0;
};

// Per-region record: id plus the actual pixel extent, which is smaller than
// the nominal region size for tiles clipped at the image border.
struct RegionInfo {
    RegionId id;
    int32_t height = 0;
    int32_t width = 0;
};

// Center pixel used for spatial distances: top-left + floor(extent/2).
struct RegionCenter {
    int32_t image_index = 0;
    int32_t row = 0;
    int32_t col = 0;
};

// Immutable tiling of an image catalog into non-overlapping region_size x
// region_size tiles (border tiles clipped to the image). Regions are stored
// in RegionId order and addressed by their dense ordinal in that order.
class RegionGrid {
public:
    RegionGrid(std::vector<ImageDim> images, int32_t region_size);

    int32_t region_size() const { return region_size_; }
    const std::vector<ImageDim>& images() const { return images_; }
    const std::vector<RegionInfo>& regions() const { return regions_; }
    size_t region_count() const { return regions_.size(); }

    const RegionInfo& region(size_t ordinal) const { return regions_[ordinal]; }
    RegionCenter center(size_t ordinal) const;

    // Dense index of an id in RegionId order; throws if the id does not
    // name a region of this grid.
    size_t ordinal_of(const RegionId& id) const;
    bool contains(const RegionId& id) const;

    const ImageDim& image(int32_t image_index) const;

    uint64_t total_pixels() const { return total_pixels_; }

private:
    int32_t region_size_;
    std::vector<ImageDim> images_;
    std::vector<RegionInfo> regions_;
    std::vector<size_t> image_offset_;   // regions_ offset per catalog position
    std::vector<size_t> image_pos_;      // image_index -> catalog position
    uint64_t total_pixels_ = 0;
};

// build_grid validates the catalog and tiles every image. Image indices are
// assigned 0..n-1 in catalog order.
RegionGrid build_grid(const std::vector<std::pair<int32_t, int32_t>>& image_dims_hw,
                      int32_t region_size);

enum class PoolMembership : uint8_t { Unlabeled = 0, Labeled = 1, Batch = 2 };

enum class CommitStatus { Committed, EmptyBatchNoop };

// Mutable labeled/batch/unlabeled partition of a grid's regions across AL
// iterations. The three sets are disjoint and cover the grid at all times.
class PoolState {
public:
    explicit PoolState(const RegionGrid& grid);

    size_t labeled_count() const { return labeled_count_; }
    size_t batch_count() const { return batch_.size(); }
    size_t unlabeled_count() const {
        return membership_.size() - labeled_count_ - batch_.size();
    }
    uint32_t iteration() const { return iteration_; }

    PoolMembership membership(size_t ordinal) const { return membership_[ordinal]; }

    // Ordinals in ascending (RegionId) order.
    std::vector<size_t> labeled_ordinals() const;
    std::vector<size_t> unlabeled_ordinals() const;
    const std::vector<size_t>& batch_ordinals() const { return batch_; }

    void mark_labeled(size_t ordinal);

    // Moves the given unlabeled regions into the staged batch, in the given
    // order. Throws if any region is not currently unlabeled.
    void stage_batch(const std::vector<size_t>& ordinals);

    // Batch members become labeled and the iteration counter advances.
    CommitStatus commit_batch();

    void set_iteration(uint32_t t) { iteration_ = t; }

private:
    std::vector<PoolMembership> membership_;
    std::vector<size_t> batch_;
    size_t labeled_count_ = 0;
    uint32_t iteration_ = 0;
};

// Uniform random initial pool: `count` regions sampled without replacement
// under the seeded generator. Deterministic in (grid, count, seed).
PoolState init_labeled_pool(const RegionGrid& grid, size_t count, uint64_t seed);

// Number of regions selected at AL iteration t: `base` for t=0, then
// (2^t - 2^(t-1)) * base.
uint64_t batch_schedule(uint32_t t, uint64_t base);

// JSON codec for grid + pool state (stable field order):
// {"region_size":..,"images":[{"index","h","w"}],"labeled":[[img,row,col]..],"iteration":..}
std::string pool_state_to_json(const RegionGrid& grid, const PoolState& pool);
std::pair<RegionGrid, PoolState> pool_state_from_json(const std::string& text);

void save_pool_state(const RegionGrid& grid, const PoolState& pool, const std::string& path);
std::pair<RegionGrid, PoolState> load_pool_state(const std::string& path);

} // namespace ral
