#include "ral/region.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ral/io_util.hpp"
#include "ral/rng.hpp"

namespace ral {

namespace {

int32_t ceil_div(int32_t a, int32_t b) { return (a + b - 1) / b; }

} // namespace

RegionGrid::RegionGrid(std::vector<ImageDim> images, int32_t region_size)
    : region_size_(region_size), images_(std::move(images)) {
    if (region_size_ < 1) throw_invalid("region_size must be >= 1");
    if (images_.empty()) throw_invalid("image catalog is empty");

    int32_t max_index = -1;
    for (const auto& im : images_) max_index = std::max(max_index, im.index);
    image_pos_.assign(static_cast<size_t>(max_index) + 1, SIZE_MAX);

    size_t pos = 0;
    for (const auto& im : images_) {
        if (im.height < 1 || im.width < 1)
            throw_invalid("image " + std::to_string(im.index) + " has zero-sized dimension");
        if (im.index < 0) throw_invalid("negative image index");
        if (image_pos_[static_cast<size_t>(im.index)] != SIZE_MAX)
            throw_invalid("duplicate image index " + std::to_string(im.index));
        image_pos_[static_cast<size_t>(im.index)] = pos++;
        total_pixels_ += static_cast<uint64_t>(im.height) * static_cast<uint64_t>(im.width);
    }
    // Regions must come out in RegionId order; require ascending catalog indices.
    for (size_t i = 1; i < images_.size(); ++i) {
        if (images_[i].index <= images_[i - 1].index)
            throw_invalid("image catalog must be sorted by ascending index");
    }

    for (const auto& im : images_) {
        image_offset_.push_back(regions_.size());
        const int32_t n = region_size_;
        for (int32_t r = 0; r < im.height; r += n) {
            for (int32_t c = 0; c < im.width; c += n) {
                RegionInfo info;
                info.id = RegionId{im.index, r, c};
                info.height = std::min(n, im.height - r);
                info.width = std::min(n, im.width - c);
                regions_.push_back(info);
            }
        }
    }
}

RegionCenter RegionGrid::center(size_t ordinal) const {
    const RegionInfo& info = regions_[ordinal];
    return RegionCenter{info.id.image_index,
                        info.id.row + info.height / 2,
                        info.id.col + info.width / 2};
}

const ImageDim& RegionGrid::image(int32_t image_index) const {
    if (image_index < 0 || static_cast<size_t>(image_index) >= image_pos_.size() ||
        image_pos_[static_cast<size_t>(image_index)] == SIZE_MAX)
        throw_invalid("unknown image index " + std::to_string(image_index));
    return images_[image_pos_[static_cast<size_t>(image_index)]];
}

size_t RegionGrid::ordinal_of(const RegionId& id) const {
    if (id.image_index < 0 || static_cast<size_t>(id.image_index) >= image_pos_.size())
        throw_invalid("region id names unknown image " + std::to_string(id.image_index));
    const size_t pos = image_pos_[static_cast<size_t>(id.image_index)];
    if (pos == SIZE_MAX)
        throw_invalid("region id names unknown image " + std::to_string(id.image_index));
    const ImageDim& im = images_[pos];
    const int32_t n = region_size_;
    if (id.row < 0 || id.col < 0 || id.row >= im.height || id.col >= im.width ||
        id.row % n != 0 || id.col % n != 0)
        throw_invalid("region id (" + std::to_string(id.image_index) + "," +
                      std::to_string(id.row) + "," + std::to_string(id.col) +
                      ") is not on the grid");
    const int32_t cols = ceil_div(im.width, n);
    return image_offset_[pos] +
           static_cast<size_t>(id.row / n) * static_cast<size_t>(cols) +
           static_cast<size_t>(id.col / n);
}

bool RegionGrid::contains(const RegionId& id) const {
    if (id.image_index < 0 || static_cast<size_t>(id.image_index) >= image_pos_.size())
        return false;
    const size_t pos = image_pos_[static_cast<size_t>(id.image_index)];
    if (pos == SIZE_MAX) return false;
    const ImageDim& im = images_[pos];
    return id.row >= 0 && id.col >= 0 && id.row < im.height && id.col < im.width &&
           id.row % region_size_ == 0 && id.col % region_size_ == 0;
}

RegionGrid build_grid(const std::vector<std::pair<int32_t, int32_t>>& image_dims_hw,
                      int32_t region_size) {
    std::vector<ImageDim> images;
    images.reserve(image_dims_hw.size());
    int32_t index = 0;
    for (const auto& [h, w] : image_dims_hw) images.push_back(ImageDim{index++, h, w});
    return RegionGrid(std::move(images), region_size);
}

PoolState::PoolState(const RegionGrid& grid)
    : membership_(grid.region_count(), PoolMembership::Unlabeled) {}

std::vector<size_t> PoolState::labeled_ordinals() const {
    std::vector<size_t> out;
    out.reserve(labeled_count_);
    for (size_t i = 0; i < membership_.size(); ++i)
        if (membership_[i] == PoolMembership::Labeled) out.push_back(i);
    return out;
}

std::vector<size_t> PoolState::unlabeled_ordinals() const {
    std::vector<size_t> out;
    out.reserve(unlabeled_count());
    for (size_t i = 0; i < membership_.size(); ++i)
        if (membership_[i] == PoolMembership::Unlabeled) out.push_back(i);
    return out;
}

void PoolState::mark_labeled(size_t ordinal) {
    if (ordinal >= membership_.size()) throw_invalid("ordinal out of range");
    if (membership_[ordinal] != PoolMembership::Unlabeled)
        throw_state("region is not unlabeled");
    membership_[ordinal] = PoolMembership::Labeled;
    ++labeled_count_;
}

void PoolState::stage_batch(const std::vector<size_t>& ordinals) {
    for (size_t o : ordinals) {
        if (o >= membership_.size()) throw_invalid("ordinal out of range");
        if (membership_[o] != PoolMembership::Unlabeled)
            throw_state("batch member is not unlabeled");
        membership_[o] = PoolMembership::Batch;
        batch_.push_back(o);
    }
}

CommitStatus PoolState::commit_batch() {
    if (batch_.empty()) return CommitStatus::EmptyBatchNoop;
    for (size_t o : batch_) {
        membership_[o] = PoolMembership::Labeled;
        ++labeled_count_;
    }
    batch_.clear();
    ++iteration_;
    return CommitStatus::Committed;
}

PoolState init_labeled_pool(const RegionGrid& grid, size_t count, uint64_t seed) {
    if (count > grid.region_count())
        throw_invalid("initial pool size " + std::to_string(count) +
                      " exceeds region count " + std::to_string(grid.region_count()));
    PoolState pool(grid);
    Rng rng(seed);
    for (size_t o : rng.sample_without_replacement(grid.region_count(), count))
        pool.mark_labeled(o);
    return pool;
}

uint64_t batch_schedule(uint32_t t, uint64_t base) {
    if (base < 1) throw_invalid("schedule base must be >= 1");
    if (t == 0) return base;
    if (t >= 63) throw_invalid("schedule iteration too large");
    return ((1ull << t) - (1ull << (t - 1))) * base;
}

std::string pool_state_to_json(const RegionGrid& grid, const PoolState& pool) {
    nlohmann::ordered_json doc;
    doc["region_size"] = grid.region_size();
    auto images = nlohmann::ordered_json::array();
    for (const auto& im : grid.images()) {
        images.push_back(nlohmann::ordered_json{{"index", im.index}, {"h", im.height}, {"w", im.width}});
    }
    doc["images"] = std::move(images);
    auto labeled = nlohmann::json::array();
    for (size_t o : pool.labeled_ordinals()) {
        const RegionId& id = grid.region(o).id;
        labeled.push_back({id.image_index, id.row, id.col});
    }
    doc["labeled"] = std::move(labeled);
    doc["iteration"] = pool.iteration();
    return doc.dump(2) + "\n";
}

std::pair<RegionGrid, PoolState> pool_state_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_format(std::string("pool state is not valid JSON: ") + e.what());
    }
    try {
        std::vector<ImageDim> images;
        for (const auto& im : doc.at("images")) {
            images.push_back(ImageDim{im.at("index").get<int32_t>(),
                                      im.at("h").get<int32_t>(),
                                      im.at("w").get<int32_t>()});
        }
        RegionGrid grid(std::move(images), doc.at("region_size").get<int32_t>());
        PoolState pool(grid);
        for (const auto& entry : doc.at("labeled")) {
            RegionId id{entry.at(0).get<int32_t>(), entry.at(1).get<int32_t>(),
                        entry.at(2).get<int32_t>()};
            pool.mark_labeled(grid.ordinal_of(id));
        }
        pool.set_iteration(doc.value("iteration", 0u));
        return {std::move(grid), std::move(pool)};
    } catch (const nlohmann::json::exception& e) {
        throw_format(std::string("pool state JSON missing or mistyped field: ") + e.what());
    }
}

void save_pool_state(const RegionGrid& grid, const PoolState& pool, const std::string& path) {
    atomic_write_file(path, pool_state_to_json(grid, pool));
}

std::pair<RegionGrid, PoolState> load_pool_state(const std::string& path) {
    return pool_state_from_json(read_file(path));
}

} // namespace ral
