#pragma once

#include <cstdint>
#include <vector>

#include "ral/region.hpp"

namespace ral {

// Per-pixel class posterior for one image, class-major (values[c][y][x]).
// Every pixel's class column must sum to 1 within kNormalizationEps.
struct PosteriorTensor {
    static constexpr double kNormalizationEps = 1e-4;

    int32_t image_index = 0;
    uint32_t num_classes = 0;
    uint32_t height = 0;
    uint32_t width = 0;
    std::vector<float> values; // num_classes * height * width

    size_t pixel_count() const { return size_t(height) * size_t(width); }
    float at(uint32_t c, uint32_t y, uint32_t x) const {
        return values[(size_t(c) * height + y) * width + x];
    }

    // Throws invalid-input naming the offending pixel when a class column is
    // out of [0,1] or does not sum to 1 within the tolerance.
    void validate() const;
};

// Shannon entropy of every pixel's class posterior, in nats. 0*log 0 := 0.
std::vector<double> pixel_entropy(const PosteriorTensor& posterior);

struct ScoreEntry {
    double raw = 0.0;        // mean per-pixel entropy over the region, nats
    double normalized = 0.0; // raw / ln(num_classes), clamped to [0,1]
};

// One score per grid region. Backed by grid ordinals; an entry is present
// once its image has been scored, and selection requires full coverage.
class ScoreTable {
public:
    ScoreTable(const RegionGrid& grid, uint32_t num_classes);

    uint32_t num_classes() const { return num_classes_; }
    // Divisor used for the [0,1] normalization; ln(num_classes) unless
    // overridden (tests exercise affine re-normalization through this).
    double normalizer() const { return normalizer_; }
    void set_normalizer(double value);

    bool has(size_t ordinal) const { return present_[ordinal]; }
    bool complete() const { return present_count_ == present_.size(); }
    const ScoreEntry& entry(size_t ordinal) const;
    double normalized(size_t ordinal) const { return entry(ordinal).normalized; }

    void set_raw(size_t ordinal, double raw);

private:
    uint32_t num_classes_;
    double normalizer_;
    std::vector<ScoreEntry> entries_;
    std::vector<uint8_t> present_;
    size_t present_count_ = 0;
};

// Mean per-pixel entropy per region for one image, written into `table`.
// The entropy map must match the catalog dimensions of `image_index`.
void region_uncertainty(const std::vector<double>& entropy_map, const RegionGrid& grid,
                        int32_t image_index, ScoreTable& table);

// Convenience: validate + entropy + per-region aggregation in one call.
void score_posterior(const PosteriorTensor& posterior, const RegionGrid& grid,
                     ScoreTable& table);

} // namespace ral
