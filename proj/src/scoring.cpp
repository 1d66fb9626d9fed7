#include "ral/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ral {

void PosteriorTensor::validate() const {
    if (num_classes == 0 || height == 0 || width == 0)
        throw_invalid("posterior tensor has a zero dimension");
    if (values.size() != size_t(num_classes) * height * width)
        throw_invalid("posterior tensor value count does not match its dimensions");
    const size_t plane = pixel_count();
    for (size_t p = 0; p < plane; ++p) {
        double sum = 0.0;
        for (uint32_t c = 0; c < num_classes; ++c) {
            const float v = values[size_t(c) * plane + p];
            if (!(v >= 0.0f && v <= 1.0f)) {
                throw_invalid("posterior out of [0,1] at image " + std::to_string(image_index) +
                              " pixel (" + std::to_string(p / width) + "," +
                              std::to_string(p % width) + ") class " + std::to_string(c));
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kNormalizationEps) {
            throw_invalid("posterior not normalized at image " + std::to_string(image_index) +
                          " pixel (" + std::to_string(p / width) + "," +
                          std::to_string(p % width) + "): sum = " + std::to_string(sum));
        }
    }
}

std::vector<double> pixel_entropy(const PosteriorTensor& posterior) {
    posterior.validate();
    const size_t plane = posterior.pixel_count();
    std::vector<double> entropy(plane, 0.0);
    for (uint32_t c = 0; c < posterior.num_classes; ++c) {
        const float* col = posterior.values.data() + size_t(c) * plane;
        for (size_t p = 0; p < plane; ++p) {
            const double v = col[p];
            if (v > 0.0) entropy[p] -= v * std::log(v);
        }
    }
    for (size_t p = 0; p < plane; ++p) entropy[p] = std::max(entropy[p], 0.0);
    return entropy;
}

ScoreTable::ScoreTable(const RegionGrid& grid, uint32_t num_classes)
    : num_classes_(num_classes),
      entries_(grid.region_count()),
      present_(grid.region_count(), 0) {
    if (num_classes < 2) throw_invalid("score table needs at least 2 classes");
    normalizer_ = std::log(static_cast<double>(num_classes));
}

void ScoreTable::set_normalizer(double value) {
    if (!(value > 0.0)) throw_invalid("score normalizer must be positive");
    normalizer_ = value;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (present_[i])
            entries_[i].normalized = std::clamp(entries_[i].raw / normalizer_, 0.0, 1.0);
    }
}

const ScoreEntry& ScoreTable::entry(size_t ordinal) const {
    if (ordinal >= entries_.size() || !present_[ordinal])
        throw_state("score table has no entry for region ordinal " + std::to_string(ordinal));
    return entries_[ordinal];
}

void ScoreTable::set_raw(size_t ordinal, double raw) {
    if (ordinal >= entries_.size()) throw_invalid("ordinal out of range");
    if (!present_[ordinal]) {
        present_[ordinal] = 1;
        ++present_count_;
    }
    entries_[ordinal].raw = raw;
    entries_[ordinal].normalized = std::clamp(raw / normalizer_, 0.0, 1.0);
}

void region_uncertainty(const std::vector<double>& entropy_map, const RegionGrid& grid,
                        int32_t image_index, ScoreTable& table) {
    const ImageDim& im = grid.image(image_index);
    if (entropy_map.size() != size_t(im.height) * size_t(im.width))
        throw_invalid("entropy map size does not match image " + std::to_string(image_index));
    const int32_t w = im.width;
    for (size_t o = 0; o < grid.region_count(); ++o) {
        const RegionInfo& info = grid.region(o);
        if (info.id.image_index != image_index) continue;
        double sum = 0.0;
        for (int32_t y = info.id.row; y < info.id.row + info.height; ++y) {
            const double* row = entropy_map.data() + size_t(y) * w + info.id.col;
            for (int32_t x = 0; x < info.width; ++x) sum += row[x];
        }
        table.set_raw(o, sum / (double(info.height) * double(info.width)));
    }
}

void score_posterior(const PosteriorTensor& posterior, const RegionGrid& grid,
                     ScoreTable& table) {
    const ImageDim& im = grid.image(posterior.image_index);
    if (posterior.height != uint32_t(im.height) || posterior.width != uint32_t(im.width))
        throw_invalid("posterior dimensions do not match catalog entry for image " +
                      std::to_string(posterior.image_index));
    if (posterior.num_classes != table.num_classes())
        throw_invalid("posterior class count does not match score table");
    region_uncertainty(pixel_entropy(posterior), grid, posterior.image_index, table);
}

} // namespace ral
