#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ral/region.hpp"

namespace ral {

// Dense per-pixel feature map for one image, channel-major (values[d][y][x]).
struct FeatureMapTensor {
    int32_t image_index = 0;
    uint32_t dim = 0;
    uint32_t height = 0;
    uint32_t width = 0;
    std::vector<float> values; // dim * height * width

    void validate() const;
};

// One feature row per grid region, in grid (RegionId) order. Rows for an
// image are filled when that image's map is pooled; selection requires the
// matrix to be complete.
class FeatureMatrix {
public:
    FeatureMatrix(const RegionGrid& grid, uint32_t dim);

    uint32_t dim() const { return dim_; }
    size_t rows() const { return present_.size(); }
    bool has(size_t ordinal) const { return present_[ordinal]; }
    bool complete() const { return present_count_ == present_.size(); }

    std::span<const float> row(size_t ordinal) const {
        return {data_.data() + ordinal * dim_, dim_};
    }
    void set_row(size_t ordinal, std::span<const float> values);

    const std::vector<float>& data() const { return data_; }

private:
    uint32_t dim_;
    std::vector<float> data_;
    std::vector<uint8_t> present_;
    size_t present_count_ = 0;
};

// Per-channel mean over each region's actual pixels, written into `out`.
void pool_region_features(const FeatureMapTensor& map, const RegionGrid& grid,
                          FeatureMatrix& out);

struct PcaModel {
    std::vector<double> mean;               // D
    std::vector<double> components;         // K x D, rows orthonormal
    std::vector<double> explained_variance; // K, descending
    uint32_t input_dim = 0;
    uint32_t output_dim = 0;
    bool degenerate = false; // K exceeded the data rank (or D); zero-variance
                             // components were padded in

    std::span<const double> component(size_t k) const {
        return {components.data() + k * input_dim, input_dim};
    }
};

// Principal components of the mean-centered rows via covariance
// eigendecomposition. Components are sorted by descending variance and sign
// fixed so each row's largest-magnitude entry is positive.
PcaModel fit_pca(const FeatureMatrix& matrix, uint32_t target_dim);

// Projects rows onto the model's components: (x - mean) * components^T.
FeatureMatrix pca_project(const PcaModel& model, const FeatureMatrix& matrix,
                          const RegionGrid& grid);

} // namespace ral
