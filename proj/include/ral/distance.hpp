#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ral/region.hpp"

namespace ral {

enum class SpatialForm { Piecewise, Linear };
enum class PNorm { L1, L2, LInf };

double p_norm(double dy, double dx, PNorm p);

// Diversity parameters: the spatial distance form with its constants, the
// p-norm used on region centers, and the weights of the feature and spatial
// terms in the combined distance.
struct DistanceSpec {
    SpatialForm spatial_form = SpatialForm::Piecewise;
    double a = 1.0;
    double b = 2.0;
    double c = 2.0;
    double tau = 0.0; // pixels; 0 means "resolve to the grid's region size"
    PNorm norm = PNorm::LInf;
    double lambda_f = 0.0;
    double lambda_s = 1.0;

    DistanceSpec resolved(int32_t region_size) const {
        DistanceSpec s = *this;
        if (s.tau <= 0.0) s.tau = static_cast<double>(region_size);
        return s;
    }
    void validate() const;
};

std::string to_string(SpatialForm form);
std::string to_string(PNorm p);
SpatialForm spatial_form_from_string(const std::string& s);
PNorm p_norm_from_string(const std::string& s);

// Piece-wise spatial distance on region centers: 0 for the identical region,
// `a` within tau in the same image, `b` beyond tau in the same image, `c`
// across images. Returned unnormalized.
double spatial_distance_piecewise(const RegionCenter& r1, const RegionCenter& r2,
                                  bool same_region, const DistanceSpec& spec);

// Linear spatial distance: p-norm between centers for same-image pairs. For
// pairs from different images returns `cross_image_constant` (the catalog's
// largest image diagonal in the same norm, so cross-image pairs are never
// closer than any same-image pair).
double spatial_distance_linear(const RegionCenter& r1, const RegionCenter& r2,
                               PNorm p, double cross_image_constant);

// Largest image diagonal of the catalog in norm `p`.
double cross_image_distance_constant(const RegionGrid& grid, PNorm p);

// Euclidean distance between feature vectors.
double feature_distance(std::span<const float> v1, std::span<const float> v2);

// Divisors that bring each distance term to [0,1] before the weighted sum.
// A divisor of 0 disables its term (recorded via the *_degenerate flags).
// linear_cross_image carries the catalog constant used by the linear form
// for pairs from different images.
struct DistanceNormalizers {
    double spatial_divisor = 0.0;
    double feature_divisor = 0.0;
    double linear_cross_image = 0.0;
    bool spatial_degenerate = false;
    bool feature_degenerate = false;
};

// lambda_f * (d_f / feature_divisor) + lambda_s * (d_s / spatial_divisor),
// each term clamped to [0,1]. Feature spans may be empty when lambda_f = 0.
double normalized_combined_distance(const RegionCenter& r1, const RegionCenter& r2,
                                    bool same_region,
                                    std::span<const float> f1, std::span<const float> f2,
                                    const DistanceSpec& spec,
                                    const DistanceNormalizers& norm);

// Appendix-style metric conditions on the piece-wise constants.
struct MetricCheck {
    bool ok = false;
    std::vector<std::string> violations; // named inequalities that fail
};

MetricCheck check_metric_conditions(double a, double b, double c);

} // namespace ral
