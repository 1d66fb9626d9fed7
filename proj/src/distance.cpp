#include "ral/distance.hpp"

#include <algorithm>
#include <cmath>

namespace ral {

double p_norm(double dy, double dx, PNorm p) {
    dy = std::abs(dy);
    dx = std::abs(dx);
    switch (p) {
        case PNorm::L1: return dy + dx;
        case PNorm::L2: return std::hypot(dy, dx);
        case PNorm::LInf: return std::max(dy, dx);
    }
    return 0.0;
}

void DistanceSpec::validate() const {
    if (!(tau > 0.0)) throw_invalid("tau must be positive");
    if (lambda_f < 0.0 || lambda_s < 0.0) throw_invalid("lambda weights must be >= 0");
    if (spatial_form == SpatialForm::Piecewise) {
        if (!(a >= 0.0 && b >= 0.0 && c >= 0.0))
            throw_invalid("piece-wise constants must be non-negative");
    }
}

std::string to_string(SpatialForm form) {
    return form == SpatialForm::Piecewise ? "piecewise" : "linear";
}

std::string to_string(PNorm p) {
    switch (p) {
        case PNorm::L1: return "1";
        case PNorm::L2: return "2";
        case PNorm::LInf: return "inf";
    }
    return "inf";
}

SpatialForm spatial_form_from_string(const std::string& s) {
    if (s == "piecewise") return SpatialForm::Piecewise;
    if (s == "linear") return SpatialForm::Linear;
    throw_invalid("unknown spatial form '" + s + "' (expected piecewise|linear)");
}

PNorm p_norm_from_string(const std::string& s) {
    if (s == "1") return PNorm::L1;
    if (s == "2") return PNorm::L2;
    if (s == "inf") return PNorm::LInf;
    throw_invalid("unknown p-norm '" + s + "' (expected 1|2|inf)");
}

double spatial_distance_piecewise(const RegionCenter& r1, const RegionCenter& r2,
                                  bool same_region, const DistanceSpec& spec) {
    if (same_region) return 0.0;
    if (r1.image_index != r2.image_index) return spec.c;
    const double gap = p_norm(double(r1.row) - double(r2.row),
                              double(r1.col) - double(r2.col), spec.norm);
    return gap <= spec.tau ? spec.a : spec.b;
}

double spatial_distance_linear(const RegionCenter& r1, const RegionCenter& r2,
                               PNorm p, double cross_image_constant) {
    if (r1.image_index != r2.image_index) return cross_image_constant;
    return p_norm(double(r1.row) - double(r2.row), double(r1.col) - double(r2.col), p);
}

double cross_image_distance_constant(const RegionGrid& grid, PNorm p) {
    double best = 0.0;
    for (const auto& im : grid.images())
        best = std::max(best, p_norm(im.height, im.width, p));
    return best;
}

double feature_distance(std::span<const float> v1, std::span<const float> v2) {
    if (v1.size() != v2.size())
        throw_invalid("feature vectors have different dimensions");
    double sum = 0.0;
    for (size_t i = 0; i < v1.size(); ++i) {
        const double d = double(v1[i]) - double(v2[i]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

double normalized_combined_distance(const RegionCenter& r1, const RegionCenter& r2,
                                    bool same_region,
                                    std::span<const float> f1, std::span<const float> f2,
                                    const DistanceSpec& spec,
                                    const DistanceNormalizers& norm) {
    double total = 0.0;
    if (spec.lambda_s > 0.0 && norm.spatial_divisor > 0.0) {
        const double ds = spec.spatial_form == SpatialForm::Piecewise
                              ? spatial_distance_piecewise(r1, r2, same_region, spec)
                              : spatial_distance_linear(r1, r2, spec.norm, norm.linear_cross_image);
        total += spec.lambda_s * std::min(ds / norm.spatial_divisor, 1.0);
    }
    if (spec.lambda_f > 0.0 && norm.feature_divisor > 0.0) {
        const double df = feature_distance(f1, f2);
        total += spec.lambda_f * std::min(df / norm.feature_divisor, 1.0);
    }
    return total;
}

MetricCheck check_metric_conditions(double a, double b, double c) {
    MetricCheck result;
    if (!(a > 0.0)) result.violations.push_back("a > 0");
    if (!(b >= a)) result.violations.push_back("b >= a");
    if (!(c >= b)) result.violations.push_back("c >= b");
    if (!(b <= 2.0 * a)) result.violations.push_back("b <= 2a");
    result.ok = result.violations.empty();
    return result;
}

} // namespace ral
