#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ral/distance.hpp"
#include "ral/features.hpp"
#include "ral/region.hpp"
#include "ral/scoring.hpp"

namespace ral {

enum class Objective { MaxMin, MaxSum };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct SelectionConfig {
    double lambda_u = 1.0;
    DistanceSpec distance; // carries lambda_f / lambda_s and the spatial form
    size_t batch_size = 1;
    uint64_t seed = 0;
    Objective objective = Objective::MaxMin;
    std::string method_name; // optional preset label, drives Random/EntropyRandom

    void validate() const;
    bool uses_features() const { return distance.lambda_f > 0.0; }
    bool uses_scores() const { return lambda_u > 0.0; }
};

// The paper's method presets, as (lambda_u, lambda_f, lambda_s) triples over
// the default piece-wise distance (a=1, b=2, c=2, tau=region size, L-inf).
SelectionConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

// Per-candidate running minimum of the normalized combined distance to the
// selected pool (labeled + batch so far), plus the divisors in force. One
// distance evaluation per candidate per update keeps selection O(n*K).
class MinDistCache {
public:
    MinDistCache(const RegionGrid& grid, const DistanceSpec& resolved_spec,
                 const FeatureMatrix* features, std::vector<size_t> candidates,
                 const std::vector<size_t>& initial_pool);

    const DistanceNormalizers& normalizers() const { return norms_; }
    const std::vector<size_t>& candidates() const { return candidates_; }
    bool is_candidate(size_t ordinal) const;

    // Exact min over the selected pool; the "first pick is pure uncertainty"
    // sentinel (lambda_f + lambda_s) when the initial pool is empty.
    double min_distance(size_t ordinal) const;

    // Normalized combined distance between two regions under the divisors in
    // force; bit-identical to normalized_combined_distance on the same input.
    double pair_distance(size_t x, size_t y) const;

    // min-update of every remaining candidate against a newly selected region.
    void update(size_t newly_selected);

    // Stops a picked candidate from receiving further updates.
    void remove_candidate(size_t ordinal);

    // Empty-initial-pool case: divisors are undefined until the first pick
    // exists; this computes them against {ordinal} and seeds the entries.
    bool awaiting_first_pick() const { return awaiting_first_pick_; }
    void seed_from_first_pick(size_t ordinal);

    uint64_t distance_evals() const { return evals_; }

private:
    enum class Mode { None, PieceOnly, LinearOnly, FeatureOnly, PieceFeature, LinearFeature };

    void compute_normalizers(const std::vector<size_t>& pool);
    void seed_entries(const std::vector<size_t>& pool);
    void refresh_mode();
    template <typename DistFn>
    void update_with(size_t selected, DistFn&& dist);

    const RegionGrid* grid_;
    DistanceSpec spec_;
    const FeatureMatrix* features_;
    std::vector<size_t> candidates_;
    std::vector<uint8_t> alive_;      // by grid ordinal
    std::vector<double> min_dist_;    // by grid ordinal
    std::vector<int32_t> img_, crow_, ccol_;
    DistanceNormalizers norms_;
    Mode mode_ = Mode::None;
    double piece_a_norm_ = 0.0, piece_b_norm_ = 0.0, piece_c_norm_ = 0.0;
    double linear_cross_norm_ = 0.0;
    bool awaiting_first_pick_ = false;
    uint64_t evals_ = 0;
};

// Greedy scoring function: lambda_u * u(x) + min distance to the selected pool.
double potential(size_t candidate, const ScoreTable& scores, const MinDistCache& cache,
                 double lambda_u);

struct PickInfo {
    RegionId region;
    double potential = 0.0;
    double u_term = 0.0;
    double d_term = 0.0;
};

struct SelectionResult {
    std::vector<size_t> batch_ordinals; // pick order
    std::vector<PickInfo> picks;        // aligned with batch_ordinals
    std::string method;
    Objective objective = Objective::MaxMin;
    uint32_t batch_index = 0; // pool iteration at selection time
    double wall_seconds = 0.0;
    uint64_t init_distance_evals = 0;
    uint64_t greedy_distance_evals = 0;
    DistanceNormalizers normalizers;
};

// One batch via the greedy Max-Min rule: each pick maximizes the potential
// over the remaining unlabeled candidates, then the cache absorbs the pick.
SelectionResult greedy_select(const RegionGrid& grid, const PoolState& pool,
                              const ScoreTable* scores, const FeatureMatrix* features,
                              const SelectionConfig& config);

// Sum-form alternative: each pick maximizes lambda_u * u(x) + mean normalized
// distance to the selected pool.
SelectionResult max_sum_greedy_select(const RegionGrid& grid, const PoolState& pool,
                                      const ScoreTable* scores, const FeatureMatrix* features,
                                      const SelectionConfig& config);

// Uniform batch without replacement under the seeded generator.
SelectionResult random_select(const RegionGrid& grid, const PoolState& pool, size_t batch_size,
                              uint64_t seed);

// Dispatcher honoring method_name (Random / EntropyRandom) and the objective.
SelectionResult select_batch(const RegionGrid& grid, const PoolState& pool,
                             const ScoreTable* scores, const FeatureMatrix* features,
                             const SelectionConfig& config);

struct BruteForceResult {
    std::vector<size_t> batch_ordinals; // ascending
    double objective_value = 0.0;
};

// Exact Max-Min objective value of a candidate batch: the minimum over the
// batch members' weighted uncertainties and all normalized pair distances
// within labeled+batch that involve at least one batch member.
double max_min_objective_value(const RegionGrid& grid, const PoolState& pool,
                               const ScoreTable* scores, const FeatureMatrix* features,
                               const SelectionConfig& config,
                               const std::vector<size_t>& batch_ordinals);

// Exhaustive optimum over all C(n, K) batches; refuses instances larger than
// (max_n, max_k). Test oracle only.
BruteForceResult brute_force_select(const RegionGrid& grid, const PoolState& pool,
                                    const ScoreTable* scores, const FeatureMatrix* features,
                                    const SelectionConfig& config, size_t max_n = 14,
                                    size_t max_k = 4);

} // namespace ral
