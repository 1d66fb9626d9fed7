#include "ral/features.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace ral {

void FeatureMapTensor::validate() const {
    if (dim == 0 || height == 0 || width == 0)
        throw_invalid("feature map tensor has a zero dimension");
    if (values.size() != size_t(dim) * height * width)
        throw_invalid("feature map value count does not match its dimensions");
    for (float v : values) {
        if (!std::isfinite(v)) throw_invalid("feature map contains a non-finite value");
    }
}

FeatureMatrix::FeatureMatrix(const RegionGrid& grid, uint32_t dim)
    : dim_(dim),
      data_(grid.region_count() * size_t(dim), 0.0f),
      present_(grid.region_count(), 0) {
    if (dim == 0) throw_invalid("feature dimension must be >= 1");
}

void FeatureMatrix::set_row(size_t ordinal, std::span<const float> values) {
    if (ordinal >= present_.size()) throw_invalid("ordinal out of range");
    if (values.size() != dim_) throw_invalid("feature row has wrong dimension");
    for (float v : values) {
        if (!std::isfinite(v)) throw_invalid("feature row contains a non-finite value");
    }
    std::copy(values.begin(), values.end(), data_.begin() + ordinal * dim_);
    if (!present_[ordinal]) {
        present_[ordinal] = 1;
        ++present_count_;
    }
}

void pool_region_features(const FeatureMapTensor& map, const RegionGrid& grid,
                          FeatureMatrix& out) {
    map.validate();
    const ImageDim& im = grid.image(map.image_index);
    if (map.height != uint32_t(im.height) || map.width != uint32_t(im.width))
        throw_invalid("feature map dimensions do not match catalog entry for image " +
                      std::to_string(map.image_index));
    if (map.dim != out.dim())
        throw_invalid("feature map channel count does not match matrix dimension");

    const size_t plane = size_t(map.height) * map.width;
    std::vector<double> acc(map.dim);
    std::vector<float> row(map.dim);
    for (size_t o = 0; o < grid.region_count(); ++o) {
        const RegionInfo& info = grid.region(o);
        if (info.id.image_index != map.image_index) continue;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (uint32_t d = 0; d < map.dim; ++d) {
            const float* chan = map.values.data() + size_t(d) * plane;
            double s = 0.0;
            for (int32_t y = info.id.row; y < info.id.row + info.height; ++y) {
                const float* px = chan + size_t(y) * map.width + info.id.col;
                for (int32_t x = 0; x < info.width; ++x) s += px[x];
            }
            acc[d] = s;
        }
        const double inv = 1.0 / (double(info.height) * double(info.width));
        for (uint32_t d = 0; d < map.dim; ++d) row[d] = static_cast<float>(acc[d] * inv);
        out.set_row(o, row);
    }
}

PcaModel fit_pca(const FeatureMatrix& matrix, uint32_t target_dim) {
    if (!matrix.complete()) throw_state("feature matrix is incomplete");
    const auto n = static_cast<Eigen::Index>(matrix.rows());
    const auto d = static_cast<Eigen::Index>(matrix.dim());
    if (n < 2) throw_invalid("PCA needs at least 2 rows");
    if (target_dim == 0) throw_invalid("PCA target dimension must be >= 1");

    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = matrix.row(static_cast<size_t>(i));
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = row[static_cast<size_t>(j)];
    }
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const Eigen::MatrixXd cov = (x.transpose() * x) / double(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw_state("eigendecomposition failed");

    PcaModel model;
    model.input_dim = matrix.dim();
    model.output_dim = target_dim;
    model.mean.assign(mean.data(), mean.data() + d);
    model.components.assign(size_t(target_dim) * matrix.dim(), 0.0);
    model.explained_variance.assign(target_dim, 0.0);

    // Eigen returns ascending eigenvalues; take them from the top.
    const uint32_t available = std::min<uint32_t>(target_dim, uint32_t(d));
    const double total_var = std::max(cov.trace(), 0.0);
    const double rank_tol = 1e-12 * std::max(total_var, 1.0);
    uint32_t effective_rank = 0;
    for (uint32_t k = 0; k < available; ++k) {
        const Eigen::Index src = d - 1 - Eigen::Index(k);
        const double var = std::max(solver.eigenvalues()(src), 0.0);
        Eigen::VectorXd comp = solver.eigenvectors().col(src);
        // Sign convention: largest-magnitude entry positive.
        Eigen::Index arg = 0;
        comp.cwiseAbs().maxCoeff(&arg);
        if (comp(arg) < 0.0) comp = -comp;
        for (Eigen::Index j = 0; j < d; ++j)
            model.components[size_t(k) * matrix.dim() + size_t(j)] = comp(j);
        model.explained_variance[k] = var;
        if (var > rank_tol) ++effective_rank;
    }
    model.degenerate = target_dim > uint32_t(d) || effective_rank < target_dim;
    return model;
}

FeatureMatrix pca_project(const PcaModel& model, const FeatureMatrix& matrix,
                          const RegionGrid& grid) {
    if (matrix.dim() != model.input_dim)
        throw_invalid("matrix dimension does not match PCA model input dimension");
    if (!matrix.complete()) throw_state("feature matrix is incomplete");
    FeatureMatrix out(grid, model.output_dim);
    std::vector<float> proj(model.output_dim);
    std::vector<double> centered(model.input_dim);
    for (size_t i = 0; i < matrix.rows(); ++i) {
        const auto row = matrix.row(i);
        for (uint32_t j = 0; j < model.input_dim; ++j)
            centered[j] = double(row[j]) - model.mean[j];
        for (uint32_t k = 0; k < model.output_dim; ++k) {
            const auto comp = model.component(k);
            double s = 0.0;
            for (uint32_t j = 0; j < model.input_dim; ++j) s += centered[j] * comp[j];
            proj[k] = static_cast<float>(s);
        }
        out.set_row(i, proj);
    }
    return out;
}

} // namespace ral
