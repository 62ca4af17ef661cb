#include "pcadist/pca.hpp"

#include <Eigen/SVD>

#include <stdexcept>
#include <string>

namespace pcadist {

ComponentSelection ComponentSelection::by_count(int n) {
    if (n < 1) {
        throw std::invalid_argument("ComponentSelection: count must be >= 1, got " +
                                    std::to_string(n));
    }
    ComponentSelection sel;
    sel.kind = Kind::Count;
    sel.count = n;
    return sel;
}

ComponentSelection ComponentSelection::by_variance(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("ComponentSelection: variance fraction must be in (0, 1]");
    }
    ComponentSelection sel;
    sel.kind = Kind::VarianceFraction;
    sel.fraction = fraction;
    return sel;
}

PrincipalModel fit_pca(const DataMatrix& samples, const PcaOptions& options) {
    const Eigen::Index s = samples.rows();
    const Eigen::Index m = samples.cols();
    if (s < 2) {
        throw std::invalid_argument("fit_pca: need at least 2 rows, got " + std::to_string(s));
    }

    PrincipalModel model;
    model.column_names = samples.column_names;
    model.scaling = fit_scaling(samples, options.standardize);
    const Eigen::MatrixXd scaled = model.scaling.apply(samples.values);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double cutoff = singular_value_cutoff(s, m, sigma_max);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    if (rank == 0) {
        throw std::runtime_error("fit_pca: data has zero variance, no principal components");
    }

    const Eigen::VectorXd variances =
        sigma.head(rank).array().square() / static_cast<double>(s - 1);
    const double total_variance = variances.sum();

    Eigen::Index n = 0;
    if (options.selection.kind == ComponentSelection::Kind::Count) {
        const auto requested = static_cast<Eigen::Index>(options.selection.count);
        if (requested < 1) {
            throw std::invalid_argument("fit_pca: component count must be >= 1");
        }
        n = std::min(requested, rank);
        model.clamped = n < requested;
    } else {
        const double f = options.selection.fraction;
        if (!(f > 0.0) || f > 1.0) {
            throw std::invalid_argument("fit_pca: variance fraction must be in (0, 1]");
        }
        const double target = f * total_variance * (1.0 - 1e-12);
        double cumulative = 0.0;
        while (n < rank) {
            cumulative += variances(n);
            ++n;
            if (cumulative >= target) break;
        }
    }

    Eigen::MatrixXd components = svd.matrixV().leftCols(n);
    fix_column_signs(components);
    model.components = Basis(std::move(components), true);
    model.explained_variance = variances.head(n);
    model.explained_fraction =
        total_variance > 0.0 ? model.explained_variance.sum() / total_variance : 1.0;
    return model;
}

}  // namespace pcadist
