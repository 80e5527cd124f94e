#include "pdmeans/mean_problem.hpp"

#include <algorithm>

namespace pdmeans {

MeanProblem::MeanProblem(WeightVector weights, std::vector<SPDMatrix> matrices)
    : weights_(std::move(weights)), matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw DomainError("MeanProblem: at least one matrix required");
    if (weights_.size() != matrices_.size())
        throw DimensionError("MeanProblem: weight count does not match matrix count");
    const std::size_t n = matrices_.front().dim();
    for (const auto& m : matrices_)
        if (m.dim() != n) throw DimensionError("MeanProblem: matrices of mixed dimension");
}

double MeanProblem::spectrum_floor() const {
    double lo = matrices_.front().lambda_min();
    for (const auto& m : matrices_) lo = std::min(lo, m.lambda_min());
    return lo;
}

double MeanProblem::spectrum_ceil() const {
    double hi = matrices_.front().lambda_max();
    for (const auto& m : matrices_) hi = std::max(hi, m.lambda_max());
    return hi;
}

MeanProblem MeanProblem::power(double s) const {
    std::vector<SPDMatrix> out;
    out.reserve(matrices_.size());
    for (const auto& m : matrices_) out.push_back(m.power(s));
    return MeanProblem(weights_, std::move(out));
}

MeanProblem MeanProblem::inverted() const { return power(-1.0); }

MeanProblem MeanProblem::scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("MeanProblem::scaled: factor must be positive");
    std::vector<SPDMatrix> out;
    out.reserve(matrices_.size());
    for (const auto& m : matrices_) {
        EigenSystem es = m.eigensystem();
        for (double& v : es.values) v *= c;
        out.push_back(SPDMatrix::from_eigensystem(std::move(es)));
    }
    return MeanProblem(weights_, std::move(out));
}

}  // namespace pdmeans
