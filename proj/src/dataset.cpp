#include "dboot/dataset.hpp"

#include <algorithm>
#include <string>

#include "dboot/math.hpp"

namespace dboot {

namespace {
constexpr std::size_t kMaxDim = 8;
}

Dataset::Dataset(std::vector<std::vector<double>> columns, DependenceModel model)
    : cols_(std::move(columns)), model_(model) {
    validate_dataset(*this);
}

std::size_t Dataset::n_eff() const {
    std::size_t n = cols_[0].size();
    for (const auto& c : cols_) n = std::min(n, c.size());
    return n;
}

void validate_dataset(const Dataset& ds, std::size_t min_rows) {
    if (ds.dim() == 0) throw EmptyDataset("dataset has no columns");
    if (ds.dim() > kMaxDim)
        throw DimensionMismatch("dataset dimension " + std::to_string(ds.dim()) +
                                " exceeds the supported maximum of " + std::to_string(kMaxDim));
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        if (ds.rows(j) == 0)
            throw EmptyDataset("column " + std::to_string(j) + " is empty");
    }
    if (ds.model() == DependenceModel::vector_iid) {
        for (std::size_t j = 1; j < ds.dim(); ++j) {
            if (ds.rows(j) != ds.rows(0))
                throw DimensionMismatch("row resampling requires equal column lengths, got " +
                                        std::to_string(ds.rows(0)) + " and " +
                                        std::to_string(ds.rows(j)));
        }
    }
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        if (ds.rows(j) < min_rows)
            throw TooFewObservations("column " + std::to_string(j) + " has " +
                                     std::to_string(ds.rows(j)) + " observations, need at least " +
                                     std::to_string(min_rows));
    }
}

std::vector<double> sample_mean(const Dataset& ds) {
    std::vector<double> m(ds.dim());
    for (std::size_t j = 0; j < ds.dim(); ++j) m[j] = pairwise_mean(ds.column(j));
    return m;
}

} // namespace dboot
