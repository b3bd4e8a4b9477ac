#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dboot/errors.hpp"

namespace dboot {

/// How the columns of a dataset depend on each other, which decides what a
/// resample redraws. vector_iid treats each row as one joint observation and
/// resamples whole rows; componentwise_independent treats every column as its
/// own independent sample (columns may have different lengths) and resamples
/// each column separately.
enum class DependenceModel {
    vector_iid,
    componentwise_independent,
};

/// Column-major numeric sample of dimension p, 1 <= p <= 8. Immutable after
/// construction; construction validates shape for the chosen model.
class Dataset {
  public:
    Dataset(std::vector<std::vector<double>> columns, DependenceModel model);

    DependenceModel model() const { return model_; }
    std::size_t dim() const { return cols_.size(); }
    std::span<const double> column(std::size_t j) const { return cols_[j]; }
    std::size_t rows(std::size_t j) const { return cols_[j].size(); }

    /// Smallest column length; the n used in sqrt(n) scaling. For vector_iid
    /// all columns share it.
    std::size_t n_eff() const;

  private:
    std::vector<std::vector<double>> cols_;
    DependenceModel model_;
};

/// Shape checks: at least one column, no empty column, p <= 8, and equal
/// column lengths under vector_iid. Throws EmptyDataset, DimensionMismatch,
/// or TooFewObservations (when any column is shorter than min_rows).
void validate_dataset(const Dataset& ds, std::size_t min_rows = 1);

/// Vector of column means, length p.
std::vector<double> sample_mean(const Dataset& ds);

} // namespace dboot
