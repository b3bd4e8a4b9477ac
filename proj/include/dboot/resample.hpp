#pragma once

#include <cstdint>
#include <vector>

#include "dboot/dataset.hpp"
#include "dboot/rng.hpp"

namespace dboot {

/// A resample is stored as index sequences into the dataset, never as copied
/// values. Under vector_iid there is a single shared sequence (one entry per
/// row); under componentwise_independent there is one sequence per column.
/// An inner resample composes its position draws through the outer resample's
/// sequences, so it too indexes the original dataset directly.
struct Resample {
    DependenceModel model = DependenceModel::vector_iid;
    std::vector<std::vector<std::uint32_t>> seq;

    std::span<const std::uint32_t> column_indices(std::size_t j) const {
        return model == DependenceModel::vector_iid ? std::span<const std::uint32_t>(seq[0])
                                                    : std::span<const std::uint32_t>(seq[j]);
    }
};

/// Outer resample b of trial `trial`, drawn from the level-1 stream at
/// (trial, b). With-replacement, uniform over rows (vector_iid) or per
/// column (componentwise_independent).
Resample draw_outer(const Dataset& ds, std::uint64_t master_seed, std::uint64_t trial,
                    std::uint64_t b);

/// Inner resample c of outer resample b, drawn from the level-2 stream at
/// (trial, b, c) and composed through `outer`, so the returned indices point
/// into `ds`. The draw consumes the stream in the same order whether or not
/// the caller materializes intermediate copies.
Resample draw_inner(const Dataset& ds, const Resample& outer, std::uint64_t master_seed,
                    std::uint64_t trial, std::uint64_t b, std::uint64_t c);

/// In-place variants that reuse the Resample's buffers across draws.
void draw_outer_into(Resample& out, const Dataset& ds, std::uint64_t master_seed,
                     std::uint64_t trial, std::uint64_t b);
void draw_inner_into(Resample& out, const Dataset& ds, const Resample& outer,
                     std::uint64_t master_seed, std::uint64_t trial, std::uint64_t b,
                     std::uint64_t c);

/// Column means of the resample, computed by summing indexed values.
std::vector<double> resample_mean(const Dataset& ds, const Resample& rs);

} // namespace dboot
