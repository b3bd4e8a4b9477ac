#include "dboot/resample.hpp"

#include "dboot/math.hpp"

namespace dboot {

namespace {

void prepare(Resample& out, const Dataset& ds) {
    out.model = ds.model();
    const std::size_t n_seqs = ds.model() == DependenceModel::vector_iid ? 1 : ds.dim();
    out.seq.resize(n_seqs);
    for (std::size_t j = 0; j < n_seqs; ++j) out.seq[j].resize(ds.rows(j));
}

} // namespace

void draw_outer_into(Resample& out, const Dataset& ds, std::uint64_t master_seed,
                     std::uint64_t trial, std::uint64_t b) {
    prepare(out, ds);
    CounterRng rng = make_stream(master_seed, SeedPath::outer(trial, b));
    for (auto& seq : out.seq) {
        const auto n = static_cast<std::uint32_t>(seq.size());
        for (auto& idx : seq) idx = rng.next_index(n);
    }
}

void draw_inner_into(Resample& out, const Dataset& ds, const Resample& outer,
                     std::uint64_t master_seed, std::uint64_t trial, std::uint64_t b,
                     std::uint64_t c) {
    prepare(out, ds);
    CounterRng rng = make_stream(master_seed, SeedPath::inner(trial, b, c));
    for (std::size_t j = 0; j < out.seq.size(); ++j) {
        const auto& src = outer.seq[j];
        const auto n = static_cast<std::uint32_t>(src.size());
        for (auto& idx : out.seq[j]) idx = src[rng.next_index(n)];
    }
}

Resample draw_outer(const Dataset& ds, std::uint64_t master_seed, std::uint64_t trial,
                    std::uint64_t b) {
    Resample r;
    draw_outer_into(r, ds, master_seed, trial, b);
    return r;
}

Resample draw_inner(const Dataset& ds, const Resample& outer, std::uint64_t master_seed,
                    std::uint64_t trial, std::uint64_t b, std::uint64_t c) {
    Resample r;
    draw_inner_into(r, ds, outer, master_seed, trial, b, c);
    return r;
}

std::vector<double> resample_mean(const Dataset& ds, const Resample& rs) {
    std::vector<double> m(ds.dim());
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        const auto col = ds.column(j);
        const auto idx = rs.column_indices(j);
        double s = 0.0;
        for (std::uint32_t i : idx) s += col[i];
        m[j] = s / static_cast<double>(idx.size());
    }
    return m;
}

} // namespace dboot
