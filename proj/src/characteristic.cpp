#include "apchar/characteristic.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace apchar {

namespace {

struct ChunkBest {
    double value = 0.0;
    std::size_t row = 0;
    std::size_t offset = 0;
    bool any = false;
};

ChunkBest scan_rows(const MeanCache& cache, const std::vector<CubeRow>& rows, std::size_t begin, std::size_t end) {
    MeanCache::RowScratch scratch;
    ChunkBest best;
    for (std::size_t r = begin; r < end; ++r) {
        const kernels::ArgMax local = cache.evaluate_row(rows[r], scratch);
        if (!best.any || local.value > best.value) best = {local.value, r, local.index, true};
    }
    return best;
}

}  // namespace

CharacteristicResult ap_norm(const MeanCache& cache, Policy policy, unsigned threads) {
    const std::vector<CubeRow> rows = enumerate_rows(cache.dims(), policy);
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows.size(), 1));

    // Contiguous chunks, merged in chunk order with strict >, so the winner
    // is the first maximum in enumeration order whatever the chunking.
    std::vector<ChunkBest> partial(workers);
    if (workers == 1) {
        partial[0] = scan_rows(cache, rows, 0, rows.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            const std::size_t begin = rows.size() * t / workers;
            const std::size_t end = rows.size() * (t + 1) / workers;
            pool.emplace_back([&, t, begin, end] { partial[t] = scan_rows(cache, rows, begin, end); });
        }
        for (auto& th : pool) th.join();
    }
    ChunkBest best;
    for (const ChunkBest& c : partial) {
        if (c.any && (!best.any || c.value > best.value)) best = c;
    }

    std::uint64_t examined = 0;
    for (const CubeRow& row : rows) examined += row.size();

    CharacteristicResult result;
    result.value = best.value;
    result.argmax = rows[best.row].cube(best.offset);
    result.pair = cache.pair();
    result.policy = policy;
    result.mode = cache.mode();
    result.cubes_examined = examined;
    return result;
}

CharacteristicResult ap_norm(const GridWeight& w, const ExponentPair& pair, const SearchOptions& options) {
    validate_policy(w.dims(), options.policy);
    const MeanCache cache(w, pair, options.mode);
    return ap_norm(cache, options.policy, options.threads);
}

CharacteristicResult a2_norm(const GridWeight& w, const SearchOptions& options) {
    return ap_norm(w, ExponentPair::a2(), options);
}

}  // namespace apchar
