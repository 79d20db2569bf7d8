#include "apchar/mean_cache.hpp"

#include "apchar/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace apchar {

// ---------------------------------------------------------------------------
// PrefixTable

PrefixTable::PrefixTable(const Dims& dims, std::span<const double> cell_values) : dims_(dims) {
    const std::size_t d = dims_.size();
    strides_.assign(d, 1);
    for (std::size_t k = d; k-- > 1;) strides_[k - 1] = strides_[k] * (dims_[k] + 1);
    table_.assign(strides_[0] * (dims_[0] + 1), 0.0);

    // scatter cells to padded positions (+1 on every axis)
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t cell = 0; cell < cell_values.size(); ++cell) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < d; ++k) off += (idx[k] + 1) * strides_[k];
        table_[off] = cell_values[cell];
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < dims_[k]) break;
            idx[k] = 0;
        }
    }
    // running sums along each axis in turn
    for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t stride = strides_[axis];
        for (std::size_t off = 0; off < table_.size(); ++off) {
            if ((off / stride) % (dims_[axis] + 1) != 0) table_[off] += table_[off - stride];
        }
    }
}

double PrefixTable::leading(const GridCube& cube, std::size_t axis_count, std::size_t offset) const noexcept {
    if (axis_count == 0) return table_[offset];
    const std::size_t k = axis_count - 1;
    return leading(cube, k, offset + cube.hi[k] * strides_[k]) - leading(cube, k, offset + cube.lo[k] * strides_[k]);
}

double PrefixTable::row_at(const GridCube& cube, std::size_t x) const noexcept {
    return leading(cube, dims_.size() - 1, x);
}

double PrefixTable::box_sum(const GridCube& cube) const noexcept {
    return row_at(cube, cube.hi.back()) - row_at(cube, cube.lo.back());
}

void PrefixTable::row_prefix(const GridCube& cube, std::size_t first, std::size_t count, double* out) const noexcept {
    const std::size_t d = dims_.size();
    if (d == 1) {
        std::copy_n(table_.begin() + static_cast<std::ptrdiff_t>(first), count, out);
        return;
    }
    if (d == 2) {
        const double* top = table_.data() + cube.hi[0] * strides_[0] + first;
        const double* bottom = table_.data() + cube.lo[0] * strides_[0] + first;
        for (std::size_t k = 0; k < count; ++k) out[k] = top[k] - bottom[k];
        return;
    }
    for (std::size_t k = 0; k < count; ++k) out[k] = row_at(cube, first + k);
}

// ---------------------------------------------------------------------------
// SparseTable

SparseTable::SparseTable(const Dims& dims, std::span<const double> cell_values) : dims_(dims) {
    const std::size_t d = dims_.size();
    if (d > 16) throw Error(ErrorKind::InvalidWeight, "range tables support at most 16 dimensions");
    strides_.assign(d, 1);
    for (std::size_t k = d; k-- > 1;) strides_[k - 1] = strides_[k] * dims_[k];
    levels_.resize(d);
    level_stride_.assign(d, 1);
    for (std::size_t k = 0; k < d; ++k) levels_[k] = static_cast<std::size_t>(std::bit_width(dims_[k]));
    for (std::size_t k = d; k-- > 1;) level_stride_[k - 1] = level_stride_[k] * levels_[k];
    const std::size_t tuples = level_stride_[0] * levels_[0];

    max_.resize(tuples);
    min_.resize(tuples);
    max_[0].assign(cell_values.begin(), cell_values.end());
    min_[0] = max_[0];

    const std::size_t n = cell_values.size();
    std::vector<std::size_t> tuple(d, 0);
    std::vector<std::size_t> pos(d);
    for (std::size_t t = 1; t < tuples; ++t) {
        for (std::size_t k = 0; k < d; ++k) tuple[k] = (t / level_stride_[k]) % levels_[k];
        std::size_t axis = 0;
        while (tuple[axis] == 0) ++axis;
        const std::size_t parent = t - level_stride_[axis];
        const std::size_t half = std::size_t{1} << (tuple[axis] - 1);
        const std::size_t jump = half * strides_[axis];

        auto& hi = max_[t];
        auto& lo = min_[t];
        hi.assign(n, 0.0);
        lo.assign(n, 0.0);
        const auto& phi = max_[parent];
        const auto& plo = min_[parent];
        std::fill(pos.begin(), pos.end(), 0);
        for (std::size_t x = 0; x < n; ++x) {
            bool valid = true;
            for (std::size_t k = 0; k < d; ++k) valid = valid && pos[k] + (std::size_t{1} << tuple[k]) <= dims_[k];
            if (valid) {
                hi[x] = std::max(phi[x], phi[x + jump]);
                lo[x] = std::min(plo[x], plo[x + jump]);
            }
            for (std::size_t k = d; k-- > 0;) {
                if (++pos[k] < dims_[k]) break;
                pos[k] = 0;
            }
        }
    }
}

template <bool IsMax>
double SparseTable::query(const GridCube& cube) const noexcept {
    const std::size_t d = dims_.size();
    const auto& tables = IsMax ? max_ : min_;
    if (d == 1) {
        const std::size_t len = cube.hi[0] - cube.lo[0];
        const auto k = static_cast<std::size_t>(std::bit_width(len)) - 1;
        const auto& t = tables[k];
        const double a = t[cube.lo[0]];
        const double b = t[cube.hi[0] - (std::size_t{1} << k)];
        return IsMax ? std::max(a, b) : std::min(a, b);
    }
    std::size_t level = 0;
    std::array<std::size_t, 16> first{};
    std::array<std::size_t, 16> second{};
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t len = cube.hi[k] - cube.lo[k];
        const auto lv = static_cast<std::size_t>(std::bit_width(len)) - 1;
        level += lv * level_stride_[k];
        first[k] = cube.lo[k] * strides_[k];
        second[k] = (cube.hi[k] - (std::size_t{1} << lv)) * strides_[k];
    }
    const auto& t = tables[level];
    std::size_t base = 0;
    for (std::size_t k = 0; k < d; ++k) base += first[k];
    double best = t[base];
    for (std::size_t corner = 1; corner < (std::size_t{1} << d); ++corner) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < d; ++k) off += ((corner >> k) & 1U) ? second[k] : first[k];
        best = IsMax ? std::max(best, t[off]) : std::min(best, t[off]);
    }
    return best;
}

double SparseTable::max(const GridCube& cube) const noexcept { return query<true>(cube); }
double SparseTable::min(const GridCube& cube) const noexcept { return query<false>(cube); }

// ---------------------------------------------------------------------------
// MeanCache

namespace {

std::vector<double> log_all(std::span<const double> samples) {
    std::vector<double> out(samples.size());
    std::transform(samples.begin(), samples.end(), out.begin(), [](double s) { return std::log(s); });
    return out;
}

}  // namespace

MeanCache::MeanCache(const GridWeight& w, const ExponentPair& pair, Mode mode)
    : dims_(w.dims()),
      pair_(pair),
      mode_(mode),
      fingerprint_(w.fingerprint()),
      strides_(w.strides()),
      samples_(w.samples().begin(), w.samples().end()),
      logs_(log_all(w.samples())),
      extremes_(w.dims(), w.samples()),
      channels_{Channel{pair.p1(), {}, {}}, Channel{pair.p2(), {}, {}}} {
    if (mode_ == Mode::Accurate) return;
    for (Channel& ch : channels_) {
        if (ch.p.kind() == Exponent::Kind::Zero) {
            ch.prefix.emplace(dims_, logs_);
        } else if (ch.p.is_finite()) {
            const double p = ch.p.value();
            ch.scale.emplace(p, p > 0.0 ? w.max() : w.min());
            std::vector<double> terms(samples_.size());
            for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = ch.scale->term(samples_[i], logs_[i]);
            ch.prefix.emplace(dims_, terms);
        }
    }
}

double MeanCache::fast_mean(const Channel& ch, const GridCube& cube) const {
    switch (ch.p.kind()) {
        case Exponent::Kind::PlusInfinity: return extremes_.max(cube);
        case Exponent::Kind::MinusInfinity: return extremes_.min(cube);
        case Exponent::Kind::Zero: {
            const double mean_log = ch.prefix->box_sum(cube) / static_cast<double>(cube.cell_count());
            return clamp_mean(std::exp(mean_log), extremes_.min(cube), extremes_.max(cube));
        }
        case Exponent::Kind::Finite: break;
    }
    const double mean_term = ch.prefix->box_sum(cube) / static_cast<double>(cube.cell_count());
    return clamp_mean(ch.scale->mean_from_terms(mean_term), extremes_.min(cube), extremes_.max(cube));
}

double MeanCache::accurate_mean(const Channel& ch, const GridCube& cube) const {
    thread_local std::vector<double> values;
    thread_local std::vector<double> logs;
    values.clear();
    logs.clear();
    for_each_cell(cube, strides_, [&](std::size_t i) {
        values.push_back(samples_[i]);
        logs.push_back(logs_[i]);
    });
    return power_mean_of(values, logs, ch.p, Mode::Accurate);
}

double MeanCache::power_mean(int which, const GridCube& cube) const {
    const Channel& ch = channels_[static_cast<std::size_t>(which)];
    return mode_ == Mode::Fast ? fast_mean(ch, cube) : accurate_mean(ch, cube);
}

double MeanCache::ratio(const GridCube& cube) const { return power_mean(0, cube) / power_mean(1, cube); }

void MeanCache::row_means(const Channel& ch, const CubeRow& row, RowScratch& scratch, double* out) const {
    const std::size_t count = row.size();
    GridCube cube = row.cube(0);

    if (mode_ == Mode::Accurate) {
        for (std::size_t k = 0; k < count; ++k) {
            cube.hi.back() = row.last_begin + k;
            out[k] = accurate_mean(ch, cube);
        }
        return;
    }
    if (ch.p.kind() == Exponent::Kind::PlusInfinity || ch.p.kind() == Exponent::Kind::MinusInfinity) {
        const bool want_max = ch.p.kind() == Exponent::Kind::PlusInfinity;
        for (std::size_t k = 0; k < count; ++k) {
            cube.hi.back() = row.last_begin + k;
            out[k] = want_max ? extremes_.max(cube) : extremes_.min(cube);
        }
        return;
    }

    const kernels::RowKernels& kern = kernels::active_kernels();
    const std::size_t d = dims_.size();
    double cross = 1.0;
    for (std::size_t k = 0; k + 1 < d; ++k) cross *= static_cast<double>(row.hi[k] - row.lo[k]);
    const std::size_t lo_last = row.lo.back();

    scratch.prefix.resize(count);
    ch.prefix->row_prefix(cube, row.last_begin, count, scratch.prefix.data());
    const double base = ch.prefix->row_at(cube, lo_last);
    kern.row_means(scratch.prefix.data(), base, count, cross, static_cast<double>(row.last_begin - lo_last), out);

    if (ch.p.kind() == Exponent::Kind::Zero) {
        for (std::size_t k = 0; k < count; ++k) out[k] = std::exp(out[k]);
    } else if (ch.scale->is_plus_one()) {
        kern.scale(out, count, ch.scale->root_scale());
    } else if (ch.scale->is_minus_one()) {
        kern.reciprocal_scale(out, count, ch.scale->root_scale());
    } else {
        for (std::size_t k = 0; k < count; ++k) out[k] = ch.scale->mean_from_terms(out[k]);
    }

    if (scratch.lo.size() != count) {
        scratch.lo.resize(count);
        scratch.hi.resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            cube.hi.back() = row.last_begin + k;
            scratch.lo[k] = extremes_.min(cube);
            scratch.hi[k] = extremes_.max(cube);
        }
    }
    kern.clamp(out, scratch.lo.data(), scratch.hi.data(), count);
}

kernels::ArgMax MeanCache::evaluate_row(const CubeRow& row, RowScratch& scratch) const {
    const std::size_t count = row.size();
    scratch.a.resize(count);
    scratch.b.resize(count);
    scratch.lo.clear();  // bounds are shared by both channels of this row
    row_means(channels_[0], row, scratch, scratch.a.data());
    row_means(channels_[1], row, scratch, scratch.b.data());
    return kernels::active_kernels().ratio_argmax(scratch.a.data(), scratch.b.data(), count);
}

}  // namespace apchar
