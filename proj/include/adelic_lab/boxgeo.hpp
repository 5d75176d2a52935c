#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adelic_lab/prng.hpp"
#include "adelic_lab/window.hpp"

namespace adelic_lab {

/// Axis-aligned closed box with rational corners.
struct BoxNd {
    std::vector<std::pair<Rational, Rational>> sides; // [lo, hi] per axis

    Rational volume() const {
        Rational v(1);
        for (const auto& [lo, hi] : sides) v *= hi - lo;
        return v;
    }
};

/// Finite union of pairwise interior-disjoint axis boxes; degenerate boxes
/// are dropped by normalization.
class BoxUnion {
public:
    BoxUnion(int dim, std::vector<BoxNd> boxes) : dim_(dim), boxes_(std::move(boxes)) {
        if (dim_ < 1) throw PreconditionError("dimension must be >= 1");
        std::vector<BoxNd> kept;
        for (auto& b : boxes_) {
            if (static_cast<int>(b.sides.size()) != dim_)
                throw PreconditionError("box dimension mismatch");
            bool degenerate = false;
            for (auto& [lo, hi] : b.sides) {
                if (lo > hi) throw PreconditionError("box side with lo > hi");
                if (lo == hi) degenerate = true;
            }
            if (!degenerate) kept.push_back(std::move(b));
        }
        boxes_ = std::move(kept);
        if (boxes_.empty()) throw PreconditionError("box union with zero volume");
        for (std::size_t i = 0; i < boxes_.size(); ++i)
            for (std::size_t j = i + 1; j < boxes_.size(); ++j) {
                bool open_overlap = true;
                for (int k = 0; k < dim_; ++k) {
                    const auto& a = boxes_[i].sides[static_cast<std::size_t>(k)];
                    const auto& b = boxes_[j].sides[static_cast<std::size_t>(k)];
                    if (!(max(a.first, b.first) < min(a.second, b.second))) {
                        open_overlap = false;
                        break;
                    }
                }
                if (open_overlap) throw PreconditionError("boxes with overlapping interiors");
            }
    }

    int dim() const { return dim_; }
    const std::vector<BoxNd>& boxes() const { return boxes_; }

    Rational volume() const {
        Rational v(0);
        for (const auto& b : boxes_) v += b.volume();
        return v;
    }

private:
    int dim_;
    std::vector<BoxNd> boxes_;
};

/// Certified two-sided volume estimate; lower = upper when exact.
struct VolumeBounds {
    Rational lower;
    Rational upper;
    bool exact;

    Rational width() const { return upper - lower; }
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline Bits make_bits(std::int64_t n) { return Bits(static_cast<std::size_t>((n + 63) / 64), 0); }
inline void set_bit(Bits& b, std::int64_t i) {
    b[static_cast<std::size_t>(i / 64)] |= (1ULL << (i % 64));
}
inline bool get_bit(const Bits& b, std::int64_t i) {
    return (b[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1ULL;
}
inline std::int64_t popcount(const Bits& b) {
    std::int64_t c = 0;
    for (auto w : b) c += __builtin_popcountll(w);
    return c;
}
inline void or_into(Bits& dst, const Bits& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

/// {x1 - x2 : x1 in a, x2 in b} over cell indices [0, n), returned as a
/// bitset over [-n, n] stored at offset +n.
inline Bits index_difference(const Bits& a, const Bits& b, std::int64_t n) {
    Bits out = make_bits(2 * n + 1);
    auto word_at = [&](const Bits& v, std::int64_t bit) {
        if (bit >= n || bit <= -64) return std::uint64_t(0);
        std::uint64_t r = 0;
        if (bit >= 0) {
            const std::size_t w = static_cast<std::size_t>(bit / 64);
            const int off = static_cast<int>(bit % 64);
            r = v[w] >> off;
            if (off && w + 1 < v.size()) r |= v[w + 1] << (64 - off);
        } else {
            const std::int64_t hi = bit + 64; // bits [bit, bit+64) with bit < 0
            if (hi > 0) {
                r = v[0] << (-bit);
            }
        }
        return r;
    };
    const std::size_t words = a.size();
    for (std::int64_t d = -(n - 1); d <= n - 1; ++d) {
        bool hit = false;
        for (std::size_t w = 0; w < words && !hit; ++w) {
            std::uint64_t mask = a[w];
            if (!mask) continue;
            if (w == words - 1 && (n % 64)) mask &= (1ULL << (n % 64)) - 1;
            if (mask & word_at(b, static_cast<std::int64_t>(w) * 64 - d)) hit = true;
        }
        if (hit) set_bit(out, d + n);
    }
    return out;
}

/// Cell x-patterns of one row strip: cells of [x0 + i*h, x0 + (i+1)h]
/// contained in (inner) or meeting (outer) the union of the given
/// x-intervals, merged first.
inline void row_patterns(std::vector<std::pair<Rational, Rational>> xs, const Rational& x0,
                         const Rational& h, std::int64_t n, bool inner, Bits& out) {
    std::sort(xs.begin(), xs.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (auto& iv : xs) {
        if (!merged.empty() && iv.first <= merged.back().second) {
            if (iv.second > merged.back().second) merged.back().second = iv.second;
        } else {
            merged.push_back(iv);
        }
    }
    for (const auto& [lo, hi] : merged) {
        Int ilo, ihi;
        if (inner) {
            // [x0 + i h, x0 + (i+1) h] subset [lo, hi]
            ilo = ceil((lo - x0) / h);
            ihi = floor((hi - x0) / h) - 1;
        } else {
            // [x0 + i h, x0 + (i+1) h) meets [lo, hi]
            ilo = floor((lo - x0) / h);
            ihi = floor((hi - x0) / h);
        }
        for (Int i = ilo; i <= ihi; ++i) {
            const std::int64_t ii = i.convert_to<std::int64_t>();
            if (ii >= 0 && ii < n) set_bit(out, ii);
        }
    }
}

} // namespace detail

/// vol(W - W): exact interval Minkowski difference for d = 1; for d = 2 a
/// grid rasterization over the bounding box with certified two-sided bounds
/// from inner (closed-cell) and outer (half-open-cell) approximations.
inline VolumeBounds box_difference_volume(const BoxUnion& w, std::int64_t grid = 256) {
    if (w.dim() == 1) {
        std::vector<Interval> ivs;
        for (const auto& a : w.boxes())
            for (const auto& b : w.boxes())
                ivs.push_back({QuadExtReal(a.sides[0].first - b.sides[0].second),
                               QuadExtReal(a.sides[0].second - b.sides[0].first)});
        const QuadExtReal m = Window1D(std::move(ivs)).measure();
        return {m.rational_part(), m.rational_part(), true};
    }
    if (w.dim() != 2) throw PreconditionError("box_difference_volume supports d <= 2");
    if (grid < 64) throw PreconditionError("grid must be >= 64 for d >= 2");
    const std::int64_t n = grid;

    // bounding box
    Rational x0 = w.boxes()[0].sides[0].first, x1 = w.boxes()[0].sides[0].second;
    Rational y0 = w.boxes()[0].sides[1].first, y1 = w.boxes()[0].sides[1].second;
    for (const auto& b : w.boxes()) {
        x0 = min(x0, b.sides[0].first);
        x1 = max(x1, b.sides[0].second);
        y0 = min(y0, b.sides[1].first);
        y1 = max(y1, b.sides[1].second);
    }
    const Rational hx = (x1 - x0) / Rational(Int(n));
    const Rational hy = (y1 - y0) / Rational(Int(n));

    auto compute = [&](bool inner) {
        // row patterns with caching by pattern content
        std::vector<int> row_pat(static_cast<std::size_t>(n));
        std::vector<detail::Bits> patterns;
        std::map<detail::Bits, int> seen;
        for (std::int64_t j = 0; j < n; ++j) {
            const Rational rlo = y0 + Rational(Int(j)) * hy;
            const Rational rhi = rlo + hy;
            std::vector<std::pair<Rational, Rational>> xs;
            for (const auto& b : w.boxes()) {
                const auto& ys = b.sides[1];
                const bool qualifies = inner ? (ys.first <= rlo && rhi <= ys.second)
                                             : (ys.first < rhi && ys.second >= rlo);
                if (qualifies) xs.push_back(b.sides[0]);
            }
            detail::Bits pat = detail::make_bits(n);
            if (!xs.empty()) detail::row_patterns(std::move(xs), x0, hx, n, inner, pat);
            auto it = seen.find(pat);
            if (it == seen.end()) {
                it = seen.emplace(pat, static_cast<int>(patterns.size())).first;
                patterns.push_back(pat);
            }
            row_pat[static_cast<std::size_t>(j)] = it->second;
        }
        // rows holding each pattern form index-interval unions
        const int np = static_cast<int>(patterns.size());
        std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> bands(
            static_cast<std::size_t>(np));
        for (std::int64_t j = 0; j < n; ++j) {
            auto& bl = bands[static_cast<std::size_t>(row_pat[static_cast<std::size_t>(j)])];
            if (!bl.empty() && bl.back().second == j - 1)
                bl.back().second = j;
            else
                bl.push_back({j, j});
        }
        // D grid rows indexed dy + n
        std::vector<detail::Bits> drow(static_cast<std::size_t>(2 * n + 1),
                                       detail::make_bits(2 * n + 1));
        std::vector<bool> drow_used(static_cast<std::size_t>(2 * n + 1), false);
        for (int p1 = 0; p1 < np; ++p1) {
            if (detail::popcount(patterns[static_cast<std::size_t>(p1)]) == 0) continue;
            for (int p2 = 0; p2 < np; ++p2) {
                if (detail::popcount(patterns[static_cast<std::size_t>(p2)]) == 0) continue;
                detail::Bits dx = detail::index_difference(
                    patterns[static_cast<std::size_t>(p1)],
                    patterns[static_cast<std::size_t>(p2)], n);
                for (const auto& [l1, h1] : bands[static_cast<std::size_t>(p1)])
                    for (const auto& [l2, h2] : bands[static_cast<std::size_t>(p2)])
                        for (std::int64_t dy = l1 - h2; dy <= h1 - l2; ++dy) {
                            detail::or_into(drow[static_cast<std::size_t>(dy + n)], dx);
                            drow_used[static_cast<std::size_t>(dy + n)] = true;
                        }
            }
        }
        // spread by {-1, 0} per axis: cell_i - cell_j covers indices
        // (di - 1, di) x (dj - 1, dj)
        Int cells = 0;
        detail::Bits prev = detail::make_bits(2 * n + 1);
        for (std::int64_t row = 2 * n; row >= -1; --row) {
            detail::Bits cur = (row >= 0 && drow_used[static_cast<std::size_t>(row)])
                                   ? drow[static_cast<std::size_t>(row)]
                                   : detail::make_bits(2 * n + 1);
            detail::Bits merged = cur;
            detail::or_into(merged, prev);
            // x-spread: bit b also covers b-1
            detail::Bits spread = merged;
            std::uint64_t carry = 0;
            for (std::size_t wi = merged.size(); wi-- > 0;) {
                const std::uint64_t v = merged[wi];
                spread[wi] |= (v >> 1) | (carry << 63);
                carry = v & 1ULL;
            }
            cells += detail::popcount(spread);
            prev = cur;
        }
        return Rational(cells) * hx * hy;
    };

    VolumeBounds out{compute(true), compute(false), false};
    return out;
}

struct BmResult {
    VolumeBounds diff_volume;
    Rational ratio_lower;
    Rational ratio_upper;
    bool holds;    // the certified bounds are consistent with ratio >= 2^d
    bool equality; // certified equality with 2^d within the bound width
};

/// vol(W-W)/vol(W) against the 2^d threshold.
inline BmResult bm_check(const BoxUnion& w, std::int64_t grid = 256) {
    BmResult r{};
    r.diff_volume = box_difference_volume(w, grid);
    const Rational vol = w.volume();
    r.ratio_lower = r.diff_volume.lower / vol;
    r.ratio_upper = r.diff_volume.upper / vol;
    Rational threshold(1);
    for (int i = 0; i < w.dim(); ++i) threshold *= Rational(2);
    r.holds = r.ratio_upper >= threshold;
    if (w.dim() == 1) {
        r.equality = w.boxes().size() == 1;
    } else {
        r.equality = r.ratio_lower <= threshold &&
                     r.ratio_upper - threshold <= r.ratio_upper - r.ratio_lower;
    }
    return r;
}

/// Certified two-sided volume bounds for the sumset scans; endpoints may be
/// quadratic irrationals when the window is.
struct SumsetBounds {
    QuadExtReal lower;
    QuadExtReal upper;
    bool exact;

    QuadExtReal width() const { return upper - lower; }
};

/// Volume of the higher-order sumset W^{[r]} = {(h_1, ..., h_{r-1}) :
/// W ∩ (W - h_1) ∩ ... ∩ (W - h_{r-1}) nonempty} in R^{r-1}. Exact for
/// r = 2; certified grid bounds for r = 3, 4. The region is a union of
/// difference-constraint polytopes, one per interval tuple, and the scan
/// walks grid rows with exact per-row feasibility intervals.
inline SumsetBounds higher_order_sumset_volume(const Window1D& w, int r, std::int64_t grid = 256) {
    if (r < 2 || r > 4) throw PreconditionError("sumset order must be in [2, 4]");
    if (r == 2) {
        const QuadExtReal m = window_measure(window_difference(w));
        return {m, m, true};
    }
    if (grid < 64) throw PreconditionError("grid must be >= 64 for r >= 3");
    const int dim = r - 1;
    const QuadExtReal big_l = w.sup() - w.inf();
    const QuadExtReal h = (big_l * QuadExtReal(Rational(2))) / QuadExtReal(Rational(Int(grid)));
    const QuadExtReal origin = -big_l; // region inside [-L, L]^dim
    const auto& ivs = w.intervals();
    const std::size_t ni = ivs.size();

    // one polytope per interval tuple (i_0, ..., i_{r-1}):
    // h_l - h_m in [a_{i_l} - b_{i_m}, b_{i_l} - a_{i_m}]
    std::vector<std::vector<std::size_t>> tuples;
    {
        std::vector<std::size_t> t(static_cast<std::size_t>(r), 0);
        for (;;) {
            tuples.push_back(t);
            int k = r - 1;
            while (k >= 0 && ++t[static_cast<std::size_t>(k)] == ni) {
                t[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    auto band = [&](const std::vector<std::size_t>& t, int l, int m) {
        return std::pair<QuadExtReal, QuadExtReal>{ivs[t[static_cast<std::size_t>(l)]].lo -
                                                       ivs[t[static_cast<std::size_t>(m)]].hi,
                                                   ivs[t[static_cast<std::size_t>(l)]].hi -
                                                       ivs[t[static_cast<std::size_t>(m)]].lo};
    };
    auto cell_lo = [&](std::int64_t g) { return origin + h * QuadExtReal(Rational(Int(g))); };

    // clip an exact coordinate range to cell indices
    auto outer_cells = [&](const QuadExtReal& lo,
                           const QuadExtReal& hi) -> std::pair<std::int64_t, std::int64_t> {
        if (lo > hi) return {1, 0};
        Int a = floor((lo - origin) / h);
        Int b = floor((hi - origin) / h);
        std::int64_t ia = std::max<std::int64_t>(0, a.convert_to<std::int64_t>());
        std::int64_t ib = std::min<std::int64_t>(grid - 1, b.convert_to<std::int64_t>());
        return {ia, ib};
    };
    auto inner_cells = [&](const QuadExtReal& lo,
                           const QuadExtReal& hi) -> std::pair<std::int64_t, std::int64_t> {
        if (lo > hi) return {1, 0};
        Int a = ceil((lo - origin) / h);
        Int b = floor((hi - origin) / h) - 1;
        std::int64_t ia = std::max<std::int64_t>(0, a.convert_to<std::int64_t>());
        std::int64_t ib = std::min<std::int64_t>(grid - 1, b.convert_to<std::int64_t>());
        return {ia, ib};
    };

    auto count_union = [&](std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
        std::sort(ranges.begin(), ranges.end());
        Int total = 0;
        std::int64_t covered_to = -1;
        for (const auto& [a, b] : ranges) {
            if (b < a) continue;
            const std::int64_t lo = std::max(a, covered_to + 1);
            if (b >= lo) {
                total += b - lo + 1;
                covered_to = b;
            } else {
                covered_to = std::max(covered_to, b);
            }
        }
        return total;
    };

    Int inner_count = 0, outer_count = 0;
    if (dim == 2) {
        for (std::int64_t g1 = 0; g1 < grid; ++g1) {
            const QuadExtReal c1lo = cell_lo(g1);
            const QuadExtReal c1hi = c1lo + h;
            std::vector<std::pair<std::int64_t, std::int64_t>> inner_rs, outer_rs;
            for (const auto& t : tuples) {
                const auto b10 = band(t, 1, 0);
                const auto b20 = band(t, 2, 0);
                const auto b21 = band(t, 2, 1);
                // outer: h1 clipped to the cell, h2 from box and shifted band
                const QuadExtReal h1lo = max(c1lo, b10.first);
                const QuadExtReal h1hi = min(c1hi, b10.second);
                if (!(h1lo > h1hi)) {
                    const QuadExtReal lo = max(b20.first, b21.first + h1lo);
                    const QuadExtReal hi = min(b20.second, b21.second + h1hi);
                    outer_rs.push_back(outer_cells(lo, hi));
                }
                // inner: whole cell inside the h1 box and band-safe
                if (c1lo >= b10.first && c1hi <= b10.second) {
                    const QuadExtReal lo = max(b20.first, b21.first + c1hi);
                    const QuadExtReal hi = min(b20.second, b21.second + c1lo);
                    inner_rs.push_back(inner_cells(lo, hi));
                }
            }
            inner_count += count_union(inner_rs);
            outer_count += count_union(outer_rs);
        }
    } else {
        // dim == 3: difference-constraint feasibility per (g1, g2) row
        for (std::int64_t g1 = 0; g1 < grid; ++g1) {
            const QuadExtReal c1lo = cell_lo(g1);
            const QuadExtReal c1hi = c1lo + h;
            for (std::int64_t g2 = 0; g2 < grid; ++g2) {
                const QuadExtReal c2lo = cell_lo(g2);
                const QuadExtReal c2hi = c2lo + h;
                std::vector<std::pair<std::int64_t, std::int64_t>> inner_rs, outer_rs;
                for (const auto& t : tuples) {
                    const auto b10 = band(t, 1, 0);
                    const auto b20 = band(t, 2, 0);
                    const auto b30 = band(t, 3, 0);
                    const auto b21 = band(t, 2, 1);
                    const auto b31 = band(t, 3, 1);
                    const auto b32 = band(t, 3, 2);
                    // outer: tighten h1, h2 to the cell, propagate to h3
                    const QuadExtReal h1lo = max(c1lo, b10.first);
                    const QuadExtReal h1hi = min(c1hi, b10.second);
                    if (h1lo > h1hi) continue;
                    QuadExtReal h2lo = max(c2lo, max(b20.first, b21.first + h1lo));
                    QuadExtReal h2hi = min(c2hi, min(b20.second, b21.second + h1hi));
                    if (h2lo > h2hi) continue;
                    {
                        const QuadExtReal lo =
                            max(b30.first, max(b31.first + h1lo, b32.first + h2lo));
                        const QuadExtReal hi =
                            min(b30.second, min(b31.second + h1hi, b32.second + h2hi));
                        outer_rs.push_back(outer_cells(lo, hi));
                    }
                    // inner: whole (h1, h2) cell inside boxes and cross band
                    if (c1lo >= b10.first && c1hi <= b10.second && c2lo >= b20.first &&
                        c2hi <= b20.second && c2lo - c1hi >= b21.first &&
                        c2hi - c1lo <= b21.second) {
                        const QuadExtReal lo =
                            max(b30.first, max(b31.first + c1hi, b32.first + c2hi));
                        const QuadExtReal hi =
                            min(b30.second, min(b31.second + c1lo, b32.second + c2lo));
                        inner_rs.push_back(inner_cells(lo, hi));
                    }
                }
                inner_count += count_union(inner_rs);
                outer_count += count_union(outer_rs);
            }
        }
    }
    const QuadExtReal cell_vol = dim == 2 ? h * h : h * h * h;
    const QuadExtReal lo_v = QuadExtReal(Rational(inner_count)) * cell_vol;
    const QuadExtReal hi_v = QuadExtReal(Rational(outer_count)) * cell_vol;
    return {lo_v, hi_v, false};
}

} // namespace adelic_lab
