#include "mfvmd/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "mfvmd/error.hpp"
#include "mfvmd/stats.hpp"

namespace mfvmd {
namespace {

// Replicate boundary extension.
inline double ext(const std::vector<double>& s, long i) {
    const long n = static_cast<long>(s.size());
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return s[static_cast<std::size_t>(i)];
}

void require_fits(const Signal& s, const StructuringElement& g) {
    if (g.width() > s.size())
        throw Error("se-too-wide", "structuring element width " + std::to_string(g.width()) +
                                       " exceeds signal length " + std::to_string(s.size()));
}

// Sliding extremum over windows [n + lo, n + lo + M - 1] of the replicate-
// extended signal, using a monotonic deque. `less` keeps minima, otherwise
// maxima. Exact: only comparisons, no arithmetic.
std::vector<double> sliding_extremum(const std::vector<double>& s, std::size_t m, long lo, bool less) {
    const long n = static_cast<long>(s.size());
    const long width = static_cast<long>(m);
    std::vector<double> out(s.size());

    auto beats = [less](double a, double b) { return less ? a <= b : a >= b; };

    std::deque<long> dq;  // indices into the extended range, extremum at front
    const long first = lo;
    const long last = n - 1 + lo + width - 1;
    long next = first;
    for (long nout = 0; nout < n; ++nout) {
        const long win_lo = nout + lo;
        const long win_hi = nout + lo + width - 1;
        while (next <= std::min(win_hi, last)) {
            const double v = ext(s, next);
            while (!dq.empty() && beats(v, ext(s, dq.back()))) dq.pop_back();
            dq.push_back(next);
            ++next;
        }
        while (!dq.empty() && dq.front() < win_lo) dq.pop_front();
        out[static_cast<std::size_t>(nout)] = ext(s, dq.front());
    }
    return out;
}

std::vector<double> erode_general(const std::vector<double>& s, const std::vector<double>& g) {
    const long n = static_cast<long>(s.size());
    const long m = static_cast<long>(g.size());
    std::vector<double> out(s.size());
    for (long i = 0; i < n; ++i) {
        double best = ext(s, i) - g[0];
        for (long j = 1; j < m; ++j) best = std::min(best, ext(s, i + j) - g[static_cast<std::size_t>(j)]);
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

std::vector<double> dilate_general(const std::vector<double>& s, const std::vector<double>& g) {
    const long n = static_cast<long>(s.size());
    const long m = static_cast<long>(g.size());
    std::vector<double> out(s.size());
    for (long i = 0; i < n; ++i) {
        double best = ext(s, i) + g[0];
        for (long j = 1; j < m; ++j) best = std::max(best, ext(s, i - j) + g[static_cast<std::size_t>(j)]);
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

}  // namespace

StructuringElement::StructuringElement(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error("bad-se", "structuring element needs width >= 1");
    flat_ = true;
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error("bad-se", "non-finite structuring element value");
        if (v != 0.0) flat_ = false;
    }
}

StructuringElement StructuringElement::flat(std::size_t width) {
    if (width == 0) throw Error("bad-se", "structuring element needs width >= 1");
    return StructuringElement(std::vector<double>(width, 0.0));
}

StructuringElement StructuringElement::reflect() const {
    std::vector<double> rev(values_.rbegin(), values_.rend());
    return StructuringElement(std::move(rev));
}

Signal erode(const Signal& s, const StructuringElement& g) {
    require_fits(s, g);
    if (g.is_flat()) return s.with_samples(sliding_extremum(s.samples(), g.width(), 0, true));
    return s.with_samples(erode_general(s.samples(), g.values()));
}

Signal dilate(const Signal& s, const StructuringElement& g) {
    require_fits(s, g);
    if (g.is_flat())
        return s.with_samples(sliding_extremum(s.samples(), g.width(), 1 - static_cast<long>(g.width()), false));
    return s.with_samples(dilate_general(s.samples(), g.values()));
}

Signal open(const Signal& s, const StructuringElement& g) { return dilate(erode(s, g), g); }

Signal close(const Signal& s, const StructuringElement& g) { return erode(dilate(s, g), g); }

Signal mmc_filter(const Signal& s, const StructuringElement& g) {
    const Signal oc = close(open(s, g), g);
    const Signal co = open(close(s, g), g);
    std::vector<double> avg(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) avg[i] = 0.5 * (oc[i] + co[i]);
    return s.with_samples(std::move(avg));
}

SeWidthSelection select_se_width(const Signal& s, std::size_t min_width, std::size_t max_width,
                                 double threshold) {
    if (min_width == 0 || min_width > max_width)
        throw Error("bad-config", "empty structuring-element width range");
    if (max_width > s.size())
        throw Error("se-too-wide", "width range exceeds signal length");
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw Error("bad-config", "correlation threshold must lie in (0, 1)");

    SeWidthSelection sel;
    sel.width = min_width;
    sel.met_threshold = false;
    for (std::size_t w = min_width; w <= max_width; ++w) {
        double r = std::numeric_limits<double>::quiet_NaN();
        try {
            r = pearson_correlation(s, mmc_filter(s, StructuringElement::flat(w)));
        } catch (const Error&) {
            // constant filter output: correlation undefined, width does not qualify
        }
        sel.correlations.push_back(r);
        if (r >= threshold) {
            sel.width = w;
            sel.met_threshold = true;
        }
    }
    return sel;
}

}  // namespace mfvmd
