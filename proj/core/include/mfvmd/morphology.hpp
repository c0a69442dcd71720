#pragma once

#include <vector>

#include "mfvmd/signal.hpp"

namespace mfvmd {

/// Finite structuring element g(m), m = 0..M-1, in the signal's amplitude
/// unit. A flat element is all zeros, reducing erosion/dilation to sliding
/// min/max.
class StructuringElement {
public:
    explicit StructuringElement(std::vector<double> values);

    /// Flat element of the given width (all-zero values).
    static StructuringElement flat(std::size_t width);

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t width() const noexcept { return values_.size(); }
    bool is_flat() const noexcept { return flat_; }

    /// Values reversed, g'(m) = g(M-1-m).
    StructuringElement reflect() const;

private:
    std::vector<double> values_;
    bool flat_;
};

/// Erosion: out[n] = min_m (ext(s)(n+m) - g(m)), window looking forward.
/// The signal is replicate-extended so the output keeps the input length.
Signal erode(const Signal& s, const StructuringElement& g);

/// Dilation: out[n] = max_m (ext(s)(n-m) + g(m)), window looking backward.
Signal dilate(const Signal& s, const StructuringElement& g);

/// Opening: erosion then dilation. Removes positive impulses narrower
/// than the element width.
Signal open(const Signal& s, const StructuringElement& g);

/// Closing: dilation then erosion. Removes negative impulses narrower
/// than the element width.
Signal close(const Signal& s, const StructuringElement& g);

/// Combined morphological cascade filter:
/// (open-then-close + close-then-open) / 2, both with the same element.
Signal mmc_filter(const Signal& s, const StructuringElement& g);

struct SeWidthSelection {
    std::size_t width = 1;
    /// False when no width in the range met the threshold; `width` is then
    /// the smallest candidate.
    bool met_threshold = false;
    /// Correlation of s with mmc_filter(s, flat(w)) for each candidate
    /// width, in range order (NaN where undefined).
    std::vector<double> correlations;
};

/// Picks the largest flat-element width w in [min_width, max_width] whose
/// filtered output still correlates with the input at or above `threshold`.
/// Falls back to min_width (flagged) when no width qualifies.
SeWidthSelection select_se_width(const Signal& s, std::size_t min_width, std::size_t max_width,
                                 double threshold = 0.95);

}  // namespace mfvmd
