#include "mfvmd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mfvmd/error.hpp"

namespace mfvmd {

namespace {

constexpr int kWidth = 880;
constexpr int kPanelHeight = 300;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 54;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick positions with a 1/2/5 mantissa step covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo)) return {lo};
    const double span = hi - lo;
    const double raw = span / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 0.5 * step; v += step)
        ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return ticks;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    double px0 = 0.0, px1 = 1.0;

    double to_px(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

void pad_range(double& lo, double& hi) {
    if (hi > lo) return;
    const double pad = (std::abs(lo) > 0.0) ? std::abs(lo) * 0.5 : 1.0;
    lo -= pad;
    hi += pad;
}

void draw_frame(std::ostringstream& out, const Axis& x, const Axis& y,
                const std::string& x_label, const std::string& y_label) {
    out << "<rect x='" << x.px0 << "' y='" << y.px1 << "' width='" << (x.px1 - x.px0)
        << "' height='" << (y.px0 - y.px1)
        << "' fill='none' stroke='#444' stroke-width='1'/>\n";
    for (double t : nice_ticks(x.lo, x.hi, 8)) {
        const double px = x.to_px(t);
        out << "<line x1='" << px << "' y1='" << y.px0 << "' x2='" << px << "' y2='"
            << (y.px0 + 5) << "' stroke='#444'/>\n";
        out << "<text x='" << px << "' y='" << (y.px0 + 18)
            << "' font-size='11' text-anchor='middle'>" << fmt(t) << "</text>\n";
    }
    for (double t : nice_ticks(y.lo, y.hi, 5)) {
        const double py = y.to_px(t);
        out << "<line x1='" << (x.px0 - 5) << "' y1='" << py << "' x2='" << x.px0 << "' y2='"
            << py << "' stroke='#444'/>\n";
        out << "<text x='" << (x.px0 - 8) << "' y='" << (py + 4)
            << "' font-size='11' text-anchor='end'>" << fmt(t) << "</text>\n";
    }
    const double xc = 0.5 * (x.px0 + x.px1);
    out << "<text x='" << xc << "' y='" << (y.px0 + 38)
        << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n";
    const double yc = 0.5 * (y.px0 + y.px1);
    out << "<text x='16' y='" << yc << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
        << yc << ")'>" << y_label << "</text>\n";
}

void draw_polyline(std::ostringstream& out, const Axis& x, const Axis& y,
                   const std::vector<double>& ts, const std::vector<double>& vs,
                   const char* color, double opacity = 1.0) {
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.1'";
    if (opacity < 1.0) out << " stroke-opacity='" << fmt(opacity) << "'";
    out << " points='";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::isnan(vs[i])) continue;
        out << fmt(x.to_px(ts[i])) << "," << fmt(y.to_px(vs[i])) << " ";
    }
    out << "'/>\n";
}

std::string svg_open(int width, int height, const std::string& title) {
    std::ostringstream out;
    out << "<?xml version='1.0' encoding='UTF-8'?>\n"
        << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << width / 2 << "' y='24' font-size='15' text-anchor='middle'>" << title
        << "</text>\n";
    return out.str();
}

void signal_panel(std::ostringstream& out, const Signal& s, double top, double bottom,
                  const char* color, const std::string& x_label, const std::string& y_label) {
    std::vector<double> ts(s.size()), vs(s.size());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ts[i] = s.time_at(i) * 1e3;
        vs[i] = s[i];
        lo = std::min(lo, vs[i]);
        hi = std::max(hi, vs[i]);
    }
    pad_range(lo, hi);
    const Axis x{ts.front(), ts.back(), kMarginLeft, kWidth - kMarginRight};
    const Axis y{lo, hi, bottom, top};
    draw_frame(out, x, y, x_label, y_label);
    draw_polyline(out, x, y, ts, vs, color);
}

}  // namespace

std::string plot_signal(const Signal& s, const std::string& title) {
    const int height = kMarginTop + kPanelHeight + kMarginBottom;
    std::ostringstream out;
    out << svg_open(kWidth, height, title);
    signal_panel(out, s, kMarginTop, kMarginTop + kPanelHeight, kPalette[0], "time (ms)",
                 "amplitude");
    out << "</svg>\n";
    return out.str();
}

std::string plot_modes(const std::vector<Signal>& modes, const std::string& title) {
    if (modes.empty()) throw Error("empty-series", "no modes to plot");
    const int panel = 170;
    const int gap = 34;
    const int height = kMarginTop + static_cast<int>(modes.size()) * (panel + gap) + 20;
    std::ostringstream out;
    out << svg_open(kWidth, height, title);
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double top = kMarginTop + static_cast<double>(k) * (panel + gap);
        const bool last = (k + 1 == modes.size());
        signal_panel(out, modes[k], top, top + panel, kPalette[k % 8],
                     last ? "time (ms)" : "", "u" + std::to_string(k + 1));
    }
    out << "</svg>\n";
    return out.str();
}

std::string plot_spectrum(const HilbertSpectrum& spectrum, const std::string& title) {
    if (spectrum.per_mode.empty() || spectrum.length == 0)
        throw Error("empty-series", "no spectrum to plot");
    const int height = kMarginTop + kPanelHeight + kMarginBottom;
    std::ostringstream out;
    out << svg_open(kWidth, height, title);

    double fmax = 0.0, amax = 0.0;
    for (const auto& m : spectrum.per_mode) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!std::isnan(m.freqs[i])) fmax = std::max(fmax, m.freqs[i]);
            amax = std::max(amax, m.amps[i]);
        }
    }
    double f_hi = fmax * 1e-3 * 1.15;
    if (!(f_hi > 0.0)) f_hi = 1.0;
    const double t0 = spectrum.t0 * 1e3;
    const double t1 = (spectrum.t0 + static_cast<double>(spectrum.length - 1) * spectrum.dt) * 1e3;
    const Axis x{t0, t1, kMarginLeft, kWidth - kMarginRight};
    const Axis y{0.0, f_hi, static_cast<double>(kMarginTop + kPanelHeight),
                 static_cast<double>(kMarginTop)};
    draw_frame(out, x, y, "time (ms)", "frequency (kHz)");

    // Short line segments, opacity tracking amplitude, so the ridge is
    // bright where the mode carries energy.
    for (std::size_t k = 0; k < spectrum.per_mode.size(); ++k) {
        const auto& m = spectrum.per_mode[k];
        const char* color = kPalette[k % 8];
        for (std::size_t i = 0; i + 1 < m.size(); ++i) {
            if (std::isnan(m.freqs[i]) || std::isnan(m.freqs[i + 1])) continue;
            const double a = (amax > 0.0) ? 0.5 * (m.amps[i] + m.amps[i + 1]) / amax : 0.0;
            if (a < 0.02) continue;
            out << "<line x1='" << fmt(x.to_px(m.time_at(i) * 1e3)) << "' y1='"
                << fmt(y.to_px(m.freqs[i] * 1e-3)) << "' x2='"
                << fmt(x.to_px(m.time_at(i + 1) * 1e3)) << "' y2='"
                << fmt(y.to_px(m.freqs[i + 1] * 1e-3)) << "' stroke='" << color
                << "' stroke-width='1.6' stroke-opacity='" << fmt(0.15 + 0.85 * a) << "'/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string plot_bolt(const Signal& record, const Signal& carrier_mode, double echo_time_s,
                      const std::string& title) {
    const int panel = 220;
    const int gap = 40;
    const int height = kMarginTop + 2 * (panel + gap) + 20;
    std::ostringstream out;
    out << svg_open(kWidth, height, title);
    signal_panel(out, record, kMarginTop, kMarginTop + panel, kPalette[0], "", "record");
    const double top2 = kMarginTop + panel + gap;
    signal_panel(out, carrier_mode, top2, top2 + panel, kPalette[1], "time (ms)", "carrier mode");

    const double t_ms = echo_time_s * 1e3;
    const double lo_ms = record.t0() * 1e3;
    const double hi_ms = record.time_at(record.size() - 1) * 1e3;
    const Axis x{lo_ms, hi_ms, kMarginLeft, kWidth - kMarginRight};
    const double px = x.to_px(t_ms);
    out << "<line x1='" << fmt(px) << "' y1='" << kMarginTop << "' x2='" << fmt(px) << "' y2='"
        << (top2 + panel) << "' stroke='#000' stroke-dasharray='5,4' stroke-width='1.2'/>\n";
    out << "<text x='" << fmt(px + 6) << "' y='" << (kMarginTop + 14)
        << "' font-size='12'>echo " << fmt(t_ms) << " ms</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace mfvmd
