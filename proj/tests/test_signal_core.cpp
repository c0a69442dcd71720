#include <doctest.h>

#include <mfvmd/csv.hpp>
#include <mfvmd/error.hpp>
#include <mfvmd/fft.hpp>
#include <mfvmd/signal.hpp>
#include <mfvmd/spectrum.hpp>
#include <mfvmd/stats.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "support.hpp"

using namespace mfvmd;
using testsup::thrown_code;

namespace {

Signal tone(double freq_hz, double fs_hz, std::size_t n, double amp = 1.0) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = amp * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / fs_hz);
    return Signal(std::move(s), 1.0 / fs_hz);
}

}  // namespace

TEST_SUITE("signal_core") {

TEST_CASE("signal validation") {
    CHECK(thrown_code([] { Signal({1.0}, 1.0); }) == "bad-signal");
    CHECK(thrown_code([] { Signal({}, 1.0); }) == "bad-signal");
    CHECK(thrown_code([] { Signal({1.0, 2.0}, 0.0); }) == "bad-signal");
    CHECK(thrown_code([] { Signal({1.0, 2.0}, -1.0); }) == "bad-signal");
    CHECK(thrown_code([] { Signal({1.0, 2.0}, std::numeric_limits<double>::infinity()); }) ==
          "bad-signal");
    CHECK(thrown_code([] { Signal({1.0, std::nan("")}, 1.0); }) == "bad-signal");
    CHECK_NOTHROW(Signal({0.0, 0.0}, 1e-6));
}

TEST_CASE("signal accessors") {
    const Signal s({1.0, 2.0, 3.0, 4.0}, 0.5, 10.0);
    CHECK(s.size() == 4);
    CHECK(s.dt() == 0.5);
    CHECK(s.t0() == 10.0);
    CHECK(s[2] == 3.0);
    CHECK(s.time_at(3) == doctest::Approx(11.5));
    CHECK(s.duration() == doctest::Approx(2.0));
    CHECK(s.sample_rate() == doctest::Approx(2.0));
    CHECK(s.nyquist() == doctest::Approx(1.0));
    CHECK(s.energy() == doctest::Approx(30.0));
    CHECK(s.power() == doctest::Approx(7.5));

    const Signal t = s.with_samples({0.0, 0.0, 0.0, 1.0});
    CHECK(t.dt() == s.dt());
    CHECK(t.t0() == s.t0());
    CHECK(t[3] == 1.0);
}

TEST_CASE("pearson correlation basics") {
    const Signal a({1.0, 2.0, 3.0, 4.0}, 1.0);
    const Signal b({2.0, 4.0, 6.0, 8.0}, 1.0);
    CHECK(pearson_correlation(a, a) == doctest::Approx(1.0));
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    const Signal neg = a.with_samples({-1.0, -2.0, -3.0, -4.0});
    CHECK(pearson_correlation(a, neg) == doctest::Approx(-1.0));

    const Signal c({0.3, -0.8, 0.1, 0.9}, 1.0);
    CHECK(pearson_correlation(a, c) == doctest::Approx(pearson_correlation(c, a)));
}

TEST_CASE("pearson correlation errors") {
    const Signal a({1.0, 2.0, 3.0}, 1.0);
    const Signal shorter({1.0, 2.0}, 1.0);
    CHECK(thrown_code([&] { pearson_correlation(a, shorter); }) == "length-mismatch");

    const Signal flat({5.0, 5.0, 5.0}, 1.0);
    CHECK(thrown_code([&] { pearson_correlation(flat, a); }) == "constant-signal");
    CHECK(thrown_code([&] { pearson_correlation(a, flat); }) == "constant-signal");
    CHECK(thrown_code([&] { pearson_correlation(flat, flat); }) == "constant-signal");
}

TEST_CASE("pearson invariant under positive affine transforms") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> av(64), bv(64);
    for (std::size_t i = 0; i < 64; ++i) {
        av[i] = uni(rng);
        bv[i] = uni(rng);
    }
    const Signal a(av, 1.0), b(bv, 1.0);
    const double r = pearson_correlation(a, b);
    std::vector<double> scaled(64);
    for (std::size_t i = 0; i < 64; ++i) scaled[i] = 2.5 * av[i] + 7.0;
    CHECK(pearson_correlation(Signal(scaled, 1.0), b) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("snr equal powers gives zero dB") {
    const Signal clean({3.0, 3.0, 3.0, 3.0}, 1.0);
    const Signal noisy({6.0, 0.0, 6.0, 0.0}, 1.0);
    CHECK(snr_db(clean, noisy) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("snr hits 5 dB when the power ratio is 10^0.5") {
    const std::size_t n = 1000;
    const Signal clean = tone(10e3, 1e6, n);
    const double p_clean = clean.power();

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> noise(n);
    double p_noise = 0.0;
    for (double& v : noise) {
        v = uni(rng);
        p_noise += v * v;
    }
    p_noise /= static_cast<double>(n);
    const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, 0.5)));

    std::vector<double> noisy(n);
    for (std::size_t i = 0; i < n; ++i) noisy[i] = clean[i] + gain * noise[i];
    CHECK(snr_db(clean, clean.with_samples(noisy)) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("snr of identical signals is infinite") {
    const Signal s = tone(10e3, 1e6, 64);
    CHECK(std::isinf(snr_db(s, s)));
    CHECK(snr_db(s, s) > 0.0);
}

TEST_CASE("snr length mismatch") {
    const Signal a({1.0, 2.0, 3.0}, 1.0);
    const Signal b({1.0, 2.0}, 1.0);
    CHECK(thrown_code([&] { snr_db(a, b); }) == "length-mismatch");
}

TEST_CASE("snr decreases monotonically with noise gain") {
    const Signal clean = tone(10e3, 1e6, 256);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> noise(256);
    for (double& v : noise) v = uni(rng);

    double prev = std::numeric_limits<double>::infinity();
    for (double g : {0.1, 0.5, 1.0, 2.0, 8.0}) {
        std::vector<double> noisy(256);
        for (std::size_t i = 0; i < 256; ++i) noisy[i] = clean[i] + g * noise[i];
        const double snr = snr_db(clean, clean.with_samples(noisy));
        CHECK(snr < prev);
        prev = snr;
    }
}

TEST_CASE("power spectrum places a pure tone in one bin") {
    // 2000 samples at 1 MHz cover exactly 20 periods of 10 kHz, so the
    // tone sits on bin k = f*N*dt = 20.
    const Signal s = tone(10e3, 1e6, 2000);
    const PowerSpectrum ps = power_spectrum(s);
    CHECK(ps.size() == 1001);
    CHECK(ps.peak_bin() == 20);
    CHECK(ps.frequency_hz[20] == doctest::Approx(10e3));
    CHECK(ps.power[20] / ps.total() > 0.999);
}

TEST_CASE("power spectrum satisfies Parseval") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(777);
    for (double& x : v) x = uni(rng);
    const Signal s(v, 1e-4);
    const PowerSpectrum ps = power_spectrum(s);
    CHECK(ps.total() == doctest::Approx(s.energy()).epsilon(1e-9));

    const Signal zero({0.0, 0.0, 0.0, 0.0}, 1.0);
    for (double p : power_spectrum(zero).power) CHECK(p == 0.0);
}

TEST_CASE("fft round trip and delta spectrum") {
    std::vector<std::complex<double>> x(17);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto& v : x) v = {uni(rng), uni(rng)};

    const auto back = ifft(fft(x));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);

    std::vector<double> delta(8, 0.0);
    delta[0] = 1.0;
    for (const auto& bin : fft_real(delta)) CHECK(std::abs(bin - 1.0) < 1e-14);
}

TEST_CASE("csv round trip is bit exact") {
    testsup::TempDir dir("csv");
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(257);
    for (double& x : v) x = uni(rng) * std::pow(10.0, uni(rng) * 8.0);
    const Signal s(v, 4e-6, 1.25e-3);

    const auto path = dir.path() / "sig.csv";
    write_signal_csv(s, path);
    const Signal back = read_signal_csv(path);
    CHECK(back.dt() == s.dt());
    CHECK(back.t0() == s.t0());
    CHECK(testsup::bitwise_equal(back.samples(), s.samples()));

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.substr(0, 5) == "# dt=");
    CHECK(header.find(" t0=") != std::string::npos);
}

TEST_CASE("csv read errors") {
    testsup::TempDir dir("csv-err");
    CHECK(thrown_code([&] { read_signal_csv(dir.path() / "absent.csv"); }) == "io-missing");

    const auto malformed = dir.path() / "malformed.csv";
    std::ofstream(malformed) << "# dt=1e-6 t0=0\n1.0\nnot-a-number\n";
    CHECK(thrown_code([&] { read_signal_csv(malformed); }) == "csv-malformed");

    const auto noheader = dir.path() / "noheader.csv";
    std::ofstream(noheader) << "1.0\n2.0\n";
    CHECK(thrown_code([&] { read_signal_csv(noheader); }) == "csv-malformed");

    const auto nonfinite = dir.path() / "nonfinite.csv";
    std::ofstream(nonfinite) << "# dt=1e-6 t0=0\n1.0\ninf\n";
    CHECK(thrown_code([&] { read_signal_csv(nonfinite); }) == "csv-nonfinite");
}

}  // TEST_SUITE
