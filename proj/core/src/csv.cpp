#include "mfvmd/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mfvmd/error.hpp"

namespace mfvmd {
namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Parses a full token as a double; rejects trailing garbage.
double parse_double(const std::string& token, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    const bool overflow = (errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL));
    if (end == token.c_str() || *end != '\0' || overflow)
        throw Error("csv-malformed", std::string("cannot parse ") + what + ": '" + token + "'");
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void write_signal_csv(const Signal& s, const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / (path.filename().string() + ".tmp");

    {
        std::ofstream out(tmp);
        if (!out) throw Error("io", "cannot open '" + tmp.string() + "' for writing");
        out << "# dt=" << format_double(s.dt()) << " t0=" << format_double(s.t0()) << "\n";
        for (double v : s.samples()) out << format_double(v) << "\n";
        out.flush();
        if (!out) throw Error("io", "write failed for '" + tmp.string() + "'");
    }

    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("io", "rename to '" + path.string() + "' failed: " + ec.message());
    }
}

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("io-missing", "cannot open '" + path.string() + "'");

    std::string header;
    if (!std::getline(in, header)) throw Error("csv-malformed", "empty file '" + path.string() + "'");
    header = strip_cr(header);

    double dt = 0.0, t0 = 0.0;
    {
        std::istringstream hs(header);
        std::string hash, dt_tok, t0_tok;
        hs >> hash >> dt_tok >> t0_tok;
        if (hash != "#" || dt_tok.rfind("dt=", 0) != 0 || t0_tok.rfind("t0=", 0) != 0)
            throw Error("csv-malformed", "expected header '# dt=<s> t0=<s>', got '" + header + "'");
        dt = parse_double(dt_tok.substr(3), "dt");
        t0 = parse_double(t0_tok.substr(3), "t0");
    }

    std::vector<double> samples;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        const double v = parse_double(line, "sample");
        if (!std::isfinite(v)) throw Error("csv-nonfinite", "non-finite sample in '" + path.string() + "'");
        samples.push_back(v);
    }
    if (samples.size() < 2)
        throw Error("csv-malformed", "signal file '" + path.string() + "' has fewer than 2 samples");
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0))
        throw Error("csv-malformed", "invalid dt/t0 in '" + path.string() + "'");

    return Signal(std::move(samples), dt, t0);
}

}  // namespace mfvmd
