// Regenerates the synthetic CSV series under fixtures/.
//
//   make_fixtures <out_dir>
//
// Every fixture is a sum of sinusoids plus AR(1) noise, written with a
// plain integer timestamp column. Output is deterministic for a given
// standard library; the shipped files are the reference copies.

#include "vmdlinear/io.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Tone {
    double amplitude;
    double period;  // samples
    double phase;
};

std::vector<double> synth(std::size_t n, const std::vector<Tone>& tones, double ar_coef, double noise_std,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_std);
    std::vector<double> out(n);
    double ar = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double v = 0.0;
        for (const auto& tone : tones) {
            v += tone.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / tone.period + tone.phase);
        }
        ar = ar_coef * ar + (noise_std > 0.0 ? gauss(rng) : 0.0);
        out[t] = v + ar;
    }
    return out;
}

void write(const std::filesystem::path& path, const std::vector<std::string>& names,
           const std::vector<std::vector<double>>& columns) {
    std::ostringstream s;
    s << "t";
    for (const auto& n : names) s << ',' << n;
    s << '\n';
    for (std::size_t i = 0; i < columns.front().size(); ++i) {
        s << i;
        for (const auto& c : columns) s << ',' << vmdl::io::format_double(c[i]);
        s << '\n';
    }
    vmdl::io::write_file_atomic(path, s.str());
    std::cout << "wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <out_dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];

    {
        std::vector<double> x(2048);
        for (std::size_t t = 0; t < x.size(); ++t) {
            const double tt = static_cast<double>(t);
            x[t] = std::cos(2.0 * std::numbers::pi * 0.04 * tt) + 0.5 * std::cos(2.0 * std::numbers::pi * 0.20 * tt);
        }
        write(dir / "two_tone.csv", {"value"}, {x});
    }

    write(dir / "sines_a.csv", {"value"},
          {synth(1200, {{1.0, 24.0, 0.0}, {0.6, 7.0, 0.4}, {0.4, 60.0, 1.1}}, 0.5, 0.3, 11)});

    write(dir / "sines_b.csv", {"load", "temp"},
          {synth(1000, {{1.0, 12.0, 0.3}, {0.5, 5.0, 0.0}, {0.8, 80.0, 2.0}}, 0.6, 0.25, 23),
           synth(1000, {{0.7, 30.0, 1.0}, {0.7, 9.0, 0.2}}, 0.4, 0.35, 29)});

    write(dir / "sines_c.csv", {"value"},
          {synth(480, {{1.0, 16.0, 0.5}, {0.5, 6.0, 1.5}, {0.3, 40.0, 0.0}}, 0.5, 0.3, 37)});
    return 0;
}
