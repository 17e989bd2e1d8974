#include "gcorner/gabor.hpp"

#include "binary_io.hpp"
#include "gcorner/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gcorner {

namespace {

using std::numbers::pi;

struct Envelope {
    double gain;
    double ax;  // (f / gamma)^2
    double ay;  // (f / eta)^2
    double c;
    double s;
    double f;
};

Envelope envelope(const GaborParams& p) noexcept {
    return {p.frequency * p.frequency / (pi * p.gamma * p.eta),
            (p.frequency / p.gamma) * (p.frequency / p.gamma),
            (p.frequency / p.eta) * (p.frequency / p.eta),
            std::cos(p.theta),
            std::sin(p.theta),
            p.frequency};
}

template <typename Carrier>
double eval(const Envelope& e, double x, double y, Carrier carrier) noexcept {
    const double xr = x * e.c + y * e.s;
    const double yr = -x * e.s + y * e.c;
    return e.gain * std::exp(-e.ax * xr * xr - e.ay * yr * yr) * carrier(2.0 * pi * e.f * xr);
}

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

void validate(const GaborParams& params) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(params.frequency)) {
        throw ParameterError("Gabor frequency must be positive");
    }
    if (!positive(params.gamma) || !positive(params.eta)) {
        throw ParameterError("Gabor gamma and eta must be positive");
    }
    if (!std::isfinite(params.theta)) {
        throw ParameterError("Gabor orientation must be finite");
    }
}

double normalize_direction(double theta) noexcept {
    double t = std::fmod(theta, pi);
    if (t < 0.0) {
        t += pi;
    }
    return t >= pi ? 0.0 : t;
}

int kernel_half_width(double frequency, double gamma, double eta) {
    validate(GaborParams{frequency, 0.0, gamma, eta});
    return static_cast<int>(std::ceil(3.0 * std::max(gamma, eta) / frequency)) + 1;
}

KernelGrid::KernelGrid(int half_width) : half_width_(half_width) {
    if (half_width < 0) {
        throw SizeError("kernel half width must be non-negative");
    }
    const auto side = static_cast<std::size_t>(2 * half_width + 1);
    taps_.assign(side * side, 0.0);
}

double evaluate_imaginary(const GaborParams& params, double x, double y) noexcept {
    return eval(envelope(params), x, y, [](double a) { return std::sin(a); });
}

double evaluate_real(const GaborParams& params, double x, double y) noexcept {
    return eval(envelope(params), x, y, [](double a) { return std::cos(a); });
}

KernelGrid imaginary_kernel(const GaborParams& params) {
    validate(params);
    const int h = kernel_half_width(params.frequency, params.gamma, params.eta);
    const Envelope e = envelope(params);
    KernelGrid grid(h);
    // Fill one half-plane and mirror with negation so antisymmetry holds bit-exactly.
    for (int y = 0; y <= h; ++y) {
        for (int x = (y == 0 ? 1 : -h); x <= h; ++x) {
            const double v = eval(e, x, y, [](double a) { return std::sin(a); });
            grid.at(x, y) = v;
            grid.at(-x, -y) = -v;
        }
    }
    grid.at(0, 0) = 0.0;
    return grid;
}

ComplexKernel complex_kernel(const GaborParams& params) {
    validate(params);
    const int h = kernel_half_width(params.frequency, params.gamma, params.eta);
    const Envelope e = envelope(params);
    ComplexKernel k{KernelGrid(h), imaginary_kernel(params)};
    for (int y = 0; y <= h; ++y) {
        for (int x = (y == 0 ? 0 : -h); x <= h; ++x) {
            const double v = eval(e, x, y, [](double a) { return std::cos(a); });
            k.real.at(x, y) = v;
            k.real.at(-x, -y) = v;
        }
    }
    return k;
}

KernelBank::KernelBank(std::vector<double> scales, int directions, double gamma, double eta)
    : scales_(std::move(scales)), directions_(directions), gamma_(gamma), eta_(eta) {
    if (scales_.empty()) {
        throw ConfigError("kernel bank needs at least one scale");
    }
    if (directions_ < 2) {
        throw ConfigError("kernel bank needs at least two directions");
    }
    angles_.reserve(static_cast<std::size_t>(directions_));
    for (int k = 0; k < directions_; ++k) {
        angles_.push_back(k * pi / directions_);
    }
    kernels_.reserve(scales_.size() * angles_.size());
    for (double f : scales_) {
        for (double theta : angles_) {
            kernels_.push_back(imaginary_kernel(GaborParams{f, theta, gamma_, eta_}));
        }
    }
}

int KernelBank::max_half_width() const noexcept {
    int h = 0;
    for (const auto& k : kernels_) {
        h = std::max(h, k.half_width());
    }
    return h;
}

GaborParams KernelBank::params(std::size_t scale, std::size_t direction) const {
    return GaborParams{scales_.at(scale), angles_.at(direction), gamma_, eta_};
}

std::vector<double> default_scales() { return {0.15, 0.2, 0.25}; }

KernelBank default_bank() { return KernelBank(default_scales(), 6, 0.6, 1.2); }

void dump_kernels(const KernelBank& bank, const std::filesystem::path& directory) {
    detail::ensure_directory(directory);
    for (std::size_t s = 0; s < bank.scale_count(); ++s) {
        for (std::size_t k = 0; k < static_cast<std::size_t>(bank.directions()); ++k) {
            const auto stem = "gabor_f" + format_number(bank.scales()[s]) + "_k" + std::to_string(k);
            const KernelGrid& kernel = bank.kernel(s, k);
            detail::write_f64_le(directory / (stem + ".f64"), kernel.taps());

            std::ofstream header(directory / (stem + ".txt"));
            header.precision(17);
            header << "side " << kernel.side() << '\n'
                   << "f " << bank.scales()[s] << '\n'
                   << "theta " << bank.angles()[k] << '\n'
                   << "gamma " << bank.gamma() << '\n'
                   << "eta " << bank.eta() << '\n';
            if (!header) {
                throw IoError("cannot write kernel header in " + directory.string());
            }
        }
    }
}

}  // namespace gcorner
