/**
 * @file gabor.hpp
 * @brief Discrete Gabor kernels and multi-scale, multi-direction kernel banks.
 *
 * The detector uses only the odd (sine-carrier) part of the Gabor function:
 *
 *     phi(x, y) = f^2 / (pi gamma eta) * exp(-(f/gamma)^2 x'^2 - (f/eta)^2 y'^2) * sin(2 pi f x')
 *     x' =  x cos(theta) + y sin(theta)
 *     y' = -x sin(theta) + y cos(theta)
 *
 * Kernels are sampled at integer offsets in [-h, h]^2 with h = ceil(3 max(gamma, eta) / f) + 1
 * and are not renormalized.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace gcorner {

struct GaborParams {
    double frequency = 0.2;  ///< central frequency, cycles/pixel
    double theta = 0.0;      ///< orientation, radians
    double gamma = 0.6;      ///< sharpness along the major axis
    double eta = 1.2;        ///< sharpness along the minor axis

    double aspect_ratio() const noexcept { return eta / gamma; }
};

/// Throws ParameterError unless f, gamma and eta are finite and positive.
void validate(const GaborParams& params);

/// Maps theta into [0, pi). The odd kernel at theta + pi is the negated kernel at theta.
double normalize_direction(double theta) noexcept;

/// Truncation radius used for a given frequency and shape.
int kernel_half_width(double frequency, double gamma, double eta);

/// Square, odd-sided tap grid. taps are row-major, row index = y + h.
class KernelGrid {
public:
    KernelGrid() = default;
    explicit KernelGrid(int half_width);

    int half_width() const noexcept { return half_width_; }
    int side() const noexcept { return 2 * half_width_ + 1; }

    /// Tap at offset (x, y), both in [-h, h].
    double& at(int x, int y) noexcept {
        return taps_[static_cast<std::size_t>((y + half_width_) * side() + x + half_width_)];
    }
    double at(int x, int y) const noexcept {
        return taps_[static_cast<std::size_t>((y + half_width_) * side() + x + half_width_)];
    }

    std::span<const double> taps() const noexcept { return taps_; }
    std::span<double> taps() noexcept { return taps_; }

    friend bool operator==(const KernelGrid&, const KernelGrid&) = default;

private:
    int half_width_ = 0;
    std::vector<double> taps_;
};

/// Continuous evaluation of the odd kernel at a real point (no truncation).
double evaluate_imaginary(const GaborParams& params, double x, double y) noexcept;

/// Continuous evaluation of the even (cosine-carrier) kernel.
double evaluate_real(const GaborParams& params, double x, double y) noexcept;

/// Odd-part kernel. Antisymmetric taps are written pairwise so the tap sum is exactly 0.
KernelGrid imaginary_kernel(const GaborParams& params);

struct ComplexKernel {
    KernelGrid real;
    KernelGrid imag;
};

/// Full complex kernel; imag is tap-for-tap identical to imaginary_kernel(params).
ComplexKernel complex_kernel(const GaborParams& params);

class KernelBank {
public:
    /// Throws ConfigError for an empty scale list or fewer than two directions,
    /// ParameterError for non-positive frequencies or shape values.
    KernelBank(std::vector<double> scales, int directions, double gamma, double eta);

    std::size_t scale_count() const noexcept { return scales_.size(); }
    int directions() const noexcept { return directions_; }
    double gamma() const noexcept { return gamma_; }
    double eta() const noexcept { return eta_; }
    const std::vector<double>& scales() const noexcept { return scales_; }

    /// k pi / K for k = 0..K-1.
    const std::vector<double>& angles() const noexcept { return angles_; }

    const KernelGrid& kernel(std::size_t scale, std::size_t direction) const {
        return kernels_.at(scale * static_cast<std::size_t>(directions_) + direction);
    }
    std::size_t size() const noexcept { return kernels_.size(); }
    int max_half_width() const noexcept;

    GaborParams params(std::size_t scale, std::size_t direction) const;

private:
    std::vector<double> scales_;
    int directions_;
    double gamma_;
    double eta_;
    std::vector<double> angles_;
    std::vector<KernelGrid> kernels_;
};

/// Default frequencies {0.15, 0.2, 0.25}.
std::vector<double> default_scales();

KernelBank default_bank();

/// Writes every kernel of the bank as raw little-endian float64 plus a text sidecar.
/// Files are named gabor_f<f>_k<k>.f64 / .txt. Throws IoError.
void dump_kernels(const KernelBank& bank, const std::filesystem::path& directory);

}  // namespace gcorner
