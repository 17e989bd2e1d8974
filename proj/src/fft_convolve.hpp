#pragma once

#include "gcorner/gabor.hpp"
#include "gcorner/image.hpp"

#include <span>
#include <vector>

namespace gcorner::detail {

/// Convolves an already padded image (pad = h on every side, h shared by all
/// kernels) with each kernel through FFTW and returns the valid interior.
std::vector<Image> fft_convolve_padded(const Image& padded, int half_width,
                                       std::span<const KernelGrid* const> kernels);

}  // namespace gcorner::detail
