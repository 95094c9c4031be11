#pragma once

#include "chaosync/image.hpp"

#include <array>
#include <cstdint>

namespace chaosync {

double mse(const image_matrix& a, const image_matrix& b);

// 10 log10(255^2 / mse); +infinity when the images are identical
double psnr(const image_matrix& a, const image_matrix& b);

// global single-window SSIM with population (1/mn) moments
double ssim(const image_matrix& a, const image_matrix& b, double c1 = 6.5025,
            double c2 = 58.5225);

std::array<std::uint64_t, 256> histogram(const image_matrix& img);

} // namespace chaosync
