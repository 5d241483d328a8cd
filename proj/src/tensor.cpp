#include "sphoc/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace sphoc {

Grid<double> SoftPhocTensor::channel_plane(std::size_t c) const {
    Grid<double> plane(height_, width_);
    auto out = plane.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * kNumClasses + c];
    return plane;
}

void SoftPhocTensor::set_channel_plane(std::size_t c, const Grid<double>& plane) {
    auto in = plane.values();
    for (std::size_t i = 0; i < in.size(); ++i) data_[i * kNumClasses + c] = in[i];
}

double max_normalization_error(const SoftPhocTensor& t, std::size_t first_channel) {
    double worst = 0.0;
    for (std::size_t y = 0; y < t.height(); ++y)
        for (std::size_t x = 0; x < t.width(); ++x) {
            const auto px = t.pixel(y, x);
            double sum = 0.0;
            for (std::size_t c = first_channel; c < kNumClasses; ++c) sum += px[c];
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    return worst;
}

}  // namespace sphoc
