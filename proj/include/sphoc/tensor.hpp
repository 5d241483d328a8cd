#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sphoc/alphabet.hpp"

namespace sphoc {

/// Dense row-major H x W plane.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t height, std::size_t width, T fill = T{})
        : height_(height), width_(width), values_(height * width, fill) {}

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return values_.size(); }

    T& operator()(std::size_t y, std::size_t x) {
        assert(y < height_ && x < width_);
        return values_[y * width_ + x];
    }
    const T& operator()(std::size_t y, std::size_t x) const {
        assert(y < height_ && x < width_);
        return values_[y * width_ + x];
    }

    std::span<T> values() noexcept { return values_; }
    std::span<const T> values() const noexcept { return values_; }
    std::span<T> row(std::size_t y) { return std::span<T>(values_).subspan(y * width_, width_); }
    std::span<const T> row(std::size_t y) const {
        return std::span<const T>(values_).subspan(y * width_, width_);
    }

    bool operator==(const Grid&) const = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<T> values_;
};

using Mask = Grid<std::uint8_t>;
using BigramHeatmap = Grid<double>;

/// H x W x 38 per-pixel class distribution, channel-fastest.
class SoftPhocTensor {
public:
    SoftPhocTensor() = default;
    SoftPhocTensor(std::size_t height, std::size_t width)
        : height_(height), width_(width), data_(height * width * kNumClasses, 0.0) {}

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    static constexpr std::size_t channels() noexcept { return kNumClasses; }

    double& at(std::size_t y, std::size_t x, std::size_t c) { return data_[offset(y, x) + c]; }
    double at(std::size_t y, std::size_t x, std::size_t c) const { return data_[offset(y, x) + c]; }

    std::span<double, kNumClasses> pixel(std::size_t y, std::size_t x) {
        return std::span<double, kNumClasses>(data_.data() + offset(y, x), kNumClasses);
    }
    std::span<const double, kNumClasses> pixel(std::size_t y, std::size_t x) const {
        return std::span<const double, kNumClasses>(data_.data() + offset(y, x), kNumClasses);
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Copies channel `c` into a contiguous H x W plane.
    Grid<double> channel_plane(std::size_t c) const;
    void set_channel_plane(std::size_t c, const Grid<double>& plane);

    bool operator==(const SoftPhocTensor&) const = default;

private:
    std::size_t offset(std::size_t y, std::size_t x) const {
        assert(y < height_ && x < width_);
        return (y * width_ + x) * kNumClasses;
    }

    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> data_;
};

/// Largest |sum - 1| over all pixels, summing channels [first, 38).
double max_normalization_error(const SoftPhocTensor& t, std::size_t first_channel = 0);

}  // namespace sphoc
