#include "fns/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fns {

Grid::Grid(int modes_per_axis, double box_length)
    : n_(modes_per_axis), length_(box_length) {
    if (n_ < 4 || n_ % 2 != 0) {
        throw std::invalid_argument("grid: modes per axis must be even and >= 4, got " +
                                    std::to_string(n_));
    }
    if (!(length_ > 0.0) || !std::isfinite(length_)) {
        throw std::invalid_argument("grid: box length must be positive and finite");
    }
    dxi_ = 2.0 * std::numbers::pi / length_;
    freq_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        freq_[static_cast<std::size_t>(i)] = dxi_ * signed_index(i);
    }
}

double Grid::max_wavenumber() const {
    const double ax = (n_ / 2) * dxi_;
    return std::sqrt(3.0) * ax;
}

Grid make_grid(int n, double box_length) { return Grid(n, box_length); }

}  // namespace fns
