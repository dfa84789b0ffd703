#ifndef FNS_GRID_HPP
#define FNS_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace fns {

/// Periodic box [0,L)^3 sampled with n collocation points per axis.
///
/// Wavenumbers are angular: the lattice mode with integer index
/// k in {-n/2, ..., n/2-1} per axis carries xi = 2*pi*k/L, so the lowest
/// nonzero |xi| is 2*pi/L. Storage order is row-major with the FFT
/// frequency layout (axis index i in [0,n) maps to k = i for i < n/2 and
/// k = i - n otherwise).
class Grid {
  public:
    Grid(int modes_per_axis, double box_length);

    int n() const { return n_; }
    double length() const { return length_; }
    std::size_t points() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    /// Lattice spacing in wavenumber space, 2*pi/L.
    double dxi() const { return dxi_; }
    /// Collocation spacing in physical space, L/n.
    double dx() const { return length_ / n_; }
    /// Volume element of the physical collocation grid, (L/n)^3.
    double cell_volume() const { return dx() * dx() * dx(); }

    /// Signed integer wavenumber for axis index i in [0, n).
    int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
    /// Angular wavenumber component for axis index i.
    double freq(int i) const { return freq_[static_cast<std::size_t>(i)]; }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }
    std::array<int, 3> axis_indices(std::size_t lin) const {
        const int iz = static_cast<int>(lin % n_);
        const int iy = static_cast<int>((lin / n_) % n_);
        const int ix = static_cast<int>(lin / (static_cast<std::size_t>(n_) * n_));
        return {ix, iy, iz};
    }
    std::array<double, 3> wavevector(std::size_t lin) const {
        const auto idx = axis_indices(lin);
        return {freq_[idx[0]], freq_[idx[1]], freq_[idx[2]]};
    }
    /// Linear index of the mode -k given the axis indices of k.
    std::size_t conjugate_index(int ix, int iy, int iz) const {
        const int jx = ix == 0 ? 0 : n_ - ix;
        const int jy = iy == 0 ? 0 : n_ - iy;
        const int jz = iz == 0 ? 0 : n_ - iz;
        return index(jx, jy, jz);
    }

    /// Largest axis index kept by the 2/3-rule mask, floor(n/3).
    int dealias_index() const { return n_ / 3; }
    /// Radial wavenumber matching the 2/3-rule band, floor(n/3) * 2*pi/L.
    double dealias_radius() const { return dealias_index() * dxi_; }
    /// Largest |xi| present on the lattice (cube corner).
    double max_wavenumber() const;

    bool operator==(const Grid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    int n_;
    double length_;
    double dxi_;
    std::vector<double> freq_;
};

/// Builds a grid, rejecting odd or undersized n and nonpositive L.
Grid make_grid(int n, double box_length);

}  // namespace fns

#endif
