#ifndef FNS_SNAPSHOT_HPP
#define FNS_SNAPSHOT_HPP

#include <filesystem>

#include "fns/field.hpp"

namespace fns {

/// Self-describing binary state dump, format `FNS1`:
///   bytes 0..3   magic "FNS1"
///   bytes 4..11  n (unsigned 64-bit little-endian)
///   bytes 12..35 L, alpha, t (IEEE-754 doubles, little-endian)
///   then 3*n^3 coefficient pairs (re, im) as little-endian doubles,
///   component-major, lattice row-major in FFT frequency order.
struct Snapshot {
    double t = 0.0;
    double alpha = 0.0;
    SpectralField field;
};

void write_snapshot(const std::filesystem::path& path, const SpectralField& u, double t,
                    double alpha);

Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace fns

#endif
