#include "fns/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fns {

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    put_u64(os, v);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    const std::uint64_t v = get_u64(is);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpectralField& u, double t,
                    double alpha) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path.string());
    os.write("FNS1", 4);
    put_u64(os, static_cast<std::uint64_t>(u.grid.n()));
    put_f64(os, u.grid.length());
    put_f64(os, alpha);
    put_f64(os, t);
    for (const Complex& c : u.coeffs) {
        put_f64(os, c.real());
        put_f64(os, c.imag());
    }
    if (!os) throw std::runtime_error("snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FNS1", 4) != 0) {
        throw std::runtime_error("snapshot: bad magic in " + path.string());
    }
    const std::uint64_t n = get_u64(is);
    const double L = get_f64(is);
    const double alpha = get_f64(is);
    const double t = get_f64(is);
    if (!is || n < 4 || n > 4096) throw std::runtime_error("snapshot: bad header");

    Snapshot snap{t, alpha, SpectralField(make_grid(static_cast<int>(n), L))};
    for (Complex& c : snap.field.coeffs) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        c = Complex(re, im);
    }
    if (!is) throw std::runtime_error("snapshot: truncated file " + path.string());
    return snap;
}

}  // namespace fns
