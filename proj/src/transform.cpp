#include "fns/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace fns {
namespace {

// Plans are created once per grid size with FFTW_ESTIMATE so algorithm choice
// does not depend on runtime timing (bitwise-reproducible runs). Plans are
// made on fftw-aligned scratch and executed on equally aligned buffers.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

const PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t np = static_cast<std::size_t>(n) * n * n;
    fftw_complex* scratch = fftw_alloc_complex(np);
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(n, n, n, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_3d(n, n, n, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(scratch);
    return cache.emplace(n, p).first->second;
}

// Per-thread staging buffer, grown on demand; carries fftw_malloc alignment.
Complex* staging(std::size_t np) {
    thread_local Complex* buf = nullptr;
    thread_local std::size_t cap = 0;
    if (cap < np) {
        if (buf) fftw_free(buf);
        buf = reinterpret_cast<Complex*>(fftw_alloc_complex(np));
        cap = np;
    }
    return buf;
}

}  // namespace

void forward_c2c(const Grid& grid, Complex* data) {
    const PlanPair& p = plans_for(grid.n());
    const std::size_t np = grid.points();
    Complex* buf = staging(np);
    std::memcpy(buf, data, np * sizeof(Complex));
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(buf),
                     reinterpret_cast<fftw_complex*>(buf));
    const double scale = 1.0 / static_cast<double>(np);
    for (std::size_t i = 0; i < np; ++i) data[i] = buf[i] * scale;
}

void backward_c2c(const Grid& grid, Complex* data) {
    const PlanPair& p = plans_for(grid.n());
    const std::size_t np = grid.points();
    Complex* buf = staging(np);
    std::memcpy(buf, data, np * sizeof(Complex));
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(buf),
                     reinterpret_cast<fftw_complex*>(buf));
    std::memcpy(data, buf, np * sizeof(Complex));
}

AlignedBuffer::AlignedBuffer(std::size_t count)
    : data_(reinterpret_cast<Complex*>(fftw_alloc_complex(count))), size_(count) {}

AlignedBuffer::~AlignedBuffer() {
    if (data_) fftw_free(data_);
}

AlignedBuffer::AlignedBuffer(AlignedBuffer&& other) noexcept
    : data_(other.data_), size_(other.size_) {
    other.data_ = nullptr;
    other.size_ = 0;
}

void forward_c2c_inplace(const Grid& grid, AlignedBuffer& buf) {
    const PlanPair& p = plans_for(grid.n());
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    const double scale = 1.0 / static_cast<double>(grid.points());
    Complex* d = buf.data();
    for (std::size_t i = 0; i < grid.points(); ++i) d[i] *= scale;
}

void backward_c2c_inplace(const Grid& grid, AlignedBuffer& buf) {
    const PlanPair& p = plans_for(grid.n());
    fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
}

SpectralField transform(const PhysicalField& f) {
    SpectralField u(f.grid);
    const std::size_t np = f.grid.points();
    AlignedBuffer buf(np);
    for (int c = 0; c < 3; ++c) {
        const double* src = f.samples.data() + c * np;
        for (std::size_t i = 0; i < np; ++i) buf.data()[i] = Complex(src[i], 0.0);
        forward_c2c_inplace(f.grid, buf);
        std::memcpy(u.coeffs.data() + c * np, buf.data(), np * sizeof(Complex));
    }
    return u;
}

PhysicalField inverse_transform(const SpectralField& u) {
    PhysicalField f(u.grid);
    const std::size_t np = u.grid.points();
    AlignedBuffer buf(np);
    for (int c = 0; c < 3; ++c) {
        std::memcpy(buf.data(), u.coeffs.data() + c * np, np * sizeof(Complex));
        backward_c2c_inplace(u.grid, buf);
        double* dst = f.samples.data() + c * np;
        for (std::size_t i = 0; i < np; ++i) dst[i] = buf.data()[i].real();
    }
    return f;
}

}  // namespace fns
