#ifndef FNS_TRANSFORM_HPP
#define FNS_TRANSFORM_HPP

#include "fns/field.hpp"

namespace fns {

/// Discrete Fourier analysis of real collocation data.
///
/// Normalization: u_hat(k) = n^{-3} sum_x f(x) exp(-i xi_k . x), so that a
/// constant field puts its value in the k=0 coefficient and Parseval reads
/// (L/n)^3 sum_x |f|^2 = L^3 sum_k |u_hat|^2.
SpectralField transform(const PhysicalField& f);

/// Synthesis back to collocation samples, f(x) = sum_k u_hat(k) exp(i xi_k . x).
/// Discards the imaginary residue (roundoff for Hermitian-symmetric input).
PhysicalField inverse_transform(const SpectralField& u);

/// In-place c2c helpers on a single n^3 component, same conventions.
void forward_c2c(const Grid& grid, Complex* data);
void backward_c2c(const Grid& grid, Complex* data);

/// FFT-aligned complex workspace for the zero-copy transform variants.
class AlignedBuffer {
  public:
    explicit AlignedBuffer(std::size_t count);
    ~AlignedBuffer();
    AlignedBuffer(AlignedBuffer&& other) noexcept;
    AlignedBuffer(const AlignedBuffer&) = delete;
    AlignedBuffer& operator=(const AlignedBuffer&) = delete;

    Complex* data() { return data_; }
    const Complex* data() const { return data_; }
    std::size_t size() const { return size_; }

  private:
    Complex* data_;
    std::size_t size_;
};

void forward_c2c_inplace(const Grid& grid, AlignedBuffer& buf);
void backward_c2c_inplace(const Grid& grid, AlignedBuffer& buf);

}  // namespace fns

#endif
