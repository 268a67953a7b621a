#ifndef QSH_SRC_FFT_HPP
#define QSH_SRC_FFT_HPP

#include <complex>
#include <vector>

#include "qsh/grid.hpp"

namespace qsh {

/// Per-grid-shape FFTW plan pair, cached process-wide. Plans are created with
/// FFTW_ESTIMATE | FFTW_UNALIGNED so they execute on arbitrary buffers.
/// Not thread-safe: the backward pass uses a shared scratch copy because the
/// multidimensional c2r transform destroys its input.
class Fft {
  public:
    static const Fft& for_grid(const Grid& grid);

    /// phys -> spec, scaled by 1/N so spec holds Fourier coefficients.
    void forward(const double* phys, std::complex<double>* spec) const;
    /// spec -> phys, unnormalized backward transform. Input preserved.
    void backward(const std::complex<double>* spec, double* phys) const;

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft();

  private:
    Fft(int dim, int n);
    int dim_;
    int n_;
    std::int64_t point_count_;
    std::int64_t spec_count_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    mutable std::vector<std::complex<double>> scratch_;
};

}  // namespace qsh

#endif
