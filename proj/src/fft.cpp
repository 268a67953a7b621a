#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>

namespace qsh {

Fft::Fft(int dim, int n) : dim_(dim), n_(n) {
    point_count_ = 1;
    for (int i = 0; i < dim; ++i) point_count_ *= n;
    spec_count_ = point_count_ / n * (n / 2 + 1);

    std::vector<double> phys(static_cast<std::size_t>(point_count_));
    scratch_.resize(static_cast<std::size_t>(spec_count_));
    auto* spec = reinterpret_cast<fftw_complex*>(scratch_.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dim == 2) {
        plan_fwd_ = fftw_plan_dft_r2c_2d(n, n, phys.data(), spec, flags);
        plan_bwd_ = fftw_plan_dft_c2r_2d(n, n, spec, phys.data(), flags);
    } else {
        plan_fwd_ = fftw_plan_dft_r2c_3d(n, n, n, phys.data(), spec, flags);
        plan_bwd_ = fftw_plan_dft_c2r_3d(n, n, n, spec, phys.data(), flags);
    }
}

Fft::~Fft() {
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

const Fft& Fft::for_grid(const Grid& grid) {
    static std::map<std::pair<int, int>, std::unique_ptr<Fft>> cache;
    auto key = std::make_pair(grid.dim, grid.n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<Fft>(new Fft(grid.dim, grid.n))).first;
    return *it->second;
}

void Fft::forward(const double* phys, std::complex<double>* spec) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), const_cast<double*>(phys),
                         reinterpret_cast<fftw_complex*>(spec));
    const double inv_n = 1.0 / static_cast<double>(point_count_);
    for (std::int64_t i = 0; i < spec_count_; ++i) spec[i] *= inv_n;
}

void Fft::backward(const std::complex<double>* spec, double* phys) const {
    std::memcpy(scratch_.data(), spec, sizeof(std::complex<double>) * static_cast<std::size_t>(spec_count_));
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                         reinterpret_cast<fftw_complex*>(scratch_.data()), phys);
}

}  // namespace qsh
