#ifndef QSH_GRID_HPP
#define QSH_GRID_HPP

#include <cstdint>
#include <numbers>

namespace qsh {

/// Uniform periodic grid on [0, domain_length)^dim with n points per axis.
/// Spectral storage uses the real-to-complex half spectrum along the last
/// axis; integer modes on the full axes run over [-n/2, n/2) in FFT order.
struct Grid {
    int dim = 2;
    int n = 64;
    double domain_length = 2.0 * std::numbers::pi;

    bool operator==(const Grid&) const = default;

    std::int64_t point_count() const {
        std::int64_t p = 1;
        for (int i = 0; i < dim; ++i) p *= n;
        return p;
    }
    std::int64_t spec_count() const {
        std::int64_t p = n / 2 + 1;
        for (int i = 0; i < dim - 1; ++i) p *= n;
        return p;
    }
    double spacing() const { return domain_length / n; }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= domain_length;
        return v;
    }
    /// Wavenumber of integer mode 1, i.e. 2*pi / domain_length.
    double k_unit() const { return 2.0 * std::numbers::pi / domain_length; }
    /// Largest mode kept by the 2/3-rule dealias mask.
    int dealias_limit() const { return n / 3; }
};

Grid make_grid(int dim, int n, double domain_length);

}  // namespace qsh

#endif
