#ifndef QSH_PRESETS_HPP
#define QSH_PRESETS_HPP

#include <cstdint>

#include "qsh/config.hpp"
#include "qsh/dynamics.hpp"

namespace qsh {

/// Build the initial state for a named preset. All outputs satisfy the state
/// invariants: v divergence-free, Q and W symmetric traceless, everything
/// dealiased. Unknown names raise InvalidArgument.
SimState initial_data_preset(const InitialData& init, const Grid& grid, std::uint64_t seed);

}  // namespace qsh

#endif
