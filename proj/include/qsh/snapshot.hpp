#ifndef QSH_SNAPSHOT_HPP
#define QSH_SNAPSHOT_HPP

#include <string>

#include "qsh/dynamics.hpp"

namespace qsh {

/// Binary state snapshot, little-endian:
///   magic "QSH1" | u32 dim | u32 n | f64 domain_length | f64 time |
///   u32 field_count | per field: u8 rank tag (1 vector, 2 matrix), then
///   row-major f64 physical values, components in index order.
/// Round trips are bit-exact.
void write_snapshot(const SimState& state, const std::string& path);

SimState read_snapshot(const std::string& path);

/// read_snapshot + grid check against `expected`; throws ShapeMismatch.
SimState read_snapshot(const std::string& path, const Grid& expected);

}  // namespace qsh

#endif
