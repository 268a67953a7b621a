#include "qsh/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "qsh/errors.hpp"

namespace qsh {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

constexpr char kMagic[4] = {'Q', 'S', 'H', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw FormatError("snapshot truncated");
    return v;
}

double get_f64(std::istream& in) {
    double v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw FormatError("snapshot truncated");
    return v;
}

void put_component(std::ostream& out, const ScalarField& f) {
    auto p = f.physical();
    out.write(reinterpret_cast<const char*>(p.data()),
              static_cast<std::streamsize>(p.size() * sizeof(double)));
}

void get_component(std::istream& in, ScalarField& f) {
    auto p = f.physical_overwrite();
    if (!in.read(reinterpret_cast<char*>(p.data()),
                 static_cast<std::streamsize>(p.size() * sizeof(double))))
        throw FormatError("snapshot truncated");
}

}  // namespace

void write_snapshot(const SimState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write snapshot: " + path);
    const Grid& g = state.grid();
    out.write(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(g.dim));
    put_u32(out, static_cast<std::uint32_t>(g.n));
    put_f64(out, g.domain_length);
    put_f64(out, state.t);
    put_u32(out, 3);

    out.put(static_cast<char>(1));
    for (const auto& c : state.v.components()) put_component(out, c);
    out.put(static_cast<char>(2));
    for (const auto& c : state.q.components()) put_component(out, c);
    out.put(static_cast<char>(2));
    for (const auto& c : state.w.components()) put_component(out, c);
    if (!out) throw IoError("snapshot write failed: " + path);
}

SimState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path);
    char magic[4];
    if (!in.read(magic, 4)) throw FormatError("snapshot truncated");
    if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad snapshot magic");

    const int dim = static_cast<int>(get_u32(in));
    const int n = static_cast<int>(get_u32(in));
    const double length = get_f64(in);
    const double t = get_f64(in);
    const std::uint32_t fields = get_u32(in);
    if (fields != 3) throw FormatError("unexpected snapshot field count");

    SimState state(make_grid(dim, n, length));
    state.t = t;

    auto expect_rank = [&](int rank) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw FormatError("snapshot truncated");
        if (c != rank) throw FormatError("unexpected field rank tag in snapshot");
    };
    expect_rank(1);
    for (auto& c : state.v.components()) get_component(in, c);
    expect_rank(2);
    for (auto& c : state.q.components()) get_component(in, c);
    expect_rank(2);
    for (auto& c : state.w.components()) get_component(in, c);
    return state;
}

SimState read_snapshot(const std::string& path, const Grid& expected) {
    SimState state = read_snapshot(path);
    if (!(state.grid() == expected))
        throw ShapeMismatch("snapshot grid does not match the configured grid");
    return state;
}

}  // namespace qsh
