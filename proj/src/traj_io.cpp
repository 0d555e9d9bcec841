// Stored-trajectory file: little-endian binary, layout documented in the
// README. Desk-scale snapshots only; no compression.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "chemo/run.hpp"

namespace chemo {

namespace {

constexpr char kMagic[8] = {'C', 'H', 'E', 'M', 'T', 'R', 'J', '1'};

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw ConfigError("states file truncated");
    return v;
}

}  // namespace

void save_states(const std::string& path, const SimConfig& cfg, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write states file '" + path + "'");
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, 1);
    put<std::int32_t>(out, cfg.grid.dim);
    put<std::int32_t>(out, cfg.grid.nx);
    put<std::int32_t>(out, cfg.grid.ny);
    put<double>(out, cfg.grid.Lx);
    put<double>(out, cfg.grid.Ly);
    put<double>(out, cfg.params.D);
    put<double>(out, cfg.params.chi);
    put<double>(out, cfg.params.r);
    put<double>(out, cfg.params.a);
    put<double>(out, cfg.params.f);
    put<std::int32_t>(out, static_cast<std::int32_t>(cfg.lyapunov.which));
    put<double>(out, cfg.lyapunov.k);
    put<std::uint64_t>(out, traj.states.size());
    const std::streamsize bytes = static_cast<std::streamsize>(cfg.grid.cells()) *
                                  static_cast<std::streamsize>(sizeof(double));
    for (const State& s : traj.states) {
        put<double>(out, s.t);
        out.write(reinterpret_cast<const char*>(s.u.data()), bytes);
        out.write(reinterpret_cast<const char*>(s.v.data()), bytes);
    }
    if (!out) throw ConfigError("failed while writing states file '" + path + "'");
}

StoredTrajectory load_states(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open states file '" + path + "'");
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw ConfigError("'" + path + "' is not a states file");
    const auto version = get<std::uint32_t>(in);
    if (version != 1) throw ConfigError("unsupported states file version");

    const auto dim = get<std::int32_t>(in);
    const auto nx = get<std::int32_t>(in);
    const auto ny = get<std::int32_t>(in);
    const auto Lx = get<double>(in);
    const auto Ly = get<double>(in);

    StoredTrajectory st;
    st.grid = dim == 1 ? Grid::make_1d(nx, Lx) : Grid::make_2d(nx, ny, Lx, Ly);
    st.params.D = get<double>(in);
    st.params.chi = get<double>(in);
    st.params.r = get<double>(in);
    st.params.a = get<double>(in);
    st.params.f = get<double>(in);
    st.params.validate();
    st.lyap_case = static_cast<LyapCase>(get<std::int32_t>(in));
    st.k = get<double>(in);

    const auto n_samples = get<std::uint64_t>(in);
    const int cells = st.grid.cells();
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        const double t = get<double>(in);
        Field u(st.grid), v(st.grid);
        in.read(reinterpret_cast<char*>(u.data()),
                static_cast<std::streamsize>(cells * sizeof(double)));
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(cells * sizeof(double)));
        if (!in) throw ConfigError("states file truncated");
        st.states.emplace_back(std::move(u), std::move(v), t);
    }
    return st;
}

}  // namespace chemo
