#include "voigt/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "voigt/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint payloads are little-endian; big-endian hosts are unsupported");

namespace voigt {

namespace {

constexpr char kMagic[4] = {'E', 'V', 'C', 'K'};

template <class T>
void write_pod(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
void read_pod(std::ifstream& in, T& value, const std::filesystem::path& path) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("checkpoint truncated: " + path.string());
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
    const std::size_t n3 = static_cast<std::size_t>(ck.n) * ck.n * ck.n;
    if (ck.samples.size() != 3 * n3) {
        throw IoError("checkpoint: sample count does not match n");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path.string());
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, Checkpoint::kVersion);
    write_pod(out, ck.n);
    write_pod(out, ck.alpha);
    write_pod(out, ck.t);
    out.write(reinterpret_cast<const char*>(ck.samples.data()),
              static_cast<std::streamsize>(ck.samples.size() * sizeof(double)));
    if (!out) throw IoError("checkpoint write failed: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path,
                           std::optional<int> expected_n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path.string());

    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw IoError("not a checkpoint file (bad magic): " + path.string());
    }
    std::uint32_t version = 0;
    Checkpoint ck;
    read_pod(in, version, path);
    if (version != Checkpoint::kVersion) {
        throw IoError("unsupported checkpoint version " + std::to_string(version) + ": " +
                      path.string());
    }
    read_pod(in, ck.n, path);
    if (ck.n < 8 || ck.n % 2 != 0) {
        throw IoError("checkpoint has invalid grid size n=" + std::to_string(ck.n) + ": " +
                      path.string());
    }
    if (expected_n && static_cast<std::uint32_t>(*expected_n) != ck.n) {
        throw IoError("checkpoint grid size n=" + std::to_string(ck.n) +
                      " does not match expected n=" + std::to_string(*expected_n) + ": " +
                      path.string());
    }
    read_pod(in, ck.alpha, path);
    read_pod(in, ck.t, path);

    const std::size_t count = 3 * static_cast<std::size_t>(ck.n) * ck.n * ck.n;
    ck.samples.resize(count);
    in.read(reinterpret_cast<char*>(ck.samples.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in || static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
        throw IoError("checkpoint truncated: " + path.string());
    }
    return ck;
}

Checkpoint make_checkpoint(const SpectralVectorField& u, double alpha, double t,
                           SpectralTransform& fft) {
    const Grid& g = u.grid();
    Checkpoint ck;
    ck.n = static_cast<std::uint32_t>(g.n());
    ck.alpha = alpha;
    ck.t = t;
    ck.samples.reserve(3 * g.size());
    const RealVectorField phys = fft.inverse(u);
    for (int c = 0; c < 3; ++c) {
        ck.samples.insert(ck.samples.end(), phys[c].samples().begin(),
                          phys[c].samples().end());
    }
    return ck;
}

SpectralVectorField checkpoint_to_spectral(const Checkpoint& ck, SpectralTransform& fft) {
    const Grid& g = fft.grid();
    if (static_cast<std::uint32_t>(g.n()) != ck.n) {
        throw IoError("checkpoint grid size n=" + std::to_string(ck.n) +
                      " does not match context n=" + std::to_string(g.n()));
    }
    RealVectorField phys(g);
    const std::size_t n3 = g.size();
    for (int c = 0; c < 3; ++c) {
        std::copy(ck.samples.begin() + static_cast<std::ptrdiff_t>(c * n3),
                  ck.samples.begin() + static_cast<std::ptrdiff_t>((c + 1) * n3),
                  phys[c].samples().begin());
    }
    return fft.forward(phys);
}

}  // namespace voigt
