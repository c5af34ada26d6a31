#include "fnlw/snapshot_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "fnlw/error.hpp"

namespace fnlw {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {

void put_u64(std::ofstream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }
void put_f64(std::ofstream& out, double v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

void put_modes(std::ofstream& out, const CoeffVector& c) {
  const std::vector<cplx> modes = c.modes();
  out.write(reinterpret_cast<const char*>(modes.data()), static_cast<std::streamsize>(modes.size() * sizeof(cplx)));
}

void get(std::ifstream& in, void* dst, std::size_t bytes, const std::string& path) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
  if (in.gcount() != static_cast<std::streamsize>(bytes)) throw FormatError("'" + path + "' is truncated");
}

}  // namespace

void write_snapshots(const std::string& path, const std::vector<SpectralState>& states) {
  if (states.empty()) throw Error("write_snapshots: no states");
  const Grid grid = states.front().grid();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(kSnapshotMagic, sizeof kSnapshotMagic);
  put_u64(out, static_cast<std::uint64_t>(grid.points()));
  put_u64(out, states.size());
  for (const SpectralState& s : states) {
    if (!(s.grid() == grid)) throw Error("write_snapshots: states live on different grids");
    put_f64(out, s.t);
    put_modes(out, s.u);
    put_modes(out, s.v);
  }
  out.close();
  if (!out) throw Error("error while writing '" + path + "'");
}

std::vector<SpectralState> read_snapshots(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  char magic[8];
  get(in, magic, sizeof magic, path);
  if (std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0) throw FormatError("'" + path + "' has a bad magic");
  std::uint64_t m = 0, count = 0;
  get(in, &m, sizeof m, path);
  get(in, &count, sizeof count, path);
  if (m > (std::uint64_t{1} << 40)) throw FormatError("'" + path + "': implausible M");
  Grid grid = [&] {
    try {
      return Grid(static_cast<std::int64_t>(m));
    } catch (const ValidationError& e) {
      throw FormatError("'" + path + "': " + e.what());
    }
  }();

  std::vector<SpectralState> states;
  std::vector<cplx> buf(m);
  for (std::uint64_t i = 0; i < count; ++i) {
    double t = 0.0;
    get(in, &t, sizeof t, path);
    auto coeffs = [&] {
      get(in, buf.data(), buf.size() * sizeof(cplx), path);
      try {
        return CoeffVector::from_modes(grid, buf, 0.0);
      } catch (const Error& e) {
        throw FormatError("'" + path + "' snapshot " + std::to_string(i) + ": " + e.what());
      }
    };
    CoeffVector u = coeffs();
    CoeffVector v = coeffs();
    states.emplace_back(std::move(u), std::move(v), t);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError("'" + path + "' has trailing bytes");
  return states;
}

}  // namespace fnlw
