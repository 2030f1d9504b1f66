#include "ep2d/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace ep2d {
namespace {

static_assert(std::endian::native == std::endian::little, "dump format assumes a little-endian host");

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is, const std::string& path) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InputError("truncated field dump: " + path);
  return v;
}

}  // namespace

void write_field(const std::string& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  const Grid& g = f.grid();
  os.write("EP2D", 4);
  put<std::uint32_t>(os, kDumpVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
  put<double>(os, g.length());
  put<double>(os, g.a());
  put<double>(os, g.b());
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.representation()));
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

SpectralField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open field dump: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "EP2D", 4) != 0) throw InputError("bad magic in " + path);
  const auto version = get<std::uint32_t>(is, path);
  if (version != kDumpVersion) throw InputError("unsupported dump version in " + path);
  const auto n = get<std::uint32_t>(is, path);
  const double length = get<double>(is, path);
  const double a = get<double>(is, path);
  const double b = get<double>(is, path);
  const auto rep = get<std::uint8_t>(is, path);
  if (rep > 1) throw InputError("bad representation tag in " + path);
  GridPtr g = Grid::make(static_cast<int>(n), length, a, b);
  std::vector<cplx> v(g->size());
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(cplx)));
  if (!is) throw InputError("truncated field dump: " + path);
  return SpectralField(g, static_cast<Representation>(rep), std::move(v));
}

}  // namespace ep2d
