#include "bmhd/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace bmhd {

namespace {

constexpr char kMagic[5] = {'B', 'M', 'H', 'D', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
  const std::string& buf;
  std::size_t pos = 0;
  const std::string& path;

  void need(std::size_t n) const {
    if (pos + n > buf.size())
      throw std::runtime_error("truncated checkpoint file: " + path);
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(buf[pos++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
};

}  // namespace

void save_checkpoint(const std::string& path, const MHDState& s) {
  const Grid& g = s.grid();
  std::string out;
  out.reserve(22 + 2 * g.dim * g.points() * 16);
  out.append(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(g.dim));
  put_u32(out, static_cast<std::uint32_t>(g.n));
  put_f64(out, s.t);
  put_u32(out, static_cast<std::uint32_t>(2 * g.dim));
  for (const VectorField* f : {&s.u, &s.b})
    for (int i = 0; i < g.dim; ++i)
      for (const cplx& c : (*f)[i].c) {
        put_f64(out, c.real());
        put_f64(out, c.imag());
      }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint file for writing: " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw std::runtime_error("failed writing checkpoint file: " + path);
}

MHDState load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint file: " + path);
  std::string buf((std::istreambuf_iterator<char>(is)),
                  std::istreambuf_iterator<char>());
  Reader r{buf, 0, path};
  r.need(sizeof(kMagic));
  if (std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a checkpoint file (bad magic): " + path);
  r.pos = sizeof(kMagic);
  const int dim = r.u8();
  const int n = static_cast<int>(r.u32());
  if (dim != 2 && dim != 3)
    throw std::runtime_error("checkpoint has unsupported dimension " +
                             std::to_string(dim) + ": " + path);
  const Grid g(dim, n);
  const double t = r.f64();
  const std::uint32_t fields = r.u32();
  if (fields != static_cast<std::uint32_t>(2 * dim))
    throw std::runtime_error("checkpoint field count " + std::to_string(fields) +
                             " does not match dimension " + std::to_string(dim) +
                             ": " + path);
  MHDState s(g);
  s.t = t;
  for (VectorField* f : {&s.u, &s.b})
    for (int i = 0; i < dim; ++i)
      for (cplx& c : (*f)[i].c) {
        const double re = r.f64();
        const double im = r.f64();
        c = cplx(re, im);
      }
  if (r.pos != buf.size())
    throw std::runtime_error("checkpoint has trailing bytes: " + path);
  return s;
}

}  // namespace bmhd
