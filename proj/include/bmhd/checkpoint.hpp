#pragma once
#include <string>

#include "bmhd/mhd.hpp"

namespace bmhd {

// Binary state snapshot, explicit little-endian layout so files move between
// hosts and round-trip bit-identically:
//   bytes 0-4   magic "BMHD1"
//   byte  5     dim (u8)
//   bytes 6-9   grid size N (u32)
//   bytes 10-17 time (f64)
//   bytes 18-21 field count (u32), velocity components then magnetic
//   then per field: points() coefficients, storage order, each an
//   (f64 re, f64 im) pair.
void save_checkpoint(const std::string& path, const MHDState& s);
MHDState load_checkpoint(const std::string& path);

}  // namespace bmhd
