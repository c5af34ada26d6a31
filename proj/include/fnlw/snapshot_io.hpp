#pragma once

// Binary snapshot files: magic "FNLW" 0x00 "001", little-endian u64 M and
// snapshot count, then per snapshot an f64 time and M (re, im) f64 pairs for
// u followed by M pairs for v, in FFT mode order 0..M/2, -M/2+1..-1.

#include <string>
#include <vector>

#include "fnlw/model.hpp"

namespace fnlw {

inline constexpr char kSnapshotMagic[8] = {'F', 'N', 'L', 'W', '\0', '0', '0', '1'};

void write_snapshots(const std::string& path, const std::vector<SpectralState>& states);
// Throws FormatError on a bad magic, truncation, trailing bytes or data that
// is not hermitian.
std::vector<SpectralState> read_snapshots(const std::string& path);

}  // namespace fnlw
