#pragma once

#include <string>

#include "qsspi/grid.hpp"

namespace qsspi {

// Binary PGM (P5, maxval 255). Output is byte-deterministic.
void write_pgm(const std::string& path, const ByteGrid& image);

// Accepts only square P5 files with maxval 255.
ByteGrid read_pgm(const std::string& path);

}  // namespace qsspi
