#pragma once

#include <span>
#include <string>
#include <vector>

#include "qsspi/acquisition.hpp"

namespace qsspi {

// Line-oriented tally dump: a header naming the 16 polarization-pair columns
// (C_xy = signal x, idler y) plus the signal-arm singles, then one line per
// shot with decimal counts. Values round-trip exactly through read_tallies.
void write_tallies(const std::string& path, std::span<const CoincidenceTally> tallies);

std::vector<CoincidenceTally> read_tallies(const std::string& path);

}  // namespace qsspi
