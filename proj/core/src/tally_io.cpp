#include "qsspi/tally_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsspi/optics.hpp"

namespace qsspi {
namespace {

std::string header_line() {
  std::string header = "shot";
  for (Polarization s : kAllPolarizations) {
    for (Polarization i : kAllPolarizations) {
      header += " C_";
      header += to_string(s);
      header += to_string(i);
    }
  }
  header += " singles";
  return header;
}

// %.17g keeps doubles bit-exact across a dump/load cycle.
std::string format_count(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

void write_tallies(const std::string& path, std::span<const CoincidenceTally> tallies) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_tallies: cannot open " + path + " for writing");
  }
  out << "# qsspi per-shot coincidence tallies\n";
  out << header_line() << "\n";
  for (const CoincidenceTally& tally : tallies) {
    out << tally.shot_index;
    for (int s = 0; s < 4; ++s) {
      for (int i = 0; i < 4; ++i) {
        out << ' ' << format_count(tally.counts[s][i]);
      }
    }
    out << ' ' << format_count(tally.signal_singles) << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_tallies: failed writing " + path);
  }
}

std::vector<CoincidenceTally> read_tallies(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_tallies: cannot open " + path);
  }
  std::vector<CoincidenceTally> tallies;
  bool header_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') {
      continue;
    }
    if (!header_seen) {
      if (line != header_line()) {
        throw std::runtime_error("read_tallies: unexpected header in " + path);
      }
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    CoincidenceTally tally;
    if (!(fields >> tally.shot_index)) {
      throw std::runtime_error("read_tallies: bad shot index in " + path);
    }
    for (int s = 0; s < 4; ++s) {
      for (int i = 0; i < 4; ++i) {
        if (!(fields >> tally.counts[s][i])) {
          throw std::runtime_error("read_tallies: truncated data line in " + path);
        }
      }
    }
    if (!(fields >> tally.signal_singles)) {
      throw std::runtime_error("read_tallies: missing singles column in " + path);
    }
    tallies.push_back(tally);
  }
  if (!header_seen) {
    throw std::runtime_error("read_tallies: no header line in " + path);
  }
  return tallies;
}

}  // namespace qsspi
