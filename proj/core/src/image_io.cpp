#include "qsspi/image_io.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qsspi {
namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines.
std::string next_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      // skip
    } else {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return token;
}

int parse_dimension(const std::string& token, const std::string& path) {
  try {
    const int value = std::stoi(token);
    if (value <= 0) throw std::invalid_argument("non-positive");
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("read_pgm: bad header field '" + token + "' in " + path);
  }
}

}  // namespace

void write_pgm(const std::string& path, const ByteGrid& image) {
  if (image.empty()) {
    throw std::invalid_argument("write_pgm: empty image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_pgm: cannot open " + path + " for writing");
  }
  out << "P5\n" << image.side() << " " << image.side() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.cells().data()),
            static_cast<std::streamsize>(image.size()));
  if (!out) {
    throw std::runtime_error("write_pgm: failed writing " + path);
  }
}

ByteGrid read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_pgm: cannot open " + path);
  }
  if (next_token(in) != "P5") {
    throw std::runtime_error("read_pgm: " + path + " is not a binary PGM (P5)");
  }
  const int width = parse_dimension(next_token(in), path);
  const int height = parse_dimension(next_token(in), path);
  const int maxval = parse_dimension(next_token(in), path);
  if (width != height) {
    throw std::runtime_error("read_pgm: " + path + " is not square");
  }
  if (maxval != 255) {
    throw std::runtime_error("read_pgm: " + path + " must use maxval 255");
  }
  ByteGrid image(width);
  in.read(reinterpret_cast<char*>(&image[0]), static_cast<std::streamsize>(image.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.size())) {
    throw std::runtime_error("read_pgm: truncated pixel data in " + path);
  }
  return image;
}

}  // namespace qsspi
