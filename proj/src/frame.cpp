#include "rpn/frame.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace rpn {
namespace {

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(in.get()));
      return tok;
    }
  }
  throw std::runtime_error("pgm: truncated header");
}

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("pgm: cannot open " + path);
  if (next_token(in) != "P5") throw std::runtime_error("pgm: not a binary P5 file: " + path);
  const int width = std::stoi(next_token(in));
  const int height = std::stoi(next_token(in));
  const int maxval = std::stoi(next_token(in));
  if (width < 1 || height < 1 || maxval < 1 || maxval > 255)
    throw std::runtime_error("pgm: unsupported header in " + path);
  in.get();  // single whitespace after maxval
  std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!in) throw std::runtime_error("pgm: truncated pixel data in " + path);
  Frame f(height, width);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      f(y, x) = raw[static_cast<std::size_t>(y) * width + x] / static_cast<double>(maxval);
  return f;
}

void write_pgm(const Frame& frame, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("pgm: cannot open " + path + " for writing");
  const int width = frame_width(frame);
  const int height = frame_height(frame);
  out << "P5\n" << width << " " << height << "\n255\n";
  std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const double v = std::clamp(frame(y, x), 0.0, 1.0);
      raw[static_cast<std::size_t>(y) * width + x] = static_cast<unsigned char>(v * 255.0 + 0.5);
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("pgm: write failed for " + path);
}

}  // namespace rpn
