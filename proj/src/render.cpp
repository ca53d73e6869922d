#include "rpn/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rpn {
namespace {

// Classic 5x7 bitmap font, one row per byte, bit 4 is the leftmost column.
struct Glyph {
  char ch;
  unsigned char rows[7];
};

constexpr Glyph kFont[] = {
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11}},
    {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04}},
    {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x06, 0x08, 0x10, 0x1F}},
    {'3', {0x0E, 0x11, 0x01, 0x06, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
};

const Glyph* find_glyph(char c) {
  for (const auto& g : kFont)
    if (g.ch == c) return &g;
  return nullptr;
}

double dist_to_segment(double px, double py, double x0, double y0, double x1, double y1) {
  const double vx = x1 - x0, vy = y1 - y0;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - x0) * vx + (py - y0) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = px - (x0 + t * vx), dy = py - (y0 + t * vy);
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::pair<double, double>> regular_polygon_points(double cx, double cy, int sides,
                                                              double radius, double phase) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < sides; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * i / sides;
    pts.emplace_back(cx + radius * std::cos(a), cy + radius * std::sin(a));
  }
  return pts;
}

}  // namespace

void draw_line(Frame& f, double x0, double y0, double x1, double y1, double thickness) {
  const double half = thickness / 2.0;
  const int xlo = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - half - 1)));
  const int xhi = std::min(frame_width(f) - 1, static_cast<int>(std::ceil(std::max(x0, x1) + half + 1)));
  const int ylo = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - half - 1)));
  const int yhi = std::min(frame_height(f) - 1, static_cast<int>(std::ceil(std::max(y0, y1) + half + 1)));
  for (int y = ylo; y <= yhi; ++y)
    for (int x = xlo; x <= xhi; ++x)
      if (dist_to_segment(x, y, x0, y0, x1, y1) <= half) f(y, x) = 1.0;
}

void draw_circle(Frame& f, double cx, double cy, double radius, double thickness) {
  const double half = thickness / 2.0;
  for (int y = 0; y < frame_height(f); ++y)
    for (int x = 0; x < frame_width(f); ++x) {
      const double d = std::hypot(x - cx, y - cy);
      if (std::abs(d - radius) <= half) f(y, x) = 1.0;
    }
}

void fill_circle(Frame& f, double cx, double cy, double radius) {
  for (int y = 0; y < frame_height(f); ++y)
    for (int x = 0; x < frame_width(f); ++x)
      if (std::hypot(x - cx, y - cy) <= radius) f(y, x) = 1.0;
}

void draw_polygon(Frame& f, const std::vector<std::pair<double, double>>& pts, double thickness) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    draw_line(f, a.first, a.second, b.first, b.second, thickness);
  }
}

void fill_polygon(Frame& f, const std::vector<std::pair<double, double>>& pts) {
  // Even-odd scanline fill.
  for (int y = 0; y < frame_height(f); ++y) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % pts.size()];
      if ((a.second <= y && b.second > y) || (b.second <= y && a.second > y)) {
        const double t = (y - a.second) / (b.second - a.second);
        xs.push_back(a.first + t * (b.first - a.first));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      const int x0 = std::max(0, static_cast<int>(std::ceil(xs[i])));
      const int x1 = std::min(frame_width(f) - 1, static_cast<int>(std::floor(xs[i + 1])));
      for (int x = x0; x <= x1; ++x) f(y, x) = 1.0;
    }
  }
}

Frame render_text(const std::string& text, int size, double extent) {
  Frame f = Frame::Zero(size, size);
  const double scale = extent / 7.0;
  const double glyph_w = 6.0 * scale;  // 5 columns + 1 spacing
  const double total_w = glyph_w * static_cast<double>(text.size()) - scale;
  const double x_start = (size - 1) / 2.0 - total_w / 2.0;
  const double y_start = (size - 1) / 2.0 - extent / 2.0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (c == ' ') continue;
    const Glyph* g = find_glyph(c);
    if (!g) throw std::invalid_argument(std::string("render_text: unsupported character '") + c + "'");
    const double gx = x_start + glyph_w * static_cast<double>(i);
    for (int row = 0; row < 7; ++row)
      for (int col = 0; col < 5; ++col) {
        if (!(g->rows[row] & (1 << (4 - col)))) continue;
        const int x0 = std::max(0, static_cast<int>(std::round(gx + col * scale)));
        const int x1 = std::min(size - 1, static_cast<int>(std::round(gx + (col + 1) * scale)) - 1);
        const int y0 = std::max(0, static_cast<int>(std::round(y_start + row * scale)));
        const int y1 = std::min(size - 1, static_cast<int>(std::round(y_start + (row + 1) * scale)) - 1);
        for (int y = y0; y <= y1; ++y)
          for (int x = x0; x <= x1; ++x) f(y, x) = 1.0;
      }
  }
  return f;
}

Frame render_regular_polygon(int size, int sides, double radius, double thickness, double phase) {
  Frame f = Frame::Zero(size, size);
  const double c = (size - 1) / 2.0;
  draw_polygon(f, regular_polygon_points(c, c, sides, radius, phase), thickness);
  return f;
}

Frame render_square_outline(int size, double half_side, double thickness) {
  Frame f = Frame::Zero(size, size);
  const double c = (size - 1) / 2.0;
  draw_polygon(f,
               {{c - half_side, c - half_side},
                {c + half_side, c - half_side},
                {c + half_side, c + half_side},
                {c - half_side, c + half_side}},
               thickness);
  return f;
}

Frame render_dashed_square(int size, double half_side, double thickness, int dashes) {
  // Same outline, but each edge is broken into dashes with 50% duty cycle.
  Frame f = Frame::Zero(size, size);
  const double c = (size - 1) / 2.0;
  const std::pair<double, double> corners[4] = {{c - half_side, c - half_side},
                                                {c + half_side, c - half_side},
                                                {c + half_side, c + half_side},
                                                {c - half_side, c + half_side}};
  for (int e = 0; e < 4; ++e) {
    const auto& a = corners[e];
    const auto& b = corners[(e + 1) % 4];
    for (int d = 0; d < dashes; ++d) {
      const double t0 = (2.0 * d) / (2.0 * dashes);
      const double t1 = (2.0 * d + 1.0) / (2.0 * dashes);
      draw_line(f, a.first + t0 * (b.first - a.first), a.second + t0 * (b.second - a.second),
                a.first + t1 * (b.first - a.first), a.second + t1 * (b.second - a.second),
                thickness);
    }
  }
  return f;
}

Frame render_corner_cut_square(int size, double half_side, double thickness, double cut) {
  // Square outline with the corner regions blanked out.
  Frame f = render_square_outline(size, half_side, thickness);
  const double c = (size - 1) / 2.0;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const double dx = std::abs(x - c), dy = std::abs(y - c);
      if (dx + dy > 2.0 * half_side - cut) f(y, x) = 0.0;
    }
  return f;
}

Frame render_octagon_outline(int size, double half_side, double thickness) {
  // The convex hull of the corner-cut square: axis-aligned edges of the
  // square joined by 45-degree corner edges.
  Frame f = Frame::Zero(size, size);
  const double c = (size - 1) / 2.0;
  const double k = half_side * (std::numbers::sqrt2 - 1.0);  // corner offset
  std::vector<std::pair<double, double>> pts = {
      {c - half_side + k, c - half_side}, {c + half_side - k, c - half_side},
      {c + half_side, c - half_side + k}, {c + half_side, c + half_side - k},
      {c + half_side - k, c + half_side}, {c - half_side + k, c + half_side},
      {c - half_side, c + half_side - k}, {c - half_side, c - half_side + k}};
  draw_polygon(f, pts, thickness);
  return f;
}

std::vector<CorpusImage> generate_corpus(int size) {
  std::vector<CorpusImage> corpus;
  const double c = (size - 1) / 2.0;
  const double s = size / 200.0;  // geometry scales with frame size

  for (char ch = 'A'; ch <= 'Z'; ++ch)
    corpus.push_back({std::string("letter_") + ch, render_text(std::string(1, ch), size, 120.0 * s)});
  for (char ch = '0'; ch <= '9'; ++ch)
    corpus.push_back({std::string("digit_") + ch, render_text(std::string(1, ch), size, 120.0 * s)});

  for (const char* word : {"AT", "ON", "CAT", "DOG", "SUN", "RPN", "POND", "WAVE"})
    corpus.push_back({std::string("word_") + word,
                      render_text(word, size, (word[2] == '\0' ? 70.0 : 42.0) * s)});

  auto blank = [&] { return Frame::Zero(size, size); };

  {
    Frame f = blank();
    draw_circle(f, c, c, 60.0 * s, 6.0 * s);
    corpus.push_back({"shape_circle", std::move(f)});
  }
  {
    Frame f = blank();
    fill_circle(f, c, c, 55.0 * s);
    corpus.push_back({"shape_disc", std::move(f)});
  }
  {
    Frame f = blank();
    draw_circle(f, c, c, 70.0 * s, 5.0 * s);
    draw_circle(f, c, c, 40.0 * s, 5.0 * s);
    corpus.push_back({"shape_ring", std::move(f)});
  }
  corpus.push_back({"shape_square", render_square_outline(size, 55.0 * s, 6.0 * s)});
  corpus.push_back({"shape_octagon", render_octagon_outline(size, 60.0 * s, 6.0 * s)});
  corpus.push_back({"shape_triangle",
                    render_regular_polygon(size, 3, 65.0 * s, 6.0 * s, -std::numbers::pi / 2)});
  corpus.push_back({"shape_diamond",
                    render_regular_polygon(size, 4, 65.0 * s, 6.0 * s, -std::numbers::pi / 2)});
  corpus.push_back({"shape_pentagon",
                    render_regular_polygon(size, 5, 62.0 * s, 6.0 * s, -std::numbers::pi / 2)});
  corpus.push_back({"shape_hexagon", render_regular_polygon(size, 6, 62.0 * s, 6.0 * s)});
  {
    Frame f = blank();
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 10; ++i) {
      const double a = -std::numbers::pi / 2 + std::numbers::pi * i / 5.0;
      const double r = (i % 2 == 0 ? 70.0 : 30.0) * s;
      pts.emplace_back(c + r * std::cos(a), c + r * std::sin(a));
    }
    fill_polygon(f, pts);
    corpus.push_back({"shape_star", std::move(f)});
  }
  {
    Frame f = blank();
    draw_line(f, c - 65.0 * s, c, c + 65.0 * s, c, 14.0 * s);
    draw_line(f, c, c - 65.0 * s, c, c + 65.0 * s, 14.0 * s);
    corpus.push_back({"shape_plus", std::move(f)});
  }
  {
    Frame f = blank();
    const double r = 55.0 * s;
    draw_line(f, c - r, c - r, c + r, c + r, 12.0 * s);
    draw_line(f, c - r, c + r, c + r, c - r, 12.0 * s);
    corpus.push_back({"shape_cross", std::move(f)});
  }
  corpus.push_back({"shape_dashed_square", render_dashed_square(size, 55.0 * s, 6.0 * s, 4)});
  corpus.push_back({"shape_corner_cut_square",
                    render_corner_cut_square(size, 60.0 * s, 6.0 * s, 35.0 * s)});

  {
    // Fish silhouette: body ellipse as squashed polygon plus tail triangle.
    Frame f = blank();
    std::vector<std::pair<double, double>> body;
    for (int i = 0; i < 48; ++i) {
      const double a = 2.0 * std::numbers::pi * i / 48.0;
      body.emplace_back(c - 10.0 * s + 55.0 * s * std::cos(a), c + 30.0 * s * std::sin(a));
    }
    fill_polygon(f, body);
    fill_polygon(f, {{c + 40.0 * s, c}, {c + 75.0 * s, c - 28.0 * s}, {c + 75.0 * s, c + 28.0 * s}});
    corpus.push_back({"silhouette_fish", std::move(f)});
  }
  {
    // Face: head outline, eyes, mouth.
    Frame f = blank();
    draw_circle(f, c, c, 65.0 * s, 6.0 * s);
    fill_circle(f, c - 25.0 * s, c - 20.0 * s, 8.0 * s);
    fill_circle(f, c + 25.0 * s, c - 20.0 * s, 8.0 * s);
    draw_line(f, c - 28.0 * s, c + 28.0 * s, c + 28.0 * s, c + 28.0 * s, 6.0 * s);
    corpus.push_back({"silhouette_face", std::move(f)});
  }
  {
    // Boat: hull trapezoid plus mast and sail.
    Frame f = blank();
    fill_polygon(f, {{c - 60.0 * s, c + 20.0 * s},
                     {c + 60.0 * s, c + 20.0 * s},
                     {c + 40.0 * s, c + 50.0 * s},
                     {c - 40.0 * s, c + 50.0 * s}});
    draw_line(f, c, c + 20.0 * s, c, c - 55.0 * s, 5.0 * s);
    fill_polygon(f, {{c, c - 55.0 * s}, {c + 45.0 * s, c + 10.0 * s}, {c, c + 10.0 * s}});
    corpus.push_back({"silhouette_boat", std::move(f)});
  }
  {
    // Tree: triangular crown over a trunk.
    Frame f = blank();
    fill_polygon(f, {{c, c - 65.0 * s}, {c + 50.0 * s, c + 25.0 * s}, {c - 50.0 * s, c + 25.0 * s}});
    fill_polygon(f, {{c - 10.0 * s, c + 25.0 * s},
                     {c + 10.0 * s, c + 25.0 * s},
                     {c + 10.0 * s, c + 60.0 * s},
                     {c - 10.0 * s, c + 60.0 * s}});
    corpus.push_back({"silhouette_tree", std::move(f)});
  }
  return corpus;
}

}  // namespace rpn
