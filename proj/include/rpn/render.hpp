#pragma once

#include "rpn/frame.hpp"

#include <string>
#include <vector>

namespace rpn {

/// Drawing helpers for the synthetic test corpus. All draw white (1.0) onto
/// an existing frame; callers start from Frame::Zero.

void draw_line(Frame& f, double x0, double y0, double x1, double y1, double thickness);
void draw_circle(Frame& f, double cx, double cy, double radius, double thickness);
void fill_circle(Frame& f, double cx, double cy, double radius);
void draw_polygon(Frame& f, const std::vector<std::pair<double, double>>& pts, double thickness);
void fill_polygon(Frame& f, const std::vector<std::pair<double, double>>& pts);

/// Render `text` (A-Z, 0-9, space) centred in a size x size frame, scaling
/// the built-in 5x7 font to fill `extent` pixels of height for one glyph.
Frame render_text(const std::string& text, int size, double extent);

/// Regular polygon outline centred in the frame.
Frame render_regular_polygon(int size, int sides, double radius, double thickness,
                             double phase = 0.0);

struct CorpusImage {
  std::string id;
  Frame frame;
};

/// Deterministic mixed corpus: letters, digits, words, geometric shapes and
/// simple silhouettes, all size x size and centred.
std::vector<CorpusImage> generate_corpus(int size = 200);

/// The three Fig.-style square probes plus the octagon reference.
Frame render_square_outline(int size, double half_side, double thickness);
Frame render_dashed_square(int size, double half_side, double thickness, int dashes);
Frame render_corner_cut_square(int size, double half_side, double thickness, double cut);
Frame render_octagon_outline(int size, double half_side, double thickness);

}  // namespace rpn
