#pragma once

#include <Eigen/Dense>
#include <string>

namespace rpn {

// A grayscale frame. Storage is an Eigen array indexed (row, col) = (y, x);
// values are real and unrestricted in range.
using Frame = Eigen::ArrayXXd;

inline int frame_width(const Frame& f) { return static_cast<int>(f.cols()); }
inline int frame_height(const Frame& f) { return static_cast<int>(f.rows()); }

/// Read an 8-bit binary PGM (P5). Values scaled to [0, 1].
Frame read_pgm(const std::string& path);

/// Write a frame as 8-bit binary PGM, clamping to [0, 1].
void write_pgm(const Frame& frame, const std::string& path);

}  // namespace rpn
