#include <doctest.h>

#include "rpn/transforms.hpp"

#include <numbers>
#include <random>

using namespace rpn;

TEST_CASE("rotation by 2 pi is the identity up to interpolation") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Frame f(32, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) f(i, j) = dist(rng);
  const Frame out = rotate_frame(f, 2.0 * std::numbers::pi);
  CHECK((out - f).abs().maxCoeff() < 1e-9);
}

TEST_CASE("four quarter turns reproduce the frame") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Frame f(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) f(i, j) = dist(rng);
  Frame out = f;
  for (int k = 0; k < 4; ++k) out = rotate_frame(out, std::numbers::pi / 2.0);
  CHECK((out - f).abs().maxCoeff() < 1e-9);
}

TEST_CASE("scale by 1 is the identity") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Frame f(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) f(i, j) = dist(rng);
  CHECK((scale_frame(f, 1.0) - f).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(scale_frame(f, 0.0), std::invalid_argument);
}

TEST_CASE("integer shift moves pixels and zero-fills") {
  Frame f = Frame::Zero(8, 8);
  f(2, 3) = 1.0;
  const Frame out = shift_frame(f, 2, -1);
  CHECK(out(1, 5) == 1.0);
  CHECK(out.sum() == 1.0);
}

TEST_CASE("nearest interpolation preserves values exactly on the grid") {
  Frame f = Frame::Zero(9, 9);
  f(4, 4) = 1.0;
  const Frame out = rotate_frame(f, std::numbers::pi / 2.0, Interpolation::Nearest);
  CHECK(out(4, 4) == 1.0);
}
