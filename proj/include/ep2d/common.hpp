#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ep2d {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Constant in front of the bilinear symbols. Transforms are unitary,
// f^(xi) = (2 pi)^{-1} int f(x) e^{-ix.xi} dx, so (fg)^ = (2 pi)^{-1} f^ * g^.
inline constexpr double kC0 = 1.0 / (2.0 * std::numbers::pi);

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
inline Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
inline Vec2 operator-(Vec2 p) { return {-p.x, -p.y}; }
inline Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
inline double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }

}  // namespace ep2d
