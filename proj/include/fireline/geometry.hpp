// fireline - small planar geometry helpers
#pragma once

#include <cmath>
#include <numbers>

namespace fireline {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }

inline double cross(Vec2 a, Vec2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Vec2 a) { return std::hypot(a.x1, a.x2); }

// Wrap an angle to [0, 2*pi).
inline double wrap_two_pi(double theta) {
    double w = std::fmod(theta, two_pi);
    if (w < 0.0) w += two_pi;
    // fmod can land exactly on 2*pi after the correction when theta is a
    // tiny negative number
    if (w >= two_pi) w = 0.0;
    return w;
}

// Distance from point p to segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    double u = dot(p - a, ab) / len2;
    u = std::fmax(0.0, std::fmin(1.0, u));
    return norm(p - (a + u * ab));
}

}  // namespace fireline
