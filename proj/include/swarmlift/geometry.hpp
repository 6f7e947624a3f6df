#pragma once

#include <cmath>
#include <cstdint>

namespace swarmlift {

using AgentId = std::int32_t;

enum class Axis { x, y };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(Vec2 v, double s) { return v *= s; }
inline Vec2 operator*(double s, Vec2 v) { return v *= s; }
inline Vec2 operator-(const Vec2& v) { return {-v.x, -v.y}; }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

inline double component(const Vec2& v, Axis axis) { return axis == Axis::x ? v.x : v.y; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::sqrt(norm_sq(v)); }

// Unit vector along v, or the zero vector when |v| vanishes.
inline Vec2 unit_or_zero(const Vec2& v) {
    double n = norm(v);
    if (n <= 0.0) return {};
    return {v.x / n, v.y / n};
}

inline Vec2 rotated(const Vec2& v, double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Angle of b relative to a, in (-pi, pi].
inline double angle_between(const Vec2& a, const Vec2& b) {
    return std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
}

}  // namespace swarmlift
