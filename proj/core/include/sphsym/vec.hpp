#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace sphsym
{
inline constexpr double kPi = std::numbers::pi;

/// Point or direction in R^3. Planar (n = 2) quantities keep z = 0.
struct Vec3 final
{
        double x = 0;
        double y = 0;
        double z = 0;

        constexpr double& operator[](int i)
        {
                return i == 0 ? x : (i == 1 ? y : z);
        }
        constexpr double operator[](int i) const
        {
                return i == 0 ? x : (i == 1 ? y : z);
        }

        friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b)
        {
                return {a.x + b.x, a.y + b.y, a.z + b.z};
        }
        friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b)
        {
                return {a.x - b.x, a.y - b.y, a.z - b.z};
        }
        friend constexpr Vec3 operator-(const Vec3& a)
        {
                return {-a.x, -a.y, -a.z};
        }
        friend constexpr Vec3 operator*(double s, const Vec3& a)
        {
                return {s * a.x, s * a.y, s * a.z};
        }
        friend constexpr Vec3 operator*(const Vec3& a, double s)
        {
                return s * a;
        }
        friend constexpr Vec3 operator/(const Vec3& a, double s)
        {
                return {a.x / s, a.y / s, a.z / s};
        }
        constexpr Vec3& operator+=(const Vec3& b)
        {
                x += b.x;
                y += b.y;
                z += b.z;
                return *this;
        }
        friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

inline constexpr Vec3 kE1{1, 0, 0};
inline constexpr Vec3 kE2{0, 1, 0};
inline constexpr Vec3 kE3{0, 0, 1};

constexpr double dot(const Vec3& a, const Vec3& b)
{
        return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a)
{
        return std::sqrt(dot(a, a));
}

inline Vec3 normalized(const Vec3& a)
{
        return a / norm(a);
}

/// Row-major 3x3 matrix; used for orthogonal transforms of directions.
struct Mat3 final
{
        std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

        static constexpr Mat3 identity()
        {
                return {};
        }

        constexpr double operator()(int i, int j) const
        {
                return m[3 * i + j];
        }
        constexpr double& operator()(int i, int j)
        {
                return m[3 * i + j];
        }

        friend constexpr Vec3 operator*(const Mat3& a, const Vec3& v)
        {
                return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
                        a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
                        a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
        }

        friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b)
        {
                Mat3 c;
                for (int i = 0; i < 3; ++i)
                {
                        for (int j = 0; j < 3; ++j)
                        {
                                double s = 0;
                                for (int k = 0; k < 3; ++k)
                                {
                                        s += a(i, k) * b(k, j);
                                }
                                c(i, j) = s;
                        }
                }
                return c;
        }

        constexpr Mat3 transposed() const
        {
                Mat3 t;
                for (int i = 0; i < 3; ++i)
                {
                        for (int j = 0; j < 3; ++j)
                        {
                                t(i, j) = (*this)(j, i);
                        }
                }
                return t;
        }

        constexpr double determinant() const
        {
                const Mat3& a = *this;
                return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                       - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                       + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        }

        friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

/// Counterclockwise rotation by `angle` in the (x1, x2) plane.
inline Mat3 planar_rotation(double angle)
{
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        Mat3 r;
        r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
        return r;
}

/// Rotation by `angle` about the unit `axis` (Rodrigues).
inline Mat3 axis_rotation(const Vec3& axis, double angle)
{
        const Vec3 k = normalized(axis);
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const double t = 1 - c;
        Mat3 r;
        r.m = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
               t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
               t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
        return r;
}

/// Max deviation of R^T R from the identity.
inline double orthogonality_defect(const Mat3& r)
{
        const Mat3 p = r.transposed() * r;
        double d = 0;
        for (int i = 0; i < 3; ++i)
        {
                for (int j = 0; j < 3; ++j)
                {
                        d = std::fmax(d, std::fabs(p(i, j) - (i == j ? 1.0 : 0.0)));
                }
        }
        return d;
}
}
