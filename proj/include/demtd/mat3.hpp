#pragma once

#include <array>
#include <cmath>

namespace demtd {

/// Row vector (gradients are row vectors throughout: g' = g * P).
using Vec3 = std::array<double, 3>;

/// Symmetric 3x3 matrix stored as its six independent components.
struct SymMat3 {
    double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;

    static SymMat3 identity(double s = 1.0) { return {s, 0, 0, s, 0, s}; }

    double determinant() const
    {
        return xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) + xz * (xy * yz - yy * xz);
    }

    // Adjugate (transpose of the cofactor matrix); symmetric for symmetric input.
    SymMat3 adjugate() const
    {
        return {yy * zz - yz * yz, xz * yz - xy * zz, xy * yz - xz * yy,
                xx * zz - xz * xz, xy * xz - xx * yz, xx * yy - xy * xy};
    }

    // v * M * v^T
    double quadratic_form(const Vec3& v) const
    {
        return xx * v[0] * v[0] + yy * v[1] * v[1] + zz * v[2] * v[2] +
               2.0 * (xy * v[0] * v[1] + xz * v[0] * v[2] + yz * v[1] * v[2]);
    }

    double trace() const { return xx + yy + zz; }

    SymMat3 operator+(const SymMat3& o) const
    {
        return {xx + o.xx, xy + o.xy, xz + o.xz, yy + o.yy, yz + o.yz, zz + o.zz};
    }
    SymMat3 operator-(const SymMat3& o) const
    {
        return {xx - o.xx, xy - o.xy, xz - o.xz, yy - o.yy, yz - o.yz, zz - o.zz};
    }
    SymMat3 operator*(double s) const { return {xx * s, xy * s, xz * s, yy * s, yz * s, zz * s}; }

    // Row-major element access.
    double at(int r, int c) const
    {
        static constexpr int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        const double v[6] = {xx, xy, xz, yy, yz, zz};
        return v[map[r][c]];
    }

    friend bool operator==(const SymMat3&, const SymMat3&) = default;
};

/// General 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    static Mat3 identity(double s = 1.0) { return {{s, 0, 0, 0, s, 0, 0, 0, s}}; }
    static Mat3 diagonal(double a, double b, double c) { return {{a, 0, 0, 0, b, 0, 0, 0, c}}; }

    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

    double determinant() const
    {
        const Mat3& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }

    Mat3 transpose() const
    {
        Mat3 t;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                t(r, c) = (*this)(c, r);
        return t;
    }

    Mat3 operator*(const Mat3& o) const
    {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) + (*this)(r, 2) * o(2, c);
        return out;
    }

    // Column vector product M * v.
    Vec3 apply(const Vec3& v) const
    {
        const Mat3& a = *this;
        return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2], a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
                a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
    }

    // Row vector product v * M.
    Vec3 apply_row(const Vec3& v) const
    {
        const Mat3& a = *this;
        return {v[0] * a(0, 0) + v[1] * a(1, 0) + v[2] * a(2, 0), v[0] * a(0, 1) + v[1] * a(1, 1) + v[2] * a(2, 1),
                v[0] * a(0, 2) + v[1] * a(1, 2) + v[2] * a(2, 2)};
    }

    Mat3 inverse() const
    {
        const Mat3& a = *this;
        const double det = determinant();
        Mat3 inv;
        inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / det;
        inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / det;
        inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / det;
        inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / det;
        inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / det;
        inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / det;
        inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / det;
        inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / det;
        inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / det;
        return inv;
    }

    static Mat3 from(const SymMat3& s)
    {
        return {{s.xx, s.xy, s.xz, s.xy, s.yy, s.yz, s.xz, s.yz, s.zz}};
    }
};

} // namespace demtd
