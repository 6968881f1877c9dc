#ifndef INFECT_VECTOR_OPS_HPP
#define INFECT_VECTOR_OPS_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace infect {

/// Total infection severity: plain left-to-right sum.
inline double total_severity(std::span<const double> x) noexcept {
    double sum = 0.0;
    for (double v : x)
        sum += v;
    return sum;
}

inline double dot(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "dot of vectors with different lengths");
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        sum += u[i] * v[i];
    return sum;
}

inline double norm2(std::span<const double> x) noexcept {
    double sum = 0.0;
    for (double v : x)
        sum += v * v;
    return std::sqrt(sum);
}

inline void scale_in_place(std::span<double> x, double factor) noexcept {
    for (double &v : x)
        v *= factor;
}

inline std::vector<double> unit_2norm(std::span<const double> x) {
    const double len = norm2(x);
    if (!(len > 0.0))
        throw Error(ErrorKind::ZeroVector, "cannot normalise a zero vector");
    std::vector<double> out(x.begin(), x.end());
    scale_in_place(out, 1.0 / len);
    return out;
}

/**
 * Angle between u and v in degrees, i.e. arccos(u.v / (|u||v|)).
 *
 * Evaluated as 2 atan2(|a - b|, |a + b|) on the unit vectors a, b: the
 * arccos form cannot resolve angles below ~1e-6 degrees in double precision,
 * which is coarser than the default convergence threshold.
 */
inline double angle_deg(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "angle between vectors of different lengths");
    const double nu = norm2(u);
    const double nv = norm2(v);
    if (!(nu > 0.0) || !(nv > 0.0))
        throw Error(ErrorKind::ZeroVector, "angle with a zero vector is undefined");
    double diff = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = u[i] / nu;
        const double b = v[i] / nv;
        diff += (a - b) * (a - b);
        sum += (a + b) * (a + b);
    }
    return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)) * (180.0 / std::numbers::pi);
}

} // namespace infect

#endif
