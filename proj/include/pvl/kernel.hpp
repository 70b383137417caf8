#pragma once

#include <concepts>
#include <experimental/simd>

namespace pvl {

/// A density weight w(q) of the normalised separation q = r / h_i. It must
/// vanish for q >= 1 and be evaluable in both precisions.
template <class K>
concept DensityKernel = requires(const K k, double qd, float qf) {
    { k(qd) } -> std::same_as<double>;
    { k(qf) } -> std::same_as<float>;
};

/// Default weight: w(q) = (1 - q)^3 on [0, 1), zero beyond.
struct CubicFalloffKernel {
    template <std::floating_point T>
    constexpr T operator()(T q) const
    {
        const T u = q < T(1) ? T(1) - q : T(0);
        return u * u * u;
    }

    /// Lane-wise form for the vectorised sweep.
    template <class T, class Abi>
    std::experimental::simd<T, Abi> operator()(const std::experimental::simd<T, Abi>& q) const
    {
        std::experimental::simd<T, Abi> u = T(1) - q;
        std::experimental::where(q >= T(1), u) = T(0);
        return u * u * u;
    }
};

static_assert(DensityKernel<CubicFalloffKernel>);

} // namespace pvl
