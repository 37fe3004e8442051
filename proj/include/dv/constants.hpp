#pragma once

#include <concepts>

namespace dv {

template <std::floating_point T>
inline constexpr T sqrt_pi_v = static_cast<T>(1.772453850905516027298167483341145182797549456122387128213807789852911L);

}  // namespace dv
