// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Scalar concept shared by every numeric routine in the library.  All
// algorithms are written once against `Scalar` and instantiated for
// double and std::complex<double>.
#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <type_traits>

namespace pursuit::linalg {

template <typename T>
struct is_complex : std::false_type {};

template <std::floating_point R>
struct is_complex<std::complex<R>> : std::true_type {};

template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename T>
concept Scalar = std::floating_point<T> || is_complex_v<T>;

template <Scalar T>
struct scalar_traits {
  using real_type = T;
};

template <std::floating_point R>
struct scalar_traits<std::complex<R>> {
  using real_type = R;
};

template <Scalar T>
using real_t = typename scalar_traits<T>::real_type;

// conj() on a real scalar is the identity; std::conj would promote to complex.
template <std::floating_point R>
constexpr R conj_of(R x) {
  return x;
}

template <std::floating_point R>
constexpr std::complex<R> conj_of(const std::complex<R>& x) {
  return std::conj(x);
}

template <std::floating_point R>
constexpr R abs2(R x) {
  return x * x;
}

template <std::floating_point R>
constexpr R abs2(const std::complex<R>& x) {
  return x.real() * x.real() + x.imag() * x.imag();
}

// Single magnitude routine shared by every selection rule so that
// algorithms required to agree bit-for-bit route through the same code.
template <std::floating_point R>
R abs_of(R x) {
  return std::fabs(x);
}

template <std::floating_point R>
R abs_of(const std::complex<R>& x) {
  return std::abs(x);
}

template <Scalar T>
bool finite(T x) {
  if constexpr (is_complex_v<T>) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  } else {
    return std::isfinite(x);
  }
}

}  // namespace pursuit::linalg
