#pragma once

// Forward-mode dual number: value plus one directional derivative.

#include <cmath>
#include <type_traits>

namespace testing_support {

template <typename T>
struct BasicDual
{
  T v{};
  T d{};

  BasicDual() = default;
  BasicDual(T value) : v(value) {}  // NOLINT(google-explicit-constructor)
  BasicDual(T value, T deriv) : v(value), d(deriv) {}
};

using Dual = BasicDual<double>;
using LongDual = BasicDual<long double>;

template <typename T>
using Scalar = std::type_identity_t<T>;

template <typename T>
BasicDual<T> operator+(BasicDual<T> a, BasicDual<T> b) { return {a.v + b.v, a.d + b.d}; }
template <typename T>
BasicDual<T> operator-(BasicDual<T> a, BasicDual<T> b) { return {a.v - b.v, a.d - b.d}; }
template <typename T>
BasicDual<T> operator-(BasicDual<T> a) { return {-a.v, -a.d}; }
template <typename T>
BasicDual<T> operator*(BasicDual<T> a, BasicDual<T> b)
{
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <typename T>
BasicDual<T> operator/(BasicDual<T> a, BasicDual<T> b)
{
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

template <typename T>
BasicDual<T> operator+(BasicDual<T> a, Scalar<T> b) { return {a.v + b, a.d}; }
template <typename T>
BasicDual<T> operator+(Scalar<T> a, BasicDual<T> b) { return {a + b.v, b.d}; }
template <typename T>
BasicDual<T> operator-(BasicDual<T> a, Scalar<T> b) { return {a.v - b, a.d}; }
template <typename T>
BasicDual<T> operator-(Scalar<T> a, BasicDual<T> b) { return {a - b.v, -b.d}; }
template <typename T>
BasicDual<T> operator*(BasicDual<T> a, Scalar<T> b) { return {a.v * b, a.d * b}; }
template <typename T>
BasicDual<T> operator*(Scalar<T> a, BasicDual<T> b) { return {a * b.v, a * b.d}; }
template <typename T>
BasicDual<T> operator/(BasicDual<T> a, Scalar<T> b) { return {a.v / b, a.d / b}; }
template <typename T>
BasicDual<T> operator/(Scalar<T> a, BasicDual<T> b)
{
  return {a / b.v, -a * b.d / (b.v * b.v)};
}

template <typename T>
BasicDual<T> sin(BasicDual<T> a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
template <typename T>
BasicDual<T> cos(BasicDual<T> a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
template <typename T>
BasicDual<T> sqrt(BasicDual<T> a)
{
  const T r = std::sqrt(a.v);
  return {r, a.d / (2 * r)};
}

}  // namespace testing_support
