#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace slicebroker {

// Specialize with `static constexpr std::array entries` of {value, name} pairs.
template <class E>
struct EnumNames;

template <class E>
constexpr std::string_view enum_name(E value) noexcept {
  for (const auto& [v, name] : EnumNames<E>::entries) {
    if (v == value) return name;
  }
  return "?";
}

template <class E>
constexpr std::optional<E> enum_from_name(std::string_view name) noexcept {
  for (const auto& [v, n] : EnumNames<E>::entries) {
    if (n == name) return v;
  }
  return std::nullopt;
}

}  // namespace slicebroker
