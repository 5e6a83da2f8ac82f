#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace roadaccess {

/// Binary road quality proxy, plus `unknown` for roads without a usable tag.
enum class Surface : std::uint8_t { paved, unpaved, unknown };

/// Three-level road access deprivation, ordered low < medium < high.
enum class DeprivationLevel : std::uint8_t { low = 0, medium = 1, high = 2 };

inline constexpr std::array<DeprivationLevel, 3> kAllLevels = {
    DeprivationLevel::low, DeprivationLevel::medium, DeprivationLevel::high};

constexpr std::size_t index_of(DeprivationLevel level) noexcept {
  return static_cast<std::size_t>(level);
}

std::string_view to_string(Surface s) noexcept;
std::string_view to_string(DeprivationLevel level) noexcept;

/// Maps raw surface tags onto the binary vocabulary; unrecognized tags
/// become `unknown`. Case and surrounding whitespace are ignored.
Surface normalize_surface(std::string_view raw);

/// Case-insensitive parse of "low" / "medium" / "high".
std::optional<DeprivationLevel> parse_level(std::string_view raw);

/// Exact parse of the canonical surface names written by our exporters.
std::optional<Surface> parse_surface(std::string_view raw);

/// 100 m grid cell index: i = floor(x / size), j = floor(y / size).
struct CellId {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// One community vote for a grid cell.
struct ValidationRecord {
  CellId cell;
  std::string validator_id;
  DeprivationLevel level = DeprivationLevel::low;
};

}  // namespace roadaccess
