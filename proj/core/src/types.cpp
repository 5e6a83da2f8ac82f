#include "roadaccess/types.hpp"

#include "text_format.hpp"

namespace roadaccess {

std::string_view to_string(Surface s) noexcept {
  switch (s) {
    case Surface::paved:
      return "paved";
    case Surface::unpaved:
      return "unpaved";
    case Surface::unknown:
      break;
  }
  return "unknown";
}

std::string_view to_string(DeprivationLevel level) noexcept {
  switch (level) {
    case DeprivationLevel::low:
      return "low";
    case DeprivationLevel::medium:
      return "medium";
    case DeprivationLevel::high:
      break;
  }
  return "high";
}

Surface normalize_surface(std::string_view raw) {
  const std::string tag = detail::lower(detail::trim(raw));
  static constexpr std::string_view kPaved[] = {"asphalt", "concrete", "paving_stones", "paved"};
  static constexpr std::string_view kUnpaved[] = {"dirt",  "gravel",    "ground", "sand",
                                                  "earth", "compacted", "unpaved"};
  for (auto alias : kPaved) {
    if (tag == alias) return Surface::paved;
  }
  for (auto alias : kUnpaved) {
    if (tag == alias) return Surface::unpaved;
  }
  return Surface::unknown;
}

std::optional<DeprivationLevel> parse_level(std::string_view raw) {
  const std::string tag = detail::lower(detail::trim(raw));
  if (tag == "low") return DeprivationLevel::low;
  if (tag == "medium") return DeprivationLevel::medium;
  if (tag == "high") return DeprivationLevel::high;
  return std::nullopt;
}

std::optional<Surface> parse_surface(std::string_view raw) {
  if (raw == "paved") return Surface::paved;
  if (raw == "unpaved") return Surface::unpaved;
  if (raw == "unknown") return Surface::unknown;
  return std::nullopt;
}

}  // namespace roadaccess
