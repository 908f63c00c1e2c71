#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace confront {

/// Which non-punctual objects an extraction keeps.
enum class Scope { All, StreetsOnly, TopK };

inline constexpr std::size_t kDefaultComponentThreshold = 25;

/// One graph-extraction variant. The code spelling is `<R|E><H|F><W|S>_<all|streets|k>`.
struct ExtractionMethod {
  bool use_additional = false;  // E
  bool keep_hierarchy = true;   // H
  bool split = false;           // S
  Scope scope = Scope::All;
  std::size_t k = 0;
  std::size_t component_threshold = kDefaultComponentThreshold;

  /// e.g. "EFS_k"; k is not part of the code.
  std::string code() const;

  friend bool operator==(const ExtractionMethod&, const ExtractionMethod&) = default;
};

/// The sixteen named variants, in table order.
inline constexpr std::array<std::string_view, 16> kMethodCodes{
    "RHW_all", "RFW_all", "RFW_streets", "RFW_k", "EHW_all", "EFW_all", "EFW_streets", "EFW_k",
    "RHS_all", "RFS_all", "RFS_streets", "RFS_k", "EHS_all", "EFS_all", "EFS_streets", "EFS_k"};

/// Parses one of the sixteen named codes; k and threshold keep their defaults.
std::optional<ExtractionMethod> parse_method_code(std::string_view code);

}  // namespace confront
