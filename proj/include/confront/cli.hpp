#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace confront::cli {

inline constexpr std::string_view kToolName = "confront-net";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ManifestInput {
  std::string role;
  std::string path;
  std::string sha256;
};

/// Provenance record written next to every command output.
struct RunManifest {
  std::string command;
  std::vector<ManifestInput> inputs;
  std::vector<std::string> methods;
  std::optional<std::size_t> k;
  std::optional<std::size_t> threshold;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  /// UTC, ISO 8601. Not part of the hash.
  std::string timestamp;

  /// SHA-256 of the canonical JSON form without the timestamp.
  std::string hash() const;
  /// Pretty-printed JSON including hash and timestamp.
  std::string to_json() const;
};

std::string sha256_hex(std::string_view data);
/// Throws Error(Io) when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Current UTC time, or SOURCE_DATE_EPOCH when that variable is set.
std::string current_timestamp();

/// Entry point shared by the executable and the tests. Returns 0 on success,
/// 1 on usage errors and 2 on data errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confront::cli
