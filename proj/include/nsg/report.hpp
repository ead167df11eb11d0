#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nsg {

/// Flat ordered key=value report; one pair per line, lossless round-trip
/// for newline-free values.
struct RunReport {
  std::vector<std::pair<std::string, std::string>> fields;

  void set(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
  std::string serialize() const;
  static RunReport parse(const std::string& text);
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex chars.
std::string file_digest(const std::string& path);

}  // namespace nsg
