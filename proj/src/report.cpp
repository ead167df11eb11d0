#include "nsg/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "nsg/errors.hpp"

namespace nsg {

std::string RunReport::serialize() const {
  std::ostringstream out;
  for (const auto& [k, v] : fields) out << k << "=" << v << "\n";
  return out.str();
}

RunReport RunReport::parse(const std::string& text) {
  RunReport report;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("report line has no '='", line_number);
    report.fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return report;
}

std::string file_digest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open file: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char c;
  while (f.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace nsg
