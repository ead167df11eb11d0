#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "nsg/errors.hpp"
#include "nsg/rational.hpp"

namespace nsg::detail {

// Line-oriented tokenizer shared by the text formats. '#' starts a comment;
// blank lines are skipped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into whitespace tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      tokens.clear();
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int line() const { return line_number_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_number_);
  }

  int parse_int(const std::string& tok) const {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) fail("expected integer, got '" + tok + "'");
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      fail("expected integer, got '" + tok + "'");
    }
  }

  Rational parse_rat(const std::string& tok) const {
    auto r = parse_rational(tok);
    if (!r) fail("expected rational, got '" + tok + "'");
    return *r;
  }

 private:
  std::istream& in_;
  int line_number_ = 0;
};

}  // namespace nsg::detail
