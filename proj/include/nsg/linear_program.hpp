#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nsg/rational.hpp"

namespace nsg {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

/// Generic sparse LP over named variables. Variables are referenced by index;
/// nonneg[i] = false declares variable i free.
struct LinearProgram {
  Sense sense = Sense::Maximize;
  std::vector<std::string> var_names;
  std::vector<bool> nonneg;
  std::vector<std::pair<int, Rational>> objective;

  struct Row {
    std::string name;
    std::vector<std::pair<int, Rational>> coeffs;
    Relation relation = Relation::LessEq;
    Rational rhs;
  };
  std::vector<Row> rows;

  // Pipeline stage tag; empty for LPs built by hand.
  std::string stage;

  int num_vars() const { return static_cast<int>(var_names.size()); }

  int add_var(std::string name, bool nonnegative = true) {
    var_names.push_back(std::move(name));
    nonneg.push_back(nonnegative);
    return num_vars() - 1;
  }
  Row& add_row(std::string name, Relation rel, Rational rhs) {
    rows.push_back(Row{std::move(name), {}, rel, std::move(rhs)});
    return rows.back();
  }
};

/// Text dump: "min|max", "var <name> [free]", "obj <coef> <var> ...",
/// "row <relation> <rhs> : <coef> <var> ...".
void write_lp(std::ostream& out, const LinearProgram& lp);

}  // namespace nsg
