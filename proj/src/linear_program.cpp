#include "nsg/linear_program.hpp"

#include <ostream>

namespace nsg {

void write_lp(std::ostream& out, const LinearProgram& lp) {
  out << (lp.sense == Sense::Maximize ? "max" : "min") << "\n";
  for (int v = 0; v < lp.num_vars(); ++v) {
    out << "var " << lp.var_names[v];
    if (!lp.nonneg[v]) out << " free";
    out << "\n";
  }
  out << "obj";
  for (const auto& [v, c] : lp.objective)
    out << " " << to_fraction_string(c) << " " << lp.var_names[v];
  out << "\n";
  for (const auto& row : lp.rows) {
    const char* rel = row.relation == Relation::LessEq      ? "<="
                      : row.relation == Relation::GreaterEq ? ">="
                                                            : "=";
    out << "row " << rel << " " << to_fraction_string(row.rhs) << " :";
    for (const auto& [v, c] : row.coeffs)
      out << " " << to_fraction_string(c) << " " << lp.var_names[v];
    out << "\n";
  }
}

}  // namespace nsg
