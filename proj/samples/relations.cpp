// Builds the generator expansions at a chosen truncation and prints the
// residual of every ring relation, then the Igusa quartic in the y's.
#include <cstdlib>
#include <iostream>

#include "siegelcy/modforms.hpp"

int main(int argc, char** argv) {
  const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 12;
  const siegelcy::FormRegistry reg(n);
  for (const auto& r : siegelcy::ring_relations()) {
    const auto res = siegelcy::relation_residual(r, reg);
    std::cout << (res.is_zero() ? "zero    " : "NONZERO ") << r.id << "  (" << r.label << ")\n";
  }
  const auto q = siegelcy::find_relation("igusa_quartic");
  std::cout << "\n" << q.lhs.to_string() << " = " << q.rhs.to_string() << "\n";
  std::cout << "y0 = " << reg.get("y0").to_string(6) << "\n";
}
