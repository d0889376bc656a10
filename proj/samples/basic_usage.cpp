// Computes one cyclotomic number five ways and prints the table of F_{3^3}.
#include <iostream>

#include "cyclonum/cyclonum.hpp"

int main() {
  using namespace cyclonum;

  const auto ctx = ExtensionContext::build(5, 1, 3, std::nullopt);
  const CycloParams cell{0, 2};
  std::cout << "(0,2)_4 over F_125\n"
            << "  oracle  " << count_by_norm(ctx, cell) << '\n'
            << "  rank    " << cyclotomic_by_rank(ctx, cell) << '\n'
            << "  chars   " << cyclotomic_by_characters(ctx, cell) << '\n';
  const auto graph = CayleyGraph::build(ctx, VertexOrdering::Canonical);
  std::cout << "  digraph " << cyclotomic_by_digraph(ctx, graph, cell) << '\n';
  const auto ell = cyclotomic_by_ell(ctx, cell);
  std::cout << "  ell     " << ell.t_count << " + 3*" << ell.i_count << " = " << ell.total() << '\n';

  const auto small = ExtensionContext::build(3, 1, 3, std::nullopt);
  const auto table = full_table(small, TableMethod::Norm);
  std::cout << "\n(a,b)_2 over F_27\n";
  for (const auto& row : table.values) {
    for (auto v : row) std::cout << ' ' << v;
    std::cout << '\n';
  }
}
