// Builds a small circuit, checks its properties, smooths it and prints the
// value-matrix rank of the edge-product function of a 3-regular graph.

#include <iostream>

#include "acirc/acirc.hpp"

int main() {
  using namespace acirc;

  // x + y: decomposable but not smooth.
  Circuit c = parse_circuit("ac 3\n0 var x\n1 var y\n2 + 0 1\nroot 2\n");
  std::cout << "input:      " << classify(c).label.str() << '\n';

  Circuit padded = smooth_by_padding(c).circuit;
  std::cout << "padded:     " << classify(padded).label.str() << ", " << padded.size() << " nodes\n";
  std::cout << "same table: " << (equivalent(c, padded) ? "yes" : "no") << '\n';
  std::cout << "value at x=1,y=1: " << evaluate(padded, Assignment::parse("x=1,y=1")) << '\n';

  Graph g = random_regular_graph(8, 3, 1);
  auto rep = structured_lower_bound_report(g);
  std::cout << "edge product over 8 vertices: circuit size " << rep.circuit_size << ", min balanced rank "
            << rep.min_rank << '\n';
  std::cout << serialize_circuit(padded);
}
