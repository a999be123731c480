// Computes Γ for <1,1>, <0,1>, <0>, <0>, ... over the two-letter discrete
// order and prints the bound, the embedded pair and the run statistics.

#include <iostream>

#include "higman/higman.hpp"
#include "higman/instance.hpp"

int main() {
  using namespace higman;
  const Preorder order = Preorder::equality(2);
  const StreamSpec u = StreamSpec::eventually_constant({Word{1, 1}, Word{0, 1}}, Word{0});

  BoundReport r = gamma(make_instance(order, u.stream()), {.check_contracts = true});

  std::cout << "bound    " << r.bound << '\n'
            << "witness  u_" << r.witness.i0 << " = " << u.at(r.witness.i0).str() << " embeds in u_"
            << r.witness.i1 << " = " << u.at(r.witness.i1).str() << '\n'
            << "eps      " << r.eps_calls << " calls, peak depth " << r.peak_depth << '\n'
            << "mbs      " << r.selection_calls << " selections, contracts "
            << (r.mbs_contracts->holds() ? "hold" : "FAIL") << '\n';
}
