// All acceptance criteria in one run, one line each. Tolerances live in the
// criterion functions; this binary only sequences them and sets the exit code.
#include <iostream>

#include "experiments.h"

int main() {
  harness::Settings s;
  using Fn = harness::Criterion (*)(const harness::Settings&);
  const Fn all[] = {harness::surface_tension_criterion, harness::operator_criterion,
                    harness::potential_criterion,       harness::unforced_flow_criterion,
                    harness::identities_criterion,      harness::ch_invariants_criterion,
                    harness::residual_criterion,        harness::convergence_criterion,
                    harness::cross_validation_criterion};
  int failed = 0, id = 1;
  for (Fn f : all) {
    try {
      harness::Criterion c = f(s);
      std::cout << c.line() << std::endl;
      failed += !c.pass();
    } catch (const std::exception& e) {
      std::cout << "criterion " << id << " [FAIL] threw: " << e.what() << std::endl;
      ++failed;
    }
    ++id;
  }
  std::cout << (9 - failed) << "/9 criteria pass" << std::endl;
  return failed ? 1 : 0;
}
