#pragma once

#include "pmbdd/instance.hpp"

// The 4-job, 2-machine instance used across the tests: p = (2,6,4,4),
// d = (4,6,8,8), w = (2,6,2,5), T = 11. Its optimum is 4, attained by the
// sequences (1,4,3) | (2); the time-indexed LP relaxation is 2 and the flow
// LP is 4, partition (0,4](4,6](6,8](8,11].
inline pmbdd::Instance example_instance() {
  pmbdd::Instance inst;
  inst.machines = 2;
  inst.jobs = {
      {1, 2, 4, 2},
      {2, 6, 6, 6},
      {3, 4, 8, 2},
      {4, 4, 8, 5},
  };
  inst.horizon = 11;
  return inst;
}

inline const char* example_instance_text() { return "4 2\n2 4 2\n6 6 6\n4 8 2\n4 8 5\n"; }
