// Named initial conditions used by the CLI and the test suites:
// closed-form rigid motions, a balanced-but-not-central configuration, and
// seeded random collision-free states.
#pragma once

#include <string>

#include "unhinge/nbody.hpp"

namespace unhinge {

// Names: "lagrange-equilateral" (m = 1,2,3 equilateral rigid rotation, d=2),
// "isosceles-balanced" (m1 = m2 isosceles at rest, d=2),
// "kepler-pair" (equal-mass circular orbit, d=2),
// "random-seeded" (collision-free random state; n, d, seed honored).
// For the closed-form presets n and d are fixed; passing 0 accepts the
// default.  Throws std::invalid_argument for unknown names or mismatched
// n/d.
BodyState make_preset(const std::string& name, int n = 0, int d = 0,
                      unsigned seed = 1);

// Angular rate of the rigid presets (used to compute periods in tests).
double preset_angular_rate(const std::string& name);

}  // namespace unhinge
