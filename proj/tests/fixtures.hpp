#ifndef TORIC_TESTS_FIXTURES_HPP
#define TORIC_TESTS_FIXTURES_HPP

#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace fixtures {

inline toric::Fan p1() { return toric::build_fan(1, {{1}, {-1}}, {{0}, {1}}); }

inline toric::Fan p2() {
    return toric::build_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
}

inline toric::Fan p1xp1() {
    return toric::build_fan(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                            {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
}

inline toric::Fan hirzebruch1() {
    return toric::build_fan(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}},
                            {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline toric::Fan a1() { return toric::build_fan(1, {{1}}, {{0}}); }

inline toric::Fan a2() { return toric::build_fan(2, {{1, 0}, {0, 1}}, {{0, 1}}); }

inline toric::ToricDivisor div(std::vector<long long> c) { return {std::move(c)}; }

}  // namespace fixtures

#endif
