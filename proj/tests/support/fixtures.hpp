#ifndef HRS_TESTS_FIXTURES_HPP
#define HRS_TESTS_FIXTURES_HPP

#include "hrs/core.hpp"

namespace fixtures {

// Three agents, two hospitals, no stable matching.
inline hrs::Instance no_stable() {
    return hrs::parse_instance(R"(hrs v1
agents:
a a1 1 : h2 h1
a a2 1 : h1 h2
a a3 2 : h2
hospitals:
h h1 1 : a1 a2
h h2 2 : a2 a3 a1
)");
}

// Algorithm output has size 3 while the best occupancy-stable matching has 7.
inline hrs::Instance ratio_gap() {
    return hrs::parse_instance(R"(hrs v1
agents:
a a1 3 : h1 h2
a a2 2 : h1
a a3 2 : h1
hospitals:
h h1 4 : a2 a3 a1
h h2 3 : a1
)");
}

// Sizes 1 1 2 3 3 with hospital lists
//   h1: a2 a1 a4   h2: a1 a2 a3   h3: a5 a4
inline hrs::Instance master_list() {
    return hrs::parse_instance(R"(hrs v1
agents:
a a1 1 : h2 h1
a a2 1 : h1 h2
a a3 2 : h2
a a4 3 : h3 h1
a a5 3 : h3
hospitals:
h h1 3 : a2 a1 a4
h h2 2 : a1 a2 a3
h h3 4 : a5 a4
)");
}

}  // namespace fixtures

#endif
