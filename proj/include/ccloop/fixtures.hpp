#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ccloop/loop_table.hpp"

namespace ccloop::fixtures {

// The power-associative WIP CC-loop of order 16 and the power-associative
// CC-loop of order 27 with exponent 3, as shipped in data/.
std::string_view t16_text();
std::string_view t27_text();
const LoopTable& t16();
const LoopTable& t27();

LoopTable cyclic(int n);
// Z_{n1} x Z_{n2} x ..., first factor most significant.
LoopTable abelian(std::initializer_list<int> factors);
// Dihedral group of order 2m: rotations 0..m-1, reflections m..2m-1.
LoopTable dihedral(int m);
LoopTable quaternion();
LoopTable symmetric(int k);
// Octonion units {+-e_0..+-e_7} under Cayley-Dickson multiplication; an
// extra loop (Moufang and CC) of order 16. Label i is +e_i, 8+i is -e_i.
LoopTable octonion_loop();
// Order-5 loop that is not CC.
LoopTable non_cc_order5();

// Random group built as a random direct/semidirect product of small groups,
// then randomly relabeled with 0 kept as the identity.
LoopTable random_group(std::mt19937_64& rng, int max_order = 24);
LoopTable random_relabel(const LoopTable& q, std::mt19937_64& rng);

}  // namespace ccloop::fixtures
