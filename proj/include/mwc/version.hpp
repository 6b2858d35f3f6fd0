#pragma once

namespace mwc {

inline constexpr const char *kVersion = "0.1.0";

// Global sign of the field term in the commutation relations,
// [Op^A(xi_1), Op^A(xi_2)] = kCommutatorSigma * i * B_12(Q).
// Fixed once by the matrix commutator oracle (see tests) and reported in
// every JSON sidecar.
inline constexpr int kCommutatorSigma = +1;

} // namespace mwc
