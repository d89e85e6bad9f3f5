// SPDX-License-Identifier: MIT
// Local index of a two-qubit gate on (q0, q1) is 2*bit(q0) + bit(q1).
#pragma once

#include <array>
#include <complex>

#include "djw/circuit.hpp"

namespace djw {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

Mat2 matrix_1q(const Gate &g);
Mat4 matrix_2q(const Gate &g);

}  // namespace djw
