#pragma once

#include "mzsim/unitary.hpp"

namespace mzsim {

// Matrix permanent by Ryser's inclusion-exclusion formula with Gray-code
// subset traversal, O(2^n n).  Accepts n up to 16; the 0x0 permanent is 1.
Complex permanent(const Matrix &m);

}  // namespace mzsim
