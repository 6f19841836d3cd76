#include "mzsim/permanent.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace mzsim {

Complex permanent(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw NonSquareError("permanent: matrix is not square");
    }
    const int n = static_cast<int>(m.rows());
    if (n > 16) {
        throw MatrixTooLargeError("permanent: dimension above 16");
    }
    if (n == 0) {
        return Complex(1, 0);
    }

    // Ryser: perm(A) = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} a_ij.
    // Row sums are maintained incrementally as the Gray code flips one column
    // in or out per step.
    std::vector<Complex> row_sum(n, Complex(0, 0));
    Complex total(0, 0);
    uint32_t gray = 0;
    int popcount = 0;
    const uint32_t end = uint32_t(1) << n;
    for (uint32_t k = 1; k < end; k++) {
        uint32_t next_gray = k ^ (k >> 1);
        uint32_t changed = gray ^ next_gray;
        int j = std::countr_zero(changed);
        if (next_gray & changed) {
            for (int i = 0; i < n; i++) {
                row_sum[i] += m(i, j);
            }
            popcount++;
        } else {
            for (int i = 0; i < n; i++) {
                row_sum[i] -= m(i, j);
            }
            popcount--;
        }
        gray = next_gray;
        Complex prod(1, 0);
        for (int i = 0; i < n; i++) {
            prod *= row_sum[i];
        }
        total += (popcount % 2 == 0) ? -prod : prod;
    }
    if (n % 2 == 0) {
        total = -total;
    }
    return total;
}

}  // namespace mzsim
