#include "ietmix/imatrix.hpp"

#include <utility>

namespace ietmix {

Int IMatrix::det() const {
    if (n_ == 0) return 1;
    std::vector<Int> m = a_;
    auto e = [&](int i, int j) -> Int& { return m[static_cast<size_t>(i) * n_ + j]; };

    Int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n_; ++k) {
        if (e(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n_; ++i)
                if (e(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = k; j < n_; ++j) std::swap(e(k, j), e(p, j));
            sign = -sign;
        }
        // Bareiss update: all divisions are exact.
        for (int i = k + 1; i < n_; ++i)
            for (int j = k + 1; j < n_; ++j)
                e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
        prev = e(k, k);
    }
    return sign * e(n_ - 1, n_ - 1);
}

}  // namespace ietmix
