/**
 * @file imatrix.hpp
 * @brief Dense square matrices of arbitrary-precision integers (cocycle matrices).
 */
#pragma once

#include <vector>

#include "ietmix/rational.hpp"

namespace ietmix {

class IMatrix {
  public:
    IMatrix() = default;
    explicit IMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, Int(0)) {}

    static IMatrix identity(int n) {
        IMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int size() const { return n_; }
    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    IMatrix operator*(const IMatrix& o) const {
        IMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const Int& aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        std::vector<Rat> r(n_, Rat(0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (at(i, j) != 0) r[i] += Rat(at(i, j)) * v[j];
        return r;
    }

    std::vector<Int> column_sums() const {
        std::vector<Int> s(n_, Int(0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s[j] += at(i, j);
        return s;
    }

    bool strictly_positive() const {
        for (const Int& v : a_)
            if (v <= 0) return false;
        return true;
    }

    Int max_entry() const {
        Int m = a_.empty() ? Int(0) : a_[0];
        for (const Int& v : a_)
            if (v > m) m = v;
        return m;
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    Int det() const;

    bool operator==(const IMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  private:
    int n_ = 0;
    std::vector<Int> a_;
};

}  // namespace ietmix
