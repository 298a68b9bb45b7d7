/**
 * @file permutation.hpp
 * @brief Finite permutations on {0, ..., d-1} with the combinatorial queries
 *        needed by interval exchanges.
 *
 * In the JSON exchange format permutations are 1-based (the classical
 * notation); internally everything is 0-based.
 */
#pragma once

#include <stdexcept>
#include <vector>

namespace ietmix {

class Permutation {
  public:
    Permutation() = default;

    /// img[i] = image position of domain position i (0-based).  Throws
    /// std::invalid_argument unless img is a bijection of {0..d-1}.
    explicit Permutation(std::vector<int> img) : img_(std::move(img)) {
        const int d = static_cast<int>(img_.size());
        if (d == 0) throw std::invalid_argument("Permutation: empty");
        std::vector<char> seen(d, 0);
        for (int v : img_) {
            if (v < 0 || v >= d || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
            seen[v] = 1;
        }
        inv_.assign(d, 0);
        for (int i = 0; i < d; ++i) inv_[img_[i]] = i;
    }

    static Permutation identity(int d) {
        std::vector<int> v(d);
        for (int i = 0; i < d; ++i) v[i] = i;
        return Permutation(std::move(v));
    }

    /// Build from 1-based images, e.g. {3,2,1}.
    static Permutation from_one_based(const std::vector<int>& img1) {
        std::vector<int> v(img1.size());
        for (size_t i = 0; i < img1.size(); ++i) v[i] = img1[i] - 1;
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int apply(int i) const { return img_[i]; }
    int inverse_apply(int i) const { return inv_[i]; }

    Permutation inverse() const { return Permutation(inv_); }

    /// Irreducible: no 0 < k < d with img({0..k-1}) = {0..k-1}.
    bool is_irreducible() const {
        int hi = -1;
        for (int i = 0; i + 1 < size(); ++i) {
            if (img_[i] > hi) hi = img_[i];
            if (hi == i) return false;
        }
        return true;
    }

    std::vector<int> to_one_based() const {
        std::vector<int> v(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) v[i] = img_[i] + 1;
        return v;
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }

  private:
    std::vector<int> img_;
    std::vector<int> inv_;
};

}  // namespace ietmix
