#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace mcpc {

// Dense rank-3 array, row-major over (i, j, k). Used for the per-link
// quantities indexed as value[bs][cell][user].
class Tensor3 {
  public:
    Tensor3() = default;
    Tensor3(int d0, int d1, int d2, double fill = 0.0)
        : d0_(d0), d1_(d1), d2_(d2),
          data_(static_cast<std::size_t>(d0) * d1 * d2, fill) {
        assert(d0 >= 0 && d1 >= 0 && d2 >= 0);
    }

    double& operator()(int i, int j, int k) {
        assert(in_range(i, j, k));
        return data_[index(i, j, k)];
    }
    double operator()(int i, int j, int k) const {
        assert(in_range(i, j, k));
        return data_[index(i, j, k)];
    }

    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    std::size_t size() const { return data_.size(); }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Tensor3& o) const {
        return d0_ == o.d0_ && d1_ == o.d1_ && d2_ == o.d2_;
    }

  private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * d1_ + j) * d2_ + k;
    }
    bool in_range(int i, int j, int k) const {
        return i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_;
    }

    int d0_ = 0, d1_ = 0, d2_ = 0;
    std::vector<double> data_;
};

// Large-scale fading gains, beta(l, l', k) = linear power gain between BS l
// and user k of cell l'.
struct FadingTensor {
    Tensor3 beta;
};

// MMSE channel-estimate variances, gamma(l, l', k); zero for cells outside
// the pilot-sharing set of BS l.
struct ChannelStats {
    Tensor3 gamma;
};

}  // namespace mcpc
