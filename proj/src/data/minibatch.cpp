#include "eubo/data/minibatch.hpp"

#include <algorithm>
#include <numeric>

#include "eubo/errors.hpp"

namespace eubo {

MinibatchSampler::MinibatchSampler(int n, int batch_size, std::uint64_t seed)
    : n_(n), batch_size_(std::min(batch_size, n)), rng_(seed) {
    if (n < 1 || batch_size < 1) {
        throw ConfigError("MinibatchSampler: need n >= 1 and batch_size >= 1");
    }
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
}

int MinibatchSampler::batches_per_epoch() const {
    return (n_ + batch_size_ - 1) / batch_size_;
}

std::vector<int> MinibatchSampler::next_batch() {
    if (pos_ == 0) {
        std::shuffle(order_.begin(), order_.end(), rng_);
    }
    const std::size_t end = std::min(pos_ + static_cast<std::size_t>(batch_size_),
                                     order_.size());
    std::vector<int> batch(order_.begin() + static_cast<std::ptrdiff_t>(pos_),
                           order_.begin() + static_cast<std::ptrdiff_t>(end));
    pos_ = end == order_.size() ? 0 : end;
    return batch;
}

} // namespace eubo
