#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace eubo {

// Shuffled-epoch minibatch index stream: every epoch visits each of the N
// training indices exactly once, in a fresh random order; the last batch of
// an epoch may be short. Single-owner, sequential.
class MinibatchSampler {
public:
    MinibatchSampler(int n, int batch_size, std::uint64_t seed);

    // Indices of the next batch (size batch_size, or the epoch remainder).
    std::vector<int> next_batch();

    bool at_epoch_start() const { return pos_ == 0; }
    int batches_per_epoch() const;
    int n() const { return n_; }
    int batch_size() const { return batch_size_; }

private:
    int n_;
    int batch_size_;
    std::vector<int> order_;
    std::size_t pos_ = 0;
    std::mt19937_64 rng_;
};

} // namespace eubo
