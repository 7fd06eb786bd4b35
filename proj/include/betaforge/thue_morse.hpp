#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

namespace betaforge {

/// Cached Thue-Morse bits: lambda_0 = 0, lambda_{2i} = lambda_i,
/// lambda_{2i+1} = 1 - lambda_i. Thread-safe; concurrent reads agree.
class ThueMorseGenerator {
public:
    int bit(size_t i) const;

private:
    mutable std::vector<uint8_t> cache_ = {0};
    mutable std::mutex mu_;
};

} // namespace betaforge
