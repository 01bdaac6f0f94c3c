#pragma once

#include <cstdint>
#include <vector>

namespace rubikroute {

/// splitmix64 generator. Chosen over std::mt19937 + distributions because
/// its output is identical across standard library implementations, which
/// keeps generated instances byte-stable everywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    /// k distinct indices from [0, n), in selection order.
    std::vector<int> sample(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k; ++i) {
            int j = static_cast<int>(below(n - i)) + i;
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    uint64_t state_;
};

}  // namespace rubikroute
