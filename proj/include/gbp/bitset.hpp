#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gbp {

// fixed-capacity bitset sized at runtime; all binary ops assume equal capacity
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void clear() {
        for (auto& x : w_) x = 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::size_t count_and(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }
    bool is_subset_of(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& subtract(const Bitset& o) { // set minus
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    void reset_below(std::size_t k) { // clear bits < k
        std::size_t full = std::min(k / 64, w_.size());
        for (std::size_t i = 0; i < full; ++i) w_[i] = 0;
        if (full < w_.size() && (k & 63)) w_[full] &= ~((std::uint64_t{1} << (k & 63)) - 1);
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool operator==(const Bitset& o) const = default;

    int find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    // visit set bits in ascending order
    template <class F>
    void for_each(F f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t x = w_[i];
            while (x) {
                f(int(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

  private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace gbp
