// Small value types shared by every module: coordinate index sets, lattice
// points and weight vectors.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixsing {

/// Subset of {0, ..., n-1}; bit i stands for the coordinate z_{i+1}.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr IndexSet full(int n) { return IndexSet(n >= 32 ? ~0u : ((1u << n) - 1u)); }
    static IndexSet of(std::initializer_list<int> members) {
        IndexSet s;
        for (int i : members) s.insert(i);
        return s;
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool is_subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
    void insert(int i) { bits_ |= (1u << i); }
    void erase(int i) { bits_ &= ~(1u << i); }

    constexpr IndexSet operator&(IndexSet o) const { return IndexSet(bits_ & o.bits_); }
    constexpr IndexSet operator|(IndexSet o) const { return IndexSet(bits_ | o.bits_); }
    IndexSet complement(int n) const { return IndexSet(full(n).bits_ & ~bits_); }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }
    /// 1-based rendering, e.g. "{1,2}".
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int i : members()) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
        return s + "}";
    }

    constexpr auto operator<=>(const IndexSet&) const = default;

private:
    std::uint32_t bits_ = 0;
};

using LatticePoint = std::vector<int>;

/// w ∈ ℕⁿ \ {0}.
class WeightVector {
public:
    explicit WeightVector(std::vector<long long> w) : w_(std::move(w)) {
        bool positive = false;
        for (long long x : w_) {
            if (x < 0) throw std::invalid_argument("weight entries must be non-negative");
            positive = positive || x > 0;
        }
        if (!positive) throw std::invalid_argument("weight vector must have a positive entry");
    }

    int dim() const { return static_cast<int>(w_.size()); }
    long long operator[](int i) const { return w_[i]; }
    const std::vector<long long>& values() const { return w_; }

    /// {i : w_i = 0}
    IndexSet zero_set() const {
        IndexSet s;
        for (int i = 0; i < dim(); ++i)
            if (w_[i] == 0) s.insert(i);
        return s;
    }
    bool all_positive() const { return zero_set().empty(); }

    /// l_w(ξ) = Σ w_i ξ_i
    long long apply(const LatticePoint& p) const {
        long long s = 0;
        for (int i = 0; i < dim(); ++i) s += w_[i] * p[i];
        return s;
    }

    bool operator==(const WeightVector&) const = default;

private:
    std::vector<long long> w_;
};

}  // namespace mixsing
