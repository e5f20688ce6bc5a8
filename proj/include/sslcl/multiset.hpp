#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sslcl/types.hpp"

namespace sslcl {

/// Multiplicity vector over the alphabet {1, ..., q}, q <= kMaxAlphabet.
class Multiset {
public:
    static constexpr int kMaxAlphabet = 64;

    Multiset() = default;
    explicit Multiset(int alphabet_size);
    Multiset(int alphabet_size, const std::vector<Value>& elements);

    int alphabet_size() const { return q_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    int count(Value v) const;
    bool contains(Value v) const { return count(v) > 0; }

    /// Adds one copy of v. The undecided value is ignored.
    void add(Value v);
    void remove(Value v);

    bool subset_of(const Multiset& other) const;

    /// Elementwise maximum (lattice join).
    Multiset join(const Multiset& other) const;
    /// Elementwise minimum (lattice meet).
    Multiset meet(const Multiset& other) const;
    /// Elementwise sum.
    Multiset sum(const Multiset& other) const;

    /// Multiplicities of 1..q.
    std::vector<int> counts() const;
    std::vector<Value> elements() const;
    std::string to_string() const;

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::array<std::uint8_t, kMaxAlphabet> counts_{};
    int q_ = 0;
    int size_ = 0;
};

}  // namespace sslcl
