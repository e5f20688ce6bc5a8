#include "sslcl/multiset.hpp"

#include <algorithm>
#include <stdexcept>

namespace sslcl {

Multiset::Multiset(int alphabet_size) : q_(alphabet_size) {
    if (alphabet_size < 0 || alphabet_size > kMaxAlphabet) throw std::out_of_range("alphabet too large");
}

std::vector<int> Multiset::counts() const { return std::vector<int>(counts_.begin(), counts_.begin() + q_); }

Multiset::Multiset(int alphabet_size, const std::vector<Value>& elements) : Multiset(alphabet_size) {
    for (Value v : elements) add(v);
}

int Multiset::count(Value v) const {
    if (v < 1 || v > alphabet_size()) return 0;
    return counts_[static_cast<std::size_t>(v - 1)];
}

void Multiset::add(Value v) {
    if (v == kBottom) return;
    if (v < 1 || v > alphabet_size()) throw std::out_of_range("value outside alphabet");
    if (counts_[static_cast<std::size_t>(v - 1)] == 255) throw std::out_of_range("multiplicity overflow");
    ++counts_[static_cast<std::size_t>(v - 1)];
    ++size_;
}

void Multiset::remove(Value v) {
    if (count(v) == 0) throw std::out_of_range("value not in multiset");
    --counts_[static_cast<std::size_t>(v - 1)];
    --size_;
}

bool Multiset::subset_of(const Multiset& other) const {
    for (int v = 1; v <= alphabet_size(); ++v) {
        if (count(v) > other.count(v)) return false;
    }
    return true;
}

Multiset Multiset::join(const Multiset& other) const {
    Multiset out(std::max(alphabet_size(), other.alphabet_size()));
    for (int v = 1; v <= out.alphabet_size(); ++v) {
        const int c = std::max(count(v), other.count(v));
        out.counts_[static_cast<std::size_t>(v - 1)] = static_cast<std::uint8_t>(c);
        out.size_ += c;
    }
    return out;
}

Multiset Multiset::meet(const Multiset& other) const {
    Multiset out(std::max(alphabet_size(), other.alphabet_size()));
    for (int v = 1; v <= out.alphabet_size(); ++v) {
        const int c = std::min(count(v), other.count(v));
        out.counts_[static_cast<std::size_t>(v - 1)] = static_cast<std::uint8_t>(c);
        out.size_ += c;
    }
    return out;
}

Multiset Multiset::sum(const Multiset& other) const {
    Multiset out(std::max(alphabet_size(), other.alphabet_size()));
    for (int v = 1; v <= out.alphabet_size(); ++v) {
        const int c = count(v) + other.count(v);
        out.counts_[static_cast<std::size_t>(v - 1)] = static_cast<std::uint8_t>(c);
        out.size_ += c;
    }
    return out;
}

std::vector<Value> Multiset::elements() const {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (int v = 1; v <= alphabet_size(); ++v) {
        for (int i = 0; i < count(v); ++i) out.push_back(v);
    }
    return out;
}

std::string Multiset::to_string() const {
    std::string s = "{";
    bool first = true;
    for (Value v : elements()) {
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    }
    return s + "}";
}

}  // namespace sslcl
