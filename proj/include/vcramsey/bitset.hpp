#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace vcramsey {

/// Fixed-length bit vector backed by 64-bit words. Bits past size() are kept zero
/// so that word-level popcounts and comparisons need no masking.
class BitRow {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitRow() = default;
    explicit BitRow(std::size_t nbits) : nbits_(nbits), words_(word_count(nbits), 0) {}

    static std::size_t word_count(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

    static BitRow full(std::size_t nbits)
    {
        BitRow r(nbits);
        for (auto& w : r.words_) w = ~Word{0};
        r.trim();
        return r;
    }

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }

    bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const
    {
        for (Word w : words_)
            if (w != 0) return false;
        return true;
    }
    bool any() const { return !none(); }

    /// Number of positions where the two rows differ.
    std::size_t hamming_distance(const BitRow& other) const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
        return c;
    }

    /// popcount(this & other) without materializing the intersection.
    std::size_t and_count(const BitRow& other) const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    bool intersects(const BitRow& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const BitRow& other) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    BitRow& operator&=(const BitRow& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    BitRow& operator|=(const BitRow& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitRow& operator^=(const BitRow& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    /// this &= ~o
    BitRow& subtract(const BitRow& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
    friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }
    friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }

    /// Index of the first set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const
    {
        if (from >= nbits_) return nbits_;
        std::size_t wi = from / kWordBits;
        Word w = words_[wi] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size()) return nbits_;
            w = words_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w != 0) {
                fn(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    friend bool operator==(const BitRow&, const BitRow&) = default;
    friend auto operator<=>(const BitRow& a, const BitRow& b)
    {
        if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
        return a.words_ <=> b.words_;
    }

private:
    void trim()
    {
        if (nbits_ % kWordBits != 0 && !words_.empty())
            words_.back() &= (Word{1} << (nbits_ % kWordBits)) - 1;
    }

    std::size_t nbits_ = 0;
    std::vector<Word> words_;
};

}  // namespace vcramsey
