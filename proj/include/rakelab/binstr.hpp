#pragma once

// Finite binary strings with the length-lexicographic enumeration used
// everywhere in this project as "the" computable bijection with the naturals.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rakelab {

/// A finite string over {0,1}, stored as a length plus a packed bit word.
///
/// The enumeration index (length-lexicographic, 0 before 1) is a bijection
/// with the naturals:
///
///     index(<>) = 0, index(0) = 1, index(1) = 2, index(00) = 3, ...
///
/// All "least string" searches in the project use this order.
class BinStr {
   public:
    static constexpr unsigned kMaxLen = 62;

    constexpr BinStr() noexcept = default;

    /// Builds a string from ASCII, e.g. BinStr("0110"); "" is the empty string.
    explicit BinStr(std::string_view word) {
        for (char ch : word) {
            if (ch != '0' && ch != '1') {
                throw std::invalid_argument("BinStr: word must be over {0,1}");
            }
            push_back(ch == '1');
        }
    }

    [[nodiscard]] unsigned length() const noexcept { return len_; }
    [[nodiscard]] bool empty() const noexcept { return len_ == 0; }

    /// Bit at position i (0-based from the root end).
    [[nodiscard]] bool bit(unsigned i) const {
        if (i >= len_) throw std::out_of_range("BinStr::bit");
        return ((bits_ >> i) & 1U) != 0;
    }

    void push_back(bool b) {
        if (len_ >= kMaxLen) throw std::length_error("BinStr: too long");
        if (b) bits_ |= (std::uint64_t{1} << len_);
        ++len_;
    }

    [[nodiscard]] BinStr extended(bool b) const {
        BinStr r = *this;
        r.push_back(b);
        return r;
    }

    /// Concatenation.
    [[nodiscard]] BinStr operator+(const BinStr& tail) const {
        BinStr r = *this;
        for (unsigned i = 0; i < tail.len_; ++i) r.push_back(tail.bit(i));
        return r;
    }

    /// 0^s and 1^s.
    [[nodiscard]] static BinStr zeros(unsigned s) {
        BinStr r;
        for (unsigned i = 0; i < s; ++i) r.push_back(false);
        return r;
    }
    [[nodiscard]] static BinStr ones(unsigned s) {
        BinStr r;
        for (unsigned i = 0; i < s; ++i) r.push_back(true);
        return r;
    }

    /// Reflexive prefix relation.
    [[nodiscard]] bool prefix_of(const BinStr& other) const noexcept {
        if (len_ > other.len_) return false;
        const std::uint64_t mask = (len_ == 0) ? 0 : (~std::uint64_t{0} >> (64 - len_));
        return (bits_ & mask) == (other.bits_ & mask);
    }
    [[nodiscard]] bool proper_prefix_of(const BinStr& other) const noexcept {
        return len_ < other.len_ && prefix_of(other);
    }
    [[nodiscard]] bool comparable_with(const BinStr& other) const noexcept {
        return prefix_of(other) || other.prefix_of(*this);
    }
    [[nodiscard]] bool incomparable_with(const BinStr& other) const noexcept {
        return !comparable_with(other);
    }

    [[nodiscard]] BinStr prefix(unsigned n) const {
        if (n > len_) throw std::out_of_range("BinStr::prefix");
        BinStr r;
        r.len_ = n;
        r.bits_ = (n == 0) ? 0 : (bits_ & (~std::uint64_t{0} >> (64 - n)));
        return r;
    }

    /// Length-lexicographic enumeration index: index(s) = 2^|s| - 1 + value(s),
    /// reading s as a binary numeral with the first bit most significant.
    [[nodiscard]] std::uint64_t index() const noexcept {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < len_; ++i) v = (v << 1) | (bit(i) ? 1U : 0U);
        return ((std::uint64_t{1} << len_) - 1) + v;
    }

    [[nodiscard]] static BinStr from_index(std::uint64_t n) {
        unsigned len = 0;
        while (n >= (std::uint64_t{1} << (len + 1)) - 1) ++len;
        std::uint64_t v = n - ((std::uint64_t{1} << len) - 1);
        BinStr r;
        for (unsigned i = 0; i < len; ++i) {
            r.push_back(((v >> (len - 1 - i)) & 1U) != 0);
        }
        return r;
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        s.reserve(len_);
        for (unsigned i = 0; i < len_; ++i) s.push_back(bit(i) ? '1' : '0');
        return s;
    }

    friend bool operator==(const BinStr& a, const BinStr& b) noexcept {
        return a.len_ == b.len_ && a.normalized_bits() == b.normalized_bits();
    }
    friend bool operator!=(const BinStr& a, const BinStr& b) noexcept { return !(a == b); }

    /// Length-lex order; shorter strings first, then 0 before 1.
    friend bool operator<(const BinStr& a, const BinStr& b) noexcept {
        if (a.len_ != b.len_) return a.len_ < b.len_;
        for (unsigned i = 0; i < a.len_; ++i) {
            if (a.bit(i) != b.bit(i)) return !a.bit(i);
        }
        return false;
    }
    friend bool operator<=(const BinStr& a, const BinStr& b) noexcept { return a == b || a < b; }

   private:
    [[nodiscard]] std::uint64_t normalized_bits() const noexcept {
        return (len_ == 0) ? 0 : (bits_ & (~std::uint64_t{0} >> (64 - len_)));
    }

    std::uint64_t bits_ = 0;
    unsigned len_ = 0;
};

/// All strings of length exactly n, in length-lex (= lex) order.
std::vector<BinStr> all_strings_of_length(unsigned n);

/// All strings of length <= n, in length-lex order.
std::vector<BinStr> all_strings_up_to(unsigned n);

}  // namespace rakelab
