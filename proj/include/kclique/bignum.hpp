#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kclique/errors.hpp"

namespace kclique {

// Unsigned arbitrary-precision integer over base-1e9 limbs, little-endian.
// Just enough arithmetic for combinatorial counts: add, multiply by a small
// factor, compare, and decimal/scientific rendering.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {  // NOLINT: implicit by design
        while (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
            v /= kBase;
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator+=(const BigUint& other) {
        const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
        limbs_.resize(n, 0);
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t s = static_cast<std::uint64_t>(limbs_[i]) + carry;
            if (i < other.limbs_.size()) s += other.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(s % kBase);
            carry = static_cast<std::uint32_t>(s / kBase);
        }
        if (carry) limbs_.push_back(carry);
        return *this;
    }

    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

    // factor < 2^32 keeps limb products inside 64 bits.
    BigUint& mul_small(std::uint32_t factor) {
        if (factor == 0) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (std::uint32_t& limb : limbs_) {
            const std::uint64_t p = static_cast<std::uint64_t>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(p % kBase);
            carry = p / kBase;
        }
        while (carry) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
        return *this;
    }

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }

    friend bool operator<(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
        return false;
    }

    friend bool operator<=(const BigUint& a, const BigUint& b) { return a < b || a == b; }

    double to_double() const {
        double v = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
        return v;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string out = std::to_string(limbs_.back());
        for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs_[i]);
            out += std::string(9 - part.size(), '0') + part;
        }
        return out;
    }

    // "7.57409e+25" style with `sig` significant digits, rounded half-up.
    std::string to_scientific(int sig) const {
        const std::string digits = to_string();
        if (digits == "0") return "0";
        const int exp10 = static_cast<int>(digits.size()) - 1;
        std::string mant = digits.substr(0, static_cast<std::size_t>(sig) + 1);
        while (static_cast<int>(mant.size()) < sig + 1) mant += '0';
        // round the sig-digit prefix using the next digit
        const bool round_up = mant.back() >= '5';
        mant.pop_back();
        int exponent = exp10;
        if (round_up) {
            int i = static_cast<int>(mant.size()) - 1;
            while (i >= 0) {
                if (mant[static_cast<std::size_t>(i)] == '9') {
                    mant[static_cast<std::size_t>(i)] = '0';
                    --i;
                } else {
                    ++mant[static_cast<std::size_t>(i)];
                    break;
                }
            }
            if (i < 0) {  // carried past the leading digit
                mant = "1" + std::string(static_cast<std::size_t>(sig - 1), '0');
                ++exponent;
            }
        }
        std::string out;
        out += mant[0];
        if (sig > 1) out += "." + mant.substr(1);
        out += "e+" + exp_str(exponent);
        return out;
    }

private:
    static constexpr std::uint64_t kBase = 1000000000ULL;

    static std::string exp_str(int e) {
        std::string s = std::to_string(e);
        return s.size() < 2 ? "0" + s : s;
    }

    std::vector<std::uint32_t> limbs_;
};

}  // namespace kclique
