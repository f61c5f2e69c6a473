// Copyright (c) 2026 mobscore contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "mobscore/errors.hpp"

namespace mobscore {

/// A subset S of the feature universe {0, ..., d-1}, encoded as a bitmask.
/// Bit i set <=> feature i is present (kept). The empty set has bits 0 and
/// the full set has all d low bits set. Dense tables are indexed by bits().
class FeatureSet {
public:
    using mask_type = std::uint32_t;

    // Dense tables hold 2^d doubles, so the dimension is hard-capped.
    static constexpr int kMaxWidth = 26;
    // Allocations above this require an explicit opt-in at the entry points.
    static constexpr int kSoftMaxWidth = 20;

    constexpr FeatureSet() = default;

    static FeatureSet empty_set(int width) { return FeatureSet(0, checked_width(width)); }

    static FeatureSet full_set(int width) {
        const int w = checked_width(width);
        return FeatureSet(w == 0 ? 0u : (mask_type{1} << w) - 1u, w);
    }

    static FeatureSet from_mask(mask_type bits, int width) {
        const int w = checked_width(width);
        if (w < 32 && (bits >> w) != 0) {
            throw ValidationError("feature set has a bit at position >= width " + std::to_string(w));
        }
        return FeatureSet(bits, w);
    }

    static FeatureSet singleton(int feature, int width) {
        check_feature(feature, width);
        return FeatureSet(mask_type{1} << feature, checked_width(width));
    }

    static FeatureSet from_indices(std::span<const int> indices, int width) {
        FeatureSet s = empty_set(width);
        for (int i : indices) {
            check_feature(i, width);
            const mask_type bit = mask_type{1} << i;
            if (s.bits_ & bit) {
                throw ValidationError("duplicate feature index " + std::to_string(i));
            }
            s.bits_ |= bit;
        }
        return s;
    }

    constexpr mask_type bits() const noexcept { return bits_; }
    constexpr int width() const noexcept { return width_; }
    int cardinality() const noexcept { return std::popcount(bits_); }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept { return *this == full_set(width_); }

    bool contains(int feature) const noexcept {
        return feature >= 0 && feature < width_ && (bits_ >> feature & 1u) != 0;
    }

    constexpr bool is_subset_of(const FeatureSet& other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }

    constexpr bool intersects(const FeatureSet& other) const noexcept {
        return (bits_ & other.bits_) != 0;
    }

    FeatureSet with(int feature) const {
        check_feature(feature, width_);
        return FeatureSet(bits_ | (mask_type{1} << feature), width_);
    }

    FeatureSet without(int feature) const {
        check_feature(feature, width_);
        return FeatureSet(bits_ & ~(mask_type{1} << feature), width_);
    }

    FeatureSet complement() const { return FeatureSet(full_set(width_).bits_ & ~bits_, width_); }

    FeatureSet operator|(const FeatureSet& o) const { return FeatureSet(bits_ | o.bits_, width_); }
    FeatureSet operator&(const FeatureSet& o) const { return FeatureSet(bits_ & o.bits_, width_); }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(cardinality()));
        for (mask_type m = bits_; m != 0; m &= m - 1) {
            out.push_back(std::countr_zero(m));
        }
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i : indices()) {
            if (!first) out += ",";
            out += std::to_string(i);
            first = false;
        }
        return out + "}";
    }

    friend constexpr bool operator==(const FeatureSet&, const FeatureSet&) = default;

private:
    constexpr FeatureSet(mask_type bits, int width)
        : bits_(bits), width_(static_cast<std::uint8_t>(width)) {}

    static int checked_width(int width) {
        if (width < 0 || width > kMaxWidth) {
            throw ValidationError("feature count must be in [0, " + std::to_string(kMaxWidth) +
                                  "], got " + std::to_string(width));
        }
        return width;
    }

    static void check_feature(int feature, int width) {
        if (feature < 0 || feature >= width) {
            throw ValidationError("feature index " + std::to_string(feature) +
                                  " out of range for width " + std::to_string(width));
        }
    }

    mask_type bits_ = 0;
    std::uint8_t width_ = 0;
};

/// Enforces the hard dimension cap plus the default soft cap on dense-table
/// allocations; callers pass allow_large=true to go past the soft cap.
inline void check_table_dimension(int d, bool allow_large = false) {
    if (d < 0 || d > FeatureSet::kMaxWidth) {
        throw ValidationError("feature count must be in [0, " +
                              std::to_string(FeatureSet::kMaxWidth) + "], got " + std::to_string(d));
    }
    if (!allow_large && d > FeatureSet::kSoftMaxWidth) {
        throw ValidationError("feature count " + std::to_string(d) + " exceeds the default cap of " +
                              std::to_string(FeatureSet::kSoftMaxWidth) +
                              " (2^d table entries); pass the large-dimension override to proceed");
    }
}

/// Ascending-bitmask enumeration of all T subseteq S.
class SubsetRange {
public:
    explicit SubsetRange(FeatureSet s) : set_(s) {}

    class iterator {
    public:
        using value_type = FeatureSet;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() : set_(), current_(0), done_(true) {}
        explicit iterator(FeatureSet s) : set_(s), current_(0), done_(false) {}

        FeatureSet operator*() const { return unchecked(current_, set_.width()); }

        iterator& operator++() {
            current_ = (current_ - set_.bits()) & set_.bits();
            if (current_ == 0) done_ = true;
            return *this;
        }
        iterator operator++(int) { iterator tmp = *this; ++*this; return tmp; }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_);
        }

    private:
        FeatureSet set_;
        FeatureSet::mask_type current_;
        bool done_;
    };

    iterator begin() const { return iterator(set_); }
    iterator end() const { return iterator(); }

private:
    friend class iterator;
    static FeatureSet unchecked(FeatureSet::mask_type bits, int width) {
        return FeatureSet::from_mask(bits, width);
    }
    FeatureSet set_;
};

/// Ascending-bitmask enumeration of all T with S subseteq T subseteq D,
/// where D is the full set of the given width.
class SupersetRange {
public:
    SupersetRange(FeatureSet s, int width) : set_(FeatureSet::from_mask(s.bits(), width)), width_(width) {}

    class iterator {
    public:
        using value_type = FeatureSet;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() : done_(true) {}
        iterator(FeatureSet s, int width)
            : base_(s), full_(FeatureSet::full_set(width).bits()), current_(s.bits()), done_(false) {}

        FeatureSet operator*() const { return FeatureSet::from_mask(current_, base_.width()); }

        iterator& operator++() {
            if (current_ >= full_) {
                done_ = true;
            } else {
                current_ = (current_ + 1) | base_.bits();
                if (current_ > full_) done_ = true;
            }
            return *this;
        }
        iterator operator++(int) { iterator tmp = *this; ++*this; return tmp; }

        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_);
        }

    private:
        FeatureSet base_;
        FeatureSet::mask_type full_ = 0;
        FeatureSet::mask_type current_ = 0;
        bool done_ = true;
    };

    iterator begin() const { return iterator(set_, width_); }
    iterator end() const { return iterator(); }

private:
    FeatureSet set_;
    int width_;
};

inline SubsetRange subsets(FeatureSet s) { return SubsetRange(s); }

inline SupersetRange supersets(FeatureSet s, int width) { return SupersetRange(s, width); }
inline SupersetRange supersets(FeatureSet s) { return SupersetRange(s, s.width()); }

/// All 2^d subsets in ascending-bitmask order.
std::vector<FeatureSet> all_subsets(int d);

/// All 2^d subsets ordered by (cardinality, bitmask) — the canonical output
/// and reporting order.
std::vector<FeatureSet> canonical_subsets(int d);

/// Canonical comparison: ascending cardinality, then ascending bitmask.
inline bool canonical_less(const FeatureSet& a, const FeatureSet& b) {
    const int ca = a.cardinality(), cb = b.cardinality();
    if (ca != cb) return ca < cb;
    return a.bits() < b.bits();
}

} // namespace mobscore

template <>
struct std::hash<mobscore::FeatureSet> {
    std::size_t operator()(const mobscore::FeatureSet& s) const noexcept {
        return std::hash<std::uint64_t>{}(
            (static_cast<std::uint64_t>(s.width()) << 32) | s.bits());
    }
};
