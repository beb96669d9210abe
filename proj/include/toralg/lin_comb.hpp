#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toralg/rational.hpp"

namespace toralg {

/// Formal linear combination over an ordered key type. Zero coefficients are
/// never stored, so two combinations are equal iff their maps are equal.
template <class Key>
class LinComb {
public:
    using Map = std::map<Key, Rational>;

    LinComb() = default;
    LinComb(const Key& k, Rational c = 1) { add(k, std::move(c)); }

    void add(const Key& k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const LinComb& o, const Rational& scale = 1) {
        if (scale.is_zero()) return;
        for (const auto& [k, c] : o.terms_) add(k, scale.is_one() ? c : c * scale);
    }

    Rational coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    LinComb& operator+=(const LinComb& o) {
        add(o);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        add(o, Rational(-1));
        return *this;
    }
    LinComb& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) c *= s;
        }
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
    friend LinComb operator*(LinComb a, const Rational& s) { return a *= s; }
    LinComb operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

private:
    Map terms_;
};

/// Sparse vector over 64-bit basis ids, kept sorted by id with no zero entries.
class SparseVec {
public:
    using Entry = std::pair<std::uint64_t, Rational>;

    SparseVec() = default;
    explicit SparseVec(std::uint64_t id, Rational c = 1) {
        if (!c.is_zero()) entries_.emplace_back(id, std::move(c));
    }

    bool is_zero() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Rational coeff(std::uint64_t id) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const Entry& e, std::uint64_t k) { return e.first < k; });
        return (it != entries_.end() && it->first == id) ? it->second : Rational(0);
    }

    /// this += scale * other (sorted merge)
    void add_scaled(const SparseVec& other, const Rational& scale) {
        if (scale.is_zero() || other.is_zero()) return;
        if (entries_.empty()) {
            entries_ = other.entries_;
            if (!scale.is_one())
                for (auto& e : entries_) e.second *= scale;
            return;
        }
        std::vector<Entry> out;
        out.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                out.push_back(std::move(*a++));
            } else if (a == entries_.end() || b->first < a->first) {
                out.emplace_back(b->first, scale.is_one() ? b->second : b->second * scale);
                ++b;
            } else {
                Rational c = std::move(a->second);
                c.add_mul(b->second, scale);
                if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
                ++a;
                ++b;
            }
        }
        entries_ = std::move(out);
    }

    void scale(const Rational& s) {
        if (s.is_zero()) {
            entries_.clear();
            return;
        }
        if (s.is_one()) return;
        for (auto& e : entries_) e.second *= s;
    }

    SparseVec& operator+=(const SparseVec& o) {
        add_scaled(o, Rational(1));
        return *this;
    }
    SparseVec& operator-=(const SparseVec& o) {
        add_scaled(o, Rational(-1));
        return *this;
    }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

    /// Builds from unsorted entries, merging duplicates and dropping zeros.
    static SparseVec from_unsorted(std::vector<Entry> raw);

private:
    std::vector<Entry> entries_;
};

/// Hash-map accumulator for building a SparseVec from many scattered contributions.
class SparseAccumulator {
public:
    void add(std::uint64_t id, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = acc_.try_emplace(id, c);
        if (!inserted) it->second += c;
    }
    void add(const SparseVec& v, const Rational& scale = 1) {
        if (scale.is_zero()) return;
        for (const auto& [id, c] : v) {
            auto [it, inserted] = acc_.try_emplace(id, scale.is_one() ? c : c * scale);
            if (!inserted) it->second.add_mul(c, scale);
        }
    }
    SparseVec take();

private:
    std::unordered_map<std::uint64_t, Rational> acc_;
};

inline SparseVec SparseVec::from_unsorted(std::vector<Entry> raw) {
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec v;
    for (auto& e : raw) {
        if (!v.entries_.empty() && v.entries_.back().first == e.first) {
            v.entries_.back().second += e.second;
            if (v.entries_.back().second.is_zero()) v.entries_.pop_back();
        } else if (!e.second.is_zero()) {
            v.entries_.push_back(std::move(e));
        }
    }
    return v;
}

inline SparseVec SparseAccumulator::take() {
    std::vector<SparseVec::Entry> raw;
    raw.reserve(acc_.size());
    for (auto& [id, c] : acc_)
        if (!c.is_zero()) raw.emplace_back(id, std::move(c));
    acc_.clear();
    return SparseVec::from_unsorted(std::move(raw));
}

}  // namespace toralg
