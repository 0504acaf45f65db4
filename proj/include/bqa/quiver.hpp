#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bqa/scalar.hpp"

namespace bqa {

struct QuiverError : Error {
    using Error::Error;
};

struct Arrow {
    int id = -1;
    std::string name;
    int src = 0;
    int tgt = 0;
};

/// Finite directed multigraph with vertices 1..n. Arrow ids are declaration
/// order; that order fixes every canonical path ordering downstream.
class Quiver {
public:
    explicit Quiver(int vertex_count) : n_(vertex_count) {
        if (vertex_count < 1) throw QuiverError("quiver needs at least one vertex");
    }

    int add_arrow(const std::string& name, int src, int tgt) {
        if (src < 1 || src > n_ || tgt < 1 || tgt > n_)
            throw QuiverError("arrow endpoints out of range: " + name);
        if (by_name_.count(name)) throw QuiverError("duplicate arrow name: " + name);
        int id = static_cast<int>(arrows_.size());
        arrows_.push_back(Arrow{id, name, src, tgt});
        by_name_[name] = id;
        return id;
    }

    int vertex_count() const { return n_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int id) const { return arrows_.at(static_cast<std::size_t>(id)); }

    /// Arrow id for a name, or -1 when absent.
    int arrow_id(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? -1 : it->second;
    }

    bool operator==(const Quiver& o) const {
        if (n_ != o.n_ || arrows_.size() != o.arrows_.size()) return false;
        for (std::size_t k = 0; k < arrows_.size(); ++k) {
            const Arrow &a = arrows_[k], &b = o.arrows_[k];
            if (a.name != b.name || a.src != b.src || a.tgt != b.tgt) return false;
        }
        return true;
    }

private:
    int n_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> by_name_;
};

/// Composable arrow sequence read left to right; length 0 is the trivial
/// path at its base vertex.
class Path {
public:
    Path() = default;

    static Path trivial(int vertex) {
        Path p;
        p.src_ = p.tgt_ = vertex;
        return p;
    }

    static Path of(const Quiver& q, const std::vector<int>& arrow_ids) {
        if (arrow_ids.empty()) throw QuiverError("empty arrow list needs a base vertex; use trivial()");
        Path p;
        p.ids_ = arrow_ids;
        p.src_ = q.arrow(arrow_ids.front()).src;
        int at = p.src_;
        for (int id : arrow_ids) {
            const Arrow& a = q.arrow(id);
            if (a.src != at)
                throw QuiverError("non-composable arrows in path at " + a.name);
            at = a.tgt;
        }
        p.tgt_ = at;
        return p;
    }

    int source() const { return src_; }
    int target() const { return tgt_; }
    std::size_t length() const { return ids_.size(); }
    const std::vector<int>& arrow_ids() const { return ids_; }
    bool is_trivial() const { return ids_.empty(); }
    bool is_cycle() const { return src_ == tgt_; }

    /// Length-lex order: by length, then source, then arrow ids.
    std::strong_ordering operator<=>(const Path& o) const {
        if (auto c = ids_.size() <=> o.ids_.size(); c != 0) return c;
        if (auto c = src_ <=> o.src_; c != 0) return c;
        return std::lexicographical_compare_three_way(ids_.begin(), ids_.end(), o.ids_.begin(),
                                                      o.ids_.end());
    }
    bool operator==(const Path& o) const {
        return src_ == o.src_ && tgt_ == o.tgt_ && ids_ == o.ids_;
    }

    std::string str(const Quiver& q) const {
        if (is_trivial()) return "e" + std::to_string(src_);
        std::string out;
        for (std::size_t k = 0; k < ids_.size(); ++k) {
            if (k) out += "*";
            out += q.arrow(ids_[k]).name;
        }
        return out;
    }

    /// Concatenation without endpoint re-validation; caller guarantees
    /// target(a) == source(b).
    static Path concat_unchecked(const Path& a, const Path& b) {
        Path p;
        p.src_ = a.src_;
        p.tgt_ = b.tgt_;
        p.ids_.reserve(a.ids_.size() + b.ids_.size());
        p.ids_ = a.ids_;
        p.ids_.insert(p.ids_.end(), b.ids_.begin(), b.ids_.end());
        return p;
    }

private:
    int src_ = 0;
    int tgt_ = 0;
    std::vector<int> ids_;
};

struct PathHash {
    std::size_t operator()(const Path& p) const {
        std::size_t h = std::hash<int>{}(p.source());
        for (int id : p.arrow_ids()) h = h * 1000003u + static_cast<std::size_t>(id) + 1;
        return h;
    }
};

/// p then q; requires target(p) == source(q).
inline Path compose(const Path& p, const Path& q) {
    if (p.target() != q.source())
        throw QuiverError("non-composable paths: target " + std::to_string(p.target()) +
                          " vs source " + std::to_string(q.source()));
    return Path::concat_unchecked(p, q);
}

namespace detail {
inline void extend_paths(const Quiver& q, const Path& base, int max_len,
                         const std::function<void(const Path&)>& emit) {
    emit(base);
    if (static_cast<int>(base.length()) >= max_len) return;
    for (const Arrow& a : q.arrows()) {
        if (a.src != base.target()) continue;
        extend_paths(q, Path::concat_unchecked(base, Path::of(q, {a.id})), max_len, emit);
    }
}
}  // namespace detail

/// All paths starting at i of length <= max_len, any target, in
/// length-lexicographic order by arrow id.
inline std::vector<Path> enumerate_from(const Quiver& q, int i, int max_len) {
    std::vector<Path> out;
    detail::extend_paths(q, Path::trivial(i), max_len, [&](const Path& p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
}

/// All paths i -> j of length <= max_len in length-lex order.
inline std::vector<Path> enumerate_paths(const Quiver& q, int i, int j, int max_len) {
    std::vector<Path> out;
    detail::extend_paths(q, Path::trivial(i), max_len, [&](const Path& p) {
        if (p.target() == j) out.push_back(p);
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// All cycles i -> i of exactly the given length.
inline std::vector<Path> cycles_at(const Quiver& q, int i, int len) {
    if (len < 1) throw QuiverError("cycle length must be at least 1");
    std::vector<Path> out;
    for (const Path& p : enumerate_paths(q, i, i, len))
        if (static_cast<int>(p.length()) == len) out.push_back(p);
    return out;
}

/// Repeated concatenation of a cycle; power 0 is the trivial path.
inline Path cycle_power(const Path& c, int k) {
    if (!c.is_cycle()) throw QuiverError("cycle_power needs a cycle");
    Path acc = Path::trivial(c.source());
    for (int t = 0; t < k; ++t) acc = Path::concat_unchecked(acc, c);
    return acc;
}

}  // namespace bqa
