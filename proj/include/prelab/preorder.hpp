#pragma once

#include <algorithm>
#include <optional>
#include <utility>

#include "prelab/common.hpp"

namespace prelab {

/// A finite preorder: carrier {0..n-1} with a reflexive transitive relation
/// derr, stored as one row mask per element (bit y of rel[x] = derr(x,y)).
///
/// Element labels are presentation-only; all algebra runs on dense indices.
class Preorder {
public:
    Preorder() = default;

    /// Wraps an existing relation; throws InvalidInput unless it is
    /// reflexive and transitive.
    Preorder(int n, std::vector<Row> rel, std::vector<std::string> names = {})
        : n_(n), rel_(std::move(rel)), names_(std::move(names)) {
        if (n < 0 || n > kMaxElements) throw InvalidInput("preorder: bad element count");
        if (static_cast<int>(rel_.size()) != n) throw InvalidInput("preorder: row count mismatch");
        Row full = full_mask(n);
        for (int x = 0; x < n; ++x) {
            if (rel_[x] & ~full) throw InvalidInput("preorder: relation bit out of range");
            if (!has(rel_[x], x)) throw InvalidInput("preorder: not reflexive");
        }
        for (int x = 0; x < n; ++x) {
            Row acc = rel_[x];
            for (int y = 0; y < n; ++y)
                if (has(rel_[x], y)) acc |= rel_[y];
            if (acc != rel_[x]) throw InvalidInput("preorder: not transitive");
        }
        if (!names_.empty() && static_cast<int>(names_.size()) != n)
            throw InvalidInput("preorder: name count mismatch");
    }

    /// Smallest preorder containing the generator pairs (reflexive
    /// transitive closure, saturated to fixpoint).
    static Preorder close(int n, const std::vector<std::pair<int, int>>& gens,
                          std::vector<std::string> names = {}) {
        if (n < 0 || n > kMaxElements) throw InvalidInput("preorder: bad element count");
        if (!names.empty() && static_cast<int>(names.size()) != n)
            throw InvalidInput("preorder: name count mismatch");
        std::vector<Row> rel(n);
        for (int x = 0; x < n; ++x) rel[x] = bit(x);
        for (auto [a, b] : gens) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw InvalidInput("preorder: generator index out of range");
            rel[a] |= bit(b);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < n; ++x) {
                Row acc = rel[x];
                for (int y = 0; y < n; ++y)
                    if (has(rel[x], y)) acc |= rel[y];
                if (acc != rel[x]) { rel[x] = acc; changed = true; }
            }
        }
        Preorder p;
        p.n_ = n;
        p.rel_ = std::move(rel);
        p.names_ = std::move(names);
        return p;
    }

    static Preorder discrete(int n) { return close(n, {}); }

    /// 0 ⊢ 1 ⊢ ... ⊢ n-1.
    static Preorder chain(int n) {
        std::vector<std::pair<int, int>> gens;
        for (int i = 0; i + 1 < n; ++i) gens.push_back({i, i + 1});
        return close(n, gens);
    }

    int size() const { return n_; }
    bool derr(int x, int y) const { return has(rel_[x], y); }
    Row row(int x) const { return rel_[x]; }
    const std::vector<Row>& rows() const { return rel_; }
    const std::vector<std::string>& names() const { return names_; }

    bool equiv(int x, int y) const { return derr(x, y) && derr(y, x); }

    /// Structural equality; labels are ignored.
    friend bool operator==(const Preorder& a, const Preorder& b) {
        return a.n_ == b.n_ && a.rel_ == b.rel_;
    }
    friend bool operator!=(const Preorder& a, const Preorder& b) { return !(a == b); }

    bool symmetric() const {
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y)
                if (derr(x, y) != derr(y, x)) return false;
        return true;
    }

    bool antisymmetric() const {
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y)
                if (x != y && derr(x, y) && derr(y, x)) return false;
        return true;
    }

    std::string label(int x) const {
        if (!names_.empty()) return names_[x];
        return "e" + std::to_string(x);
    }

private:
    int n_ = 0;
    std::vector<Row> rel_;
    std::vector<std::string> names_;
};

/// Transpose: derr_op(x,y) iff derr(y,x).
inline Preorder opposite(const Preorder& p) {
    int n = p.size();
    std::vector<Row> rel(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (p.derr(y, x)) rel[x] |= bit(y);
    return Preorder(n, std::move(rel), p.names());
}

/// Quotient by the preorder equivalence (symmetric part): returns the poset
/// of classes and the class index of each element. Class indices follow the
/// least member of each class, in order of least members.
struct Quotient {
    Preorder poset;
    std::vector<int> cls;  // element -> class index
};

inline Quotient quotient(const Preorder& p) {
    int n = p.size();
    std::vector<int> cls(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        cls[x] = static_cast<int>(reps.size());
        for (int y = x + 1; y < n; ++y)
            if (cls[y] < 0 && p.equiv(x, y)) cls[y] = cls[x];
        reps.push_back(x);
    }
    int m = static_cast<int>(reps.size());
    std::vector<Row> rel(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (p.derr(reps[i], reps[j])) rel[i] |= bit(j);
    return Quotient{Preorder(m, std::move(rel)), std::move(cls)};
}

/// Disjoint union; P's elements keep their indices, Q's are shifted by P.size().
inline Preorder sum(const Preorder& p, const Preorder& q) {
    int n = p.size(), m = q.size();
    if (n + m > kMaxElements) throw InvalidInput("sum: carrier too large");
    std::vector<Row> rel(n + m, 0);
    for (int x = 0; x < n; ++x) rel[x] = p.row(x);
    for (int x = 0; x < m; ++x) rel[n + x] = q.row(x) << n;
    return Preorder(n + m, std::move(rel));
}

/// Index of the pair (x,y) in product(P,Q): row-major x*Q.size()+y.
inline int pair_index(int x, int y, int qsize) { return x * qsize + y; }

/// Componentwise product preorder on pairs.
inline Preorder product(const Preorder& p, const Preorder& q) {
    int n = p.size(), m = q.size();
    if (n * m > kMaxElements) throw InvalidInput("product: carrier too large");
    std::vector<Row> rel(static_cast<std::size_t>(n) * m, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < m; ++y) {
            Row r = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < m; ++b)
                    if (p.derr(x, a) && q.derr(y, b)) r |= bit(pair_index(a, b, m));
            rel[pair_index(x, y, m)] = r;
        }
    return Preorder(n * m, std::move(rel));
}

inline Preorder singleton_preorder() { return Preorder::discrete(1); }

enum class Side { Lower, Upper };

/// A derr-closed subset of a carrier. Lower sets are closed under
/// derr-successors, upper sets under derr-predecessors.
/// The carrier is passed to operations; the set stores only the side,
/// member mask and expected carrier size.
class ClosedSet {
public:
    ClosedSet() = default;

    static ClosedSet lower(const Preorder& p, Row members) {
        return make(p, Side::Lower, members);
    }
    static ClosedSet upper(const Preorder& p, Row members) {
        return make(p, Side::Upper, members);
    }
    /// Wraps a mask without checking the closure law (for composites whose
    /// side-validity is itself under test).
    static ClosedSet unchecked(Side s, int size, Row members) {
        ClosedSet c;
        c.side_ = s;
        c.size_ = size;
        c.members_ = members;
        return c;
    }

    Side side() const { return side_; }
    Row members() const { return members_; }
    int carrier_size() const { return size_; }
    bool contains(int x) const { return has(members_, x); }
    bool empty() const { return members_ == 0; }
    int count() const { return popcount(members_); }

    bool closed_in(const Preorder& p) const {
        if (p.size() != size_) return false;
        for (int x = 0; x < size_; ++x) {
            if (!contains(x)) continue;
            for (int y = 0; y < size_; ++y) {
                bool reach = side_ == Side::Lower ? p.derr(x, y) : p.derr(y, x);
                if (reach && !contains(y)) return false;
            }
        }
        return true;
    }

    friend bool operator==(const ClosedSet& a, const ClosedSet& b) {
        return a.side_ == b.side_ && a.size_ == b.size_ && a.members_ == b.members_;
    }

private:
    static ClosedSet make(const Preorder& p, Side s, Row members) {
        if (members & ~full_mask(p.size())) throw InvalidInput("closed set: member out of range");
        ClosedSet c = unchecked(s, p.size(), members);
        if (!c.closed_in(p))
            throw InvalidInput(s == Side::Lower ? "set is not lower-closed"
                                                : "set is not upper-closed");
        return c;
    }

    Side side_ = Side::Lower;
    int size_ = 0;
    Row members_ = 0;
};

/// Principal sets: Lower gives ↓x = {y | derr(x,y)},
/// Upper gives ↑x = {y | derr(y,x)}.
inline ClosedSet principal(const Preorder& p, int x, Side side) {
    if (x < 0 || x >= p.size()) throw InvalidInput("principal: element out of range");
    if (side == Side::Lower) return ClosedSet::lower(p, p.row(x));
    Row m = 0;
    for (int y = 0; y < p.size(); ++y)
        if (p.derr(y, x)) m |= bit(y);
    return ClosedSet::upper(p, m);
}

inline constexpr int kCompletionLimit = 20;

/// All closed sets of one side, by increasing mask. 2^size enumeration,
/// guarded.
inline std::vector<ClosedSet> completion(const Preorder& p, Side side,
                                         int limit = kCompletionLimit) {
    if (p.size() > limit)
        throw LimitExceeded("completion: carrier size " + std::to_string(p.size()) +
                            " exceeds limit " + std::to_string(limit));
    std::vector<ClosedSet> out;
    Row full = full_mask(p.size());
    for (Row m = 0;; ++m) {
        bool ok = true;
        for (int x = 0; x < p.size() && ok; ++x) {
            if (!has(m, x)) continue;
            Row need = side == Side::Lower ? p.row(x) : 0;
            if (side == Side::Upper) {
                for (int u = 0; u < p.size(); ++u)
                    if (p.derr(u, x)) need |= bit(u);
            }
            if ((m & need) != need) ok = false;
        }
        if (ok) out.push_back(ClosedSet::unchecked(side, p.size(), m));
        if (m == full) break;
    }
    return out;
}

inline constexpr int kEnumeratePreordersLimit = 4;

/// Every labeled preorder on n elements, exactly once, in increasing order
/// of the off-diagonal bit pattern.
inline std::vector<Preorder> enumerate_preorders(int n, int limit = kEnumeratePreordersLimit) {
    if (n > limit)
        throw LimitExceeded("enumerate_preorders: n " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit));
    if (n < 0) throw InvalidInput("enumerate_preorders: negative n");
    std::vector<std::pair<int, int>> offdiag;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) offdiag.push_back({i, j});
    std::vector<Preorder> out;
    Row top = full_mask(static_cast<int>(offdiag.size()));
    for (Row m = 0;; ++m) {
        std::vector<Row> rel(n);
        for (int i = 0; i < n; ++i) rel[i] = bit(i);
        for (std::size_t b = 0; b < offdiag.size(); ++b)
            if (has(m, static_cast<int>(b))) rel[offdiag[b].first] |= bit(offdiag[b].second);
        bool transitive = true;
        for (int x = 0; x < n && transitive; ++x) {
            Row acc = rel[x];
            for (int y = 0; y < n; ++y)
                if (has(rel[x], y)) acc |= rel[y];
            transitive = acc == rel[x];
        }
        if (transitive) out.emplace_back(n, std::move(rel));
        if (m == top || offdiag.empty()) break;
    }
    return out;
}

}  // namespace prelab
