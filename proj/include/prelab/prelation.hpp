#pragma once

#include <functional>
#include <optional>

#include "prelab/preorder.hpp"

namespace prelab {

/// A prelation Φ : A ↘ B, a relation that is upper-closed in the domain
/// and lower-closed in the codomain:
///   derr_A(x,x') ∧ Φ(x',y') ∧ derr_B(y',y)  ⇒  Φ(x,y).
/// Stored as one codomain mask per domain element.
class Prelation {
public:
    Prelation() = default;

    Prelation(Preorder dom, Preorder cod, std::vector<Row> mat)
        : dom_(std::move(dom)), cod_(std::move(cod)), mat_(std::move(mat)) {
        if (static_cast<int>(mat_.size()) != dom_.size())
            throw InvalidInput("prelation: row count mismatch");
        for (Row r : mat_)
            if (r & ~full_mask(cod_.size())) throw InvalidInput("prelation: bit out of range");
        if (!closed()) throw InvalidInput("prelation: closure law violated");
    }

    /// Smallest prelation containing the generator pairs.
    static Prelation close(const Preorder& dom, const Preorder& cod,
                           const std::vector<std::pair<int, int>>& gens) {
        std::vector<Row> mat(dom.size(), 0);
        for (auto [x, y] : gens) {
            if (x < 0 || x >= dom.size() || y < 0 || y >= cod.size())
                throw InvalidInput("prelation: generator index out of range");
            mat[x] |= bit(y);
        }
        saturate(dom, cod, mat);
        return unchecked(dom, cod, std::move(mat));
    }

    static Prelation empty(const Preorder& dom, const Preorder& cod) {
        return unchecked(dom, cod, std::vector<Row>(dom.size(), 0));
    }

    static Prelation full(const Preorder& dom, const Preorder& cod) {
        return unchecked(dom, cod, std::vector<Row>(dom.size(), full_mask(cod.size())));
    }

    const Preorder& dom() const { return dom_; }
    const Preorder& cod() const { return cod_; }
    bool at(int x, int y) const { return has(mat_[x], y); }
    Row image(int x) const { return mat_[x]; }
    const std::vector<Row>& matrix() const { return mat_; }

    int entry_count() const {
        int c = 0;
        for (Row r : mat_) c += popcount(r);
        return c;
    }

    bool subset_of(const Prelation& other) const {
        for (int x = 0; x < dom_.size(); ++x)
            if (mat_[x] & ~other.mat_[x]) return false;
        return true;
    }

    friend bool operator==(const Prelation& a, const Prelation& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.mat_ == b.mat_;
    }
    friend bool operator!=(const Prelation& a, const Prelation& b) { return !(a == b); }

    /// Fixpoint saturation under the closure law.
    static void saturate(const Preorder& dom, const Preorder& cod, std::vector<Row>& mat) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int xp = 0; xp < dom.size(); ++xp) {
                if (!mat[xp]) continue;
                Row ext = 0;
                for (int yp = 0; yp < cod.size(); ++yp)
                    if (has(mat[xp], yp)) ext |= cod.row(yp);
                for (int x = 0; x < dom.size(); ++x) {
                    if (!dom.derr(x, xp)) continue;
                    if ((mat[x] | ext) != mat[x]) { mat[x] |= ext; changed = true; }
                }
            }
        }
    }

    /// Wraps rows that are already closed (used by composites that preserve
    /// the law by construction).
    static Prelation unchecked(Preorder dom, Preorder cod, std::vector<Row> mat) {
        Prelation r;
        r.dom_ = std::move(dom);
        r.cod_ = std::move(cod);
        r.mat_ = std::move(mat);
        return r;
    }

private:
    bool closed() const {
        for (int x = 0; x < dom_.size(); ++x)
            for (int xp = 0; xp < dom_.size(); ++xp) {
                if (!dom_.derr(x, xp)) continue;
                Row ext = 0;
                for (int yp = 0; yp < cod_.size(); ++yp)
                    if (has(mat_[xp], yp)) ext |= cod_.row(yp);
                if (ext & ~mat_[x]) return false;
            }
        return true;
    }

    Preorder dom_, cod_;
    std::vector<Row> mat_;
};

/// derr itself as the identity prelation on P.
inline Prelation identity_prelation(const Preorder& p) {
    return Prelation::unchecked(p, p, p.rows());
}

/// Closed sets are literally prelations to/from the unit carrier:
/// a lower set is 𝟙 ↘ A, an upper set is A ↘ 𝟙.
inline Prelation as_prelation(const ClosedSet& s, const Preorder& p) {
    if (s.carrier_size() != p.size()) throw InvalidInput("closed set: carrier mismatch");
    if (s.side() == Side::Lower)
        return Prelation(singleton_preorder(), p, {s.members()});
    std::vector<Row> mat(p.size(), 0);
    for (int x = 0; x < p.size(); ++x)
        if (s.contains(x)) mat[x] = Row{1};
    return Prelation(p, singleton_preorder(), std::move(mat));
}

inline ClosedSet closed_set_of(const Prelation& f) {
    if (f.dom().size() == 1 && f.dom() == singleton_preorder())
        return ClosedSet::lower(f.cod(), f.image(0));
    if (f.cod().size() == 1 && f.cod() == singleton_preorder()) {
        Row m = 0;
        for (int x = 0; x < f.dom().size(); ++x)
            if (f.at(x, 0)) m |= bit(x);
        return ClosedSet::upper(f.dom(), m);
    }
    throw InvalidInput("closed_set_of: prelation is not to/from the unit carrier");
}

/// Relational composite: (Φ;Ψ)(x,z) iff ∃y. Φ(x,y) ∧ Ψ(y,z).
inline Prelation compose(const Prelation& f, const Prelation& g) {
    if (f.cod() != g.dom()) throw InvalidInput("compose: type mismatch");
    std::vector<Row> mat(f.dom().size(), 0);
    for (int x = 0; x < f.dom().size(); ++x)
        for (int y = 0; y < f.cod().size(); ++y)
            if (f.at(x, y)) mat[x] |= g.image(y);
    return Prelation::unchecked(f.dom(), g.cod(), std::move(mat));
}

/// Componentwise tensor on product preorders.
inline Prelation tensor(const Prelation& f, const Prelation& g) {
    Preorder dom = product(f.dom(), g.dom());
    Preorder cod = product(f.cod(), g.cod());
    int gm = g.dom().size(), gcm = g.cod().size();
    std::vector<Row> mat(dom.size(), 0);
    for (int x = 0; x < f.dom().size(); ++x)
        for (int y = 0; y < gm; ++y) {
            Row r = 0;
            for (int a = 0; a < f.cod().size(); ++a)
                for (int b = 0; b < gcm; ++b)
                    if (f.at(x, a) && g.at(y, b)) r |= bit(pair_index(a, b, gcm));
            mat[pair_index(x, y, gm)] = r;
        }
    return Prelation::unchecked(std::move(dom), std::move(cod), std::move(mat));
}

/// Transpose between opposite preorders: Φ° : B° ↘ A°.
inline Prelation op_dual(const Prelation& f) {
    std::vector<Row> mat(f.cod().size(), 0);
    for (int x = 0; x < f.dom().size(); ++x)
        for (int y = 0; y < f.cod().size(); ++y)
            if (f.at(x, y)) mat[y] |= bit(x);
    return Prelation::unchecked(opposite(f.cod()), opposite(f.dom()), std::move(mat));
}

/// Joint-bounds dual Φ‡ : B ↘ A,
///   Φ‡(y,x) iff ∀u,v. Φ(u,v) ⇒ derr_B(y,v) ∧ derr_A(u,x).
/// Satisfies Φ ⊆ Φ‡‡ and Φ‡ = Φ‡‡‡; on closed sets over 𝟙 it is the
/// upper/lower-bound operator.
inline Prelation ddag(const Prelation& f) {
    const Preorder& A = f.dom();
    const Preorder& B = f.cod();
    Row ymask = full_mask(B.size());
    Row xmask = full_mask(A.size());
    for (int u = 0; u < A.size(); ++u)
        for (int v = 0; v < B.size(); ++v) {
            if (!f.at(u, v)) continue;
            Row ys = 0, xs = 0;
            for (int y = 0; y < B.size(); ++y)
                if (B.derr(y, v)) ys |= bit(y);
            xs = A.row(u);
            ymask &= ys;
            xmask &= xs;
        }
    std::vector<Row> mat(B.size(), 0);
    for (int y = 0; y < B.size(); ++y)
        if (has(ymask, y)) mat[y] = xmask;
    return Prelation::unchecked(B, A, std::move(mat));
}

/// Adjoint dual Φ* : B ↘ A, the imagewise bound operator: y is related to x
/// when Φ's image at x is nonempty and y is below all of it, then closed as
/// a prelation. For a map this is exactly derr(y, Φ(x)); for a monoid's ∇
/// it is the comonoid Δ.
inline Prelation adjoint_dual(const Prelation& f) {
    const Preorder& A = f.dom();
    const Preorder& B = f.cod();
    std::vector<Row> mat(B.size(), 0);
    for (int x = 0; x < A.size(); ++x) {
        Row img = f.image(x);
        if (!img) continue;
        for (int y = 0; y < B.size(); ++y) {
            bool below = true;
            for (int v = 0; v < B.size() && below; ++v)
                if (has(img, v) && !B.derr(y, v)) below = false;
            if (below) mat[y] |= bit(x);
        }
    }
    Prelation::saturate(B, A, mat);
    return Prelation::unchecked(B, A, std::move(mat));
}

/// Map analysis: totality, single-valuedness (every nonempty image is a
/// principal lower set) and, for maps, the representing function.
struct MapVerdict {
    bool total = false;
    bool single_valued = false;
    std::optional<std::vector<int>> representative;

    bool is_map() const { return total && single_valued; }
};

inline MapVerdict is_map(const Prelation& f) {
    const Preorder& B = f.cod();
    MapVerdict v;
    v.total = true;
    v.single_valued = true;
    std::vector<int> rep(f.dom().size(), -1);
    for (int x = 0; x < f.dom().size(); ++x) {
        Row img = f.image(x);
        if (!img) { v.total = false; continue; }
        for (int y0 = 0; y0 < B.size(); ++y0) {
            if (has(img, y0) && B.row(y0) == img) { rep[x] = y0; break; }
        }
        if (rep[x] < 0) v.single_valued = false;
    }
    if (v.total && v.single_valued) v.representative = std::move(rep);
    return v;
}

/// δ, !, ϱ = δ‡, ¡ = !‡ for a carrier, instantiated per the displayed
/// formulas (the duals are pinned directly; see is_map for δ and !).
struct DiagonalStructure {
    Prelation delta;   // A ↘ A×A : δ(x,(y,z)) iff derr(x,y) ∧ derr(x,z)
    Prelation bang;    // A ↘ 𝟙   : always
    Prelation rho;     // A×A ↘ A : ϱ((x,y),z) iff derr(x,z) ∧ derr(y,z)
    Prelation ibang;   // 𝟙 ↘ A   : ¡(∅,x) iff ∀u. derr(u,x)
};

inline DiagonalStructure diagonal_structure(const Preorder& p) {
    int n = p.size();
    Preorder pp = product(p, p);
    Preorder one = singleton_preorder();

    std::vector<Row> dmat(n, 0);
    std::vector<Row> rmat(pp.size(), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (p.derr(x, y) && p.derr(x, z)) dmat[x] |= bit(pair_index(y, z, n));
                if (p.derr(x, z) && p.derr(y, z)) rmat[pair_index(x, y, n)] |= bit(z);
            }
    std::vector<Row> bmat(n, Row{1});
    Row everyone_below = 0;
    for (int x = 0; x < n; ++x) {
        bool all = true;
        for (int u = 0; u < n && all; ++u)
            if (!p.derr(u, x)) all = false;
        if (all) everyone_below |= bit(x);
    }
    return DiagonalStructure{
        Prelation::unchecked(p, pp, std::move(dmat)),
        Prelation::unchecked(p, one, std::move(bmat)),
        Prelation::unchecked(pp, p, std::move(rmat)),
        Prelation::unchecked(one, p, {everyone_below}),
    };
}

/// The four extension operators of a prelation over the completions,
/// Φ_* : Up A → Do B, Φ^* : Do B → Up A, Φ_# : Up B → Do A, Φ^# : Do A → Up B,
/// each an intersection of pointwise images; the lower/upper pairs form
/// Galois connections.
struct GaloisExtensions {
    std::function<ClosedSet(const ClosedSet&)> lower_star;   // Φ_*
    std::function<ClosedSet(const ClosedSet&)> upper_star;   // Φ^*
    std::function<ClosedSet(const ClosedSet&)> lower_sharp;  // Φ_#
    std::function<ClosedSet(const ClosedSet&)> upper_sharp;  // Φ^#
};

inline GaloisExtensions galois_extensions(const Prelation& f) {
    const Preorder A = f.dom();
    const Preorder B = f.cod();
    Prelation dag = ddag(f);
    GaloisExtensions g;
    g.lower_star = [f, A, B](const ClosedSet& v) {
        if (v.side() != Side::Upper || v.carrier_size() != A.size())
            throw InvalidInput("lower_star expects an upper set of the domain");
        Row acc = full_mask(B.size());
        for (int a = 0; a < A.size(); ++a)
            if (v.contains(a)) acc &= f.image(a);
        return ClosedSet::unchecked(Side::Lower, B.size(), acc);
    };
    g.upper_star = [f, A, B](const ClosedSet& l) {
        if (l.side() != Side::Lower || l.carrier_size() != B.size())
            throw InvalidInput("upper_star expects a lower set of the codomain");
        Row acc = full_mask(A.size());
        for (int x = 0; x < A.size(); ++x)
            for (int b = 0; b < B.size(); ++b)
                if (l.contains(b) && !f.at(x, b)) { acc &= ~bit(x); break; }
        return ClosedSet::unchecked(Side::Upper, A.size(), acc);
    };
    g.lower_sharp = [dag, A, B](const ClosedSet& w) {
        if (w.side() != Side::Upper || w.carrier_size() != B.size())
            throw InvalidInput("lower_sharp expects an upper set of the codomain");
        Row acc = full_mask(A.size());
        for (int b = 0; b < B.size(); ++b)
            if (w.contains(b)) acc &= dag.image(b);
        return ClosedSet::unchecked(Side::Lower, A.size(), acc);
    };
    g.upper_sharp = [dag, A, B](const ClosedSet& k) {
        if (k.side() != Side::Lower || k.carrier_size() != A.size())
            throw InvalidInput("upper_sharp expects a lower set of the domain");
        Row acc = full_mask(B.size());
        for (int y = 0; y < B.size(); ++y)
            for (int a = 0; a < A.size(); ++a)
                if (k.contains(a) && !dag.at(y, a)) { acc &= ~bit(y); break; }
        return ClosedSet::unchecked(Side::Upper, B.size(), acc);
    };
    return g;
}

/// Compact unit and counit: η : 𝟙 ↘ P°×P and ε : P×P° ↘ 𝟙, both carried by
/// derr(x,y) read on the appropriate product.
struct CompactCups {
    Prelation eta;
    Prelation eps;
};

inline CompactCups compact_cups(const Preorder& p) {
    int n = p.size();
    Preorder one = singleton_preorder();
    Preorder po = opposite(p);
    Preorder unit_cod = product(po, p);
    Preorder counit_dom = product(p, po);
    Row eta_row = 0;
    std::vector<Row> eps_mat(counit_dom.size(), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (p.derr(x, y)) {
                eta_row |= bit(pair_index(x, y, n));
                eps_mat[pair_index(x, y, n)] = Row{1};
            }
        }
    return CompactCups{Prelation::unchecked(one, unit_cod, {eta_row}),
                       Prelation::unchecked(counit_dom, one, std::move(eps_mat))};
}

/// Left snake: P ≅ P×𝟙 → P×(P°×P) ≅ (P×P°)×P → 𝟙×P ≅ P. Equals identity.
inline Prelation snake_left(const Preorder& p) {
    int n = p.size();
    CompactCups c = compact_cups(p);
    std::vector<Row> mat(n, 0);
    // composite(x,y) = ∃a,b,cc: derr(x,a) ∧ η(b,cc) ∧ ε(a,b) ∧ derr(cc,y)
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < n; ++a) {
            if (!p.derr(x, a)) continue;
            for (int b = 0; b < n; ++b) {
                if (!c.eps.at(pair_index(a, b, n), 0)) continue;
                for (int cc = 0; cc < n; ++cc)
                    if (c.eta.at(0, pair_index(b, cc, n))) mat[x] |= p.row(cc);
            }
        }
    return Prelation::unchecked(p, p, std::move(mat));
}

/// Right snake on the opposite carrier: equals identity of P°.
inline Prelation snake_right(const Preorder& p) {
    int n = p.size();
    Preorder po = opposite(p);
    CompactCups c = compact_cups(p);
    std::vector<Row> mat(n, 0);
    // composite(x,e) = ∃b,cc,d: η(b,cc) ∧ derr_op(x,d) ∧ derr_op(b,e) ∧ ε(cc,d)
    for (int x = 0; x < n; ++x)
        for (int d = 0; d < n; ++d) {
            if (!po.derr(x, d)) continue;
            for (int b = 0; b < n; ++b)
                for (int cc = 0; cc < n; ++cc) {
                    if (!c.eta.at(0, pair_index(b, cc, n))) continue;
                    if (!c.eps.at(pair_index(cc, d, n), 0)) continue;
                    mat[x] |= po.row(b);
                }
        }
    return Prelation::unchecked(po, po, std::move(mat));
}

}  // namespace prelab
