#pragma once

#include <array>
#include <optional>
#include <string>

#include "prelab/prelation.hpp"

namespace prelab {

/// A monoid law failed; carries the law name and the witnessing tuple.
struct LawViolation : InvalidInput {
    LawViolation(std::string which, std::vector<int> tuple)
        : InvalidInput("monoid law violated: " + which), law(std::move(which)),
          witness(std::move(tuple)) {}
    std::string law;
    std::vector<int> witness;
};

/// A prelational monoid (A, ∇, ⊥): carrier preorder, ternary relation
/// upper-closed in the first two arguments and lower-closed in the third,
/// and a lower-set unit, satisfying associativity and the unit sequents.
/// The comonoid (Δ, ⊤) is derived, never stored.
class PrelMonoid {
public:
    PrelMonoid() = default;

    /// Closes the generators under the ternary closure law and the unit
    /// generators downward, then validates all laws.
    static PrelMonoid build(const Preorder& carrier,
                            const std::vector<std::array<int, 3>>& nabla_gens,
                            const std::vector<int>& unit_gens) {
        int n = carrier.size();
        std::vector<Row> nab(static_cast<std::size_t>(n) * n, 0);
        for (auto [x, y, z] : nabla_gens) {
            if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
                throw InvalidInput("monoid: generator index out of range");
            nab[x * n + y] |= bit(z);
        }
        Row unit = 0;
        for (int t : unit_gens) {
            if (t < 0 || t >= n) throw InvalidInput("monoid: unit index out of range");
            unit |= carrier.row(t);
        }
        close_nabla(carrier, nab);
        PrelMonoid m;
        m.carrier_ = carrier;
        m.nabla_ = std::move(nab);
        m.unit_ = unit;
        m.validate();
        return m;
    }

    /// Wraps already-closed data and validates the laws.
    static PrelMonoid from_raw(Preorder carrier, std::vector<Row> nabla, Row unit) {
        PrelMonoid m;
        m.carrier_ = std::move(carrier);
        m.nabla_ = std::move(nabla);
        m.unit_ = unit;
        m.validate();
        return m;
    }

    /// Wraps without validation (enumeration filters validate separately).
    static PrelMonoid unchecked(Preorder carrier, std::vector<Row> nabla, Row unit) {
        PrelMonoid m;
        m.carrier_ = std::move(carrier);
        m.nabla_ = std::move(nabla);
        m.unit_ = unit;
        return m;
    }

    const Preorder& carrier() const { return carrier_; }
    int size() const { return carrier_.size(); }
    bool nabla(int x, int y, int z) const { return has(nabla_[x * size() + y], z); }
    Row nabla_image(int x, int y) const { return nabla_[x * size() + y]; }
    const std::vector<Row>& nabla_rows() const { return nabla_; }
    Row unit_mask() const { return unit_; }
    ClosedSet unit() const { return ClosedSet::unchecked(Side::Lower, size(), unit_); }

    /// ∇ as a prelation A×A ↘ A (pair indices row-major).
    Prelation nabla_prelation() const {
        return Prelation::unchecked(product(carrier_, carrier_), carrier_, nabla_);
    }

    /// ⊥ as a prelation 𝟙 ↘ A.
    Prelation unit_prelation() const {
        return Prelation::unchecked(singleton_preorder(), carrier_, {unit_});
    }

    friend bool operator==(const PrelMonoid& a, const PrelMonoid& b) {
        return a.carrier_ == b.carrier_ && a.nabla_ == b.nabla_ && a.unit_ == b.unit_;
    }

    /// nullopt when lawful, otherwise the first violation found.
    std::optional<LawViolation> check_laws() const {
        int n = size();
        // ternary closure
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int xp = 0; xp < n; ++xp) {
                    if (!carrier_.derr(x, xp)) continue;
                    for (int yp = 0; yp < n; ++yp) {
                        if (!carrier_.derr(y, yp)) continue;
                        Row ext = 0;
                        Row img = nabla_[xp * n + yp];
                        for (int zp = 0; zp < n; ++zp)
                            if (has(img, zp)) ext |= carrier_.row(zp);
                        if (ext & ~nabla_[x * n + y])
                            return LawViolation("closure", {x, y, xp, yp});
                    }
                }
        // associativity as a sequent equivalence
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Row lhs = 0, rhs = 0;
                    for (int u = 0; u < n; ++u)
                        if (nabla(x, y, u)) lhs |= nabla_[u * n + z];
                    for (int v = 0; v < n; ++v)
                        if (nabla(y, z, v)) rhs |= nabla_[x * n + v];
                    if (lhs != rhs) {
                        for (int w = 0; w < n; ++w)
                            if (has(lhs, w) != has(rhs, w))
                                return LawViolation("associativity", {x, y, z, w});
                    }
                }
        // unit sequents
        for (int x = 0; x < n; ++x) {
            Row left = 0, right = 0;
            for (int t = 0; t < n; ++t)
                if (has(unit_, t)) {
                    left |= nabla_[t * n + x];
                    right |= nabla_[x * n + t];
                }
            if (left != carrier_.row(x)) {
                for (int y = 0; y < n; ++y)
                    if (has(left, y) != carrier_.derr(x, y))
                        return LawViolation("left-unit", {x, y});
            }
            if (right != carrier_.row(x)) {
                for (int y = 0; y < n; ++y)
                    if (has(right, y) != carrier_.derr(x, y))
                        return LawViolation("right-unit", {x, y});
            }
        }
        return std::nullopt;
    }

    static void close_nabla(const Preorder& carrier, std::vector<Row>& nab) {
        int n = carrier.size();
        bool changed = true;
        while (changed) {
            changed = false;
            for (int xp = 0; xp < n; ++xp)
                for (int yp = 0; yp < n; ++yp) {
                    Row img = nab[xp * n + yp];
                    if (!img) continue;
                    Row ext = 0;
                    for (int zp = 0; zp < n; ++zp)
                        if (has(img, zp)) ext |= carrier.row(zp);
                    for (int x = 0; x < n; ++x) {
                        if (!carrier.derr(x, xp)) continue;
                        for (int y = 0; y < n; ++y) {
                            if (!carrier.derr(y, yp)) continue;
                            if ((nab[x * n + y] | ext) != nab[x * n + y]) {
                                nab[x * n + y] |= ext;
                                changed = true;
                            }
                        }
                    }
                }
        }
    }

private:
    void validate() const {
        if (auto bad = check_laws()) throw *bad;
    }

    Preorder carrier_;
    std::vector<Row> nabla_;  // nabla_[x*n+y] = image mask
    Row unit_ = 0;
};

/// The derived comonoid: Δ as the adjoint dual of ∇ and ⊤ as the largest
/// counit for Δ.
struct Comonoid {
    std::vector<Row> delta;  // delta[z] = mask over pair indices (u*n+v)
    Row top = 0;

    bool at(int z, int u, int v, int n) const { return has(delta[z], pair_index(u, v, n)); }
};

inline Comonoid comonoid_of(const PrelMonoid& m) {
    int n = m.size();
    Prelation dual = adjoint_dual(m.nabla_prelation());
    Comonoid c;
    c.delta.assign(n, 0);
    for (int z = 0; z < n; ++z) c.delta[z] = dual.image(z);
    // largest T with Delta(x,(t,y)) => derr(x,y) and Delta(x,(y,t)) => derr(x,y)
    for (int t = 0; t < n; ++t) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y) {
                if (c.at(x, t, y, n) && !m.carrier().derr(x, y)) ok = false;
                if (c.at(x, y, t, n) && !m.carrier().derr(x, y)) ok = false;
            }
        if (ok) c.top |= bit(t);
    }
    return c;
}

/// Δ as a prelation A ↘ A×A.
inline Prelation delta_prelation(const PrelMonoid& m, const Comonoid& c) {
    return Prelation::unchecked(m.carrier(), product(m.carrier(), m.carrier()), c.delta);
}

/// ⊤ as an upper closed set of the carrier.
inline ClosedSet top_closed_set(const PrelMonoid& m, const Comonoid& c) {
    return ClosedSet::unchecked(Side::Upper, m.size(), c.top);
}

// ---------------------------------------------------------------------------
// predicates

struct Counterexample {
    std::string condition;
    std::vector<int> tuple;
};

/// Frobenius sequents: whenever the middle composite ∇;Δ relates (x,y) to
/// (u,v), both side decompositions must exist. The reverse implications hold
/// in all monoids and are not checked.
inline std::optional<Counterexample> check_frobenius(const PrelMonoid& m) {
    int n = m.size();
    Comonoid c = comonoid_of(m);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    bool mid = false;
                    for (int z = 0; z < n && !mid; ++z)
                        if (m.nabla(x, y, z) && c.at(z, u, v, n)) mid = true;
                    if (!mid) continue;
                    bool left = false;
                    for (int s = 0; s < n && !left; ++s)
                        if (m.nabla(x, s, u) && c.at(y, s, v, n)) left = true;
                    if (!left) return Counterexample{"frobenius-left", {x, y, u, v}};
                    bool right = false;
                    for (int t = 0; t < n && !right; ++t)
                        if (c.at(x, u, t, n) && m.nabla(t, y, v)) right = true;
                    if (!right) return Counterexample{"frobenius-right", {x, y, u, v}};
                }
    return std::nullopt;
}

/// Special (isometry) sequent: Δ followed by ∇ implies derr.
inline std::optional<Counterexample> check_special(const PrelMonoid& m) {
    int n = m.size();
    Comonoid c = comonoid_of(m);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool prem = false;
            for (int u = 0; u < n && !prem; ++u)
                for (int v = 0; v < n && !prem; ++v)
                    if (c.at(x, u, v, n) && m.nabla(u, v, y)) prem = true;
            if (prem && !m.carrier().derr(x, y)) return Counterexample{"special", {x, y}};
        }
    return std::nullopt;
}

/// A representable monoid with extracted multiplication table, unit element
/// and adjoint maps.
struct PregroupStructure {
    std::vector<int> mult;  // mult[x*n+y]
    int unit_elem = 0;
    std::vector<int> ell;   // x -> x^l
    std::vector<int> arr;   // x -> x^r
    int size = 0;

    int times(int x, int y) const { return mult[x * size + y]; }
};

/// Strictness and pointedness via is_map on ∇ and ⊥.
inline bool is_strict(const PrelMonoid& m) { return is_map(m.nabla_prelation()).is_map(); }
inline bool is_pointed(const PrelMonoid& m) { return is_map(m.unit_prelation()).is_map(); }

/// The representable core (mult table + unit element) when strict & pointed.
struct Representation {
    std::vector<int> mult;
    int unit_elem = 0;
};

inline std::optional<Representation> representation_of(const PrelMonoid& m) {
    MapVerdict nv = is_map(m.nabla_prelation());
    MapVerdict uv = is_map(m.unit_prelation());
    if (!nv.is_map() || !uv.is_map()) return std::nullopt;
    return Representation{*nv.representative, (*uv.representative)[0]};
}

/// Exhaustive adjoint search over the carrier; lowest-index candidates.
/// Returns a structure iff the monoid is representable and every element has
/// both adjoints, and the adjunction correspondences validate.
inline std::optional<PregroupStructure> pregroup_adjoints(const PrelMonoid& m) {
    auto rep = representation_of(m);
    if (!rep) return std::nullopt;
    int n = m.size();
    const Preorder& p = m.carrier();
    auto mul = [&](int x, int y) { return rep->mult[x * n + y]; };
    int iota = rep->unit_elem;
    PregroupStructure pg;
    pg.mult = rep->mult;
    pg.unit_elem = iota;
    pg.size = n;
    pg.ell.assign(n, -1);
    pg.arr.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int c = 0; c < n; ++c)
            if (p.derr(mul(x, c), iota) && p.derr(iota, mul(c, x))) { pg.ell[x] = c; break; }
        for (int c = 0; c < n; ++c)
            if (p.derr(mul(c, x), iota) && p.derr(iota, mul(x, c))) { pg.arr[x] = c; break; }
        if (pg.ell[x] < 0 || pg.arr[x] < 0) return std::nullopt;
    }
    // adjunction correspondences: derr(x·a,b) <=> derr(a, x^l·b),
    // derr(x^r·a,b) <=> derr(a, x·b)
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (p.derr(mul(x, a), b) != p.derr(a, mul(pg.ell[x], b))) return std::nullopt;
                if (p.derr(mul(pg.arr[x], a), b) != p.derr(a, mul(x, b))) return std::nullopt;
            }
    return pg;
}

/// First element lacking an adjoint (diagnostic for reports); -1 when the
/// monoid is not representable at all.
inline int first_unadjoined(const PrelMonoid& m) {
    auto rep = representation_of(m);
    if (!rep) return -1;
    int n = m.size();
    const Preorder& p = m.carrier();
    auto mul = [&](int x, int y) { return rep->mult[x * n + y]; };
    int iota = rep->unit_elem;
    for (int x = 0; x < n; ++x) {
        bool l = false, r = false;
        for (int c = 0; c < n && !(l && r); ++c) {
            if (p.derr(mul(x, c), iota) && p.derr(iota, mul(c, x))) l = true;
            if (p.derr(mul(c, x), iota) && p.derr(iota, mul(x, c))) r = true;
        }
        if (!l || !r) return x;
    }
    return -1;
}

/// Witness extraction for a Frobenius instance derr(x·y, u·v): candidate
/// sets for s (with x·s ⊢ u, y ⊢ s·v) and t (with x ⊢ u·t, t·y ⊢ v).
/// The canonical members are s = x^l·u and t = v·y^r.
struct FrobeniusWitnesses {
    std::vector<int> s_candidates;
    std::vector<int> t_candidates;
    int canonical_s = -1;
    int canonical_t = -1;
};

inline FrobeniusWitnesses frobenius_witnesses(const PrelMonoid& m,
                                              const PregroupStructure& pg,
                                              int x, int y, int u, int v) {
    const Preorder& p = m.carrier();
    int n = m.size();
    if (!p.derr(pg.times(x, y), pg.times(u, v)))
        throw InvalidInput("frobenius_witnesses: derr(x*y, u*v) does not hold");
    FrobeniusWitnesses w;
    for (int s = 0; s < n; ++s)
        if (p.derr(pg.times(x, s), u) && p.derr(y, pg.times(s, v))) w.s_candidates.push_back(s);
    for (int t = 0; t < n; ++t)
        if (p.derr(x, pg.times(u, t)) && p.derr(pg.times(t, y), v)) w.t_candidates.push_back(t);
    w.canonical_s = pg.times(pg.ell[x], u);
    w.canonical_t = pg.times(v, pg.arr[y]);
    return w;
}

// ---------------------------------------------------------------------------
// residuation

/// Plugging semantics for closed sets on prelation wires (see check_residuated).
/// Polar is the validated default: each wire crossing converts the set through
/// one joint-bounds polar, so residuals land in their typed side. Direct is
/// the rejected candidate (raw membership), kept for inspection.
enum class PlugSemantics { Polar, Direct };

enum class ResidualKind { RightOf, OfRight, OfLeft, LeftOf };  // r>, <r, <l, l>

namespace detail {

inline Row polar_up(const Preorder& p, Row members) {
    // upper bounds of a lower-ish member set: {y | forall v in members: derr(y,v)}
    Row out = 0;
    for (int y = 0; y < p.size(); ++y) {
        bool ok = true;
        for (int v = 0; v < p.size() && ok; ++v)
            if (has(members, v) && !p.derr(y, v)) ok = false;
        if (ok) out |= bit(y);
    }
    return out;
}

inline Row polar_down(const Preorder& p, Row members) {
    // lower bounds of an upper-ish member set: {x | forall u in members: derr(u,x)}
    Row out = 0;
    for (int x = 0; x < p.size(); ++x) {
        bool ok = true;
        for (int u = 0; u < p.size() && ok; ++u)
            if (has(members, u) && !p.derr(u, x)) ok = false;
        if (ok) out |= bit(x);
    }
    return out;
}

/// Raw residual composite over an already-plugged seed set.
inline Row raw_residual(const PrelMonoid& m, const Comonoid& c, Row seed, ResidualKind k) {
    int n = m.size();
    Row out = 0;
    for (int w = 0; w < n; ++w) {
        bool hit = false;
        for (int s = 0; s < n && !hit; ++s) {
            if (!has(seed, s)) continue;
            switch (k) {
                case ResidualKind::RightOf:  // ((ξ×A);∇;⊤)
                    hit = (m.nabla_image(s, w) & c.top) != 0;
                    break;
                case ResidualKind::OfRight:  // ((A×υ);∇;⊤)
                    hit = (m.nabla_image(w, s) & c.top) != 0;
                    break;
                case ResidualKind::OfLeft:   // (⊥;Δ), ζ on the second output
                    for (int z = 0; z < n && !hit; ++z)
                        if (has(m.unit_mask(), z) && c.at(z, w, s, n)) hit = true;
                    break;
                case ResidualKind::LeftOf:   // (⊥;Δ), υ on the first output
                    for (int z = 0; z < n && !hit; ++z)
                        if (has(m.unit_mask(), z) && c.at(z, s, w, n)) hit = true;
                    break;
            }
        }
        if (hit) out |= bit(w);
    }
    return out;
}

}  // namespace detail

/// The residual operator. Right residuations (r>, <r) take
/// an upper set to a lower set; left residuations (<l, l>) take a lower set
/// to an upper set. Under the polar semantics the argument enters the
/// composite through its polar and the raw composite is polared once more
/// into the typed side; under the direct semantics the raw member set is
/// returned as-is (its side law may fail on non-residuated monoids).
inline ClosedSet residual(const PrelMonoid& m, const ClosedSet& arg, ResidualKind k,
                          PlugSemantics sem = PlugSemantics::Polar) {
    const Preorder& p = m.carrier();
    bool right = k == ResidualKind::RightOf || k == ResidualKind::OfRight;
    Side want = right ? Side::Upper : Side::Lower;
    if (arg.side() != want || arg.carrier_size() != p.size())
        throw InvalidInput("residual: argument side mismatch");
    Comonoid c = comonoid_of(m);
    Row seed = arg.members();
    if (sem == PlugSemantics::Polar)
        seed = right ? detail::polar_down(p, seed) : detail::polar_up(p, seed);
    Row s = detail::raw_residual(m, c, seed, k);
    Side out_side = right ? Side::Lower : Side::Upper;
    if (sem == PlugSemantics::Polar)
        s = right ? detail::polar_down(p, s) : detail::polar_up(p, s);
    return ClosedSet::unchecked(out_side, p.size(), s);
}

/// Checks the defining equivalences of the residuations, quantified over all
/// closed sets of the appropriate side, with the residual operator above.
/// left=false checks the right residuations (r>, <r), left=true the left.
inline bool check_residuated(const PrelMonoid& m, bool left,
                             PlugSemantics sem = PlugSemantics::Polar) {
    const Preorder& p = m.carrier();
    int n = m.size();
    Comonoid c = comonoid_of(m);
    auto plug_mask = [&](Row raw, bool right_kind) {
        if (sem == PlugSemantics::Direct) return raw;
        Row typed = right_kind ? detail::polar_down(p, raw) : detail::polar_up(p, raw);
        return right_kind ? detail::polar_up(p, typed) : detail::polar_down(p, typed);
    };
    if (!left) {
        for (const ClosedSet& xi : completion(p, Side::Upper)) {
            Row seed = sem == PlugSemantics::Polar ? detail::polar_down(p, xi.members())
                                                   : xi.members();
            Row plug1 = plug_mask(detail::raw_residual(m, c, seed, ResidualKind::RightOf), true);
            Row plug2 = plug_mask(detail::raw_residual(m, c, seed, ResidualKind::OfRight), true);
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    bool lhs1 = false, lhs2 = false, rhs1 = false, rhs2 = false;
                    for (int s = 0; s < n; ++s) {
                        if (!has(seed, s)) continue;
                        lhs1 |= m.nabla(s, y, z);
                        lhs2 |= m.nabla(y, s, z);
                    }
                    for (int w = 0; w < n; ++w) {
                        if (has(plug1, w) && c.at(y, w, z, n)) rhs1 = true;
                        if (has(plug2, w) && c.at(y, z, w, n)) rhs2 = true;
                    }
                    if (lhs1 != rhs1 || lhs2 != rhs2) return false;
                }
        }
        return true;
    }
    for (const ClosedSet& ze : completion(p, Side::Lower)) {
        Row seed = sem == PlugSemantics::Polar ? detail::polar_up(p, ze.members())
                                               : ze.members();
        Row plug1 = plug_mask(detail::raw_residual(m, c, seed, ResidualKind::OfLeft), false);
        Row plug2 = plug_mask(detail::raw_residual(m, c, seed, ResidualKind::LeftOf), false);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                bool lhs1 = false, lhs2 = false, rhs1 = false, rhs2 = false;
                for (int w = 0; w < n; ++w) {
                    if (!has(seed, w)) continue;
                    lhs1 |= c.at(x, y, w, n);
                    lhs2 |= c.at(x, w, y, n);
                }
                for (int w = 0; w < n; ++w) {
                    if (has(plug1, w) && m.nabla(x, w, y)) rhs1 = true;
                    if (has(plug2, w) && m.nabla(w, x, y)) rhs2 = true;
                }
                if (lhs1 != rhs1 || lhs2 != rhs2) return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------------------
// classification

struct PropertyVector {
    bool strict = false;
    bool pointed = false;
    bool representable = false;
    bool frobenius = false;
    bool special = false;
    bool spider = false;
    bool pregroup = false;
    bool left_residuated = false;
    bool right_residuated = false;
    std::optional<Counterexample> counterexample;
};

inline PropertyVector classify(const PrelMonoid& m,
                               PlugSemantics sem = PlugSemantics::Polar) {
    PropertyVector v;
    v.strict = is_strict(m);
    v.pointed = is_pointed(m);
    v.representable = v.strict && v.pointed;
    auto frob = check_frobenius(m);
    v.frobenius = !frob.has_value();
    auto spec = check_special(m);
    v.special = !spec.has_value();
    v.spider = v.frobenius && v.special;
    v.pregroup = pregroup_adjoints(m).has_value();
    v.left_residuated = check_residuated(m, true, sem);
    v.right_residuated = check_residuated(m, false, sem);
    if (frob) v.counterexample = frob;
    else if (spec) v.counterexample = spec;
    return v;
}

// ---------------------------------------------------------------------------
// positive cone

/// H = {h | derr(h, ι)} with the cone axioms checked; failures indicate an
/// upstream bug and are thrown as LawViolation.
inline ClosedSet cone(const PrelMonoid& m, const PregroupStructure& pg) {
    const Preorder& p = m.carrier();
    int n = m.size();
    Row h = 0;
    for (int x = 0; x < n; ++x)
        if (p.derr(x, pg.unit_elem)) h |= bit(x);
    if (!has(h, pg.unit_elem)) throw LawViolation("cone-unit", {pg.unit_elem});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (has(h, a) && has(h, b) && !has(h, pg.times(a, b)))
                throw LawViolation("cone-submonoid", {a, b});
    for (int x = 0; x < n; ++x)
        for (int hh = 0; hh < n; ++hh)
            if (has(h, hh) && !has(h, pg.times(pg.arr[x], pg.times(hh, x))))
                throw LawViolation("cone-conjugation", {x, hh});
    for (int x = 0; x < n; ++x)
        if (has(h, x) && has(h, pg.arr[x]) && !p.equiv(x, pg.unit_elem))
            throw LawViolation("cone-positivity", {x});
    return ClosedSet::unchecked(Side::Upper, n, h);
}

/// Reconstructs the carrier preorder from the cone: derr(x,y) iff y^r·x ∈ H.
inline Preorder order_from_cone(const PrelMonoid& m, const PregroupStructure& pg,
                                const ClosedSet& h) {
    int n = m.size();
    std::vector<Row> rel(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (h.contains(pg.times(pg.arr[y], x))) rel[x] |= bit(y);
    Preorder out(n, std::move(rel));
    if (out != m.carrier()) throw LawViolation("cone-order-mismatch", {});
    return out;
}

// ---------------------------------------------------------------------------
// pointwise oracles for the infinite example monoids

enum class ExampleFamily { Multiset, Shuffle, SignedMultiset };

/// A finite multiset as value/multiplicity pairs.
using MultisetEntry = std::pair<long long, unsigned long long>;

namespace detail {

inline long long weighted_sum(const std::vector<MultisetEntry>& m, bool allow_negative) {
    long long total = 0;
    for (auto [value, mult] : m) {
        if (!allow_negative && value < 0)
            throw InvalidInput("multiset: negative value in a natural-number multiset");
        total += value * static_cast<long long>(mult);
    }
    return total;
}

inline bool shuffle_in(const std::string& x, const std::string& y, const std::string& z) {
    // reach[i][j]: x[0..i) and y[0..j) embed disjointly, order-preserving,
    // into a prefix of z scanned so far
    std::size_t nx = x.size(), ny = y.size();
    std::vector<std::vector<char>> reach(nx + 1, std::vector<char>(ny + 1, 0));
    reach[0][0] = 1;
    for (char zc : z) {
        auto next = reach;
        for (std::size_t i = 0; i <= nx; ++i)
            for (std::size_t j = 0; j <= ny; ++j) {
                if (!reach[i][j]) continue;
                if (i < nx && x[i] == zc) next[i + 1][j] = 1;
                if (j < ny && y[j] == zc) next[i][j + 1] = 1;
            }
        reach = std::move(next);
    }
    return reach[nx][ny] != 0;
}

}  // namespace detail

/// derr((x,y), ∇, z) for the multiset families: Σ(x+y) ≤ Σz with
/// Σ the multiplicity-weighted sum.
inline bool example_nabla(ExampleFamily fam, const std::vector<MultisetEntry>& x,
                          const std::vector<MultisetEntry>& y,
                          const std::vector<MultisetEntry>& z) {
    bool neg = fam == ExampleFamily::SignedMultiset;
    if (fam == ExampleFamily::Shuffle)
        throw InvalidInput("example_nabla: shuffle family takes words");
    return detail::weighted_sum(x, neg) + detail::weighted_sum(y, neg) <=
           detail::weighted_sum(z, neg);
}

/// derr((x,y), ∇, z) for the shuffle family: z contains some shuffle of x and
/// y as a not-necessarily-contiguous subsequence.
inline bool example_nabla(ExampleFamily fam, const std::string& x, const std::string& y,
                          const std::string& z) {
    if (fam != ExampleFamily::Shuffle)
        throw InvalidInput("example_nabla: multiset families take exponent vectors");
    return detail::shuffle_in(x, y, z);
}

}  // namespace prelab
