#pragma once

#include <map>
#include <sstream>

#include "prelab/monoid.hpp"

namespace prelab {

/// Cayley representation of a lower set: derr(x, a^⋉, y) iff ∃t∈a. ∇(t,x,y);
/// ⋊ plugs t on the other side. For a = ⊥ both give the identity prelation.
enum class CayleySide { Left, Right };  // ⋉ / ⋊

inline Prelation cayley(const PrelMonoid& m, const ClosedSet& a, CayleySide side) {
    if (a.side() != Side::Lower || a.carrier_size() != m.size())
        throw InvalidInput("cayley: expects a lower set of the carrier");
    int n = m.size();
    std::vector<Row> mat(n, 0);
    for (int x = 0; x < n; ++x)
        for (int t = 0; t < n; ++t) {
            if (!a.contains(t)) continue;
            mat[x] |= side == CayleySide::Left ? m.nabla_image(t, x) : m.nabla_image(x, t);
        }
    return Prelation::unchecked(m.carrier(), m.carrier(), std::move(mat));
}

inline Prelation cayley_of_element(const PrelMonoid& m, int x, CayleySide side) {
    return cayley(m, principal(m.carrier(), x, Side::Lower), side);
}

/// Element dualities, extended over principal pieces
/// (the dualities preserve unions): a^L = ⋃_{b∈a} ⊥;Δ;((↓b)‡ × A), with
/// (↓b)‡ = ↑b, and a^R with the dagger on the other output.
enum class DualSide { L, R };

inline ClosedSet dual_element(const PrelMonoid& m, const ClosedSet& a, DualSide side) {
    if (a.side() != Side::Lower || a.carrier_size() != m.size())
        throw InvalidInput("dual_element: expects a lower set of the carrier");
    int n = m.size();
    const Preorder& p = m.carrier();
    Comonoid c = comonoid_of(m);
    Row out = 0;
    for (int b = 0; b < n; ++b) {
        if (!a.contains(b)) continue;
        Row bdag = 0;  // ↑b
        for (int y = 0; y < n; ++y)
            if (p.derr(y, b)) bdag |= bit(y);
        for (int t = 0; t < n; ++t) {
            if (!has(m.unit_mask(), t)) continue;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    if (!c.at(t, u, v, n)) continue;
                    if (side == DualSide::L && has(bdag, u)) out |= p.row(v);
                    if (side == DualSide::R && has(bdag, v)) out |= p.row(u);
                }
        }
    }
    return ClosedSet::unchecked(Side::Lower, n, out);
}

/// The relation-level dagger under which the Cayley embeddings preserve the
/// element dualities: prelational closure of the transpose.
inline Prelation transpose_closure(const Preorder& p, const Prelation& r) {
    int n = p.size();
    std::vector<Row> mat(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (r.at(x, y)) mat[y] |= bit(x);
    Prelation::saturate(p, p, mat);
    return Prelation::unchecked(p, p, std::move(mat));
}

// ---------------------------------------------------------------------------
// coverings

struct CoverComponent {
    int basepoint = 0;
    Row carrier_mask = 0;
    std::vector<int> elements;       // ambient indices, increasing
    PrelMonoid sub;                  // restricted monoid on local indices
    PregroupStructure pg;            // local-index tables
};

struct Covering {
    PrelMonoid ambient;
    std::vector<CoverComponent> components;
};

/// Restriction of a monoid to a subset (local indices follow ambient order).
inline PrelMonoid restrict_monoid(const PrelMonoid& m, Row subset, int basepoint) {
    int n = m.size();
    std::vector<int> els;
    for (int i = 0; i < n; ++i)
        if (has(subset, i)) els.push_back(i);
    int k = static_cast<int>(els.size());
    std::vector<int> local(n, -1);
    for (int i = 0; i < k; ++i) local[els[i]] = i;
    std::vector<Row> rel(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (m.carrier().derr(els[i], els[j])) rel[i] |= bit(j);
    Preorder sub_order(k, std::move(rel));
    std::vector<Row> nab(static_cast<std::size_t>(k) * k, 0);
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int z = 0; z < k; ++z)
                if (m.nabla(els[x], els[y], els[z])) nab[x * k + y] |= bit(z);
    Row unit = 0;
    for (int j = 0; j < k; ++j)
        if (m.carrier().derr(basepoint, els[j])) unit |= bit(j);
    return PrelMonoid::from_raw(std::move(sub_order), std::move(nab), unit);
}

/// The covering component at a base point t ∈ ⊥:
///   A_t = {x | x^⋉ = x^⋉;t^⋉ = t^⋉;x^⋉}.
inline Row cover_component_mask(const PrelMonoid& m, int t) {
    if (!has(m.unit_mask(), t)) throw InvalidInput("cover_component: base point not in the unit");
    int n = m.size();
    Prelation tl = cayley_of_element(m, t, CayleySide::Left);
    Row out = 0;
    for (int x = 0; x < n; ++x) {
        Prelation xl = cayley_of_element(m, x, CayleySide::Left);
        if (xl == compose(xl, tl) && xl == compose(tl, xl)) out |= bit(x);
    }
    return out;
}

/// A_t together with its restricted pregroup; rejects when the restriction
/// fails the monoid laws or the adjoint search (i.e. the ambient monoid was
/// not a spider).
inline CoverComponent cover_component(const PrelMonoid& m, int t) {
    Row mask = cover_component_mask(m, t);
    CoverComponent comp;
    comp.basepoint = t;
    comp.carrier_mask = mask;
    for (int i = 0; i < m.size(); ++i)
        if (has(mask, i)) comp.elements.push_back(i);
    comp.sub = restrict_monoid(m, mask, t);  // throws LawViolation on failure
    auto pg = pregroup_adjoints(comp.sub);
    if (!pg) throw InvalidInput("cover_component: restriction is not a pregroup");
    comp.pg = *pg;
    return comp;
}

namespace detail {

inline int local_index(const CoverComponent& c, int ambient_elem) {
    for (std::size_t k = 0; k < c.elements.size(); ++k)
        if (c.elements[k] == ambient_elem) return static_cast<int>(k);
    return -1;
}

/// The component's ternary relation read on ambient indices (empty outside
/// its carrier).
inline bool lifted_nabla(const CoverComponent& c, int a, int x, int y) {
    int la = local_index(c, a), lx = local_index(c, x), ly = local_index(c, y);
    if (la < 0 || lx < 0 || ly < 0) return false;
    return c.sub.nabla(la, lx, ly);
}

}  // namespace detail

/// Consistency of a family of sub-pregroups over one ambient carrier. The
/// default is the representable reading: on every overlap the two
/// multiplications agree up to the ambient equivalence, in both argument
/// orders. ambient_reading=true is the stricter definition-level reading:
/// for every overlap element a, the translated ternary relations agree as
/// relations over the whole ambient carrier.
inline bool check_consistency(const Preorder& ambient,
                              const std::vector<CoverComponent>& comps,
                              bool ambient_reading = false) {
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
            Row both = comps[i].carrier_mask & comps[j].carrier_mask;
            if (!both) continue;
            for (int a = 0; a < ambient.size(); ++a) {
                if (!has(both, a)) continue;
                if (ambient_reading) {
                    for (int x = 0; x < ambient.size(); ++x)
                        for (int y = 0; y < ambient.size(); ++y) {
                            if (detail::lifted_nabla(comps[i], a, x, y) !=
                                detail::lifted_nabla(comps[j], a, x, y))
                                return false;
                            if (detail::lifted_nabla(comps[i], x, a, y) !=
                                detail::lifted_nabla(comps[j], x, a, y))
                                return false;
                        }
                    continue;
                }
                for (int x = 0; x < ambient.size(); ++x) {
                    if (!has(both, x)) continue;
                    int ai = detail::local_index(comps[i], a);
                    int xi = detail::local_index(comps[i], x);
                    int aj = detail::local_index(comps[j], a);
                    int xj = detail::local_index(comps[j], x);
                    int pi = comps[i].elements[comps[i].pg.times(ai, xi)];
                    int pj = comps[j].elements[comps[j].pg.times(aj, xj)];
                    if (!ambient.equiv(pi, pj)) return false;
                    pi = comps[i].elements[comps[i].pg.times(xi, ai)];
                    pj = comps[j].elements[comps[j].pg.times(xj, aj)];
                    if (!ambient.equiv(pi, pj)) return false;
                }
            }
        }
    return true;
}

/// Pregroup covering of a spider: one component per t ∈ ⊥, deduplicated when
/// carrier and restricted ∇ coincide (least base point kept).
inline Covering pregroup_cover(const PrelMonoid& m) {
    if (check_frobenius(m) || check_special(m))
        throw InvalidInput("pregroup_cover: monoid is not a spider");
    Covering cov;
    cov.ambient = m;
    std::map<std::pair<Row, std::vector<Row>>, int> seen;
    for (int t = 0; t < m.size(); ++t) {
        if (!has(m.unit_mask(), t)) continue;
        CoverComponent comp = cover_component(m, t);
        auto key = std::make_pair(comp.carrier_mask, comp.sub.nabla_rows());
        if (seen.count(key)) continue;
        seen[key] = t;
        cov.components.push_back(std::move(comp));
    }
    // covering invariants
    Row covered = 0;
    for (const auto& comp : cov.components)
        for (int e : comp.elements) covered |= m.carrier().row(e);
    if (covered != full_mask(m.size()))
        throw LawViolation("cover-incomplete", {});
    std::vector<Row> id_union(m.size(), 0);
    for (int t = 0; t < m.size(); ++t) {
        if (!has(m.unit_mask(), t)) continue;
        Prelation tl = cayley_of_element(m, t, CayleySide::Left);
        for (int x = 0; x < m.size(); ++x) id_union[x] |= tl.image(x);
    }
    if (id_union != m.carrier().rows()) throw LawViolation("cover-unit-identity", {});
    if (!check_consistency(m.carrier(), cov.components))
        throw LawViolation("cover-inconsistent", {});
    return cov;
}

/// Union of a consistent family of sub-pregroups over an ambient preorder:
/// ∇ is the closure of the component ∇s, ⊥ the downward closure of the
/// component units. Validates the monoid laws and the spider conditions.
inline PrelMonoid union_monoid(const Preorder& ambient,
                               const std::vector<CoverComponent>& comps) {
    if (!check_consistency(ambient, comps))
        throw InvalidInput("union_monoid: components are inconsistent");
    Row covered = 0;
    for (const auto& comp : comps)
        for (int e : comp.elements) covered |= ambient.row(e);
    if (covered != full_mask(ambient.size()))
        throw InvalidInput("union_monoid: components do not cover the carrier");
    int n = ambient.size();
    std::vector<Row> nab(static_cast<std::size_t>(n) * n, 0);
    Row unit = 0;
    for (const auto& comp : comps) {
        int k = comp.sub.size();
        for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y)
                for (int z = 0; z < k; ++z)
                    if (comp.sub.nabla(x, y, z))
                        nab[comp.elements[x] * n + comp.elements[y]] |= bit(comp.elements[z]);
        for (int j = 0; j < k; ++j)
            if (has(comp.sub.unit_mask(), j)) unit |= ambient.row(comp.elements[j]);
    }
    PrelMonoid::close_nabla(ambient, nab);
    PrelMonoid u = PrelMonoid::from_raw(ambient, std::move(nab), unit);  // throws on law failure
    if (check_frobenius(u) || check_special(u))
        throw LawViolation("union-not-spider", {});
    return u;
}

// ---------------------------------------------------------------------------
// theorem verifiers

struct DirectionReport {
    std::string name;
    bool passed = true;
    std::string witness;  // human-readable counterexample, empty when passed
};

struct TheoremReport {
    int theorem = 0;
    bool passed = true;
    std::vector<DirectionReport> directions;

    void add(std::string name, bool ok, std::string wit = "") {
        passed = passed && ok;
        directions.push_back({std::move(name), ok, std::move(wit)});
    }
};

namespace detail {

inline std::string tuple_str(const std::vector<int>& t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
}

}  // namespace detail

/// Theorem 1: pregroup_adjoints succeeds ⟺ pointed ∧ frobenius ∧ special.
inline TheoremReport verify_theorem_1(const PrelMonoid& m) {
    TheoremReport r;
    r.theorem = 1;
    bool adj = pregroup_adjoints(m).has_value();
    auto frob = check_frobenius(m);
    auto spec = check_special(m);
    bool rhs = is_pointed(m) && !frob && !spec;
    r.add("pregroup => pointed spider", !adj || rhs,
          adj && !rhs ? (frob ? detail::tuple_str(frob->tuple) : "pointed/special side") : "");
    r.add("pointed spider => pregroup", !rhs || adj,
          rhs && !adj ? "element " + std::to_string(first_unadjoined(m)) : "");
    return r;
}

/// Theorem 2: frobenius ⟺ left residuated ⟺ right residuated.
inline TheoremReport verify_theorem_2(const PrelMonoid& m,
                                      PlugSemantics sem = PlugSemantics::Polar) {
    TheoremReport r;
    r.theorem = 2;
    bool frob = !check_frobenius(m).has_value();
    bool l = check_residuated(m, true, sem);
    bool rr = check_residuated(m, false, sem);
    r.add("frobenius <=> left residuated", frob == l);
    r.add("left <=> right residuated", l == rr);
    return r;
}

/// Theorem 3 forward: spider ⟺ pregroup cover with all invariants; the cover's
/// union reproduces ∇ and ⊥ exactly.
inline TheoremReport verify_theorem_3(const PrelMonoid& m) {
    TheoremReport r;
    r.theorem = 3;
    bool spider = !check_frobenius(m).has_value() && !check_special(m).has_value();
    if (!spider) {
        bool covered = true;
        try {
            pregroup_cover(m);
        } catch (const std::exception&) {
            covered = false;
        }
        r.add("non-spider has no covering", !covered);
        return r;
    }
    try {
        Covering cov = pregroup_cover(m);
        r.add("spider => pregroup covering", true);
        PrelMonoid u = union_monoid(m.carrier(), cov.components);
        bool exact = u.nabla_rows() == m.nabla_rows() && u.unit_mask() == m.unit_mask();
        r.add("union of cover reproduces the monoid", exact);
    } catch (const std::exception& e) {
        r.add("spider => pregroup covering", false, e.what());
    }
    return r;
}

/// Theorem 3 backward: a consistent family of pregroups unions to a spider.
inline TheoremReport verify_theorem_3_union(const Preorder& ambient,
                                            const std::vector<CoverComponent>& comps) {
    TheoremReport r;
    r.theorem = 3;
    try {
        union_monoid(ambient, comps);
        r.add("union of consistent pregroups is a spider", true);
    } catch (const std::exception& e) {
        r.add("union of consistent pregroups is a spider", false, e.what());
    }
    return r;
}

}  // namespace prelab
