#pragma once

#include <sstream>

#include "prelab/monoid.hpp"

namespace prelab {

namespace detail {
inline std::string tuple_str_basic(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}
}  // namespace detail

/// Parse error with the offending line number.
struct ParseError : InvalidInput {
    ParseError(int line, const std::string& msg)
        : InvalidInput("line " + std::to_string(line) + ": " + msg), lineno(line) {}
    int lineno;
};

/// Contents of a structure file: named preorders, monoids attached to them,
/// and prelations between them.
///
/// Format (line oriented, '#' comments, whitespace tolerant):
///   @preorder [name]
///   elements: a b c
///   le a b            # derr(a,b)
///   @monoid           # attaches to the preceding preorder
///   mul a b c         # nabla generator
///   unit a            # unit generator
///   @prelation P Q
///   rel a x           # generator pair
struct StructFile {
    std::vector<std::pair<std::string, Preorder>> preorders;
    std::vector<std::pair<std::string, PrelMonoid>> monoids;   // preorder name -> monoid
    struct Prel {
        std::string dom, cod;
        Prelation rel;
    };
    std::vector<Prel> prelations;

    const Preorder* find_preorder(const std::string& name) const {
        for (const auto& [n, p] : preorders)
            if (n == name) return &p;
        return nullptr;
    }
};

inline StructFile parse_structure(const std::string& text) {
    StructFile out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    enum class Block { None, Preorder, Monoid, Prelation };
    Block block = Block::None;

    // current @preorder being assembled
    std::string cur_name;
    std::vector<std::string> cur_elems;
    std::vector<std::pair<int, int>> cur_le;
    bool have_elements = false;

    // current @monoid
    std::vector<std::array<int, 3>> mul_gens;
    std::vector<int> unit_gens;
    int monoid_line = 0;

    // current @prelation
    std::string prel_dom, prel_cod;
    std::vector<std::pair<int, int>> prel_gens;
    int prel_line = 0;

    auto elem = [&](const std::string& name, const std::vector<std::string>& names,
                    int line) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        throw ParseError(line, "unknown element '" + name + "'");
    };

    auto flush_monoid = [&]() {
        if (block != Block::Monoid) return;
        if (out.preorders.empty()) throw ParseError(monoid_line, "@monoid before @preorder");
        const auto& [pname, p] = out.preorders.back();
        try {
            out.monoids.push_back({pname, PrelMonoid::build(p, mul_gens, unit_gens)});
        } catch (const LawViolation& v) {
            throw ParseError(monoid_line, std::string(v.what()) + " at " +
                                              detail::tuple_str_basic(v.witness));
        }
        mul_gens.clear();
        unit_gens.clear();
    };

    auto flush_preorder = [&]() {
        if (block != Block::Preorder) return;
        if (!have_elements) throw ParseError(lineno, "@preorder without elements:");
        out.preorders.push_back(
            {cur_name, Preorder::close(static_cast<int>(cur_elems.size()), cur_le, cur_elems)});
        cur_le.clear();
        cur_elems.clear();
        have_elements = false;
    };

    auto flush_prelation = [&]() {
        if (block != Block::Prelation) return;
        const Preorder* d = out.find_preorder(prel_dom);
        const Preorder* c = out.find_preorder(prel_cod);
        if (!d || !c) throw ParseError(prel_line, "unknown preorder in @prelation");
        out.prelations.push_back({prel_dom, prel_cod, Prelation::close(*d, *c, prel_gens)});
        prel_gens.clear();
    };

    auto flush = [&]() {
        flush_monoid();
        flush_preorder();
        flush_prelation();
        block = Block::None;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "@preorder") {
            flush();
            block = Block::Preorder;
            cur_name = "P" + std::to_string(out.preorders.size());
            std::string n;
            if (ls >> n) cur_name = n;
        } else if (first == "@monoid") {
            flush();
            if (out.preorders.empty()) throw ParseError(lineno, "@monoid before @preorder");
            block = Block::Monoid;
            monoid_line = lineno;
        } else if (first == "@prelation") {
            flush();
            block = Block::Prelation;
            prel_line = lineno;
            if (!(ls >> prel_dom >> prel_cod))
                throw ParseError(lineno, "@prelation needs dom and cod names");
        } else if (first == "elements:" || first == "elements") {
            if (block != Block::Preorder) throw ParseError(lineno, "elements: outside @preorder");
            if (first == "elements") {
                std::string colon;
                if (!(ls >> colon) || colon != ":")
                    throw ParseError(lineno, "expected 'elements:'");
            }
            std::string n;
            while (ls >> n) {
                for (const auto& e : cur_elems)
                    if (e == n) throw ParseError(lineno, "duplicate element '" + n + "'");
                cur_elems.push_back(n);
            }
            if (cur_elems.empty()) throw ParseError(lineno, "elements: needs at least one name");
            have_elements = true;
        } else if (first == "le") {
            if (block != Block::Preorder) throw ParseError(lineno, "le outside @preorder");
            if (!have_elements) throw ParseError(lineno, "le before elements:");
            std::string a, b;
            if (!(ls >> a >> b)) throw ParseError(lineno, "le needs two elements");
            cur_le.push_back({elem(a, cur_elems, lineno), elem(b, cur_elems, lineno)});
        } else if (first == "mul") {
            if (block != Block::Monoid) throw ParseError(lineno, "mul outside @monoid");
            const auto& names = out.preorders.back().second.names();
            std::string a, b, c;
            if (!(ls >> a >> b >> c)) throw ParseError(lineno, "mul needs three elements");
            mul_gens.push_back({elem(a, names, lineno), elem(b, names, lineno),
                                elem(c, names, lineno)});
        } else if (first == "unit") {
            if (block != Block::Monoid) throw ParseError(lineno, "unit outside @monoid");
            const auto& names = out.preorders.back().second.names();
            std::string a;
            if (!(ls >> a)) throw ParseError(lineno, "unit needs an element");
            unit_gens.push_back(elem(a, names, lineno));
        } else if (first == "rel") {
            if (block != Block::Prelation) throw ParseError(lineno, "rel outside @prelation");
            const Preorder* d = out.find_preorder(prel_dom);
            const Preorder* c = out.find_preorder(prel_cod);
            if (!d || !c) throw ParseError(lineno, "unknown preorder in @prelation");
            std::string a, b;
            if (!(ls >> a >> b)) throw ParseError(lineno, "rel needs two elements");
            prel_gens.push_back({elem(a, d->names(), lineno), elem(b, c->names(), lineno)});
        } else {
            throw ParseError(lineno, "unknown directive '" + first + "'");
        }
    }
    flush();
    if (out.preorders.empty()) throw ParseError(lineno, "no @preorder in file");
    return out;
}

inline std::string serialize_preorder(const Preorder& p, const std::string& name) {
    std::ostringstream os;
    os << "@preorder " << name << "\n";
    os << "elements:";
    for (int i = 0; i < p.size(); ++i) os << " " << p.label(i);
    os << "\n";
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (x != y && p.derr(x, y)) os << "le " << p.label(x) << " " << p.label(y) << "\n";
    return os.str();
}

/// Serializes a monoid as a structure file; reloading yields an equal
/// structure (all derr pairs and nabla triples are emitted, so the closure
/// is reproduced exactly).
inline std::string serialize_monoid(const PrelMonoid& m, const std::string& name = "P0") {
    const Preorder& p = m.carrier();
    std::ostringstream os;
    os << serialize_preorder(p, name);
    os << "@monoid\n";
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            for (int z = 0; z < p.size(); ++z)
                if (m.nabla(x, y, z))
                    os << "mul " << p.label(x) << " " << p.label(y) << " " << p.label(z) << "\n";
    for (int t = 0; t < p.size(); ++t)
        if (has(m.unit_mask(), t)) os << "unit " << p.label(t) << "\n";
    return os.str();
}

/// Serializes a prelation with its two carriers; all related pairs are
/// emitted, so reloading reproduces the closure exactly.
inline std::string serialize_prelation(const Prelation& f, const std::string& dom_name = "A",
                                       const std::string& cod_name = "B") {
    std::ostringstream os;
    os << serialize_preorder(f.dom(), dom_name);
    os << serialize_preorder(f.cod(), cod_name);
    os << "@prelation " << dom_name << " " << cod_name << "\n";
    for (int x = 0; x < f.dom().size(); ++x)
        for (int y = 0; y < f.cod().size(); ++y)
            if (f.at(x, y))
                os << "rel " << f.dom().label(x) << " " << f.cod().label(y) << "\n";
    return os.str();
}

}  // namespace prelab
