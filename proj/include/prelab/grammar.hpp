#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "prelab/preorder.hpp"

namespace prelab::grammar {

inline constexpr int kDefaultExponentWindow = 3;

/// A basic type with an iterated-adjoint exponent: ..., -1 = l, 0 = plain,
/// +1 = r, ...
struct SimpleType {
    int base = 0;
    int exp = 0;

    friend bool operator==(const SimpleType& a, const SimpleType& b) {
        return a.base == b.base && a.exp == b.exp;
    }
    friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

using TypeString = std::vector<SimpleType>;

/// Word-to-types assignments over an ordered set of basic types.
/// The base order is stored in the core convention; the grammar-side order
/// is bridged by base_leq(p,q) = derr(q,p) (a single global transpose,
/// pinned by the transitive-verb example).
class Lexicon {
public:
    std::vector<std::string> basics;
    Preorder base_order;  // core-convention preorder on basic ids
    std::vector<std::pair<std::string, TypeString>> entries;  // file order
    int target = -1;
    int window = kDefaultExponentWindow;

    bool base_leq(int p, int q) const { return base_order.derr(q, p); }

    int basic_id(const std::string& name) const {
        for (std::size_t i = 0; i < basics.size(); ++i)
            if (basics[i] == name) return static_cast<int>(i);
        return -1;
    }

    std::vector<const TypeString*> entries_for(const std::string& word) const {
        std::vector<const TypeString*> out;
        for (const auto& [w, t] : entries)
            if (w == word) out.push_back(&t);
        return out;
    }
};

/// Parses a whitespace-separated sequence of simple-type tokens:
/// `n`, `n^l`, `n^rr`, `n^(-2)`.
inline TypeString parse_type(const std::string& text, const Lexicon& lex) {
    TypeString out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::string base = tok;
        int exp = 0;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            std::string suffix = tok.substr(caret + 1);
            if (suffix.empty()) throw InvalidInput("type token '" + tok + "': empty suffix");
            if (suffix.front() == '(') {
                if (suffix.back() != ')')
                    throw InvalidInput("type token '" + tok + "': unbalanced parenthesis");
                std::string num = suffix.substr(1, suffix.size() - 2);
                // tolerate the unicode minus sign
                std::string ascii;
                for (std::size_t i = 0; i < num.size();) {
                    if (num.compare(i, 3, "\xe2\x88\x92") == 0) { ascii += '-'; i += 3; }
                    else ascii += num[i++];
                }
                std::size_t pos = 0;
                try {
                    exp = std::stoi(ascii, &pos);
                } catch (const std::exception&) {
                    throw InvalidInput("type token '" + tok + "': malformed exponent");
                }
                if (pos != ascii.size())
                    throw InvalidInput("type token '" + tok + "': malformed exponent");
            } else {
                for (char c : suffix) {
                    if (c == 'l') --exp;
                    else if (c == 'r') ++exp;
                    else throw InvalidInput("type token '" + tok + "': malformed suffix");
                }
            }
        }
        int id = lex.basic_id(base);
        if (id < 0) throw InvalidInput("undeclared basic type '" + base + "'");
        if (exp < -lex.window || exp > lex.window)
            throw InvalidInput("type token '" + tok + "': exponent outside window");
        out.push_back({id, exp});
    }
    return out;
}

/// The generalized contraction rule: a b vanishes when b's exponent is one
/// above a's and the bases compare in the parity-twisted order.
inline bool contracts(const SimpleType& a, const SimpleType& b, const Lexicon& lex) {
    if (b.exp != a.exp + 1) return false;
    bool even = ((a.exp % 2) + 2) % 2 == 0;
    return even ? lex.base_leq(a.base, b.base) : lex.base_leq(b.base, a.base);
}

/// A contraction-only recognition witness: a non-crossing perfect matching of
/// all positions except one residual, whose type reduces to the target.
struct ReductionTrace {
    std::vector<std::pair<int, int>> links;  // 0-indexed (i,j), i<j, sorted by i
    int residual = -1;
    std::vector<int> lexical_choice;  // per word, index into entries_for(word)
};

/// Validates the ReductionTrace invariants against a concrete type string.
inline bool check_trace(const ReductionTrace& tr, const TypeString& ts, const Lexicon& lex,
                        int target) {
    int n = static_cast<int>(ts.size());
    if (tr.residual < 0 || tr.residual >= n) return false;
    std::vector<int> used(n, 0);
    used[tr.residual] = 1;
    for (auto [i, j] : tr.links) {
        if (i < 0 || j >= n || i >= j) return false;
        if (used[i] || used[j]) return false;
        used[i] = used[j] = 1;
        if (!contracts(ts[i], ts[j], lex)) return false;
    }
    for (int k = 0; k < n; ++k)
        if (!used[k]) return false;
    for (auto [i, j] : tr.links)
        for (auto [k, l] : tr.links)
            if (i < k && k < j && j < l) return false;
    return ts[tr.residual].exp == 0 && lex.base_leq(ts[tr.residual].base, target);
}

namespace detail {

/// Interval DP: can [i,j) contract away entirely?
class Nullable {
public:
    Nullable(const TypeString& ts, const Lexicon& lex) : ts_(ts), lex_(lex) {
        int n = static_cast<int>(ts.size());
        memo_.assign(static_cast<std::size_t>(n + 1) * (n + 1), -1);
    }

    bool operator()(int i, int j) {
        if (((j - i) & 1) != 0) return false;
        if (i == j) return true;
        int n = static_cast<int>(ts_.size());
        int& m = memo_[static_cast<std::size_t>(i) * (n + 1) + j];
        if (m >= 0) return m != 0;
        bool ok = false;
        for (int k = i + 1; k < j && !ok; k += 2)
            if (contracts(ts_[i], ts_[k], lex_) && (*this)(i + 1, k) && (*this)(k + 1, j))
                ok = true;
        m = ok ? 1 : 0;
        return ok;
    }

    void links(int i, int j, std::vector<std::pair<int, int>>& out) {
        if (i == j) return;
        for (int k = i + 1; k < j; k += 2)
            if (contracts(ts_[i], ts_[k], lex_) && (*this)(i + 1, k) && (*this)(k + 1, j)) {
                out.push_back({i, k});
                links(i + 1, k, out);
                links(k + 1, j, out);
                return;
            }
    }

private:
    const TypeString& ts_;
    const Lexicon& lex_;
    std::vector<int> memo_;
};

}  // namespace detail

/// Recognition of a bare type string: some non-crossing contraction matching
/// leaves a single residual related to the target.
inline std::optional<ReductionTrace> recognize_string(const TypeString& ts, const Lexicon& lex,
                                                      int target) {
    if (ts.empty()) throw InvalidInput("recognize: empty type string");
    int n = static_cast<int>(ts.size());
    detail::Nullable nullable(ts, lex);
    for (int r = 0; r < n; ++r) {
        if (ts[r].exp != 0 || !lex.base_leq(ts[r].base, target)) continue;
        if (!nullable(0, r) || !nullable(r + 1, n)) continue;
        ReductionTrace tr;
        tr.residual = r;
        nullable.links(0, r, tr.links);
        nullable.links(r + 1, n, tr.links);
        std::sort(tr.links.begin(), tr.links.end());
        return tr;
    }
    return std::nullopt;
}

namespace detail {

template <typename Fn>
bool for_each_choice(const Lexicon& lex, const std::vector<std::string>& words, Fn&& fn) {
    std::vector<std::vector<const TypeString*>> options;
    for (const auto& w : words) {
        options.push_back(lex.entries_for(w));
        if (options.back().empty()) throw InvalidInput("unknown word '" + w + "'");
    }
    std::vector<int> choice(words.size(), 0);
    while (true) {
        TypeString ts;
        std::vector<int> word_start;
        for (std::size_t i = 0; i < words.size(); ++i) {
            word_start.push_back(static_cast<int>(ts.size()));
            const TypeString& t = *options[i][choice[i]];
            ts.insert(ts.end(), t.begin(), t.end());
        }
        if (fn(ts, choice)) return true;
        int i = static_cast<int>(words.size()) - 1;
        while (i >= 0) {
            if (++choice[i] < static_cast<int>(options[i].size())) break;
            choice[i] = 0;
            --i;
        }
        if (i < 0) return false;
    }
}

}  // namespace detail

/// Sentence recognition: lexical ambiguity is explored by backtracking over
/// per-word entry choices in file order; the first accepting trace wins.
inline std::optional<ReductionTrace> recognize(const Lexicon& lex,
                                               const std::vector<std::string>& words) {
    if (words.empty()) throw InvalidInput("recognize: empty sentence");
    if (lex.target < 0) throw InvalidInput("recognize: lexicon has no target");
    std::optional<ReductionTrace> result;
    detail::for_each_choice(lex, words, [&](const TypeString& ts, const std::vector<int>& ch) {
        auto tr = recognize_string(ts, lex, lex.target);
        if (!tr) return false;
        tr->lexical_choice = ch;
        result = std::move(tr);
        return true;
    });
    return result;
}

/// Every accepting (lexical choice, residual) with its canonical trace.
inline std::vector<ReductionTrace> recognize_all(const Lexicon& lex,
                                                 const std::vector<std::string>& words) {
    if (words.empty()) throw InvalidInput("recognize: empty sentence");
    std::vector<ReductionTrace> out;
    detail::for_each_choice(lex, words, [&](const TypeString& ts, const std::vector<int>& ch) {
        int n = static_cast<int>(ts.size());
        detail::Nullable nullable(ts, lex);
        for (int r = 0; r < n; ++r) {
            if (ts[r].exp != 0 || !lex.base_leq(ts[r].base, lex.target)) continue;
            if (!nullable(0, r) || !nullable(r + 1, n)) continue;
            ReductionTrace tr;
            tr.residual = r;
            nullable.links(0, r, tr.links);
            nullable.links(r + 1, n, tr.links);
            std::sort(tr.links.begin(), tr.links.end());
            tr.lexical_choice = ch;
            out.push_back(std::move(tr));
        }
        return false;
    });
    return out;
}

inline constexpr int kOracleLengthLimit = 8;

/// Independent oracle: exhaustive search over all sequences of single
/// adjacent-pair contraction deletions, no DP and no planarity assumption.
inline bool oracle_reduces(const TypeString& ts, const Lexicon& lex, int target,
                           int length_limit = kOracleLengthLimit) {
    if (static_cast<int>(ts.size()) > length_limit)
        throw LimitExceeded("oracle_recognize: type string longer than " +
                            std::to_string(length_limit));
    std::set<TypeString> seen;
    std::function<bool(const TypeString&)> go = [&](const TypeString& s) -> bool {
        if (s.size() == 1)
            return s[0].exp == 0 && lex.base_leq(s[0].base, target);
        if (s.size() < 1) return false;
        if (!seen.insert(s).second) return false;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (!contracts(s[i], s[i + 1], lex)) continue;
            TypeString next;
            next.reserve(s.size() - 2);
            next.insert(next.end(), s.begin(), s.begin() + i);
            next.insert(next.end(), s.begin() + i + 2, s.end());
            if (next.empty()) continue;
            if (go(next)) return true;
        }
        return false;
    };
    return go(ts);
}

inline bool oracle_recognize(const Lexicon& lex, const std::vector<std::string>& words,
                             int length_limit = kOracleLengthLimit) {
    if (words.empty()) throw InvalidInput("oracle_recognize: empty sentence");
    if (lex.entries.empty()) throw InvalidInput("oracle_recognize: empty lexicon");
    bool found = false;
    detail::for_each_choice(lex, words, [&](const TypeString& ts, const std::vector<int>&) {
        if (oracle_reduces(ts, lex, lex.target, length_limit)) { found = true; return true; }
        return false;
    });
    return found;
}

// ---------------------------------------------------------------------------
// rendering

inline std::string type_token(const SimpleType& t, const Lexicon& lex) {
    std::string s = lex.basics[t.base];
    if (t.exp == -1) s += "^l";
    else if (t.exp == 1) s += "^r";
    else if (t.exp != 0) s += "^(" + std::to_string(t.exp) + ")";
    return s;
}

/// Types on the first line, one arc line per nesting depth below (innermost
/// first), arcs drawn as \___/ under the linked tokens.
inline std::string render_trace(const ReductionTrace& tr, const TypeString& ts,
                                const Lexicon& lex) {
    int n = static_cast<int>(ts.size());
    for (auto [i, j] : tr.links)
        if (i < 0 || j >= n || i >= j) throw InvalidInput("render_trace: inconsistent trace");
    std::vector<int> col(n, 0);
    std::string header;
    for (int i = 0; i < n; ++i) {
        if (i) header += ' ';
        col[i] = static_cast<int>(header.size());
        header += type_token(ts[i], lex);
    }
    std::vector<int> depth(tr.links.size(), 0);
    int maxdepth = -1;
    for (std::size_t a = 0; a < tr.links.size(); ++a) {
        for (std::size_t b = 0; b < tr.links.size(); ++b)
            if (tr.links[b].first < tr.links[a].first && tr.links[a].second < tr.links[b].second)
                ++depth[a];
        maxdepth = std::max(maxdepth, depth[a]);
    }
    std::string out = header;
    for (int d = maxdepth; d >= 0; --d) {  // innermost arcs nearest the types
        std::string line(header.size(), ' ');
        for (std::size_t a = 0; a < tr.links.size(); ++a) {
            if (depth[a] != d) continue;
            auto [i, j] = tr.links[a];
            line[col[i]] = '\\';
            line[col[j]] = '/';
            for (int c = col[i] + 1; c < col[j]; ++c) line[c] = '_';
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += '\n' + line;
    }
    return out;
}

/// Re-parses the arcs of a rendering (each line holds disjoint \___/ pairs)
/// back to column pairs; used by the rendering tests.
inline std::vector<std::pair<int, int>> parse_arcs(const std::string& rendering) {
    std::vector<std::pair<int, int>> arcs;
    std::istringstream in(rendering);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        int open = -1;
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (line[c] == '\\') open = static_cast<int>(c);
            if (line[c] == '/') {
                if (open < 0) throw InvalidInput("parse_arcs: stray '/'");
                arcs.push_back({open, static_cast<int>(c)});
                open = -1;
            }
        }
        if (open >= 0) throw InvalidInput("parse_arcs: unterminated arc");
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

// ---------------------------------------------------------------------------
// lexicon file

/// Lexicon file format:
///   @types n s
///   @order        (optional block of `p <= q` lines)
///   @lex          (block of `word : type-string` lines, repeatable per word)
///   @target s
/// '#' starts a comment; blank lines are skipped.
inline Lexicon parse_lexicon(const std::string& text, int window = kDefaultExponentWindow) {
    Lexicon lex;
    lex.window = window;
    std::vector<std::pair<int, int>> order_gens;
    enum class Block { None, Order, Lex };
    Block block = Block::None;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_types = false;
    std::vector<std::pair<std::string, std::string>> raw_entries;
    std::string target_name;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        auto fail = [&](const std::string& msg) {
            throw InvalidInput("lexicon line " + std::to_string(lineno) + ": " + msg);
        };
        if (first == "@types") {
            std::string name;
            while (ls >> name) {
                if (lex.basic_id(name) >= 0) fail("duplicate basic type '" + name + "'");
                lex.basics.push_back(name);
            }
            if (lex.basics.empty()) fail("@types needs at least one basic type");
            have_types = true;
            block = Block::None;
        } else if (first == "@order") {
            block = Block::Order;
        } else if (first == "@lex") {
            block = Block::Lex;
        } else if (first == "@target") {
            if (!(ls >> target_name)) fail("@target needs a basic type");
            block = Block::None;
        } else if (first[0] == '@') {
            fail("unknown directive '" + first + "'");
        } else if (block == Block::Order) {
            std::string le, rhs;
            if (!(ls >> le >> rhs) || le != "<=") fail("expected 'p <= q'");
            if (!have_types) fail("@order before @types");
            int p = lex.basic_id(first), q = lex.basic_id(rhs);
            if (p < 0 || q < 0) fail("undeclared basic type in @order");
            order_gens.push_back({q, p});  // base_leq(p,q) = derr(q,p)
        } else if (block == Block::Lex) {
            std::string colon;
            if (!(ls >> colon) || colon != ":") fail("expected 'word : types'");
            std::string rest;
            std::getline(ls, rest);
            raw_entries.push_back({first, rest});
        } else {
            fail("content outside any block");
        }
    }
    if (!have_types) throw InvalidInput("lexicon: missing @types");
    lex.base_order = Preorder::close(static_cast<int>(lex.basics.size()), order_gens,
                                     lex.basics);
    for (auto& [word, types] : raw_entries) {
        TypeString ts = parse_type(types, lex);
        if (ts.empty()) throw InvalidInput("lexicon: empty type for word '" + word + "'");
        lex.entries.push_back({word, std::move(ts)});
    }
    if (target_name.empty()) throw InvalidInput("lexicon: missing @target");
    lex.target = lex.basic_id(target_name);
    if (lex.target < 0) throw InvalidInput("lexicon: undeclared target type");
    return lex;
}

}  // namespace prelab::grammar
