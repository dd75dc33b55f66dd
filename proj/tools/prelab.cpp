// prelab: a laboratory for preordered relations, prelational monoids and
// free-pregroup recognition.
//
// Subcommands: check, adjoints, decompose, verify, enumerate, parse.
// Machine output is sorted-key JSON; --pretty switches to a human summary.
// Exit codes: 0 success/accept, 1 negative verdict, 2 malformed input.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "prelab/report.hpp"

using namespace prelab;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct OutputOptions {
    std::string out_path;
    bool pretty = false;
    bool timing = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out_path, "write the JSON report to a file");
    cmd->add_flag("--pretty", o.pretty, "human-readable summary on stdout");
    cmd->add_flag("--timing", o.timing, "include timing_ms in the report");
}

void emit(const json& report, const OutputOptions& o, const std::string& pretty_text) {
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        f << report.dump(2) << "\n";
    }
    if (o.pretty)
        std::cout << pretty_text;
    else
        std::cout << report.dump(2) << "\n";
}

int size_limit_override(int fallback) {
    if (const char* env = std::getenv("PRELAB_SIZE_LIMIT")) {
        try {
            return std::max(fallback, std::stoi(env));
        } catch (const std::exception&) {
            throw InvalidInput("PRELAB_SIZE_LIMIT is not an integer");
        }
    }
    return fallback;
}

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

PlugSemantics semantics_from(const std::string& name) {
    if (name == "polar") return PlugSemantics::Polar;
    if (name == "direct") return PlugSemantics::Direct;
    throw InvalidInput("unknown residual semantics '" + name + "'");
}

const PrelMonoid& first_monoid(const StructFile& sf) {
    if (sf.monoids.empty()) throw InvalidInput("structure file contains no @monoid");
    return sf.monoids.front().second;
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& path, const OutputOptions& o, const std::string& sem_name) {
    Timer timer;
    std::string text = read_file(path);
    StructFile sf = parse_structure(text);
    const PrelMonoid& m = first_monoid(sf);
    PropertyVector v = classify(m, semantics_from(sem_name));
    json rep;
    rep["subcommand"] = "check";
    rep["input"] = input_digest(text);
    rep["properties"] = to_json(v);
    if (o.timing) rep["timing_ms"] = timer.ms();
    std::ostringstream pretty;
    pretty << path << ": " << class_signature(v) << "\n";
    if (v.counterexample)
        pretty << "  counterexample [" << v.counterexample->condition << "] at "
               << detail::tuple_str(v.counterexample->tuple) << "\n";
    emit(rep, o, pretty.str());
    return 0;
}

int cmd_adjoints(const std::string& path, const OutputOptions& o) {
    Timer timer;
    std::string text = read_file(path);
    StructFile sf = parse_structure(text);
    const PrelMonoid& m = first_monoid(sf);
    auto pg = pregroup_adjoints(m);
    json rep;
    rep["subcommand"] = "adjoints";
    rep["input"] = input_digest(text);
    rep["pregroup"] = pg.has_value();
    std::ostringstream pretty;
    if (pg) {
        rep["structure"] = to_json(*pg, m.carrier());
        pretty << "pregroup with unit " << m.carrier().label(pg->unit_elem) << "\n";
        for (int x = 0; x < m.size(); ++x)
            pretty << "  " << m.carrier().label(x) << "^l = " << m.carrier().label(pg->ell[x])
                   << ", " << m.carrier().label(x) << "^r = " << m.carrier().label(pg->arr[x])
                   << "\n";
    } else {
        int bad = first_unadjoined(m);
        if (bad >= 0) {
            rep["first_unadjoined"] = m.carrier().label(bad);
            pretty << "no pregroup structure: element " << m.carrier().label(bad)
                   << " has no adjoint pair\n";
        } else {
            rep["first_unadjoined"] = nullptr;
            pretty << "no pregroup structure: the monoid is not representable\n";
        }
    }
    if (o.timing) rep["timing_ms"] = timer.ms();
    emit(rep, o, pretty.str());
    return pg ? 0 : 1;
}

int cmd_decompose(const std::string& path, const std::string& emit_prefix,
                  const OutputOptions& o) {
    Timer timer;
    std::string text = read_file(path);
    StructFile sf = parse_structure(text);
    const PrelMonoid& m = first_monoid(sf);
    json rep;
    rep["subcommand"] = "decompose";
    rep["input"] = input_digest(text);
    std::ostringstream pretty;
    int rc = 0;
    try {
        Covering cov = pregroup_cover(m);
        rep["covering"] = to_json(cov);
        pretty << cov.components.size() << " component(s)\n";
        for (const auto& c : cov.components) {
            pretty << "  base " << m.carrier().label(c.basepoint) << ": {";
            for (std::size_t i = 0; i < c.elements.size(); ++i)
                pretty << (i ? " " : "") << m.carrier().label(c.elements[i]);
            pretty << "}\n";
        }
        if (!emit_prefix.empty()) {
            json emitted = json::array();
            for (std::size_t i = 0; i < cov.components.size(); ++i) {
                std::string comp_path = emit_prefix + std::to_string(i) + ".struct";
                std::ofstream f(comp_path);
                f << serialize_monoid(cov.components[i].sub);
                emitted.push_back(comp_path);
            }
            rep["emitted"] = emitted;
        }
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        pretty << "not decomposable: " << e.what() << "\n";
        rc = 1;
    }
    if (o.timing) rep["timing_ms"] = timer.ms();
    emit(rep, o, pretty.str());
    return rc;
}

int cmd_verify(int general_size, int representable_size, const std::string& mode, int jobs,
               const OutputOptions& o) {
    Timer timer;
    VerifyConfig cfg;
    cfg.general_size = general_size;
    cfg.representable_size = representable_size;
    if (mode == "general") cfg.representable_size = 0;
    else if (mode == "representable") cfg.general_size = 0;
    else if (mode != "all") throw InvalidInput("unknown verify mode '" + mode + "'");
    cfg.jobs = jobs;
    cfg.general_limit = size_limit_override(kGeneralSizeLimit);
    cfg.representable_limit = size_limit_override(kRepresentableSizeLimit);
    cfg.preorder_limit = size_limit_override(kEnumeratePreordersLimit);
    VerifyReport rep = run_verify(cfg);
    json j = to_json(rep);
    j["subcommand"] = "verify";
    if (o.timing) j["timing_ms"] = timer.ms();
    std::ostringstream pretty;
    pretty << rep.subjects << " subjects, " << rep.spiders << " spiders, "
           << rep.violations.size() << " violation(s); semantics: " << rep.selected_semantics
           << "\n";
    emit(j, o, pretty.str());
    return rep.passed() ? 0 : 1;
}

int cmd_enumerate(int size, const std::string& mode, std::uint64_t seed, int count,
                  const OutputOptions& o) {
    Timer timer;
    CatalogConfig cfg;
    cfg.size = size;
    cfg.seed = seed;
    cfg.count = count;
    cfg.general_limit = size_limit_override(kGeneralSizeLimit);
    cfg.representable_limit = size_limit_override(kRepresentableSizeLimit);
    cfg.sampled_limit = size_limit_override(kSampledSizeLimit);
    cfg.preorder_limit = size_limit_override(kEnumeratePreordersLimit);
    if (mode == "general") cfg.mode = EnumMode::General;
    else if (mode == "representable") cfg.mode = EnumMode::Representable;
    else if (mode == "sampled") cfg.mode = EnumMode::Sampled;
    else throw InvalidInput("unknown mode '" + mode + "'");
    CatalogReport rep = catalog(cfg);
    json j = to_json(rep);
    j["subcommand"] = "enumerate";
    if (o.timing) j["timing_ms"] = timer.ms();
    std::ostringstream pretty;
    pretty << rep.generated << " structures";
    if (!rep.complete) pretty << " (incomplete)";
    pretty << ", " << rep.violations.size() << " violation(s)\n";
    for (const auto& [cls, cnt] : rep.class_counts)
        pretty << "  " << cls << ": " << cnt << "\n";
    for (const auto& d : rep.discrepancies) pretty << "  discrepancy: " << d << "\n";
    emit(j, o, pretty.str());
    return rep.violations.empty() ? 0 : 1;
}

int cmd_parse(const std::string& lexicon_path, const std::vector<std::string>& words,
              bool trace, bool all, int window, const OutputOptions& o) {
    Timer timer;
    std::string text = read_file(lexicon_path);
    grammar::Lexicon lex = grammar::parse_lexicon(text, window);
    json rep;
    rep["subcommand"] = "parse";
    rep["input"] = input_digest(text);
    rep["sentence"] = words;
    std::ostringstream pretty;
    int rc;
    if (all) {
        auto traces = grammar::recognize_all(lex, words);
        rep["accepted"] = !traces.empty();
        json jt = json::array();
        for (const auto& tr : traces) jt.push_back(to_json(tr));
        rep["traces"] = jt;
        rc = traces.empty() ? 1 : 0;
        pretty << (traces.empty() ? "reject" : "accept") << " (" << traces.size()
               << " trace(s))\n";
        (void)trace;  // --all prints every trace
        for (const auto& tr : traces) {
            grammar::TypeString ts;
            std::size_t w = 0;
            for (const auto& word : words) {
                const auto& t = *lex.entries_for(word)[tr.lexical_choice[w++]];
                ts.insert(ts.end(), t.begin(), t.end());
            }
            pretty << grammar::render_trace(tr, ts, lex) << "\n";
        }
    } else {
        auto tr = grammar::recognize(lex, words);
        rep["accepted"] = tr.has_value();
        if (tr) rep["trace"] = to_json(*tr);
        rc = tr ? 0 : 1;
        pretty << (tr ? "accept" : "reject") << "\n";
        if (tr && trace) {
            grammar::TypeString ts;
            std::size_t w = 0;
            for (const auto& word : words) {
                const auto& t = *lex.entries_for(word)[tr->lexical_choice[w++]];
                ts.insert(ts.end(), t.begin(), t.end());
            }
            pretty << grammar::render_trace(*tr, ts, lex) << "\n";
        }
    }
    if (o.timing) rep["timing_ms"] = timer.ms();
    emit(rep, o, pretty.str());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prelab: finite preordered-relation laboratory"};
    app.require_subcommand(1);

    OutputOptions out;

    auto* check = app.add_subcommand("check", "classify a structure file");
    std::string check_file;
    std::string check_sem = "polar";
    check->add_option("file", check_file)->required();
    check->add_option("--residual-semantics", check_sem,
                      "plugging semantics: polar (selected) or direct (debug)");
    add_output_options(check, out);

    auto* adjoints = app.add_subcommand("adjoints", "pregroup adjoint tables");
    std::string adj_file;
    adjoints->add_option("file", adj_file)->required();
    add_output_options(adjoints, out);

    auto* decompose = app.add_subcommand("decompose", "pregroup covering of a spider");
    std::string dec_file, dec_emit;
    decompose->add_option("file", dec_file)->required();
    decompose->add_option("--emit-components", dec_emit,
                          "write each component as PREFIX<i>.struct");
    add_output_options(decompose, out);

    auto* verify = app.add_subcommand("verify", "run the theorem sweep");
    int v_general = 2, v_repr = 3, v_jobs = 1;
    std::string v_mode = "all";
    verify->add_option("--size", v_general, "general-mode carrier size bound");
    verify->add_option("--representable-size", v_repr, "representable-mode size bound");
    verify->add_option("--mode", v_mode, "all | general | representable");
    verify->add_option("--jobs", v_jobs, "worker threads (result is independent of this)");
    add_output_options(verify, out);

    auto* enumerate = app.add_subcommand("enumerate", "catalog of monoid structures");
    int e_size = 2, e_count = 100;
    std::string e_mode = "general";
    std::uint64_t e_seed = 0;
    enumerate->add_option("--size", e_size, "carrier size bound");
    enumerate->add_option("--mode", e_mode, "general | representable | sampled");
    enumerate->add_option("--seed", e_seed, "sampling seed");
    enumerate->add_option("--count", e_count, "sampled structures per preorder");
    add_output_options(enumerate, out);

    auto* parse = app.add_subcommand("parse", "free-pregroup sentence recognition");
    std::string lex_file;
    std::vector<std::string> words;
    bool p_trace = false, p_all = false;
    int p_window = grammar::kDefaultExponentWindow;
    parse->add_option("--lexicon", lex_file, "lexicon file")->required();
    parse->add_option("words", words, "sentence words")->required();
    parse->add_flag("--trace", p_trace, "print the reduction links");
    parse->add_flag("--all", p_all, "enumerate every trace");
    parse->add_option("--window", p_window, "adjoint exponent window");
    add_output_options(parse, out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(check_file, out, check_sem);
        if (adjoints->parsed()) return cmd_adjoints(adj_file, out);
        if (decompose->parsed()) return cmd_decompose(dec_file, dec_emit, out);
        if (verify->parsed()) return cmd_verify(v_general, v_repr, v_mode, v_jobs, out);
        if (enumerate->parsed()) return cmd_enumerate(e_size, e_mode, e_seed, e_count, out);
        if (parse->parsed()) return cmd_parse(lex_file, words, p_trace, p_all, p_window, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
