#include "morselab/presentations.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace morselab {

std::string family_name(Family f) {
    switch (f) {
        case Family::Free: return "free";
        case Family::FreeAbelian: return "free-abelian";
        case Family::Raag: return "raag";
        case Family::ClassicalSC: return "classical-sc";
        case Family::GraphicalSC: return "graphical-sc";
    }
    return "?";
}

int GroupSpec::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return static_cast<int>(i);
    return -1;
}

bool GroupSpec::compact_names() const {
    for (const auto& g : generators)
        if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0]))) return false;
    return true;
}

Word GroupSpec::word_from_text(const std::string& text) const {
    Word w;
    const int n = generator_count();
    bool token_mode = text.find_first_of(" \t^") != std::string::npos || !compact_names();
    if (!token_mode) {
        for (size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            bool inv = std::isupper(static_cast<unsigned char>(c));
            std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            int idx = generator_index(name);
            if (idx < 0) throw InputError("unknown generator '" + std::string(1, c) + "' in word");
            w.push_back(static_cast<char>(inv ? idx + n : idx));
        }
        return w;
    }
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        int idx = generator_index(tok);
        if (idx < 0 && tok.size() == 1 && std::isupper(static_cast<unsigned char>(tok[0]))) {
            idx = generator_index(std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])))));
            inv = true;
        }
        if (idx < 0) throw InputError("unknown generator '" + tok + "' in word");
        w.push_back(static_cast<char>(inv ? idx + n : idx));
    }
    return w;
}

std::string GroupSpec::letter_name(Letter l) const {
    const int n = generator_count();
    const std::string& g = generators[letter_gen(l, n)];
    if (compact_names()) {
        if (letter_is_inverse(l, n)) return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(g[0]))));
        return g;
    }
    return letter_is_inverse(l, n) ? g + "^-1" : g;
}

std::string GroupSpec::word_to_text(const Word& w) const {
    std::string out;
    bool compact = compact_names();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i) out += ' ';
        out += letter_name(static_cast<Letter>(w[i]));
    }
    return out;
}

// --- derived data ----------------------------------------------------------

void GroupSpec::finalize() {
    const int n = generator_count();
    if (n == 0) throw InputError("presentation has no generators");
    if (generators.size() > kMaxGenerators) throw InputError("too many generators");
    {
        std::set<std::string> uniq(generators.begin(), generators.end());
        if (uniq.size() != generators.size()) throw InputError("duplicate generator name");
    }
    if (raag_adj.empty()) raag_adj.assign(n, std::vector<bool>(n, false));

    if (family == Family::ClassicalSC || family == Family::GraphicalSC) {
        if (!(Rational(0) < lambda && lambda < Rational(1)))
            throw InputError("lambda must lie in (0,1)");

        internal_relators_.clear();
        if (family == Family::ClassicalSC) {
            for (Word r : relators) {
                r = cyclic_reduce(r, n);
                if (!r.empty()) internal_relators_.push_back(r);
            }
        } else {
            auto stats = component_stats(graph);
            int cap = graphical_cycle_length_cap;
            if (cap <= 0) {
                cap = 0;
                for (const auto& st : stats)
                    if (st.girth > 0) cap = std::max(cap, 2 * st.girth);
            }
            auto cycles = simple_cycles(graph, graphical_cycle_cap, cap);
            for (const auto& cyc : cycles) {
                Word r = cyclic_reduce(cycle_label(graph, cyc, n), n);
                if (!r.empty()) internal_relators_.push_back(r);
            }
        }

        // Symmetrize: all rotations of each relator and of its inverse.
        std::set<Word> symm;
        for (const Word& r : internal_relators_) {
            Word inv = invert_word(r, n);
            for (size_t k = 0; k < r.size(); ++k) {
                symm.insert(free_reduce(cyclic_rotate(r, k), n));
                symm.insert(free_reduce(cyclic_rotate(inv, k), n));
            }
        }
        symm.erase(Word());
        symm_relators_.assign(symm.begin(), symm.end());

        relators_by_first_.assign(2 * n, {});
        for (int32_t i = 0; i < static_cast<int32_t>(symm_relators_.size()); ++i)
            relators_by_first_[static_cast<Letter>(symm_relators_[i][0])].push_back(i);

        half_swaps_.clear();
        for (const Word& r : symm_relators_) {
            if (r.size() % 2 != 0) continue;
            size_t h = r.size() / 2;
            Word head = r.substr(0, h);
            Word repl = invert_word(r.substr(h), n);
            half_swaps_.emplace_back(head, repl);
        }
        std::sort(half_swaps_.begin(), half_swaps_.end());
        half_swaps_.erase(std::unique(half_swaps_.begin(), half_swaps_.end()), half_swaps_.end());
    }
}

// --- normal forms ------------------------------------------------------------

Word GroupSpec::abelian_normal_form(const Word& w) const {
    const int n = generator_count();
    std::vector<long long> exp(n, 0);
    for (char c : w) {
        auto l = static_cast<Letter>(c);
        exp[letter_gen(l, n)] += letter_is_inverse(l, n) ? -1 : 1;
    }
    Word out;
    for (int i = 0; i < n; ++i) {
        char pos = static_cast<char>(i), neg = static_cast<char>(i + n);
        for (long long k = 0; k < (exp[i] > 0 ? exp[i] : -exp[i]); ++k)
            out.push_back(exp[i] > 0 ? pos : neg);
    }
    return out;
}

namespace {

// Dependence for the commutation monoid: two letters are independent iff they
// involve distinct generators joined by an edge.
inline bool independent(Letter a, Letter b, int n, const std::vector<std::vector<bool>>& adj) {
    int ga = letter_gen(a, n), gb = letter_gen(b, n);
    if (ga == gb) return false;
    return adj[ga][gb];
}

} // namespace

Word GroupSpec::raag_normal_form(const Word& w) const {
    const int n = generator_count();
    Word cur = w;
    // Shuffle-cancel to a fixpoint: delete pairs w[i] = w[j]^-1 whenever all
    // letters strictly between commute with w[i].
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cur.size() && !changed; ++i) {
            for (size_t j = i + 1; j < cur.size(); ++j) {
                auto a = static_cast<Letter>(cur[i]);
                auto b = static_cast<Letter>(cur[j]);
                if (letters_cancel(a, b, n)) {
                    bool clear = true;
                    for (size_t k = i + 1; k < j && clear; ++k)
                        clear = independent(a, static_cast<Letter>(cur[k]), n, raag_adj);
                    if (clear) {
                        cur.erase(cur.begin() + j);
                        cur.erase(cur.begin() + i);
                        changed = true;
                        break;
                    }
                }
                if (!independent(static_cast<Letter>(cur[i]), static_cast<Letter>(cur[j]), n, raag_adj) &&
                    letter_gen(static_cast<Letter>(cur[i]), n) != letter_gen(static_cast<Letter>(cur[j]), n))
                    break; // a dependent barrier: nothing past j can reach i
            }
        }
    }
    // Lexicographically least linearization of the trace: repeatedly emit the
    // smallest letter whose earlier letters all commute with it.
    Word out;
    std::vector<bool> used(cur.size(), false);
    for (size_t step = 0; step < cur.size(); ++step) {
        int best = -1;
        for (size_t i = 0; i < cur.size(); ++i) {
            if (used[i]) continue;
            bool available = true;
            for (size_t k = 0; k < i && available; ++k)
                if (!used[k]) available = independent(static_cast<Letter>(cur[i]), static_cast<Letter>(cur[k]), n, raag_adj);
            if (!available) continue;
            if (best == -1 || static_cast<Letter>(cur[i]) < static_cast<Letter>(cur[best])) best = static_cast<int>(i);
        }
        used[best] = true;
        out.push_back(cur[best]);
    }
    return out;
}

// --- small cancellation ------------------------------------------------------

Word GroupSpec::dehn_reduce(const Word& w) const {
    const int n = generator_count();
    Word cur = free_reduce(w, n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cur.size() && !changed; ++i) {
            size_t best_m = 0;
            int32_t best_r = -1;
            for (int32_t ri : relators_by_first_[static_cast<Letter>(cur[i])]) {
                const Word& r = symm_relators_[ri];
                size_t m = 0;
                while (m < r.size() && i + m < cur.size() && r[m] == cur[i + m]) ++m;
                if (2 * m > r.size() && m > best_m) {
                    best_m = m;
                    best_r = ri;
                }
            }
            if (best_r >= 0) {
                const Word& r = symm_relators_[best_r];
                Word repl = invert_word(r.substr(best_m), n);
                cur = free_reduce(cur.substr(0, i) + repl + cur.substr(i + best_m), n);
                changed = true;
            }
        }
    }
    return cur;
}

namespace {
constexpr size_t kClosureCap = 200000;
}

// Canonical representative: ShortLex-least word reachable from the Dehn
// reduction by exact-half relator swaps, restarting whenever a swap opens a
// shorter reduction.
Word GroupSpec::sc_canonical_form(const Word& w) const {
    Word start = dehn_reduce(w);
restart:
    std::set<Word> visited;
    std::deque<Word> queue;
    visited.insert(start);
    queue.push_back(start);
    Word best = start;
    while (!queue.empty()) {
        Word cur = queue.front();
        queue.pop_front();
        if (shortlex_less(cur, best)) best = cur;
        for (const auto& [head, repl] : half_swaps_) {
            if (head.size() > cur.size()) continue;
            for (size_t i = 0; i + head.size() <= cur.size(); ++i) {
                if (cur.compare(i, head.size(), head) != 0) continue;
                Word next = dehn_reduce(cur.substr(0, i) + repl + cur.substr(i + head.size()));
                if (next.size() < start.size()) {
                    start = next;
                    goto restart;
                }
                if (next.size() == start.size() && !visited.count(next)) {
                    if (visited.size() >= kClosureCap)
                        throw CapError("canonical-form closure exceeded cap");
                    visited.insert(next);
                    queue.push_back(next);
                }
            }
        }
    }
    return best;
}

Word GroupSpec::normal_form(const Word& w) const {
    const int n = generator_count();
    for (char c : w)
        if (static_cast<Letter>(c) >= 2 * n) throw InputError("letter out of range for spec");
    switch (family) {
        case Family::Free: return free_reduce(w, n);
        case Family::FreeAbelian: return abelian_normal_form(w);
        case Family::Raag: return raag_normal_form(w);
        case Family::ClassicalSC:
        case Family::GraphicalSC: return sc_canonical_form(w);
    }
    throw InputError("unsupported family");
}

bool GroupSpec::is_trivial(const Word& w) const {
    if (family == Family::ClassicalSC || family == Family::GraphicalSC)
        return dehn_reduce(w).empty(); // Dehn suffices under C'(1/6)
    return normal_form(w).empty();
}

// --- parsing -----------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

} // namespace

GroupSpec parse_spec(const std::string& text) {
    GroupSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_family = false, have_generators = false;
    bool in_graph = false;
    std::vector<std::pair<std::string, int>> raag_edges_text; // line for errors
    std::vector<std::pair<std::string, int>> relator_text;
    std::vector<std::tuple<std::string, int>> graph_lines;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        std::string key = colon == std::string::npos ? "" : trim(t.substr(0, colon));
        std::string val = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
        if (in_graph && colon == std::string::npos) {
            graph_lines.emplace_back(t, lineno);
            continue;
        }
        in_graph = false;
        if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);

        if (key == "family") {
            have_family = true;
            if (val == "free") spec.family = Family::Free;
            else if (val == "free-abelian") spec.family = Family::FreeAbelian;
            else if (val == "raag") spec.family = Family::Raag;
            else if (val == "classical-sc") spec.family = Family::ClassicalSC;
            else if (val == "graphical-sc") spec.family = Family::GraphicalSC;
            else throw ParseError("unknown family '" + val + "'", lineno, static_cast<int>(colon + 2));
        } else if (key == "generators") {
            have_generators = true;
            spec.generators = split_ws(val);
            if (spec.generators.empty()) throw ParseError("empty generator list", lineno, 1);
        } else if (key == "edges") {
            for (const auto& tok : split_ws(val)) raag_edges_text.emplace_back(tok, lineno);
        } else if (key == "relators") {
            for (const auto& tok : split_ws(val)) relator_text.emplace_back(tok, lineno);
        } else if (key == "lambda") {
            try {
                spec.lambda = Rational::parse(val);
            } catch (const std::exception&) {
                throw ParseError("bad lambda '" + val + "'", lineno, 1);
            }
        } else if (key == "graph") {
            in_graph = true;
            if (!val.empty()) graph_lines.emplace_back(val, lineno);
        } else if (key == "cycle-length-cap") {
            spec.graphical_cycle_length_cap = std::stoi(val);
        } else {
            throw ParseError("unknown key '" + key + "'", lineno, 1);
        }
    }
    if (!have_family) throw ParseError("missing 'family:' line", lineno, 1);
    if (!have_generators) throw ParseError("missing 'generators:' line", lineno, 1);

    const int n = spec.generator_count();
    spec.raag_adj.assign(n, std::vector<bool>(n, false));
    for (const auto& [tok, ln] : raag_edges_text) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw ParseError("edge must be 'u-v'", ln, 1);
        int a = spec.generator_index(tok.substr(0, dash));
        int b = spec.generator_index(tok.substr(dash + 1));
        if (a < 0 || b < 0) throw ParseError("unknown generator in edge '" + tok + "'", ln, 1);
        if (a == b) throw ParseError("loop edge '" + tok + "' not allowed", ln, 1);
        spec.raag_adj[a][b] = spec.raag_adj[b][a] = true; // deduplicated by construction
    }

    for (const auto& [tok, ln] : relator_text) {
        Word r;
        try {
            r = spec.word_from_text(tok);
        } catch (const InputError& e) {
            throw ParseError(e.what(), ln, 1);
        }
        spec.relators.push_back(r);
    }

    if (spec.family == Family::GraphicalSC) {
        // vertex names collected in order of first appearance
        std::map<std::string, int32_t> vid;
        for (const auto& [gl, ln] : graph_lines) {
            auto toks = split_ws(gl);
            if (toks.size() != 4) throw ParseError("graph line must be 'u v label dir'", ln, 1);
            for (int k = 0; k < 2; ++k)
                if (!vid.count(toks[k])) {
                    int32_t id = static_cast<int32_t>(vid.size());
                    vid[toks[k]] = id;
                }
            int g = spec.generator_index(toks[2]);
            if (g < 0) throw ParseError("unknown generator '" + toks[2] + "' in graph", ln, 1);
            int32_t u = vid[toks[0]], v = vid[toks[1]];
            if (toks[3] == "+") spec.graph.arcs.push_back({u, v, g});
            else if (toks[3] == "-") spec.graph.arcs.push_back({v, u, g});
            else throw ParseError("direction must be '+' or '-'", ln, 1);
        }
        spec.graph.vertex_count = static_cast<int32_t>(vid.size());
        if (spec.graph.arcs.empty()) throw ParseError("graphical-sc requires a 'graph:' block", lineno, 1);
    }
    if (spec.family == Family::ClassicalSC && spec.relators.empty())
        throw ParseError("classical-sc requires 'relators:'", lineno, 1);

    spec.finalize();
    return spec;
}

GroupSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

} // namespace morselab
