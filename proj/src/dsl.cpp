#include "kleinperm/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kleinperm/decompose.hpp"

namespace kleinperm {

std::string ParseError::to_string() const {
    const char* k = kind == Kind::Syntax ? "syntax error"
                    : kind == Kind::UnknownNode ? "unknown node"
                                                : "duplicate node";
    std::ostringstream os;
    os << k << " at " << line << ":" << col << ": " << message;
    return os.str();
}

namespace {

struct Scanner {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;

    explicit Scanner(const std::string& t) : text(t) {}

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }

    void advance() {
        if (eof()) return;
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace((unsigned char)c)) {
                advance();
            } else {
                break;
            }
        }
    }

    ParseError err(ParseError::Kind kind, const std::string& msg) const {
        return ParseError{kind, line, col, msg};
    }
};

bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

std::optional<std::string> read_ident(Scanner& s) {
    s.skip_ws();
    if (s.eof() || !ident_char(s.peek())) return std::nullopt;
    std::string out;
    while (!s.eof() && ident_char(s.peek())) {
        out.push_back(s.peek());
        s.advance();
    }
    return out;
}

bool read_punct(Scanner& s, char c) {
    s.skip_ws();
    if (s.peek() != c) return false;
    s.advance();
    return true;
}

} // namespace

ParseResult parse_diagram(const std::string& text) {
    ParseResult out;
    Scanner s(text);
    DiagramAst ast;

    auto fail_at = [&](ParseError::Kind kind, const std::string& msg) {
        out.error = s.err(kind, msg);
        return out;
    };

    auto kw = read_ident(s);
    if (!kw || *kw != "module") return fail_at(ParseError::Kind::Syntax, "expected `module`");
    auto name = read_ident(s);
    if (!name) return fail_at(ParseError::Kind::Syntax, "expected module name");
    ast.name = *name;
    auto over = read_ident(s);
    if (!over || *over != "over") return fail_at(ParseError::Kind::Syntax, "expected `over`");
    s.skip_ws();
    std::string fieldspec;
    while (!s.eof() && !std::isspace((unsigned char)s.peek()) && s.peek() != '{') {
        fieldspec.push_back(s.peek());
        s.advance();
    }
    if (fieldspec.empty()) return fail_at(ParseError::Kind::Syntax, "expected field spec");
    try {
        ast.field = field_parse(fieldspec);
    } catch (const Error& e) {
        return fail_at(ParseError::Kind::Syntax, e.what());
    }
    if (!read_punct(s, '{')) return fail_at(ParseError::Kind::Syntax, "expected `{`");

    auto basis_kw = read_ident(s);
    if (!basis_kw || *basis_kw != "basis") return fail_at(ParseError::Kind::Syntax, "expected `basis`");
    while (true) {
        s.skip_ws();
        if (s.peek() == ';') {
            s.advance();
            break;
        }
        auto node = read_ident(s);
        if (!node) return fail_at(ParseError::Kind::Syntax, "expected node name or `;`");
        if (std::find(ast.nodes.begin(), ast.nodes.end(), *node) != ast.nodes.end())
            return fail_at(ParseError::Kind::DuplicateNode, *node);
        ast.nodes.push_back(*node);
    }

    auto node_index = [&](const std::string& n) -> std::optional<std::size_t> {
        auto it = std::find(ast.nodes.begin(), ast.nodes.end(), n);
        if (it == ast.nodes.end()) return std::nullopt;
        return std::size_t(it - ast.nodes.begin());
    };

    bool seen_a = false, seen_b = false;
    while (true) {
        s.skip_ws();
        if (s.peek() == '}') {
            s.advance();
            break;
        }
        auto gen = read_ident(s);
        if (!gen || (*gen != "a" && *gen != "b"))
            return fail_at(ParseError::Kind::Syntax, "expected `a:`, `b:` or `}`");
        bool& seen = (*gen == "a") ? seen_a : seen_b;
        if (seen) return fail_at(ParseError::Kind::Syntax, "duplicate `" + *gen + "` section");
        seen = true;
        if (!read_punct(s, ':')) return fail_at(ParseError::Kind::Syntax, "expected `:`");
        std::vector<DiagramAst::Edge>& edges = (*gen == "a") ? ast.a_edges : ast.b_edges;
        while (true) {
            s.skip_ws();
            if (s.peek() == ';') {
                s.advance();
                break;
            }
            auto src = read_ident(s);
            if (!src) return fail_at(ParseError::Kind::Syntax, "expected edge source or `;`");
            auto si = node_index(*src);
            if (!si) return fail_at(ParseError::Kind::UnknownNode, *src);
            s.skip_ws();
            if (s.peek() != '-') return fail_at(ParseError::Kind::Syntax, "expected `->`");
            s.advance();
            if (s.peek() != '>') return fail_at(ParseError::Kind::Syntax, "expected `->`");
            s.advance();
            DiagramAst::Edge edge;
            edge.src = *si;
            // lincomb: `0` or term (+ term)*
            while (true) {
                s.skip_ws();
                std::size_t save_pos = s.pos, save_line = s.line, save_col = s.col;
                auto term = read_ident(s);
                if (!term) return fail_at(ParseError::Kind::Syntax, "expected lincomb term");
                Elem coeff = 1;
                std::string node_name = *term;
                const bool all_hex = std::all_of(term->begin(), term->end(), [](char c) {
                    return std::isxdigit((unsigned char)c);
                });
                s.skip_ws();
                if (all_hex && s.peek() == '*') {
                    s.advance();
                    coeff = std::stoull(*term, nullptr, 16);
                    auto n2 = read_ident(s);
                    if (!n2) return fail_at(ParseError::Kind::Syntax, "expected node after `*`");
                    node_name = *n2;
                } else if (all_hex && *term == "0") {
                    node_name.clear();  // explicit zero combination
                }
                if (!node_name.empty()) {
                    auto ti = node_index(node_name);
                    if (!ti) {
                        s.pos = save_pos;
                        s.line = save_line;
                        s.col = save_col;
                        return fail_at(ParseError::Kind::UnknownNode, node_name);
                    }
                    if (coeff > ast.field.mask())
                        return fail_at(ParseError::Kind::Syntax, "coefficient outside the field");
                    edge.targets.push_back({coeff, *ti});
                }
                s.skip_ws();
                if (s.peek() == '+') {
                    s.advance();
                    continue;
                }
                break;
            }
            edges.push_back(std::move(edge));
            s.skip_ws();
            if (s.peek() == ',') {
                s.advance();
                continue;
            }
        }
    }
    s.skip_ws();
    if (!s.eof()) return fail_at(ParseError::Kind::Syntax, "trailing input after `}`");
    out.ast = std::move(ast);
    return out;
}

KV4Module lower(const DiagramAst& ast) {
    const FieldSpec f = ast.field;
    const std::size_t d = ast.nodes.size();
    ExactMatrix a(f, d, d), b(f, d, d);
    for (int which = 0; which < 2; ++which) {
        const auto& edges = which ? ast.b_edges : ast.a_edges;
        ExactMatrix& m = which ? b : a;
        for (const DiagramAst::Edge& e : edges)
            for (auto& [coeff, tgt] : e.targets) m.set(tgt, e.src, m.get(tgt, e.src) ^ coeff);
    }
    return KV4Module::make(f, std::move(a), std::move(b), ast.nodes);
}

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(ident_char(c) ? c : '_');
    return out;
}

std::string lincomb_string(const KV4Module& m, const ExactMatrix& act, std::size_t src,
                           const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Elem c = act.get(i, src);
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << std::hex << c << std::dec << "*";
        os << names[i];
    }
    return os.str();
}

} // namespace

std::string render(const KV4Module& m) {
    Decomposition dec = decompose(m);
    std::vector<KV4Module> parts;
    for (const IndecompLabel& l : dec.labels) parts.push_back(construct(l, m.field()));
    DirectSum block = direct_sum(parts);

    std::vector<std::string> names;
    for (std::size_t i = 0; i < block.module.dim(); ++i) names.push_back(sanitize(block.module.label_of(i)));

    std::ostringstream os;
    os << "module m over " << field_to_string(m.field()) << " {\n";
    os << "  basis";
    for (const std::string& n : names) os << " " << n;
    os << ";\n";
    for (int which = 0; which < 2; ++which) {
        const ExactMatrix& act = which ? block.module.B() : block.module.A();
        os << "  " << (which ? "b" : "a") << ":";
        bool first = true;
        for (std::size_t j = 0; j < block.module.dim(); ++j) {
            std::string lc = lincomb_string(block.module, act, j, names);
            if (lc.empty()) continue;
            os << (first ? " " : ", ") << names[j] << " -> " << lc;
            first = false;
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

// One two-row block. Cells are laid out left to right; `top_at_even` selects
// whether u-nodes occupy even or odd cells.
std::string two_row_block(const std::vector<std::string>& top, const std::vector<std::string>& bottom,
                          bool top_at_even, const std::string& dashed_note) {
    const std::size_t cells = top.size() + bottom.size();
    std::size_t w = 2;
    for (const std::string& s : top) w = std::max(w, s.size());
    for (const std::string& s : bottom) w = std::max(w, s.size());
    w += 2;
    std::string l1(cells * w, ' '), l2(cells * w, ' '), l3(cells * w, ' ');
    auto put = [&](std::string& line, std::size_t cell, const std::string& s) {
        const std::size_t at = cell * w + (w - s.size()) / 2;
        for (std::size_t i = 0; i < s.size(); ++i) line[at + i] = s[i];
    };
    for (std::size_t i = 0; i < top.size(); ++i) put(l1, 2 * i + (top_at_even ? 0 : 1), top[i]);
    for (std::size_t i = 0; i < bottom.size(); ++i) put(l3, 2 * i + (top_at_even ? 1 : 0), bottom[i]);
    // branches: for every top cell t, '/' one cell left, '\' one cell right,
    // when a bottom node exists there.
    for (std::size_t i = 0; i < top.size(); ++i) {
        const std::size_t t = 2 * i + (top_at_even ? 0 : 1);
        if (t >= 1) {
            const std::size_t bcell = t - 1;
            const std::size_t bi = (bcell - (top_at_even ? 1 : 0)) / 2;
            if (bi < bottom.size() && (bcell % 2 == (top_at_even ? 1u : 0u)))
                l2[t * w + w / 4] = '/';
        }
        {
            const std::size_t bcell = t + 1;
            const std::size_t bi = (bcell - (top_at_even ? 1 : 0)) / 2;
            if (bcell < cells && bi < bottom.size() && (bcell % 2 == (top_at_even ? 1u : 0u)))
                l2[t * w + (3 * w) / 4] = '\\';
        }
    }
    auto rtrim = [](std::string s) {
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    std::string out = rtrim(l1) + "\n" + rtrim(l2) + "\n" + rtrim(l3) + "\n";
    if (!dashed_note.empty()) out += dashed_note + "\n";
    return out;
}

} // namespace

std::string ascii_diagram(const KV4Module& m) {
    Decomposition dec = decompose(m);
    std::ostringstream os;
    for (std::size_t bi = 0; bi < dec.labels.size(); ++bi) {
        const IndecompLabel& l = dec.labels[bi];
        if (bi) os << "\n";
        os << l.to_string() << ":\n";
        using Kind = IndecompLabel::Kind;
        switch (l.kind) {
            case Kind::Triv:
                os << "  theta\n";
                break;
            case Kind::Reg:
                os << "    w\n   / \\\n  x   y\n   \\ /\n    z\n";
                break;
            case Kind::M: {
                std::vector<std::string> top, bottom;
                for (int i = 1; i <= l.n; ++i) top.push_back("u" + std::to_string(i));
                for (int i = 0; i <= l.n; ++i) bottom.push_back("v" + std::to_string(i));
                os << two_row_block(top, bottom, false, "");
                break;
            }
            case Kind::W: {
                std::vector<std::string> top, bottom;
                for (int i = 0; i <= l.n; ++i) top.push_back("u" + std::to_string(i));
                for (int i = 1; i <= l.n; ++i) bottom.push_back("v" + std::to_string(i));
                os << two_row_block(top, bottom, true, "");
                break;
            }
            case Kind::E: {
                const int mdim = l.n * l.f.degree();
                std::vector<std::string> top, bottom;
                for (int i = 0; i < mdim; ++i) top.push_back("u" + std::to_string(i));
                for (int i = 0; i < mdim; ++i) bottom.push_back("v" + std::to_string(i));
                KV4Module blk = construct(l, m.field());
                std::string note = lincomb_string(
                    blk, blk.B(), u_index(l, mdim - 1),
                    [&] {
                        std::vector<std::string> names;
                        for (std::size_t i = 0; i < blk.dim(); ++i) names.push_back(blk.label_of(i));
                        return names;
                    }());
                os << two_row_block(top, bottom, false,
                                    note.empty() ? "" : "  b: u" + std::to_string(mdim - 1) + " -> " + note + " (dashed)");
                break;
            }
            case Kind::EInf: {
                std::vector<std::string> top, bottom;
                for (int i = 0; i < l.n; ++i) top.push_back("u" + std::to_string(i));
                for (int i = 0; i < l.n; ++i) bottom.push_back("v" + std::to_string(i));
                os << two_row_block(top, bottom, true, "");
                break;
            }
        }
    }
    if (dec.labels.empty()) os << "0\n";
    return os.str();
}

} // namespace kleinperm
