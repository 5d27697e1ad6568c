#include "kleinperm/catalogue.hpp"

#include <algorithm>
#include <sstream>

namespace kleinperm {

namespace {

int kind_rank(IndecompLabel::Kind k) {
    switch (k) {
        case IndecompLabel::Kind::Triv: return 0;
        case IndecompLabel::Kind::Reg: return 1;
        case IndecompLabel::Kind::M: return 2;
        case IndecompLabel::Kind::W: return 3;
        case IndecompLabel::Kind::E: return 4;
        case IndecompLabel::Kind::EInf: return 5;
    }
    return 6;
}

void check_label(const IndecompLabel& l) {
    switch (l.kind) {
        case IndecompLabel::Kind::Triv:
        case IndecompLabel::Kind::Reg:
            return;
        case IndecompLabel::Kind::M:
        case IndecompLabel::Kind::W:
        case IndecompLabel::Kind::EInf:
            if (l.n < 1) fail(Errc::BadLabel, "family index must be >= 1");
            return;
        case IndecompLabel::Kind::E:
            if (l.n < 1) fail(Errc::BadLabel, "family index must be >= 1");
            if (!l.f.is_monic()) fail(Errc::FNotMonic, "E-parameter must be monic");
            if (!poly_irreducible(l.f)) fail(Errc::ReducibleF, "E-parameter must be irreducible: " + l.f.to_string());
            return;
    }
}

} // namespace

std::size_t IndecompLabel::dim() const {
    switch (kind) {
        case Kind::Triv: return 1;
        case Kind::Reg: return 4;
        case Kind::M:
        case Kind::W: return std::size_t(2 * n + 1);
        case Kind::E: return std::size_t(2 * n * f.degree());
        case Kind::EInf: return std::size_t(2 * n);
    }
    return 0;
}

bool IndecompLabel::operator==(const IndecompLabel& o) const {
    if (kind != o.kind || n != o.n) return false;
    if (kind == Kind::E) return f == o.f;
    return true;
}

std::string IndecompLabel::to_string() const {
    switch (kind) {
        case Kind::Triv: return "k";
        case Kind::Reg: return "kV4";
        case Kind::M: return "M" + std::to_string(2 * n + 1);
        case Kind::W: return "W" + std::to_string(2 * n + 1);
        case Kind::E: return "E[" + f.to_string() + "," + std::to_string(n) + "]";
        case Kind::EInf: return "Einf[" + std::to_string(n) + "]";
    }
    return "?";
}

IndecompLabel IndecompLabel::parse(const std::string& text, FieldSpec field) {
    if (text == "k") return triv();
    if (text == "kV4" || text == "kv4") return reg();
    auto parse_odd = [&](char kind_char) -> int {
        const std::string digits = text.substr(1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::BadLabel, "bad label: " + text);
        const long d = std::stol(digits);
        if (d < 3 || d % 2 == 0)
            fail(Errc::BadLabel, std::string(1, kind_char) + "-labels carry odd dimension >= 3: " + text);
        return int((d - 1) / 2);
    };
    if (text.size() >= 2 && text[0] == 'M') return m(parse_odd('M'));
    if (text.size() >= 2 && text[0] == 'W') return w(parse_odd('W'));
    if (text.rfind("Einf[", 0) == 0 && text.back() == ']') {
        const std::string inner = text.substr(5, text.size() - 6);
        if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::BadLabel, "bad Einf index: " + text);
        return einf(std::stoi(inner));
    }
    if (text.rfind("E[", 0) == 0 && text.back() == ']') {
        const std::string inner = text.substr(2, text.size() - 3);
        const auto comma = inner.rfind(',');
        if (comma == std::string::npos) fail(Errc::BadLabel, "E-label needs E[<poly>,<n>]: " + text);
        const std::string ns = inner.substr(comma + 1);
        if (ns.empty() || ns.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::BadLabel, "bad E index: " + text);
        IndecompLabel l = e(FieldPoly::parse(field, inner.substr(0, comma)), std::stoi(ns));
        check_label(l);
        return l;
    }
    fail(Errc::BadLabel, "unrecognized label: " + text);
}

int label_compare(const IndecompLabel& a, const IndecompLabel& b) {
    if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind) ? -1 : 1;
    if (a.n != b.n) return a.n < b.n ? -1 : 1;
    if (a.kind == IndecompLabel::Kind::E) return poly_compare(a.f, b.f);
    return 0;
}

bool label_less(const IndecompLabel& a, const IndecompLabel& b) { return label_compare(a, b) < 0; }

std::string labels_to_string(const std::vector<IndecompLabel>& ls) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) os << " + ";
        os << ls[i].to_string();
    }
    if (ls.empty()) os << "0";
    return os.str();
}

std::size_t u_index(const IndecompLabel& label, int i) {
    switch (label.kind) {
        case IndecompLabel::Kind::M:
            // u_1..u_n stored first
            if (i < 1 || i > label.n) fail(Errc::BadLabel, "u-index out of range");
            return std::size_t(i - 1);
        case IndecompLabel::Kind::W:
            if (i < 0 || i > label.n) fail(Errc::BadLabel, "u-index out of range");
            return std::size_t(i);
        case IndecompLabel::Kind::E:
        case IndecompLabel::Kind::EInf:
            return std::size_t(i);
        default:
            fail(Errc::BadLabel, "label has no u-basis");
    }
}

std::size_t v_index(const IndecompLabel& label, int i) {
    switch (label.kind) {
        case IndecompLabel::Kind::M:
            // v_0..v_n after the u-row
            if (i < 0 || i > label.n) fail(Errc::BadLabel, "v-index out of range");
            return std::size_t(label.n + i);
        case IndecompLabel::Kind::W:
            if (i < 1 || i > label.n) fail(Errc::BadLabel, "v-index out of range");
            return std::size_t(label.n + i);
        case IndecompLabel::Kind::E:
            return std::size_t(label.n * label.f.degree() + i);
        case IndecompLabel::Kind::EInf:
            return std::size_t(label.n + i);
        default:
            fail(Errc::BadLabel, "label has no v-basis");
    }
}

KV4Module construct(const IndecompLabel& label, FieldSpec field) {
    check_label(label);
    using Kind = IndecompLabel::Kind;
    const std::size_t d = label.dim();
    ExactMatrix a(field, d, d), b(field, d, d);
    std::vector<std::string> labels(d);
    switch (label.kind) {
        case Kind::Triv:
            labels = {"theta"};
            break;
        case Kind::Reg:
            // basis (1, a, b, ab) relabelled (w, x, y, z)
            a.set(1, 0, 1);
            a.set(3, 2, 1);
            b.set(2, 0, 1);
            b.set(3, 1, 1);
            labels = {"w", "x", "y", "z"};
            break;
        case Kind::M: {
            const int n = label.n;
            for (int i = 1; i <= n; ++i) {
                a.set(v_index(label, i - 1), u_index(label, i), 1);
                b.set(v_index(label, i), u_index(label, i), 1);
                labels[u_index(label, i)] = "u" + std::to_string(i);
            }
            for (int i = 0; i <= n; ++i) labels[v_index(label, i)] = "v" + std::to_string(i);
            break;
        }
        case Kind::W: {
            const int n = label.n;
            for (int i = 1; i <= n; ++i) a.set(v_index(label, i), u_index(label, i), 1);
            for (int i = 0; i <= n - 1; ++i) b.set(v_index(label, i + 1), u_index(label, i), 1);
            for (int i = 0; i <= n; ++i) labels[u_index(label, i)] = "u" + std::to_string(i);
            for (int i = 1; i <= n; ++i) labels[v_index(label, i)] = "v" + std::to_string(i);
            break;
        }
        case Kind::E: {
            const int m = label.n * label.f.degree();
            const FieldPoly fn = poly_power(label.f, unsigned(label.n));
            for (int i = 0; i < m; ++i) a.set(v_index(label, i), u_index(label, i), 1);
            for (int i = 0; i + 1 < m; ++i) b.set(v_index(label, i + 1), u_index(label, i), 1);
            // dashed edge: b u_{m-1} = sum alpha_i v_i with f^n = t^m + sum alpha_i t^i
            for (int i = 0; i < m; ++i) {
                const Elem alpha = fn.coeff(i);
                if (alpha) b.set(v_index(label, i), u_index(label, m - 1), alpha);
            }
            for (int i = 0; i < m; ++i) {
                labels[u_index(label, i)] = "u" + std::to_string(i);
                labels[v_index(label, i)] = "v" + std::to_string(i);
            }
            break;
        }
        case Kind::EInf: {
            const int n = label.n;
            for (int i = 1; i < n; ++i) a.set(v_index(label, i - 1), u_index(label, i), 1);
            for (int i = 0; i < n; ++i) b.set(v_index(label, i), u_index(label, i), 1);
            for (int i = 0; i < n; ++i) {
                labels[u_index(label, i)] = "u" + std::to_string(i);
                labels[v_index(label, i)] = "v" + std::to_string(i);
            }
            break;
        }
    }
    // The dimension-two permutation modules carry the short labelling used in
    // the resolution diagrams: w over x, except E_inf which is w over y.
    if (d == 2 && label.kind == Kind::E) labels = {"w", "x"};
    if (label.kind == Kind::EInf && label.n == 1) labels = {"w", "y"};
    return KV4Module::make(field, std::move(a), std::move(b), std::move(labels));
}

std::vector<IndecompLabel> perm_indecomposable_labels(FieldSpec field) {
    return {
        IndecompLabel::triv(),
        IndecompLabel::e(FieldPoly::t(field), 1),
        IndecompLabel::e(FieldPoly::linear(field, 1), 1),
        IndecompLabel::einf(1),
        IndecompLabel::reg(),
    };
}

std::vector<std::pair<IndecompLabel, KV4Module>> perm_indecomposables(FieldSpec field) {
    std::vector<std::pair<IndecompLabel, KV4Module>> out;
    for (const IndecompLabel& l : perm_indecomposable_labels(field))
        out.push_back({l, construct(l, field)});
    return out;
}

int ppdim_table_value(const IndecompLabel& label) {
    using Kind = IndecompLabel::Kind;
    switch (label.kind) {
        case Kind::Triv:
        case Kind::Reg:
            return 0;
        case Kind::M:
            return label.n <= 3 ? 1 : 2;
        case Kind::W:
            return label.n <= 2 ? 1 : 2;
        case Kind::EInf:
            return label.n == 1 ? 0 : (label.n == 2 ? 1 : 2);
        case Kind::E: {
            const FieldSpec k = label.f.field();
            const bool special = label.f == FieldPoly::t(k) || label.f == FieldPoly::linear(k, 1);
            if (!special) return 2;
            return label.n == 1 ? 0 : (label.n == 2 ? 1 : 2);
        }
    }
    return 2;
}

ResolutionRecipe resolution_recipe(const IndecompLabel& label, FieldSpec field) {
    check_label(label);
    using Kind = IndecompLabel::Kind;
    ResolutionRecipe r;
    r.target = label;
    r.expected_length = ppdim_table_value(label);
    if (r.expected_length == 0) {
        r.p0 = {label};
        return r;
    }
    const IndecompLabel kReg = IndecompLabel::reg();
    const IndecompLabel kTriv = IndecompLabel::triv();
    const IndecompLabel et = IndecompLabel::e(FieldPoly::t(field), 1);
    const IndecompLabel et1 = IndecompLabel::e(FieldPoly::linear(field, 1), 1);
    const IndecompLabel einf = IndecompLabel::einf(1);
    auto img = [&](std::size_t summand, std::initializer_list<std::size_t> idxs) {
        GenImage g;
        g.summand = summand;
        for (std::size_t i : idxs) g.target.push_back({1, i});
        return g;
    };
    switch (label.kind) {
        case Kind::M: {
            const int n = label.n;
            if (n == 1) {
                r.p0 = {kReg};
                r.images = {img(0, {u_index(label, 1)})};
            } else if (n == 2) {
                r.p0 = {kReg, kTriv, kReg};
                r.images = {img(0, {u_index(label, 1)}), img(1, {v_index(label, 1)}),
                            img(2, {u_index(label, 2)})};
            } else if (n == 3) {
                r.p0 = {kTriv, kReg, kReg, kReg};
                r.images = {img(0, {v_index(label, 1), v_index(label, 2)})};
                for (int i = 1; i <= 3; ++i) r.images.push_back(img(std::size_t(i), {u_index(label, i)}));
            } else {
                // 0 -> W3^n -> k^(n+1) + kV4^n -> M_{2n+1} -> 0
                for (int i = 0; i <= n; ++i) r.p0.push_back(kTriv);
                for (int i = 1; i <= n; ++i) r.p0.push_back(kReg);
                for (int i = 0; i <= n; ++i) r.images.push_back(img(std::size_t(i), {v_index(label, i)}));
                for (int i = 1; i <= n; ++i)
                    r.images.push_back(img(std::size_t(n + i), {u_index(label, i)}));
            }
            break;
        }
        case Kind::W: {
            const int n = label.n;
            if (n == 1) {
                r.p0 = {einf, et};
                r.images = {img(0, {u_index(label, 0)}), img(1, {u_index(label, 1)})};
            } else if (n == 2) {
                r.p0 = {einf, et1, et};
                r.images = {img(0, {u_index(label, 0)}),
                            img(1, {u_index(label, 0), u_index(label, 1), u_index(label, 2)}),
                            img(2, {u_index(label, 2)})};
            } else {
                // 0 -> W3^(n+1) -> k^n + kV4^(n+1) -> W_{2n+1} -> 0
                for (int i = 1; i <= n; ++i) r.p0.push_back(kTriv);
                for (int i = 0; i <= n; ++i) r.p0.push_back(kReg);
                for (int i = 1; i <= n; ++i) r.images.push_back(img(std::size_t(i - 1), {v_index(label, i)}));
                for (int i = 0; i <= n; ++i)
                    r.images.push_back(img(std::size_t(n + i), {u_index(label, i)}));
            }
            break;
        }
        case Kind::E: {
            const FieldSpec k = label.f.field();
            const bool is_t = label.f == FieldPoly::t(k);
            const bool is_t1 = label.f == FieldPoly::linear(k, 1);
            if ((is_t || is_t1) && label.n == 2) {
                if (is_t) {
                    r.p0 = {kReg, et};
                    r.images = {img(0, {u_index(label, 0)}), img(1, {u_index(label, 1)})};
                } else {
                    r.p0 = {kReg, et1};
                    r.images = {img(0, {u_index(label, 0)}),
                                img(1, {u_index(label, 0), u_index(label, 1)})};
                }
            } else {
                // 0 -> W3^m -> k^m + kV4^m -> E_{f,n} -> 0
                const int m = label.n * label.f.degree();
                for (int i = 0; i < m; ++i) r.p0.push_back(kTriv);
                for (int i = 0; i < m; ++i) r.p0.push_back(kReg);
                for (int i = 0; i < m; ++i) r.images.push_back(img(std::size_t(i), {v_index(label, i)}));
                for (int i = 0; i < m; ++i)
                    r.images.push_back(img(std::size_t(m + i), {u_index(label, i)}));
            }
            break;
        }
        case Kind::EInf: {
            const int n = label.n;
            if (n == 2) {
                r.p0 = {einf, kReg};
                r.images = {img(0, {u_index(label, 0)}), img(1, {u_index(label, 1)})};
            } else {
                // 0 -> W3^n -> kV4^n + k^n -> E_{inf,n} -> 0
                for (int i = 0; i < n; ++i) r.p0.push_back(kReg);
                for (int i = 0; i < n; ++i) r.p0.push_back(kTriv);
                for (int i = 0; i < n; ++i) r.images.push_back(img(std::size_t(i), {u_index(label, i)}));
                for (int i = 0; i < n; ++i)
                    r.images.push_back(img(std::size_t(n + i), {v_index(label, i)}));
            }
            break;
        }
        default:
            fail(Errc::Internal, "no recipe for this label");
    }
    return r;
}

} // namespace kleinperm
