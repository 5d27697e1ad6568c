#include "kleinperm/module.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace kleinperm {

KV4Module KV4Module::make(FieldSpec field, ExactMatrix a, ExactMatrix b,
                          std::vector<std::string> labels) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        fail(Errc::RelationViolation, "action matrices must be square of equal size");
    if (!(a.field() == field) || !(b.field() == field))
        fail(Errc::FieldMismatch, "action matrices not over the declared field");
    if (!labels.empty() && labels.size() != a.rows())
        fail(Errc::RelationViolation, "label count != dim");
    if (!(a * a).is_zero()) fail(Errc::RelationViolation, "A^2 != 0");
    if (!(b * b).is_zero()) fail(Errc::RelationViolation, "B^2 != 0");
    if (!(a * b == b * a)) fail(Errc::RelationViolation, "AB != BA");
    return KV4Module(field, std::move(a), std::move(b), std::move(labels));
}

ExactMatrix KV4Module::action(Gen g) const {
    switch (g) {
        case Gen::A: return a_;
        case Gen::B: return b_;
        case Gen::APlusB: return a_ + b_;
    }
    fail(Errc::Internal, "bad generator");
}

std::string KV4Module::label_of(std::size_t i) const {
    if (i < labels_.size() && !labels_[i].empty()) return labels_[i];
    return "e" + std::to_string(i);
}

ModuleMap ModuleMap::make(KV4Module src, KV4Module tgt, ExactMatrix m) {
    if (m.rows() != tgt.dim() || m.cols() != src.dim())
        fail(Errc::DimensionMismatch, "map matrix must be target.dim x source.dim");
    if (!(src.field() == tgt.field())) fail(Errc::FieldMismatch, "map endpoints over different fields");
    if (!(m * src.A() == tgt.A() * m) || !(m * src.B() == tgt.B() * m))
        fail(Errc::NotEquivariant, "matrix does not intertwine the actions");
    return ModuleMap{std::move(src), std::move(tgt), std::move(m)};
}

ModuleMap ModuleMap::unchecked(KV4Module src, KV4Module tgt, ExactMatrix m) {
    return ModuleMap{std::move(src), std::move(tgt), std::move(m)};
}

DirectSum direct_sum(const std::vector<KV4Module>& ms) {
    FieldSpec field = ms.empty() ? FieldSpec{} : ms[0].field();
    std::size_t total = 0;
    for (const KV4Module& m : ms) {
        if (!(m.field() == field)) fail(Errc::FieldMismatch, "direct_sum over mixed fields");
        total += m.dim();
    }
    ExactMatrix a(field, total, total), b(field, total, total);
    std::vector<std::string> labels(total);
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (std::size_t s = 0; s < ms.size(); ++s) {
        const KV4Module& m = ms[s];
        offsets.push_back(off);
        for (std::size_t i = 0; i < m.dim(); ++i) {
            labels[off + i] = m.label_of(i) + "_s" + std::to_string(s);
            for (std::size_t j = 0; j < m.dim(); ++j) {
                if (Elem v = m.A().get(i, j)) a.set(off + i, off + j, v);
                if (Elem v = m.B().get(i, j)) b.set(off + i, off + j, v);
            }
        }
        off += m.dim();
    }
    KV4Module sum = KV4Module::make(field, std::move(a), std::move(b), std::move(labels));
    DirectSum out;
    out.inclusions.reserve(ms.size());
    out.projections.reserve(ms.size());
    for (std::size_t s = 0; s < ms.size(); ++s) {
        ExactMatrix inc(field, total, ms[s].dim());
        ExactMatrix prj(field, ms[s].dim(), total);
        for (std::size_t i = 0; i < ms[s].dim(); ++i) {
            inc.set(offsets[s] + i, i, 1);
            prj.set(i, offsets[s] + i, 1);
        }
        out.inclusions.push_back(ModuleMap::unchecked(ms[s], sum, std::move(inc)));
        out.projections.push_back(ModuleMap::unchecked(sum, ms[s], std::move(prj)));
    }
    out.offsets = std::move(offsets);
    out.module = std::move(sum);
    return out;
}

KV4Module dual(const KV4Module& m) {
    std::vector<std::string> labels;
    if (!m.labels().empty()) {
        labels.reserve(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) labels.push_back(m.label_of(i) + "*");
    }
    return KV4Module::make(m.field(), m.A().transpose(), m.B().transpose(), std::move(labels));
}

ModuleMap map_dual(const ModuleMap& phi) {
    return ModuleMap::unchecked(dual(phi.target), dual(phi.source), phi.matrix.transpose());
}

Subspace element_kernel(const KV4Module& m, Gen g) { return kernel(m.action(g)); }

Subspace ker_sum(const KV4Module& m) {
    return subspace_sum(subspace_sum(element_kernel(m, Gen::A), element_kernel(m, Gen::APlusB)),
                        element_kernel(m, Gen::B));
}

Subspace radical(const KV4Module& m) { return subspace_sum(image(m.A()), image(m.B())); }

Subspace socle(const KV4Module& m) {
    return subspace_intersect(kernel(m.A()), kernel(m.B()));
}

std::size_t head_dim(const KV4Module& m) { return m.dim() - radical(m).dim(); }

SubmoduleResult submodule_on(const KV4Module& m, const Subspace& s) {
    if (s.ambient() != m.dim()) fail(Errc::AmbientMismatch, "subspace ambient != module dim");
    if (!s.contains(map_subspace(m.A(), s)) || !s.contains(map_subspace(m.B(), s)))
        fail(Errc::NotStable, "subspace is not A,B-stable");
    const FieldSpec f = m.field();
    const std::size_t k = s.dim();
    ExactMatrix a(f, k, k), b(f, k, k);
    for (std::size_t j = 0; j < k; ++j) {
        auto acol = s.coordinates(m.A().apply(s.basis_vector(j)));
        auto bcol = s.coordinates(m.B().apply(s.basis_vector(j)));
        if (!acol || !bcol) fail(Errc::Internal, "stable subspace coordinates failed");
        for (std::size_t i = 0; i < k; ++i) {
            a.set(i, j, (*acol)[i]);
            b.set(i, j, (*bcol)[i]);
        }
    }
    KV4Module sub = KV4Module::make(f, std::move(a), std::move(b));
    ExactMatrix inc = s.basis().transpose();
    return SubmoduleResult{sub, ModuleMap::unchecked(sub, m, std::move(inc)), s};
}

SubmoduleResult submodule_generated(const KV4Module& m, const std::vector<Vec>& vectors) {
    Subspace span = Subspace::from_vectors(m.field(), vectors, m.dim());
    while (true) {
        Subspace next = subspace_sum(span, map_subspace(m.A(), span));
        next = subspace_sum(next, map_subspace(m.B(), span));
        if (next.dim() == span.dim()) break;
        span = next;
    }
    return submodule_on(m, span);
}

QuotientResult quotient(const KV4Module& m, const Subspace& s) {
    if (s.ambient() != m.dim()) fail(Errc::AmbientMismatch, "subspace ambient != module dim");
    if (!s.contains(map_subspace(m.A(), s)) || !s.contains(map_subspace(m.B(), s)))
        fail(Errc::NotStable, "cannot quotient by an unstable subspace");
    const FieldSpec f = m.field();
    const std::size_t d = m.dim();
    std::vector<bool> is_pivot(d, false);
    for (std::size_t p : s.pivots()) is_pivot[p] = true;
    std::vector<std::size_t> rep;  // non-pivot coordinates represent the quotient
    for (std::size_t j = 0; j < d; ++j)
        if (!is_pivot[j]) rep.push_back(j);
    const std::size_t q = rep.size();

    ExactMatrix proj(f, q, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec unit(d, 0);
        unit[j] = 1;
        Vec red = s.reduce(unit);
        for (std::size_t i = 0; i < q; ++i)
            if (red[rep[i]]) proj.set(i, j, red[rep[i]]);
    }
    ExactMatrix a(f, q, q), b(f, q, q);
    for (std::size_t jj = 0; jj < q; ++jj) {
        Vec unit(d, 0);
        unit[rep[jj]] = 1;
        Vec acol = proj.apply(m.A().apply(unit));
        Vec bcol = proj.apply(m.B().apply(unit));
        for (std::size_t i = 0; i < q; ++i) {
            a.set(i, jj, acol[i]);
            b.set(i, jj, bcol[i]);
        }
    }
    std::vector<std::string> labels;
    if (!m.labels().empty()) {
        for (std::size_t j : rep) labels.push_back(m.label_of(j) + "~");
    }
    KV4Module quo = KV4Module::make(f, std::move(a), std::move(b), std::move(labels));
    return QuotientResult{quo, ModuleMap::unchecked(m, quo, std::move(proj))};
}

KernelResult map_kernel(const ModuleMap& phi) {
    Subspace k = kernel(phi.matrix);
    SubmoduleResult sub = submodule_on(phi.source, k);
    return KernelResult{sub.module, sub.inclusion};
}

Subspace map_image(const ModuleMap& phi) { return image(phi.matrix); }

std::vector<ModuleMap> hom_space(const KV4Module& m, const KV4Module& n) {
    if (!(m.field() == n.field())) fail(Errc::FieldMismatch, "hom_space over mixed fields");
    const FieldSpec f = m.field();
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return {};
    // Unknown X is dn x dm, flattened row-major. Conditions X A_m + A_n X = 0
    // and the same for B.
    const std::size_t vars = dn * dm;
    ExactMatrix sys(f, 2 * vars, vars);
    auto idx = [&](std::size_t r, std::size_t c) { return r * dm + c; };
    for (int which = 0; which < 2; ++which) {
        const ExactMatrix& am = which ? m.B() : m.A();
        const ExactMatrix& an = which ? n.B() : n.A();
        const std::size_t base = std::size_t(which) * vars;
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                const std::size_t eq = base + i * dm + j;
                // (X A_m)[i,j] = sum_k X[i,k] A_m[k,j]
                for (std::size_t k = 0; k < dm; ++k) {
                    const Elem v = am.get(k, j);
                    if (v) sys.set(eq, idx(i, k), sys.get(eq, idx(i, k)) ^ v);
                }
                // (A_n X)[i,j] = sum_k A_n[i,k] X[k,j]
                for (std::size_t k = 0; k < dn; ++k) {
                    const Elem v = an.get(i, k);
                    if (v) sys.set(eq, idx(k, j), sys.get(eq, idx(k, j)) ^ v);
                }
            }
    }
    ExactMatrix basis = sys.kernel_basis();
    std::vector<ModuleMap> out;
    out.reserve(basis.rows());
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        ExactMatrix x(f, dn, dm);
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) x.set(i, j, basis.get(r, idx(i, j)));
        out.push_back(ModuleMap::unchecked(m, n, std::move(x)));
    }
    return out;
}

void write_module(std::ostream& os, const KV4Module& m) {
    os << "kv4mod v1 field=" << field_to_string(m.field()) << " dim=" << m.dim() << "\n";
    auto dump = [&](const char* name, const ExactMatrix& mat) {
        for (std::size_t r = 0; r < mat.rows(); ++r)
            for (std::size_t c = 0; c < mat.cols(); ++c)
                if (Elem v = mat.get(r, c)) os << name << " " << r << " " << c << " " << std::hex << v << std::dec << "\n";
    };
    dump("A", m.A());
    dump("B", m.B());
    for (std::size_t i = 0; i < m.labels().size(); ++i)
        if (!m.labels()[i].empty()) os << "label " << i << " " << m.labels()[i] << "\n";
    os << "end\n";
}

KV4Module read_module(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(Errc::BadFile, "empty kv4mod stream");
    std::istringstream header(line);
    std::string magic, ver, fieldkv, dimkv;
    header >> magic >> ver >> fieldkv >> dimkv;
    if (magic != "kv4mod" || ver != "v1" || fieldkv.rfind("field=", 0) != 0 || dimkv.rfind("dim=", 0) != 0)
        fail(Errc::BadFile, "bad kv4mod header: " + line);
    FieldSpec f = field_parse(fieldkv.substr(6));
    std::size_t d = 0;
    try {
        d = std::stoul(dimkv.substr(4));
    } catch (const std::exception&) {
        fail(Errc::BadFile, "bad dim in kv4mod header");
    }
    ExactMatrix a(f, d, d), b(f, d, d);
    std::vector<std::string> labels(d);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line == "end") break;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "A" || kind == "B") {
            std::size_t r, c;
            std::string hex;
            if (!(ls >> r >> c >> hex)) fail(Errc::BadFile, "bad entry line: " + line);
            if (r >= d || c >= d) fail(Errc::BadFile, "entry out of range: " + line);
            Elem v = 0;
            try {
                v = std::stoull(hex, nullptr, 16);
            } catch (const std::exception&) {
                fail(Errc::BadFile, "bad element hex: " + line);
            }
            if (v > f.mask()) fail(Errc::BadFile, "element outside field: " + line);
            (kind == "A" ? a : b).set(r, c, v);
        } else if (kind == "label") {
            std::size_t i;
            std::string name;
            if (!(ls >> i >> name) || i >= d) fail(Errc::BadFile, "bad label line: " + line);
            labels[i] = name;
        } else {
            fail(Errc::BadFile, "unexpected line in kv4mod block: " + line);
        }
    }
    bool any_label = false;
    for (const std::string& l : labels) any_label |= !l.empty();
    return KV4Module::make(f, std::move(a), std::move(b),
                           any_label ? std::move(labels) : std::vector<std::string>{});
}

std::string module_to_string(const KV4Module& m) {
    std::ostringstream os;
    write_module(os, m);
    return os.str();
}

KV4Module module_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_module(is);
}

} // namespace kleinperm
