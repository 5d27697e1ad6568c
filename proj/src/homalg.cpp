#include "kleinperm/homalg.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace kleinperm {

ExactnessReport check_exact(const Resolution& r) {
    // failed_position indexes the offending map: 0 = augmentation, i >= 1 = d_i.
    ExactnessReport rep;
    if (r.terms.empty()) {
        rep.ok = false;
        rep.failed_position = 0;
        rep.detail = "resolution has no terms";
        return rep;
    }
    if (r.aug.rank() != r.target.dim()) {
        rep.ok = false;
        rep.failed_position = 0;
        rep.detail = "augmentation is not surjective";
        return rep;
    }
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        const ExactMatrix& out = (i == 0) ? r.aug : r.maps[i - 1];
        Subspace ker_out = kernel(out);
        if (i < r.maps.size()) {
            Subspace im_in = image(r.maps[i]);
            if (!(ker_out == im_in)) {
                rep.ok = false;
                rep.failed_position = int(i) + 1;
                rep.detail = "im(d_" + std::to_string(i + 1) + ") != ker at term " + std::to_string(i);
                return rep;
            }
        } else {
            if (ker_out.dim() != 0) {
                rep.ok = false;
                rep.failed_position = int(i);
                rep.detail = "top map is not injective";
                return rep;
            }
        }
    }
    return rep;
}

ProjectiveCover projective_cover(const KV4Module& m) {
    const FieldSpec f = m.field();
    const std::size_t d = m.dim();
    Subspace rad = radical(m);
    // head-basis representatives: standard vectors at non-pivot coordinates
    std::vector<std::size_t> rep;
    {
        std::vector<bool> is_pivot(d, false);
        for (std::size_t p : rad.pivots()) is_pivot[p] = true;
        for (std::size_t j = 0; j < d; ++j)
            if (!is_pivot[j]) rep.push_back(j);
    }
    const std::size_t h = rep.size();
    std::vector<KV4Module> frees(h, construct(IndecompLabel::reg(), f));
    DirectSum p = direct_sum(frees);
    ExactMatrix phi(f, d, 4 * h);
    for (std::size_t i = 0; i < h; ++i) {
        Vec gen(d, 0);
        gen[rep[i]] = 1;
        const Vec ag = m.A().apply(gen);
        const Vec bg = m.B().apply(gen);
        const Vec abg = m.A().apply(bg);
        for (std::size_t r = 0; r < d; ++r) {
            if (gen[r]) phi.set(r, 4 * i + 0, gen[r]);
            if (ag[r]) phi.set(r, 4 * i + 1, ag[r]);
            if (bg[r]) phi.set(r, 4 * i + 2, bg[r]);
            if (abg[r]) phi.set(r, 4 * i + 3, abg[r]);
        }
    }
    ModuleMap map = ModuleMap::make(p.module, m, std::move(phi));
    if (!map.is_surjective()) fail(Errc::Internal, "projective cover is not surjective");
    return ProjectiveCover{p.module, std::move(map)};
}

KV4Module heller(const KV4Module& m) {
    ProjectiveCover pc = projective_cover(m);
    return map_kernel(pc.map).module;
}

bool is_essential_surjection(const ModuleMap& phi) {
    if (!phi.is_surjective()) return false;
    return head_dim(phi.source) == head_dim(phi.target);
}

SnakeSequence snake_sequence(const ModuleMap& phi) {
    if (!is_essential_surjection(phi)) fail(Errc::NotEssential, "snake_sequence needs an essential surjection");
    ProjectiveCover psi = projective_cover(phi.source);
    // phi . psi is a projective cover of the target; Omega(M') sits inside
    // Omega(M) = ker(phi . psi), and psi maps it onto ker(phi).
    KernelResult omega_src = map_kernel(psi.map);
    ModuleMap composite = ModuleMap::unchecked(psi.cover, phi.target, phi.matrix * psi.map.matrix);
    KernelResult omega_tgt = map_kernel(composite);
    KernelResult ker_phi = map_kernel(phi);

    // inclusion Omega(M') -> Omega(M): coordinates of omega_src basis in omega_tgt
    const FieldSpec f = phi.source.field();
    ExactMatrix inc(f, omega_tgt.module.dim(), omega_src.module.dim());
    for (std::size_t j = 0; j < omega_src.module.dim(); ++j) {
        Vec v = omega_src.inclusion.matrix.col(j);
        auto c = omega_tgt.inclusion.matrix.solve(v);
        if (!c) fail(Errc::Internal, "Omega(M') does not embed in Omega(M)");
        for (std::size_t i = 0; i < omega_tgt.module.dim(); ++i) inc.set(i, j, (*c)[i]);
    }
    // projection Omega(M) -> ker(phi): apply psi, then express in ker-phi basis
    ExactMatrix prj(f, ker_phi.module.dim(), omega_tgt.module.dim());
    for (std::size_t j = 0; j < omega_tgt.module.dim(); ++j) {
        Vec v = psi.map.matrix.apply(omega_tgt.inclusion.matrix.col(j));
        auto c = ker_phi.inclusion.matrix.solve(v);
        if (!c) fail(Errc::Internal, "snake projection misses ker(phi)");
        for (std::size_t i = 0; i < ker_phi.module.dim(); ++i) prj.set(i, j, (*c)[i]);
    }
    SnakeSequence out{omega_src.module, omega_tgt.module, ker_phi.module,
                      ModuleMap::make(omega_src.module, omega_tgt.module, std::move(inc)),
                      ModuleMap::make(omega_tgt.module, ker_phi.module, std::move(prj))};
    // exactness of 0 -> Omega(M') -> Omega(M) -> ker(phi) -> 0
    if (!out.inclusion.is_injective() || !out.projection.is_surjective() ||
        !(kernel(out.projection.matrix) == image(out.inclusion.matrix)))
        fail(Errc::Internal, "snake sequence is not exact");
    return out;
}

Resolution splice(const ShortExactSequence& outer, const Resolution& inner, const ModuleMap& ident) {
    if (!(ident.source == inner.target) || !(ident.target == outer.sub))
        fail(Errc::IdentificationMismatch, "identification must map inner.target onto outer.sub");
    if (!ident.is_injective() || !ident.is_surjective())
        fail(Errc::IdentificationMismatch, "identification is not an isomorphism");
    if (!(ident.matrix * inner.target.A() == outer.sub.A() * ident.matrix) ||
        !(ident.matrix * inner.target.B() == outer.sub.B() * ident.matrix))
        fail(Errc::IdentificationMismatch, "identification is not equivariant");
    Resolution r;
    r.target = outer.quotient;
    r.terms.push_back(outer.middle);
    r.aug = outer.surjection.matrix;
    // middle map iota . ident . inner-augmentation
    r.terms.push_back(inner.terms[0]);
    r.maps.push_back(outer.inclusion.matrix * ident.matrix * inner.aug);
    for (std::size_t i = 0; i + 1 < inner.terms.size(); ++i) {
        r.terms.push_back(inner.terms[i + 1]);
        r.maps.push_back(inner.maps[i]);
    }
    ExactnessReport rep = check_exact(r);
    if (!rep.ok) fail(Errc::IdentificationMismatch, "spliced resolution is not exact: " + rep.detail);
    return r;
}

Resolution sum_resolutions(const std::vector<Resolution>& rs) {
    std::size_t len = 0;
    for (const Resolution& r : rs) len = std::max(len, r.terms.size());
    FieldSpec f = rs.empty() ? FieldSpec{} : rs[0].target.field();

    Resolution out;
    std::vector<KV4Module> targets;
    for (const Resolution& r : rs) targets.push_back(r.target);
    DirectSum tgt = direct_sum(targets);
    out.target = tgt.module;

    std::vector<DirectSum> term_sums;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<KV4Module> terms_i;
        for (const Resolution& r : rs)
            terms_i.push_back(i < r.terms.size() ? r.terms[i] : KV4Module::zero(f));
        term_sums.push_back(direct_sum(terms_i));
        out.terms.push_back(term_sums.back().module);
    }
    // block-diagonal maps
    auto block_map = [&](std::size_t level) {
        const DirectSum& src = term_sums[level + 1];
        const DirectSum& dst = term_sums[level];
        ExactMatrix m(f, dst.module.dim(), src.module.dim());
        for (std::size_t s = 0; s < rs.size(); ++s) {
            if (level + 1 >= rs[s].terms.size()) continue;
            const ExactMatrix& d = rs[s].maps[level];
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t j = 0; j < d.cols(); ++j)
                    if (Elem v = d.get(i, j)) m.set(dst.offsets[s] + i, src.offsets[s] + j, v);
        }
        return m;
    };
    for (std::size_t i = 0; i + 1 < len; ++i) out.maps.push_back(block_map(i));
    ExactMatrix aug(f, out.target.dim(), out.terms.empty() ? 0 : out.terms[0].dim());
    for (std::size_t s = 0; s < rs.size(); ++s) {
        const ExactMatrix& a = rs[s].aug;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (Elem v = a.get(i, j)) aug.set(tgt.offsets[s] + i, term_sums[0].offsets[s] + j, v);
    }
    out.aug = std::move(aug);
    return out;
}

Resolution retarget(const Resolution& r, const ModuleMap& iso) {
    if (!(iso.source == r.target)) fail(Errc::IdentificationMismatch, "retarget iso source mismatch");
    if (!iso.is_injective() || !iso.is_surjective())
        fail(Errc::IdentificationMismatch, "retarget needs an isomorphism");
    Resolution out = r;
    out.target = iso.target;
    out.aug = iso.matrix * r.aug;
    return out;
}

void write_resolution(std::ostream& os, const Resolution& r) {
    os << "kv4res v1 length=" << r.length() << "\n";
    os << "module target\n";
    write_module(os, r.target);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        os << "module term " << i << "\n";
        write_module(os, r.terms[i]);
    }
    auto dump_map = [&os](const std::string& name, const ExactMatrix& m) {
        os << "map " << name << " rows=" << m.rows() << " cols=" << m.cols() << "\n";
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (Elem v = m.get(i, j)) os << i << " " << j << " " << std::hex << v << std::dec << "\n";
        os << "end\n";
    };
    for (std::size_t i = 0; i < r.maps.size(); ++i) dump_map("d" + std::to_string(i + 1), r.maps[i]);
    dump_map("aug", r.aug);
}

Resolution read_resolution(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(Errc::BadFile, "empty kv4res stream");
    std::istringstream hdr(line);
    std::string magic, ver, lenkv;
    hdr >> magic >> ver >> lenkv;
    if (magic != "kv4res" || ver != "v1" || lenkv.rfind("length=", 0) != 0)
        fail(Errc::BadFile, "bad kv4res header: " + line);
    int length = -1;
    try {
        length = std::stoi(lenkv.substr(7));
    } catch (const std::exception&) {
        fail(Errc::BadFile, "bad length in kv4res header");
    }
    if (length < 0) fail(Errc::BadFile, "negative resolution length");

    Resolution r;
    bool have_target = false;
    std::vector<std::optional<KV4Module>> terms{std::size_t(length) + 1, std::nullopt};
    std::vector<std::optional<ExactMatrix>> maps{std::size_t(length), std::nullopt};
    std::optional<ExactMatrix> aug;

    FieldSpec f;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "module") {
            std::string which;
            ls >> which;
            KV4Module m = read_module(is);
            f = m.field();
            if (which == "target") {
                r.target = m;
                have_target = true;
            } else if (which == "term") {
                std::size_t idx;
                std::istringstream rest(line.substr(line.find("term") + 4));
                if (!(rest >> idx) || idx > std::size_t(length)) fail(Errc::BadFile, "bad term index: " + line);
                terms[idx] = m;
            } else {
                fail(Errc::BadFile, "unknown module block: " + line);
            }
        } else if (kind == "map") {
            std::string name, rowskv, colskv;
            ls >> name >> rowskv >> colskv;
            if (rowskv.rfind("rows=", 0) != 0 || colskv.rfind("cols=", 0) != 0)
                fail(Errc::BadFile, "bad map header: " + line);
            std::size_t rows = std::stoul(rowskv.substr(5));
            std::size_t cols = std::stoul(colskv.substr(5));
            ExactMatrix m(f, rows, cols);
            std::string entry;
            while (std::getline(is, entry)) {
                if (entry.empty()) continue;
                if (entry == "end") break;
                std::istringstream es(entry);
                std::size_t i, j;
                std::string hex;
                if (!(es >> i >> j >> hex) || i >= rows || j >= cols)
                    fail(Errc::BadFile, "bad map entry: " + entry);
                m.set(i, j, std::stoull(hex, nullptr, 16));
            }
            if (name == "aug") {
                aug = std::move(m);
            } else if (name.size() > 1 && name[0] == 'd') {
                std::size_t idx = std::stoul(name.substr(1));
                if (idx < 1 || idx > std::size_t(length)) fail(Errc::BadFile, "bad map index: " + name);
                maps[idx - 1] = std::move(m);
            } else {
                fail(Errc::BadFile, "unknown map block: " + name);
            }
        } else {
            fail(Errc::BadFile, "unexpected line in kv4res: " + line);
        }
    }
    if (!have_target || !aug) fail(Errc::BadFile, "kv4res missing target or augmentation");
    for (std::size_t i = 0; i <= std::size_t(length); ++i) {
        if (!terms[i]) fail(Errc::BadFile, "kv4res missing term " + std::to_string(i));
        r.terms.push_back(*terms[i]);
    }
    for (std::size_t i = 0; i < std::size_t(length); ++i) {
        if (!maps[i]) fail(Errc::BadFile, "kv4res missing map d" + std::to_string(i + 1));
        r.maps.push_back(*maps[i]);
    }
    r.aug = std::move(*aug);
    return r;
}

} // namespace kleinperm
