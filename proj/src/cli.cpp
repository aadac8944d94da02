#include "dgva/cli.hpp"

#include "dgva/builders.hpp"
#include "dgva/cohomology_vertex.hpp"
#include "dgva/modules.hpp"
#include "dgva/quotient.hpp"
#include "dgva/vadf.hpp"
#include "dgva/vertex_checks.hpp"
#include "dgva/zhu.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dgva {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string clean(std::string s) {
    for (auto& c : s)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return s.empty() ? "-" : s;
}

int wt2_of(const std::string& s, const char* what) {
    auto r = rat_parse(s);
    if (!r) throw std::invalid_argument(std::string(what) + ": expected a rational weight");
    Rat w2 = *r * 2;
    if (denominator(w2) != 1)
        throw std::invalid_argument(std::string(what) + ": weight must be a half-integer");
    return (int)numerator(w2);
}

struct Emit {
    std::ostream& out;
    bool jsonish = false;
    bool any_fail = false;
    std::string cur;

    void begin(const std::string& title) {
        begin_kv(title);
        if (!jsonish) out << "family\tchecked\tpassed\tskipped\tstatus\twitness\n";
    }
    void begin_kv(const std::string& title) {
        cur = title;
        if (!jsonish) out << "== " << title << " ==\n";
    }
    void report(const CheckReport& rep) {
        begin(rep.name);
        for (auto& l : rep.lines) {
            if (jsonish)
                out << "section=" << cur << "\tfamily=" << l.family << "\tchecked="
                    << l.checked << "\tpassed=" << l.passed << "\tskipped=" << l.skipped
                    << "\tstatus=" << l.status() << "\twitness=" << clean(l.witness)
                    << "\n";
            else
                out << l.family << "\t" << l.checked << "\t" << l.passed << "\t"
                    << l.skipped << "\t" << l.status() << "\t" << clean(l.witness)
                    << "\n";
        }
        for (auto& n : rep.notes) note(n);
        if (!rep.pass()) any_fail = true;
        kv("result", rep.pass() ? "pass" : "fail");
    }
    void note(const std::string& n) {
        if (jsonish) out << "section=" << cur << "\tnote=" << clean(n) << "\n";
        else out << "note\t" << clean(n) << "\n";
    }
    void kv(const std::string& k, const std::string& v) {
        if (jsonish) out << "section=" << cur << "\t" << k << "=" << v << "\n";
        else out << k << "=" << v << "\n";
    }
    void data(const std::string& title, const std::vector<std::string>& cols,
              const std::vector<std::vector<std::string>>& rows) {
        cur = title;
        if (!jsonish) {
            out << "== " << title << " ==\n";
            for (size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
            out << "\n";
            for (auto& r : rows) {
                for (size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
                out << "\n";
            }
        } else {
            for (auto& r : rows) {
                out << "section=" << title;
                for (size_t i = 0; i < r.size() && i < cols.size(); ++i)
                    out << "\t" << cols[i] << "=" << r[i];
                out << "\n";
            }
        }
    }
};

std::vector<std::vector<std::string>> dim_rows(const Space& sp) {
    std::vector<std::vector<std::string>> rows;
    for (auto& [bd, n] : dim_table(sp))
        rows.push_back({std::to_string(bd.deg), wt2_str(bd.wt2), std::to_string(n)});
    return rows;
}

std::string layer_cell(int v) {
    return v == EtaMorphism::kLayerAny ? std::string("*") : std::to_string(v);
}

std::string layer_wt_cell(int v) {
    return v == EtaMorphism::kLayerAny ? std::string("*") : wt2_str(v);
}

void emit_eta_layers(Emit& em, const std::string& title,
                     const std::vector<std::array<int, 5>>& layers) {
    std::vector<std::vector<std::string>> rows;
    for (auto& l : layers)
        rows.push_back({layer_cell(l[0]), layer_wt_cell(l[1]), std::to_string(l[2]),
                        std::to_string(l[3]), std::to_string(l[4])});
    em.data(title, {"deg", "wt", "src", "dst", "rank"}, rows);
}

GrVariant gr_variant_of(const std::string& s) {
    if (s == "F") return GrVariant::F;
    if (s == "W") return GrVariant::W;
    if (s == "FW") return GrVariant::FW;
    throw std::invalid_argument("unknown variant '" + s + "' (expected F, W, or FW)");
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact window calculator for dg vertex algebras and their quotients"};
    app.name("dgva");
    app.require_subcommand(1);

    bool jsonish = false, stamps = false;
    app.add_flag("--json-like", jsonish, "emit line-delimited key=value records");
    app.add_flag("--timestamps", stamps, "prepend a generation timestamp");

    std::string file, module_file, maxwt_s, cutoff_s, variant_s = "F", op_s;
    bool sweep = false;

    auto* c_check = app.add_subcommand("check", "run the axiom suite on a model file");
    c_check->add_option("file", file, "model file")->required();

    auto* c_coh = app.add_subcommand("cohomology", "induced model on cohomology classes");
    c_coh->add_option("file", file, "model file")->required();

    auto* c_c2 = app.add_subcommand("c2", "dimensions of the span of the (-2)-products");
    c_c2->add_option("file", file, "model file")->required();

    auto* c_r = app.add_subcommand("r", "quotient by the (-2)-products with its checks");
    c_r->add_option("file", file, "model file")->required();

    auto* c_zhu = app.add_subcommand("zhu", "truncated weighted-product quotient");
    c_zhu->add_option("file", file, "model file")->required();
    c_zhu->add_option("--max-wt", maxwt_s, "truncation weight")->required();
    c_zhu->add_option("--cutoff", cutoff_s, "span cutoff weight (default: max-wt)");
    c_zhu->add_flag("--sweep", sweep, "scan cutoffs from max-wt up and compare dimensions");

    auto* c_gr = app.add_subcommand("gr", "associated graded of the truncated quotient");
    c_gr->add_option("file", file, "model file")->required();
    c_gr->add_option("--variant", variant_s, "F, W, or FW")->required();
    c_gr->add_option("--max-wt", maxwt_s, "truncation weight (default: window bound)");
    c_gr->add_option("--cutoff", cutoff_s, "span cutoff weight (default: max-wt)");

    auto* c_eta = app.add_subcommand("eta", "comparison map onto the associated graded");
    c_eta->add_option("file", file, "model file")->required();
    c_eta->add_option("--variant", variant_s, "F, W, or FW")->required();
    c_eta->add_option("--max-wt", maxwt_s, "truncation weight (default: window bound)");
    c_eta->add_option("--cutoff", cutoff_s, "span cutoff weight (default: max-wt)");

    auto* c_mod = app.add_subcommand("module", "module-side constructions");
    c_mod->add_option("file", file, "model file")->required();
    c_mod->add_option("module_file", module_file, "module file (default: adjoint module)");
    c_mod->add_option("--op", op_s, "classify, r, a, gr, or nat")->required();
    c_mod->add_option("--variant", variant_s, "F|W|FW for gr; psi|phi|Psi for nat");
    c_mod->add_option("--max-wt", maxwt_s, "truncation weight (default: window bound)");
    c_mod->add_option("--cutoff", cutoff_s, "span cutoff weight (default: max-wt)");

    std::string gen_which;
    int gen_maxwt = 4;
    auto* c_gen = app.add_subcommand("gen", "print a rebuilt corpus model file");
    c_gen->add_option("which", gen_which, "heisenberg, dual, or nilpotent-dg")->required();
    c_gen->add_option("--max-wt", gen_maxwt, "weight bound for heisenberg");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        Emit em{out, jsonish};
        if (stamps) {
            auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            out << "# generated " << std::put_time(std::gmtime(&t), "%FT%TZ") << "\n";
        }

        if (c_gen->parsed()) {
            if (gen_which == "dual") out << serialize_model(build_dual());
            else if (gen_which == "nilpotent-dg") out << serialize_model(build_nilpotent_dg());
            else if (gen_which == "heisenberg") {
                if (gen_maxwt < 0) throw std::invalid_argument("gen: --max-wt must be >= 0");
                out << serialize_model(build_heisenberg(gen_maxwt));
            } else {
                throw std::invalid_argument("gen: unknown generator '" + gen_which + "'");
            }
            return 0;
        }

        VertexModel m = parse_model(slurp(file));
        auto pick_window = [&](int def_n2) {
            int n2 = maxwt_s.empty() ? def_n2 : wt2_of(maxwt_s, "--max-wt");
            int m2 = cutoff_s.empty() ? n2 : wt2_of(cutoff_s, "--cutoff");
            return std::pair{n2, m2};
        };

        if (c_check->parsed()) {
            em.report(check_vertex_axioms(m));
            if (m.has_conf) em.report(check_conformal(m));
            em.data("dimensions(" + m.name + ")", {"deg", "wt", "dim"}, dim_rows(m.sp));
        } else if (c_coh->parsed()) {
            auto cv = cohomology_vertex(m);
            em.report(cv.checks);
            em.report(check_vertex_axioms(cv.h));
            em.data("dimensions(" + cv.h.name + ")", {"deg", "wt", "dim"},
                    dim_rows(cv.h.sp));
        } else if (c_c2->parsed()) {
            Subspace c2 = c2_subspace(m, m.wt2_max);
            em.begin_kv("c2(" + m.name + ")");
            em.kv("dim_span", std::to_string(c2.dim()));
            em.kv("dim_quotient", std::to_string(m.sp.dim() - c2.dim()));
            em.kv("result", "pass");
        } else if (c_r->parsed()) {
            auto r = r_algebra(m);
            em.report(r.checks);
            em.data("dimensions(" + r.space().name + ")", {"deg", "wt", "dim"},
                    dim_rows(r.space()));
        } else if (c_zhu->parsed()) {
            auto [n2, m2] = pick_window(m.wt2_max);
            if (!sweep) {
                auto zp = zhu_quotient(m, n2, m2);
                em.report(zp.checks);
                std::vector<std::vector<std::string>> rows;
                for (auto& [w2, d] : zp.wdims)
                    rows.push_back({wt2_str(w2), std::to_string(d)});
                em.data("filtration(" + m.name + ")", {"wt", "dim"}, rows);
                em.begin_kv("summary(" + m.name + ")");
                em.kv("dim_A", std::to_string(zp.aclasses.size()));
                em.kv("stabilized", zp.stabilized ? "true" : "false");
                em.kv("result", zp.checks.pass() ? "pass" : "fail");
            } else {
                CheckReport sr;
                sr.name = "sweep(" + m.name + ")";
                std::vector<std::pair<int, std::vector<std::pair<int, int>>>> all;
                for (int c = n2; c <= m2; c += 2) {
                    auto zp = zhu_quotient(m, n2, c);
                    if (!zp.checks.pass()) em.any_fail = true;
                    all.emplace_back(c, zp.wdims);
                }
                std::vector<std::vector<std::string>> rows;
                for (auto& [c, wd] : all)
                    for (auto& [w2, d] : wd)
                        rows.push_back({wt2_str(c), wt2_str(w2), std::to_string(d)});
                em.data("sweep_table(" + m.name + ")", {"cutoff", "wt", "dim"}, rows);
                auto dim_at = [](const std::vector<std::pair<int, int>>& wd, int w2) {
                    int d = 0;
                    for (auto& [w, n] : wd)
                        if (w <= w2) d = n;
                    return d;
                };
                for (size_t i = 1; i < all.size(); ++i)
                    for (int w2 = 0; w2 <= n2; w2 += 2)
                        sr.check("antitone_in_cutoff",
                                 dim_at(all[i].second, w2) <= dim_at(all[i - 1].second, w2),
                                 "wt " + wt2_str(w2) + " grows at cutoff " +
                                     wt2_str(all[i].first));
                em.report(sr);
            }
        } else if (c_gr->parsed()) {
            auto [n2, m2] = pick_window(m.wt2_max);
            auto zp = zhu_quotient(m, n2, m2);
            auto g = gr_zhu(m, zp, gr_variant_of(variant_s));
            if (!zp.checks.pass()) em.any_fail = true;
            em.report(g.checks);
            em.data("dimensions(" + g.sp->name + ")", {"deg", "wt", "dim"},
                    dim_rows(*g.sp));
        } else if (c_eta->parsed()) {
            auto [n2, m2] = pick_window(m.wt2_max);
            auto r = r_algebra(m);
            auto zp = zhu_quotient(m, n2, m2);
            auto g = gr_zhu(m, zp, gr_variant_of(variant_s));
            if (!r.checks.pass() || !zp.checks.pass() || !g.checks.pass())
                em.any_fail = true;
            auto e = eta(m, r, zp, g);
            em.report(e.morphism.checks);
            emit_eta_layers(em, "layers(" + e.morphism.name + ")", e.layer_ranks);
            em.begin_kv("summary(" + e.morphism.name + ")");
            em.kv("bijective_on_truncation", e.bijective_on_truncation ? "true" : "false");
            em.kv("result", e.morphism.checks.pass() ? "pass" : "fail");
        } else if (c_mod->parsed()) {
            ModuleModel mod = module_file.empty() ? adjoint_module(m)
                                                  : parse_module(slurp(module_file), m);
            if (op_s == "classify") {
                auto c = classify_module(m, mod);
                em.report(c.checks);
                em.begin_kv("classification(" + mod.name + ")");
                em.kv("weak", c.weak ? "true" : "false");
                em.kv("graded", c.graded ? "true" : "false");
                em.kv("admissible", c.admissible ? "true" : "false");
                em.kv("ordinary", c.ordinary ? "true" : "false");
                em.kv("logarithmic", c.logarithmic ? "true" : "false");
                em.kv("spectrum_resolved", c.spectrum_resolved ? "true" : "false");
                for (auto& [what, why] : c.evidence) em.note(what + ": " + why);
                em.kv("result", c.checks.pass() ? "pass" : "fail");
                std::vector<std::vector<std::string>> rows;
                for (auto& [lam, ag] : c.spectrum)
                    rows.push_back({rat_str(lam), std::to_string(ag.first),
                                    std::to_string(ag.second)});
                em.data("spectrum(" + mod.name + ")", {"eigenvalue", "alg", "geo"}, rows);
            } else if (op_s == "r") {
                auto rm = r_module(m, mod);
                em.report(rm.alg.checks);
                em.report(rm.checks);
                em.data("dimensions(" + mod.name + ")", {"deg", "wt", "dim"},
                        dim_rows(rm.space()));
            } else if (op_s == "a") {
                auto [n2, m2] = pick_window(mod.wt2_max);
                auto bm = a_module(m, mod, n2, m2);
                em.report(bm.alg.checks);
                em.report(bm.checks);
                std::vector<std::vector<std::string>> rows;
                for (auto& [w2, d] : bm.wdims)
                    rows.push_back({wt2_str(w2), std::to_string(d)});
                em.data("filtration(" + mod.name + ")", {"wt", "dim"}, rows);
                em.begin_kv("summary(" + mod.name + ")");
                em.kv("dim_AM", std::to_string(bm.aclasses.size()));
                em.kv("result", bm.checks.pass() ? "pass" : "fail");
            } else if (op_s == "gr") {
                auto [n2, m2] = pick_window(mod.wt2_max);
                auto bm = a_module(m, mod, n2, m2);
                auto gm = gr_a_module(m, mod, bm, gr_variant_of(variant_s));
                if (!bm.checks.pass() || !bm.alg.checks.pass()) em.any_fail = true;
                em.report(gm.alg.checks);
                em.report(gm.checks);
                em.data("dimensions(" + gm.sp->name + ")", {"deg", "wt", "dim"},
                        dim_rows(*gm.sp));
            } else if (op_s == "nat") {
                NatVariant nv;
                if (variant_s == "psi") nv = NatVariant::psi;
                else if (variant_s == "phi") nv = NatVariant::phi;
                else if (variant_s == "Psi") nv = NatVariant::Psi;
                else
                    throw std::invalid_argument("module --op nat: --variant must be psi, "
                                                "phi, or Psi");
                GrVariant gv = nv == NatVariant::psi   ? GrVariant::F
                               : nv == NatVariant::phi ? GrVariant::W
                                                       : GrVariant::FW;
                auto [n2, m2] = pick_window(mod.wt2_max);
                auto rm = r_module(m, mod);
                auto bm = a_module(m, mod, n2, m2);
                auto gm = gr_a_module(m, mod, bm, gv);
                if (!rm.checks.pass() || !bm.checks.pass() || !gm.checks.pass())
                    em.any_fail = true;
                auto nt = nat_transform(m, mod, rm, bm, gm, nv);
                em.report(nt.alg_eta.morphism.checks);
                em.report(nt.morphism.checks);
                if (!nt.graded.name.empty()) em.report(nt.graded.checks);
                emit_eta_layers(em, "layers(" + nt.morphism.name + ")", nt.layer_ranks);
                em.begin_kv("summary(" + nt.morphism.name + ")");
                em.kv("bijective_on_truncation",
                      nt.bijective_on_truncation ? "true" : "false");
                em.kv("result", nt.morphism.checks.pass() ? "pass" : "fail");
            } else {
                throw std::invalid_argument("module: unknown --op '" + op_s + "'");
            }
        }
        return em.any_fail ? 1 : 0;
    } catch (const WindowError& e) {
        err << "window: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error&) {
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dgva
