#include "dgva/vadf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dgva {

namespace {

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ", col " +
                                std::to_string(col) + ": " + msg);
}

struct Tok {
    std::string s;
    int col = 1;
};

// one logical line: comment stripped, whitespace-split tokens with columns
struct Line {
    int no = 0;
    std::vector<Tok> toks;
    const Tok& at(size_t i, const char* what) const {
        if (i >= toks.size()) fail(no, toks.empty() ? 1 : toks.back().col, std::string("missing ") + what);
        return toks[i];
    }
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    int no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string raw = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        Line ln;
        ln.no = no;
        for (size_t i = 0; i < raw.size();) {
            if (std::isspace((unsigned char)raw[i])) { ++i; continue; }
            size_t j = i;
            while (j < raw.size() && !std::isspace((unsigned char)raw[j])) ++j;
            ln.toks.push_back({raw.substr(i, j - i), (int)i + 1});
            i = j;
        }
        if (!ln.toks.empty()) out.push_back(std::move(ln));
    }
    return out;
}

bool rat_lex(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t d0 = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == d0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    size_t d1 = ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    return i > d1 && i == s.size();
}

Rat parse_rat(const Line& ln, const Tok& t) {
    if (!rat_lex(t.s)) fail(ln.no, t.col, "expected a rational, got '" + t.s + "'");
    return *rat_parse(t.s);
}

long long parse_int(const Line& ln, const Tok& t, const std::string& s, int col) {
    size_t i = s.empty() || (s[0] != '+' && s[0] != '-') ? 0 : 1;
    if (i == s.size()) fail(ln.no, col, "expected an integer");
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit((unsigned char)s[j])) fail(ln.no, col, "expected an integer, got '" + s + "'");
    return std::stoll(s);
}

std::string kv(const Line& ln, const Tok& t, const std::string& key) {
    if (t.s.rfind(key + "=", 0) != 0) fail(ln.no, t.col, "expected " + key + "=...");
    return t.s.substr(key.size() + 1);
}

bool id_lex(const std::string& s) {
    if (s.empty() || !(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '-')) return false;
    return true;
}

// <rat>*<id> terms separated by + or -, or the single token 0
Element parse_combo(const Line& ln, size_t from, const Space& sp) {
    const Tok& first = ln.at(from, "right-hand side");
    if (ln.toks.size() == from + 1 && first.s == "0") return {};
    std::string s;
    std::vector<int> cols;  // column of each char for error reporting
    for (size_t i = from; i < ln.toks.size(); ++i) {
        for (size_t j = 0; j < ln.toks[i].s.size(); ++j) {
            s += ln.toks[i].s[j];
            cols.push_back(ln.toks[i].col + (int)j);
        }
    }
    Element out;
    size_t i = 0;
    bool lead = true;
    while (i < s.size()) {
        Rat sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sgn = -1;
            ++i;
        } else if (!lead) {
            fail(ln.no, cols[i], "expected + or - between terms");
        }
        lead = false;
        size_t r0 = i;
        while (i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '/')) ++i;
        std::string rs = s.substr(r0, i - r0);
        if (!rat_lex(rs)) fail(ln.no, cols[std::min(r0, cols.size() - 1)], "expected a rational coefficient");
        if (i >= s.size() || s[i] != '*') fail(ln.no, cols[std::min(i, cols.size() - 1)], "expected * after the coefficient");
        ++i;
        size_t id0 = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        std::string id = s.substr(id0, i - id0);
        if (!id_lex(id)) fail(ln.no, cols[std::min(id0, cols.size() - 1)], "expected a basis id");
        int k = sp.find(id);
        if (k < 0) fail(ln.no, cols[std::min(id0, cols.size() - 1)], "undeclared id '" + id + "'");
        Element term;
        term.t.emplace(k, sgn * *rat_parse(rs));
        out.axpy(1, term);
    }
    return out;
}

// <id>[<int>] head of a mode line
std::pair<std::string, int> parse_mode_head(const Line& ln, const Tok& t) {
    auto lb = t.s.find('[');
    if (lb == std::string::npos || t.s.back() != ']')
        fail(ln.no, t.col, "expected <id>[<n>]");
    std::string id = t.s.substr(0, lb);
    if (!id_lex(id)) fail(ln.no, t.col, "expected a basis id before '['");
    long long n = parse_int(ln, t, t.s.substr(lb + 1, t.s.size() - lb - 2), t.col + (int)lb + 1);
    return {id, (int)n};
}

int find_id(const Line& ln, const Tok& t, const Space& sp) {
    if (!id_lex(t.s)) fail(ln.no, t.col, "expected a basis id");
    int k = sp.find(t.s);
    if (k < 0) fail(ln.no, t.col, "undeclared id '" + t.s + "'");
    return k;
}

struct WindowDecl {
    int wt2_max = 0;
    int lo = 0, hi = 0;
};

WindowDecl parse_window(const Line& ln) {
    const Tok& wt = ln.at(1, "wt<=... bound");
    if (wt.s.rfind("wt<=", 0) != 0) fail(ln.no, wt.col, "expected wt<=<rat>");
    std::string ws = wt.s.substr(4);
    if (!rat_lex(ws)) fail(ln.no, wt.col + 4, "expected a rational weight bound");
    Rat w = *rat_parse(ws);
    Rat w2 = w * 2;
    if (denominator(w2) != 1) fail(ln.no, wt.col + 4, "weight bound must be a half-integer");
    const Tok& md = ln.at(2, "modes=lo..hi range");
    std::string ms = kv(ln, md, "modes");
    auto dots = ms.find("..");
    if (dots == std::string::npos) fail(ln.no, md.col, "expected modes=<lo>..<hi>");
    WindowDecl out;
    out.wt2_max = (int)numerator(w2);
    out.lo = (int)parse_int(ln, md, ms.substr(0, dots), md.col + 6);
    out.hi = (int)parse_int(ln, md, ms.substr(dots + 2), md.col + 6 + (int)dots + 2);
    if (out.lo > out.hi) fail(ln.no, md.col, "empty mode range");
    return out;
}

void add_basis(const Line& ln, Space& sp) {
    const Tok& idt = ln.at(1, "basis id");
    if (!id_lex(idt.s)) fail(ln.no, idt.col, "invalid basis id '" + idt.s + "'");
    if (sp.find(idt.s) >= 0) fail(ln.no, idt.col, "duplicate basis id '" + idt.s + "'");
    const Tok& dt = ln.at(2, "deg=<int>");
    long long deg = parse_int(ln, dt, kv(ln, dt, "deg"), dt.col + 4);
    const Tok& wtt = ln.at(3, "wt=<rat>");
    std::string ws = kv(ln, wtt, "wt");
    if (!rat_lex(ws)) fail(ln.no, wtt.col + 3, "expected a rational weight");
    Rat w = *rat_parse(ws);
    if (denominator(w) != 1 && denominator(w) != 2)
        fail(ln.no, wtt.col + 3, "weights must have denominator 1 or 2");
    Rat w2 = w * 2;
    sp.add(idt.s, Bidegree{(int)deg, (int)numerator(w2)});
}

// shared bidegree validation for mode lines
void check_mode_entry(const Line& ln, const Space& asp, int u, int n, const Space& msp,
                      int v, const Element& val, const Space& osp) {
    Bidegree want{asp.bd(u).deg + msp.bd(v).deg - 2 * n - 2,
                  asp.bd(u).wt2 + msp.bd(v).wt2 - 2 * (n + 1)};
    for (auto& [k, c] : val.t)
        if (!(osp.bd(k) == want))
            fail(ln.no, 1, "bidegree violation: " + mode_str(asp, u, n, msp, v) +
                               " cannot contain " + osp.ids[k]);
}

} // namespace

/* ------------------------------------------------------------------ */

VertexModel parse_model(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw std::invalid_argument("line 1, col 1: empty input");
    VertexModel m;

    const Line& head = lines.front();
    if (head.toks[0].s != "model")
        fail(head.no, head.toks[0].col, "expected 'model <name>'");
    m.name = head.at(1, "model name").s;
    m.sp.name = m.name;

    bool saw_window = false, saw_end = false;
    std::string conf_id, vac_id;
    int vac_line = 0, conf_line = 0;
    bool saw_conf = false;
    std::vector<std::pair<const Line*, size_t>> deferred;  // d and mode lines

    for (size_t li = 1; li < lines.size(); ++li) {
        const Line& ln = lines[li];
        const std::string& k = ln.toks[0].s;
        if (saw_end) fail(ln.no, ln.toks[0].col, "content after 'end'");
        if (k == "basis") {
            add_basis(ln, m.sp);
        } else if (k == "vacuum") {
            if (!vac_id.empty()) fail(ln.no, ln.toks[0].col, "duplicate vacuum line");
            vac_id = ln.at(1, "vacuum id").s;
            vac_line = ln.no;
        } else if (k == "conformal") {
            if (saw_conf) fail(ln.no, ln.toks[0].col, "duplicate conformal line");
            saw_conf = true;
            conf_line = ln.no;
            conf_id = ln.at(1, "conformal id").s;
            const Tok& ct = ln.at(2, "c=<rat>");
            std::string cs = kv(ln, ct, "c");
            if (!rat_lex(cs)) fail(ln.no, ct.col + 2, "expected a rational central charge");
            m.cV = *rat_parse(cs);
        } else if (k == "window") {
            if (saw_window) fail(ln.no, ln.toks[0].col, "duplicate window line");
            saw_window = true;
            WindowDecl w = parse_window(ln);
            m.wt2_max = w.wt2_max;
            m.mode_lo = w.lo;
            m.mode_hi = w.hi;
        } else if (k == "d" || k == "mode") {
            deferred.emplace_back(&ln, li);
        } else if (k == "end") {
            saw_end = true;
        } else {
            fail(ln.no, ln.toks[0].col, "unknown directive '" + k + "'");
        }
    }
    if (!saw_end) fail(lines.back().no, 1, "missing 'end'");
    if (!saw_window) fail(lines.back().no, 1, "missing window line");
    if (vac_id.empty()) fail(lines.back().no, 1, "missing vacuum line");

    m.vacuum = m.sp.find(vac_id);
    if (m.vacuum < 0) fail(vac_line, 1, "undeclared vacuum id '" + vac_id + "'");
    m.has_conf = saw_conf;
    if (saw_conf) {
        if (conf_id == "0") {
            m.conformal = -1;
        } else {
            m.conformal = m.sp.find(conf_id);
            if (m.conformal < 0) fail(conf_line, 1, "undeclared conformal id '" + conf_id + "'");
        }
    }
    m.dcols.assign(m.sp.dim(), Element{});
    m.set_wt2_min();

    for (auto& [lp, li] : deferred) {
        const Line& ln = *lp;
        if (ln.toks[0].s == "d") {
            int v = find_id(ln, ln.at(1, "basis id"), m.sp);
            const Tok& eq = ln.at(2, "'='");
            if (eq.s != "=") fail(ln.no, eq.col, "expected '='");
            Element val = parse_combo(ln, 3, m.sp);
            for (auto& [k, c] : val.t) {
                Bidegree want{m.sp.bd(v).deg + 1, m.sp.bd(v).wt2};
                if (!(m.sp.bd(k) == want))
                    fail(ln.no, 1, "bidegree violation: d(" + m.sp.ids[v] +
                                       ") cannot contain " + m.sp.ids[k]);
            }
            if (v == m.vacuum && !val.zero())
                fail(ln.no, 1, "the vacuum must be d-closed");
            if (!m.dcols[v].zero()) fail(ln.no, 1, "duplicate d line for " + m.sp.ids[v]);
            m.dcols[v] = std::move(val);
        } else {
            auto [uid, n] = parse_mode_head(ln, ln.at(1, "mode head"));
            int u = m.sp.find(uid);
            if (u < 0) fail(ln.no, ln.toks[1].col, "undeclared id '" + uid + "'");
            int v = find_id(ln, ln.at(2, "second id"), m.sp);
            const Tok& eq = ln.at(3, "'='");
            if (eq.s != "=") fail(ln.no, eq.col, "expected '='");
            if (n < m.mode_lo || n > m.mode_hi)
                fail(ln.no, ln.toks[1].col, "mode outside the declared range");
            int rw = m.sp.bd(u).wt2 + m.sp.bd(v).wt2 - 2 * (n + 1);
            if (rw > m.wt2_max)
                fail(ln.no, ln.toks[1].col, "mode result weight exceeds the window bound");
            Element val = parse_combo(ln, 4, m.sp);
            check_mode_entry(ln, m.sp, u, n, m.sp, v, val, m.sp);
            if (m.tab.count({u, n, v}))
                fail(ln.no, ln.toks[1].col, "duplicate mode line");
            if (!val.zero()) m.tab[{u, n, v}] = std::move(val);
            else m.tab[{u, n, v}] = Element{};
        }
    }
    // zero entries were recorded only to catch duplicates; drop them now
    for (auto it = m.tab.begin(); it != m.tab.end();)
        it = it->second.zero() ? m.tab.erase(it) : std::next(it);
    return m;
}

ModuleModel parse_module(const std::string& text, const VertexModel& model) {
    auto lines = split_lines(text);
    if (lines.empty()) throw std::invalid_argument("line 1, col 1: empty input");
    ModuleModel mod;
    mod.alg = &model;

    const Line& head = lines.front();
    if (head.toks[0].s != "module")
        fail(head.no, head.toks[0].col, "expected 'module <name> over <model>'");
    mod.name = head.at(1, "module name").s;
    const Tok& over = head.at(2, "'over'");
    if (over.s != "over") fail(head.no, over.col, "expected 'over'");
    const Tok& mn = head.at(3, "model name");
    if (mn.s != model.name)
        fail(head.no, mn.col, "module is over '" + mn.s + "', not '" + model.name + "'");
    mod.sp.name = mod.name;

    bool saw_window = false, saw_end = false;
    std::vector<const Line*> deferred;
    std::vector<const Line*> grades;

    for (size_t li = 1; li < lines.size(); ++li) {
        const Line& ln = lines[li];
        const std::string& k = ln.toks[0].s;
        if (saw_end) fail(ln.no, ln.toks[0].col, "content after 'end'");
        if (k == "basis") {
            add_basis(ln, mod.sp);
        } else if (k == "grade") {
            grades.push_back(&ln);
        } else if (k == "window") {
            if (saw_window) fail(ln.no, ln.toks[0].col, "duplicate window line");
            saw_window = true;
            WindowDecl w = parse_window(ln);
            mod.wt2_max = w.wt2_max;
            mod.mode_lo = w.lo;
            mod.mode_hi = w.hi;
        } else if (k == "d" || k == "mode") {
            deferred.push_back(&ln);
        } else if (k == "end") {
            saw_end = true;
        } else {
            fail(ln.no, ln.toks[0].col, "unknown directive '" + k + "' in a module file");
        }
    }
    if (!saw_end) fail(lines.back().no, 1, "missing 'end'");
    if (!saw_window) fail(lines.back().no, 1, "missing window line");
    mod.dcols.assign(mod.sp.dim(), Element{});
    mod.set_wt2_min();

    for (const Line* lp : grades) {
        const Line& ln = *lp;
        int v = find_id(ln, ln.at(1, "basis id"), mod.sp);
        const Tok& eq = ln.at(2, "'='");
        if (eq.s != "=") fail(ln.no, eq.col, "expected '='");
        const Tok& rt = ln.at(3, "grade value");
        if (mod.grade.count(v)) fail(ln.no, ln.toks[1].col, "duplicate grade line");
        mod.grade[v] = parse_rat(ln, rt);
    }
    for (const Line* lp : deferred) {
        const Line& ln = *lp;
        if (ln.toks[0].s == "d") {
            int v = find_id(ln, ln.at(1, "basis id"), mod.sp);
            const Tok& eq = ln.at(2, "'='");
            if (eq.s != "=") fail(ln.no, eq.col, "expected '='");
            Element val = parse_combo(ln, 3, mod.sp);
            for (auto& [k, c] : val.t) {
                Bidegree want{mod.sp.bd(v).deg + 1, mod.sp.bd(v).wt2};
                if (!(mod.sp.bd(k) == want))
                    fail(ln.no, 1, "bidegree violation: d(" + mod.sp.ids[v] +
                                       ") cannot contain " + mod.sp.ids[k]);
            }
            if (!mod.dcols[v].zero()) fail(ln.no, 1, "duplicate d line for " + mod.sp.ids[v]);
            mod.dcols[v] = std::move(val);
        } else {
            auto [uid, n] = parse_mode_head(ln, ln.at(1, "mode head"));
            int u = model.sp.find(uid);
            if (u < 0) fail(ln.no, ln.toks[1].col, "undeclared algebra id '" + uid + "'");
            int v = find_id(ln, ln.at(2, "module id"), mod.sp);
            const Tok& eq = ln.at(3, "'='");
            if (eq.s != "=") fail(ln.no, eq.col, "expected '='");
            if (n < mod.mode_lo || n > mod.mode_hi)
                fail(ln.no, ln.toks[1].col, "mode outside the declared range");
            int rw = model.sp.bd(u).wt2 + mod.sp.bd(v).wt2 - 2 * (n + 1);
            if (rw > mod.wt2_max)
                fail(ln.no, ln.toks[1].col, "mode result weight exceeds the window bound");
            Element val = parse_combo(ln, 4, mod.sp);
            check_mode_entry(ln, model.sp, u, n, mod.sp, v, val, mod.sp);
            if (mod.act.count({u, n, v}))
                fail(ln.no, ln.toks[1].col, "duplicate mode line");
            mod.act[{u, n, v}] = std::move(val);
        }
    }
    for (auto it = mod.act.begin(); it != mod.act.end();)
        it = it->second.zero() ? mod.act.erase(it) : std::next(it);
    return mod;
}

/* ------------------------------------------------------------------ */

namespace {

std::vector<int> canon_order(const Space& sp) {
    std::vector<int> ord(sp.dim());
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        return std::tuple{sp.bd(a).wt2, sp.bd(a).deg, sp.ids[a]} <
               std::tuple{sp.bd(b).wt2, sp.bd(b).deg, sp.ids[b]};
    });
    return ord;
}

std::string combo_str(const Space& sp, const Element& e, const std::vector<int>& pos) {
    if (e.zero()) return "0";
    std::vector<std::pair<int, Rat>> terms(e.t.begin(), e.t.end());
    std::sort(terms.begin(), terms.end(),
              [&](auto& a, auto& b) { return pos[a.first] < pos[b.first]; });
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
        Rat c = terms[i].second;
        if (i == 0) {
            s += rat_str(c);
        } else {
            s += c < 0 ? " - " : " + ";
            s += rat_str(c < 0 ? Rat(-c) : c);
        }
        s += "*" + sp.ids[terms[i].first];
    }
    return s;
}

std::string window_str(int wt2_max, int lo, int hi) {
    return "window wt<=" + wt2_str(wt2_max) + " modes=" + std::to_string(lo) + ".." +
           std::to_string(hi);
}

} // namespace

std::string serialize_model(const VertexModel& m) {
    std::ostringstream o;
    auto ord = canon_order(m.sp);
    std::vector<int> pos(m.sp.dim());
    for (int i = 0; i < (int)ord.size(); ++i) pos[ord[i]] = i;

    o << "model " << m.name << "\n";
    for (int i : ord)
        o << "basis " << m.sp.ids[i] << " deg=" << m.sp.bd(i).deg
          << " wt=" << wt2_str(m.sp.bd(i).wt2) << "\n";
    o << "vacuum " << m.sp.ids[m.vacuum] << "\n";
    if (m.has_conf)
        o << "conformal " << (m.conformal < 0 ? "0" : m.sp.ids[m.conformal])
          << " c=" << rat_str(m.cV) << "\n";
    o << window_str(m.wt2_max, m.mode_lo, m.mode_hi) << "\n";
    for (int i : ord)
        if (i < (int)m.dcols.size() && !m.dcols[i].zero())
            o << "d " << m.sp.ids[i] << " = " << combo_str(m.sp, m.dcols[i], pos) << "\n";

    std::vector<std::tuple<int, int, int>> keys;
    for (auto& [key, val] : m.tab)
        if (!val.zero()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](auto& a, auto& b) {
        auto& [ua, na, va] = a;
        auto& [ub, nb, vb] = b;
        return std::tuple{pos[ua], na, pos[va]} < std::tuple{pos[ub], nb, pos[vb]};
    });
    for (auto& [u, n, v] : keys)
        o << "mode " << m.sp.ids[u] << "[" << n << "] " << m.sp.ids[v] << " = "
          << combo_str(m.sp, m.tab.at({u, n, v}), pos) << "\n";
    o << "end\n";
    return o.str();
}

std::string serialize_module(const ModuleModel& mod) {
    if (!mod.alg) throw std::invalid_argument("serialize_module: missing base model");
    const Space& asp = mod.alg->sp;
    std::ostringstream o;
    auto ord = canon_order(mod.sp);
    std::vector<int> pos(mod.sp.dim());
    for (int i = 0; i < (int)ord.size(); ++i) pos[ord[i]] = i;
    auto aord = canon_order(asp);
    std::vector<int> apos(asp.dim());
    for (int i = 0; i < (int)aord.size(); ++i) apos[aord[i]] = i;

    o << "module " << mod.name << " over " << mod.alg->name << "\n";
    for (int i : ord)
        o << "basis " << mod.sp.ids[i] << " deg=" << mod.sp.bd(i).deg
          << " wt=" << wt2_str(mod.sp.bd(i).wt2) << "\n";
    for (int i : ord)
        if (auto it = mod.grade.find(i); it != mod.grade.end())
            o << "grade " << mod.sp.ids[i] << " = " << rat_str(it->second) << "\n";
    o << window_str(mod.wt2_max, mod.mode_lo, mod.mode_hi) << "\n";
    for (int i : ord)
        if (i < (int)mod.dcols.size() && !mod.dcols[i].zero())
            o << "d " << mod.sp.ids[i] << " = " << combo_str(mod.sp, mod.dcols[i], pos) << "\n";

    std::vector<std::tuple<int, int, int>> keys;
    for (auto& [key, val] : mod.act)
        if (!val.zero()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](auto& a, auto& b) {
        auto& [ua, na, va] = a;
        auto& [ub, nb, vb] = b;
        return std::tuple{apos[ua], na, pos[va]} < std::tuple{apos[ub], nb, pos[vb]};
    });
    for (auto& [u, n, v] : keys)
        o << "mode " << asp.ids[u] << "[" << n << "] " << mod.sp.ids[v] << " = "
          << combo_str(mod.sp, mod.act.at({u, n, v}), pos) << "\n";
    o << "end\n";
    return o.str();
}

} // namespace dgva
