#include "maysseq/emit.hpp"

#include "maysseq/diff.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace maysseq {

namespace {

const char* kind_name(GenKind k)
{
    return k == GenKind::H ? "h" : "b";
}

const char* parity_name(Parity p)
{
    return p == Parity::Exterior ? "exterior" : "polynomial";
}

Json key_json(const BlockKey& key)
{
    return Json{{"s", key.s}, {"t", key.t}, {"M", key.M}};
}

std::string key_text(const BlockKey& key)
{
    std::ostringstream os;
    os << "E_2^{" << key.s << "," << key.t << "," << key.M << "}";
    return os.str();
}

}  // namespace

Json params_json(const Params& params)
{
    return Json{{"p", params.p}, {"n", params.n}, {"k", params.k}, {"D", params.degree_modulus()}};
}

Json presentation_json(const PagePresentation& pres)
{
    Json j;
    j["params"] = params_json(pres.params);
    j["flavor"] = flavor_name(pres.flavor);
    j["s0"] = pres.s0;
    if (pres.flavor == Flavor::T)
        j["j_max"] = pres.j_max;
    Json gens = Json::array();
    const auto& alg = *pres.algebra;
    for (GenId id = 0; id < alg.size(); ++id) {
        const auto& g = alg.generator(id);
        gens.push_back(Json{{"name", render_label(g.label)},
                            {"kind", kind_name(g.label.kind)},
                            {"i", g.label.i},
                            {"j", g.label.j},
                            {"s", g.s},
                            {"t", g.t},
                            {"t_lift", g.t_lift},
                            {"M", g.M},
                            {"parity", parity_name(g.parity)},
                            {"d1", render(pres.d1_rule(id))}});
    }
    j["generators"] = std::move(gens);
    Json cand = Json::array();
    for (const auto& g : alg.generators())
        if (g.label.kind == GenKind::B && !g.label.primed)
            if (auto rule = candidate_b_rule(pres.params, g.label.i, g.label.j))
                cand.push_back(Json{{"source", render_label(rule->source)}, {"image", render(rule->image)}, {"page", nullptr}});
    j["candidate_rules"] = std::move(cand);
    return j;
}

std::string presentation_text(const PagePresentation& pres)
{
    std::ostringstream os;
    const auto& alg = *pres.algebra;
    const Params& P = pres.params;
    os << flavor_name(pres.flavor) << "(" << P.n << "," << P.k << ") at p = " << P.p << ", s0 = " << pres.s0;
    if (pres.flavor == Flavor::T)
        os << ", j_max = " << pres.j_max;
    else
        os << ", t mod " << P.degree_modulus();
    std::size_t hs = 0, bs = 0, poly = 0;
    for (const auto& g : alg.generators()) {
        (g.label.kind == GenKind::H ? hs : bs)++;
        if (g.parity == Parity::Polynomial)
            ++poly;
    }
    os << "\n" << hs << " h-generators, " << bs << " b-generators, " << poly << " polynomial, "
       << alg.size() - poly << " exterior\n\n";
    os << std::left << std::setw(10) << "gen" << std::setw(4) << "s" << std::setw(12) << "t" << std::setw(6) << "M"
       << std::setw(12) << "parity"
       << "d_1\n";
    for (GenId id = 0; id < alg.size(); ++id) {
        const auto& g = alg.generator(id);
        os << std::left << std::setw(10) << render_label(g.label) << std::setw(4) << g.s << std::setw(12) << g.t
           << std::setw(6) << g.M << std::setw(12) << parity_name(g.parity) << render(pres.d1_rule(id)) << "\n";
    }
    bool header = false;
    for (const auto& g : alg.generators()) {
        if (g.label.kind != GenKind::B || g.label.primed)
            continue;
        auto rule = candidate_b_rule(P, g.label.i, g.label.j);
        if (!rule)
            continue;
        if (!header)
            os << "\ncandidate higher differentials (page undetermined):\n";
        header = true;
        os << "  d_?(" << render_label(rule->source) << ") = " << render(rule->image) << "\n";
    }
    return os.str();
}

Json table_json(const PageTable& table, bool with_named)
{
    const PagePresentation& pres = table.presentation();
    Json j;
    j["params"] = params_json(pres.params);
    j["flavor"] = flavor_name(pres.flavor);
    j["s_max"] = table.s_max();
    Json blocks = Json::array();
    for (const auto& [key, b] : table.blocks()) {
        if (b.dim == 0)
            continue;
        Json reps = Json::array();
        for (std::size_t i = 0; i < b.reps.size(); ++i)
            reps.push_back(render(table.representative(key, i)));
        blocks.push_back(Json{{"s", key.s}, {"t", key.t}, {"M", key.M}, {"dim", b.dim}, {"reps", std::move(reps)}});
    }
    j["blocks"] = std::move(blocks);
    j["poincare"] = table.poincare().coefficients;
    if (with_named) {
        Json named = Json::array();
        for (const auto& m : match_named_classes(table.complex()))
            if (m.key.s <= table.s_max())
                named.push_back(Json{{"name", m.name},
                                     {"element", m.rendered},
                                     {"block", key_json(m.key)},
                                     {"cocycle", m.check.cocycle},
                                     {"nonzero", m.check.nonzero()}});
        j["named"] = std::move(named);
    }
    return j;
}

std::string table_csv(const PageTable& table)
{
    std::ostringstream os;
    os << "s,t,M,dim\n";
    for (const auto& [key, b] : table.blocks())
        if (b.dim)
            os << key.s << "," << key.t << "," << key.M << "," << b.dim << "\n";
    return os.str();
}

std::string table_text(const PageTable& table, Refine refine)
{
    std::ostringstream os;
    const PagePresentation& pres = table.presentation();
    const Params& P = pres.params;
    const auto poly = table.poincare();
    os << "E_2 of " << flavor_name(pres.flavor) << "(" << P.n << "," << P.k << ") at p = " << P.p << ", s <= "
       << table.s_max() << "\n";
    os << "poincare:";
    for (auto c : poly.coefficients)
        os << " " << c;
    os << "\ntotal: " << poly.total() << "\n";
    if (refine == Refine::T) {
        os << "\n  s          t  dim\n";
        for (const auto& [st, dim] : table.dims_by_t())
            os << std::right << std::setw(3) << st.first << std::setw(11) << st.second << std::setw(5) << dim << "\n";
    }
    else if (refine == Refine::TM) {
        os << "\n  s          t      M  dim\n";
        for (const auto& [key, b] : table.blocks())
            if (b.dim)
                os << std::right << std::setw(3) << key.s << std::setw(11) << key.t << std::setw(7) << key.M
                   << std::setw(5) << b.dim << "\n";
    }
    auto named = match_named_classes(table.complex());
    if (!named.empty()) {
        os << "\nnamed classes:\n";
        for (const auto& m : named) {
            if (m.key.s > table.s_max())
                continue;
            os << "  " << std::left << std::setw(10) << m.name << std::setw(28) << key_text(m.key)
               << (m.check.nonzero() ? "nonzero class" : (m.check.cocycle ? "boundary" : "not a cocycle")) << "  "
               << m.rendered << "\n";
        }
    }
    return os.str();
}

std::string table_latex(const PageTable& table, Refine refine)
{
    std::ostringstream os;
    const auto poly = table.poincare();
    if (refine == Refine::None) {
        os << "\\begin{tabular}{c|" << std::string(poly.coefficients.size(), 'r') << "}\n";
        os << "$s$";
        for (std::size_t s = 0; s < poly.coefficients.size(); ++s)
            os << " & " << s;
        os << " \\\\\n\\hline\n$\\dim E_2^{s}$";
        for (auto c : poly.coefficients)
            os << " & " << c;
        os << " \\\\\n\\end{tabular}\n";
        return os.str();
    }
    os << "\\begin{tabular}{rrrrl}\n$s$ & $t$ & $M$ & $\\dim$ & representatives \\\\\n\\hline\n";
    for (const auto& [key, b] : table.blocks()) {
        if (b.dim == 0)
            continue;
        std::string reps;
        for (std::size_t i = 0; i < b.reps.size(); ++i) {
            std::string r = render(table.representative(key, i));
            reps += (i ? ",\\ " : "") + std::string("$") + r + "$";
        }
        os << key.s << " & " << key.t << " & " << (refine == Refine::TM ? std::to_string(key.M) : "") << " & "
           << b.dim << " & " << reps << " \\\\\n";
    }
    os << "\\end{tabular}\n";
    return os.str();
}

Json collapse_json(const CollapseReport& report)
{
    Json j;
    j["params"] = params_json(report.params);
    j["status"] = status_name(report.status);
    j["s_max"] = report.s_max;
    j["windowed"] = report.windowed;
    j["M_max"] = report.m_max;
    Json obs = Json::array();
    for (const auto& o : report.obligations)
        obs.push_back(Json{{"source", key_json(o.source)},
                           {"source_dim", o.source_dim},
                           {"r", o.r},
                           {"target", key_json(o.target)},
                           {"target_dim", o.target_dim},
                           {"discharged", o.discharged},
                           {"reason", o.reason}});
    j["obligations"] = std::move(obs);
    j["remaining"] = report.remaining();
    Json certs = Json::array();
    for (const auto& c : report.certificates) {
        Json cj{{"source", c.source}, {"granted", c.granted}, {"lift", c.lift}};
        if (c.granted) {
            cj["image"] = c.image;
            cj["SI"] = c.si;
            cj["Sd"] = c.sd;
            cj["t_lift"] = c.t_lift;
            if (c.key)
                cj["block"] = key_json(*c.key);
            cj["nonzero_in_e2"] = c.nonzero_in_e2;
        }
        else {
            cj["reason"] = c.reason;
        }
        certs.push_back(std::move(cj));
    }
    j["certificates"] = std::move(certs);
    Json prims = Json::array();
    for (const auto& [cls, lift] : report.primitive_lifts)
        prims.push_back(Json{{"class", cls}, {"lift", lift}});
    j["primitives"] = std::move(prims);
    Json asserted = Json::array();
    for (const auto& a : report.asserted)
        asserted.push_back(Json{{"element", a.element},
                                {"block", key_json(a.key)},
                                {"cocycle", a.cocycle},
                                {"nonzero_in_e2", a.nonzero_in_e2},
                                {"kind", "asserted"}});
    j["asserted"] = std::move(asserted);
    Json cand = Json::array();
    for (const auto& r : report.candidate_rules)
        cand.push_back(Json{{"source", render_label(r.source)}, {"image", render(r.image)}, {"page", nullptr}});
    j["candidate_rules"] = std::move(cand);
    return j;
}

std::string collapse_text(const CollapseReport& report)
{
    std::ostringstream os;
    const Params& P = report.params;
    os << "S(" << P.n << "," << P.k << ") at p = " << P.p << ": " << status_name(report.status);
    if (report.windowed)
        os << " within s <= " << report.s_max;
    os << "\n";
    os << report.obligations.size() << " obligations, " << report.remaining() << " remaining\n";
    for (const auto& o : report.obligations) {
        os << "  d_" << o.r << ": " << key_text(o.source) << " [" << o.source_dim << "] -> " << key_text(o.target)
           << " [" << o.target_dim << "]  " << (o.discharged ? o.reason : std::string("OPEN")) << "\n";
    }
    if (!report.primitive_lifts.empty()) {
        os << "primitive lifts:\n";
        for (const auto& [cls, lift] : report.primitive_lifts)
            os << "  " << cls << "  <-  " << lift << "\n";
    }
    std::size_t searched = 0;
    for (const auto& c : report.certificates) {
        if (c.source == "search") {
            ++searched;
            continue;
        }
        if (c.granted)
            os << "certificate: " << c.lift << " (SI = " << c.si << " = Sd) -> " << c.image << " in "
               << (c.key ? key_text(*c.key) : std::string("?")) << (c.nonzero_in_e2 ? ", nonzero in E_2" : ", zero in E_2")
               << "\n";
        else
            os << "refused: " << c.lift << ": " << c.reason << "\n";
    }
    if (searched)
        os << searched << " further classes certified by searched lifts\n";
    for (const auto& a : report.asserted)
        os << "asserted: " << a.element << " in " << key_text(a.key) << (a.cocycle ? "" : " (not a cocycle, ignored)")
           << "\n";
    for (const auto& r : report.candidate_rules)
        os << "candidate: d_?(" << render_label(r.source) << ") = " << render(r.image) << "\n";
    return os.str();
}

Json verify_json(const VerifyReport& report)
{
    Json j;
    j["params"] = params_json(report.params);
    Json co = Json::array();
    for (const auto& c : report.coassociativity) {
        Json cj{{"s", c.s}, {"ok", c.ok}, {"terms", c.terms}};
        if (!c.ok)
            cj["mismatch"] = c.mismatch;
        co.push_back(std::move(cj));
    }
    j["coassociativity"] = std::move(co);
    Json rows = Json::array();
    for (const auto& r : report.d1.rows) {
        Json rj{{"s", r.s},
                {"j", r.j},
                {"filtration", r.filtration},
                {"extracted", render(r.extracted)},
                {"catalog", render(r.catalog)}};
        rj["sign"] = r.sign ? Json(*r.sign) : Json(nullptr);
        if (!r.note.empty())
            rj["note"] = r.note;
        rows.push_back(std::move(rj));
    }
    j["d1"] = Json{{"ok", report.d1.ok}, {"sign", report.d1.sign ? Json(*report.d1.sign) : Json(nullptr)}, {"rows", rows}};
    j["ext_truncated"] = Json{{"p", report.ext.p}, {"dims", report.ext.dims}, {"b_representative", report.ext.b_representative}};
    j["ok"] = report.ok();
    return j;
}

std::string verify_text(const VerifyReport& report)
{
    std::ostringstream os;
    const Params& P = report.params;
    os << "S(" << P.n << "," << P.k << ") at p = " << P.p << "\n";
    os << "coassociativity:";
    for (const auto& c : report.coassociativity)
        os << " t_" << c.s << (c.ok ? " ok" : " FAIL");
    os << "\n";
    for (const auto& c : report.coassociativity)
        if (!c.ok)
            os << "  t_" << c.s << ": first differing word " << c.mismatch << "\n";
    os << "d_1 extraction: " << (report.d1.ok ? "ok" : "FAIL");
    if (report.d1.sign)
        os << ", extracted = " << *report.d1.sign << " * catalog";
    os << "\n";
    for (const auto& r : report.d1.rows) {
        const bool ok = r.translated && r.max_filtration <= r.filtration &&
                        ((r.catalog.is_zero() && r.extracted.is_zero()) || r.sign);
        if (!ok)
            os << "  h[" << r.s << "," << r.j << "]: extracted " << render(r.extracted) << ", catalog "
               << render(r.catalog) << (r.note.empty() ? "" : "  (" + r.note + ")") << "\n";
    }
    os << "truncated Ext at p = " << report.ext.p << ":";
    for (auto d : report.ext.dims)
        os << " " << d;
    os << (report.ext_ok() ? "  ok" : "  FAIL") << "\n";
    os << (report.ok() ? "all checks pass" : "MISMATCH") << "\n";
    return os.str();
}

std::string chart_svg(const PageTable& table)
{
    std::map<std::int64_t, std::size_t> rows;  // t -> row
    for (const auto& [key, b] : table.blocks())
        if (b.dim)
            rows.emplace(key.t, 0);
    std::size_t r = 0;
    for (auto& [t, row] : rows)
        row = r++;
    const int cell_w = 60, cell_h = 22, left = 70, top = 30;
    const int cols = table.s_max() + 1;
    const int width = left + cols * cell_w + 20;
    const int height = top + static_cast<int>(rows.size()) * cell_h + 40;
    std::ostringstream os;
    const Params& P = table.presentation().params;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"monospace\" font-size=\"10\">\n";
    os << "<text x=\"" << left << "\" y=\"16\">E_2 of " << flavor_name(table.presentation().flavor) << "(" << P.n
       << "," << P.k << "), p = " << P.p << "</text>\n";
    for (int s = 0; s < cols; ++s) {
        const int x = left + s * cell_w;
        os << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\""
           << top + rows.size() * cell_h << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << x + 4 << "\" y=\"" << height - 14 << "\">" << s << "</text>\n";
    }
    for (const auto& [t, row] : rows) {
        const int y = top + static_cast<int>(row) * cell_h;
        os << "<text x=\"4\" y=\"" << y + 14 << "\">t=" << t << "</text>\n";
    }
    for (const auto& [key, b] : table.blocks()) {
        if (!b.dim)
            continue;
        const int x0 = left + key.s * cell_w;
        const int y = top + static_cast<int>(rows.at(key.t)) * cell_h;
        for (std::size_t i = 0; i < b.dim; ++i) {
            os << "<circle class=\"class\" data-s=\"" << key.s << "\" data-t=\"" << key.t << "\" data-M=\"" << key.M
               << "\" cx=\"" << x0 + 6 + static_cast<int>(i % 8) * 5 << "\" cy=\"" << y + 6 + static_cast<int>(i / 8) * 5
               << "\" r=\"2\"/>\n";
        }
        os << "<text x=\"" << x0 + 6 << "\" y=\"" << y + 20 << "\" font-size=\"7\" fill=\"#666\">M" << key.M
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<FiltrationRow> may_filtration_rows(int n, int k, const std::vector<int>& primes, int s_max)
{
    std::vector<FiltrationRow> rows;
    for (int p : primes) {
        Params P = Params::make(p, n, k);
        FiltrationRow row;
        row.p = p;
        row.s0 = compute_s0(P);
        for (int s = k; s <= s_max; ++s)
            row.values.push_back({s, may_filtration_ts(P, s)});
        rows.push_back(std::move(row));
    }
    return rows;
}

Json may_filtration_json(int n, int k, const std::vector<FiltrationRow>& rows)
{
    Json j{{"n", n}, {"k", k}};
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json values = Json::object();
        for (const auto& [s, m] : r.values)
            values["t_" + std::to_string(s)] = m;
        arr.push_back(Json{{"p", r.p}, {"s0", r.s0}, {"M", std::move(values)}});
    }
    j["rows"] = std::move(arr);
    return j;
}

std::string may_filtration_text(int n, int k, const std::vector<FiltrationRow>& rows)
{
    std::ostringstream os;
    os << "May filtration of t_s in S(" << n << "," << k << ")\n";
    if (rows.empty())
        return os.str();
    os << std::left << std::setw(8) << "p";
    for (const auto& [s, m] : rows.front().values)
        os << std::right << std::setw(6) << ("t_" + std::to_string(s));
    os << std::right << std::setw(6) << "s0" << "\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(8) << r.p;
        for (const auto& [s, m] : r.values)
            os << std::right << std::setw(6) << m;
        os << std::right << std::setw(6) << r.s0 << "\n";
    }
    return os.str();
}

}  // namespace maysseq
