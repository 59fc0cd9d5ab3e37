#include "maysseq/cli.hpp"

#include "maysseq/collapse.hpp"
#include "maysseq/emit.hpp"
#include "maysseq/error.hpp"
#include "maysseq/hopf_oracle.hpp"

#include <CLI11.hpp>

#include <fstream>

namespace maysseq {

namespace {

struct RunConfig {
    int prime = 3;
    int n = 3;
    int k = 2;
    std::string flavor = "S";
    int s_max = -1;
    int j_max = -1;
    std::string refine = "none";
    std::string format = "text";
    int threads = 1;
};

Refine parse_refine(const std::string& r)
{
    if (r == "none")
        return Refine::None;
    if (r == "t")
        return Refine::T;
    return Refine::TM;
}

PresentationPtr presentation_for(const RunConfig& cfg)
{
    Params params = Params::make(cfg.prime, cfg.n, cfg.k);
    if (cfg.flavor == "T")
        return build_presentation(params, Flavor::T, cfg.j_max >= 0 ? cfg.j_max : 2 * cfg.n - 1);
    return build_presentation(params, Flavor::S);
}

// Top exterior degree when every generator is exterior, else a fixed window.
int default_s_max(const PagePresentation& pres)
{
    int top = 0;
    for (const auto& g : pres.algebra->generators()) {
        if (g.parity == Parity::Polynomial)
            return 8;
        top += g.s;
    }
    return top;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed, const char* command)
{
    for (const char* a : allowed)
        if (format == a)
            return;
    throw InvalidParams(std::string("format '") + format + "' is not available for " + command);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"May spectral sequence engine for the Morava stabilizer algebras S(n,k)"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--prime,-p", cfg.prime, "prime p")->capture_default_str();
    app.add_option("--n", cfg.n, "n")->capture_default_str();
    app.add_option("--k", cfg.k, "k, with 1 <= k <= n")->capture_default_str();
    app.add_option("--flavor", cfg.flavor, "S or T")->check(CLI::IsMember({"S", "T"}))->capture_default_str();
    app.add_option("--smax", cfg.s_max, "largest homological degree (default: top exterior degree, or 8)");
    app.add_option("--jmax", cfg.j_max, "T(n,k) window: largest j (default 2n-1)");
    app.add_option("--refine", cfg.refine, "none, t or tm")->check(CLI::IsMember({"none", "t", "tm"}))->capture_default_str();
    app.add_option("--format", cfg.format, "text, json, csv or latex")
        ->check(CLI::IsMember({"text", "json", "csv", "latex"}))
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads for the homology engine")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* presentation = app.add_subcommand("presentation", "generator table and d_1 rules");
    auto* e2 = app.add_subcommand("e2", "E_2 blocks and Poincare coefficients");
    auto* collapse = app.add_subcommand("collapse", "filtration-gap collapse prover");
    std::vector<std::string> lifts, asserted;
    bool no_search = false;
    collapse->add_option("--certify", lifts, "T(n,k) lift to certify, e.g. \"h'[5,0]h'[4,0]h'[3,0]h'[2,0]\"");
    collapse->add_option("--assert", asserted, "S(n,k) cocycle taken as an infinite cycle");
    collapse->add_flag("--no-search", no_search, "skip the automatic search for T(n,k) lifts");
    auto* verify = app.add_subcommand("verify", "coproduct and d_1 cross-checks");
    auto* chart = app.add_subcommand("chart", "SVG chart of the E_2 page");
    std::string chart_out;
    chart->add_option("--out,-o", chart_out, "output file (default: stdout)");
    auto* filtration = app.add_subcommand("may-filtration", "May filtration of t_s for several primes");
    std::vector<int> primes{2, 3, 5};
    filtration->add_option("--primes", primes, "primes to tabulate")->delimiter(',')->capture_default_str();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (filtration->parsed()) {
            require_format(cfg.format, {"text", "json"}, "may-filtration");
            const int top = cfg.s_max >= 0 ? cfg.s_max : 10;
            auto rows = may_filtration_rows(cfg.n, cfg.k, primes, top);
            if (cfg.format == "json")
                out << may_filtration_json(cfg.n, cfg.k, rows).dump(2) << "\n";
            else
                out << may_filtration_text(cfg.n, cfg.k, rows);
            return 0;
        }
        if (verify->parsed()) {
            require_format(cfg.format, {"text", "json"}, "verify");
            VerifyReport report = run_verify(Params::make(cfg.prime, cfg.n, cfg.k));
            if (cfg.format == "json")
                out << verify_json(report).dump(2) << "\n";
            else
                out << verify_text(report);
            return report.ok() ? 0 : 2;
        }

        auto pres = presentation_for(cfg);
        if (presentation->parsed()) {
            require_format(cfg.format, {"text", "json"}, "presentation");
            if (cfg.format == "json")
                out << presentation_json(*pres).dump(2) << "\n";
            else
                out << presentation_text(*pres);
            return 0;
        }

        const int s_max = cfg.s_max >= 0 ? cfg.s_max : default_s_max(*pres);
        PageTable table = compute_page_table(pres, s_max, cfg.threads);
        if (e2->parsed()) {
            if (cfg.format == "json")
                out << table_json(table).dump(2) << "\n";
            else if (cfg.format == "csv")
                out << table_csv(table);
            else if (cfg.format == "latex")
                out << table_latex(table, parse_refine(cfg.refine));
            else
                out << table_text(table, parse_refine(cfg.refine));
            return 0;
        }
        if (chart->parsed()) {
            const std::string svg = chart_svg(table);
            if (chart_out.empty()) {
                out << svg;
            }
            else {
                std::ofstream file(chart_out);
                if (!file)
                    throw Error("cannot open " + chart_out + " for writing");
                file << svg;
                if (!file)
                    throw Error("write to " + chart_out + " failed");
                out << "wrote " << chart_out << "\n";
            }
            return 0;
        }
        if (collapse->parsed()) {
            require_format(cfg.format, {"text", "json"}, "collapse");
            CollapseOptions options;
            options.lifts = lifts;
            options.asserted = asserted;
            options.search = !no_search;
            CollapseReport report;
            try {
                report = prove_collapse(table, options);
            }
            catch (const IncompleteTable& e) {
                err << "error: " << e.what() << "\n";
                return 3;
            }
            if (cfg.format == "json")
                out << collapse_json(report).dump(2) << "\n";
            else
                out << collapse_text(report);
            return report.status == CollapseStatus::Collapsed ? 0 : 2;
        }
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace maysseq
