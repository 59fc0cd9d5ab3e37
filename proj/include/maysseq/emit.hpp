#pragma once

#include "maysseq/collapse.hpp"
#include "maysseq/homology.hpp"
#include "maysseq/hopf_oracle.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace maysseq {

using Json = nlohmann::ordered_json;

Json params_json(const Params& params);

Json presentation_json(const PagePresentation& pres);
std::string presentation_text(const PagePresentation& pres);

// Nonzero blocks only; reps rendered as element strings.
Json table_json(const PageTable& table, bool with_named = true);
std::string table_csv(const PageTable& table);
std::string table_text(const PageTable& table, Refine refine);
std::string table_latex(const PageTable& table, Refine refine);

Json collapse_json(const CollapseReport& report);
std::string collapse_text(const CollapseReport& report);

Json verify_json(const VerifyReport& report);
std::string verify_text(const VerifyReport& report);

// (s, t)-grid chart: one column per s, one row per internal degree class,
// one dot per basis class, annotated with M.
std::string chart_svg(const PageTable& table);

struct FiltrationRow {
    int p = 0;
    int s0 = 0;
    std::vector<std::pair<int, std::int64_t>> values;  // (s, M(t_s))
};

std::vector<FiltrationRow> may_filtration_rows(int n, int k, const std::vector<int>& primes, int s_max);
Json may_filtration_json(int n, int k, const std::vector<FiltrationRow>& rows);
std::string may_filtration_text(int n, int k, const std::vector<FiltrationRow>& rows);

}  // namespace maysseq
