#include "fca/usage.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_set>

#include "fca/errors.hpp"
#include "text_util.hpp"

namespace fca {
namespace {

template <class Int>
bool parse_int(std::string_view text, Int& out) {
  text = detail::trim(text);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && p == end;
}

std::string_view rule_prefix(const MergeRule& r) {
  std::string_view p = r.prefix;
  if (!p.empty() && p.back() == '*') p.remove_suffix(1);
  return p;
}

}  // namespace

void IngestConfig::validate() const {
  if (!(window_start < window_end)) throw ParseError("observation window must satisfy start < end");
}

ParsedLog parse_usage_log(std::istream& in, LogKind kind) {
  const std::vector<std::string> expected =
      kind == LogKind::External
          ? std::vector<std::string>{"user_id", "site", "first_visit", "last_visit", "sessions"}
          : std::vector<std::string>{"user_id", "site", "page", "first_visit", "last_visit", "sessions"};

  std::string line;
  if (!detail::read_line(in, line)) throw ParseError("usage log: missing header");
  auto header = detail::split_csv(line);
  for (auto& h : header) h = std::string(detail::trim(h));
  if (header != expected) {
    std::string want;
    for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
    throw ParseError("usage log: header must be '" + want + "'");
  }

  ParsedLog out;
  std::size_t lineno = 1;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto reject = [&](std::string reason) { out.rejects.push_back({lineno, line, std::move(reason)}); };

    const auto cells = detail::split_csv(line);
    if (cells.size() != expected.size()) {
      reject("expected " + std::to_string(expected.size()) + " fields, got " + std::to_string(cells.size()));
      continue;
    }
    const std::size_t t = kind == LogKind::External ? 2 : 3;
    UsageRecord r;
    r.user_id = std::string(detail::trim(cells[0]));
    r.site = std::string(detail::trim(cells[1]));
    r.site_or_page = kind == LogKind::External ? r.site : std::string(detail::trim(cells[2]));
    if (r.user_id.empty() || r.site_or_page.empty()) {
      reject("empty user or site");
      continue;
    }
    if (!parse_int(cells[t], r.first_visit) || !parse_int(cells[t + 1], r.last_visit)) {
      reject("bad timestamp");
      continue;
    }
    if (r.first_visit > r.last_visit) {
      reject("first_visit after last_visit");
      continue;
    }
    if (!parse_int(cells[t + 2], r.sessions) || r.sessions == 0) {
      reject("bad session count");
      continue;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<UsageRecord> apply_merge_map(const std::vector<UsageRecord>& records,
                                         const std::vector<MergeRule>& merge_map) {
  std::unordered_set<std::string> merged_names;
  for (const auto& rule : merge_map) merged_names.insert(rule.merged_name);

  std::map<std::pair<std::string, std::string>, UsageRecord> combined;
  for (UsageRecord r : records) {
    // Already-merged names are left alone so the map is idempotent.
    if (!merged_names.count(r.site_or_page)) {
      for (const auto& rule : merge_map) {
        if (r.site_or_page.starts_with(rule_prefix(rule))) {
          r.site_or_page = rule.merged_name;
          break;
        }
      }
    }
    auto key = std::make_pair(r.user_id, r.site_or_page);
    auto [it, fresh] = combined.try_emplace(std::move(key), r);
    if (fresh) continue;
    auto& acc = it->second;
    acc.sessions += r.sessions;
    acc.first_visit = std::min(acc.first_visit, r.first_visit);
    acc.last_visit = std::max(acc.last_visit, r.last_visit);
    if (acc.site != r.site) acc.site = std::min(acc.site, r.site);
  }

  std::vector<UsageRecord> out;
  out.reserve(combined.size());
  for (auto& [key, r] : combined) out.push_back(std::move(r));
  return out;
}

FormalContext build_context(const std::vector<UsageRecord>& records, const IngestConfig& cfg) {
  cfg.validate();

  std::vector<UsageRecord> kept;
  kept.reserve(records.size());
  for (const auto& r : records)
    if (!cfg.site_filter || cfg.site_filter->count(r.site)) kept.push_back(r);

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& r : apply_merge_map(kept, cfg.merge_map)) {
    const bool frequent = r.sessions > cfg.min_sessions;
    const bool in_window = r.first_visit < cfg.window_end && r.last_visit >= cfg.window_start;
    if (frequent && in_window) pairs.emplace_back(r.user_id, r.site_or_page);
  }
  if (pairs.empty()) throw EmptyContextError("empty context: no usage record survives the filters");

  std::vector<std::string> users, sites;
  for (const auto& [u, s] : pairs) {
    users.push_back(u);
    sites.push_back(s);
  }
  for (auto* v : {&users, &sites}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  auto index_of = [](const std::vector<std::string>& v, const std::string& key) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  incidence.reserve(pairs.size());
  for (const auto& [u, s] : pairs) incidence.emplace_back(index_of(users, u), index_of(sites, s));
  return FormalContext::from_pairs(std::move(users), std::move(sites), incidence);
}

std::vector<MergeRule> read_merge_map(std::istream& in) {
  std::vector<MergeRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw ParseError("merge map: line " + std::to_string(lineno) + " must be PREFIX<TAB>MERGED_NAME");
    rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return rules;
}

std::set<std::string> read_site_allowlist(std::istream& in) {
  std::set<std::string> sites;
  std::string line;
  while (detail::read_line(in, line)) {
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    sites.emplace(t);
  }
  return sites;
}

}  // namespace fca
