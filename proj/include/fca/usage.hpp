#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fca/context.hpp"

namespace fca {

enum class LogKind { External, Internal };

/// One user-site (external) or user-page (internal) visit summary.
struct UsageRecord {
  std::string user_id;
  /// Hostname for external logs, page path for internal logs.
  std::string site_or_page;
  /// Hostname column; equals site_or_page for external logs.
  std::string site;
  std::int64_t first_visit = 0;
  std::int64_t last_visit = 0;
  std::uint64_t sessions = 0;

  friend bool operator==(const UsageRecord&, const UsageRecord&) = default;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string text;
  std::string reason;
};

struct ParsedLog {
  std::vector<UsageRecord> records;
  std::vector<RejectedRow> rejects;
};

struct MergeRule {
  /// Matched as a prefix of site_or_page; one trailing '*' is accepted and
  /// ignored, so "/personal/*" and "/personal/" are the same rule.
  std::string prefix;
  std::string merged_name;
};

struct IngestConfig {
  /// A pair is incident only if its aggregated sessions are strictly greater.
  std::uint64_t min_sessions = 20;
  /// Half-open observation window [window_start, window_end).
  std::int64_t window_start = std::numeric_limits<std::int64_t>::min();
  std::int64_t window_end = std::numeric_limits<std::int64_t>::max();
  /// Applied first-match-wins in list order.
  std::vector<MergeRule> merge_map;
  /// When set, records whose site is not listed are dropped.
  std::optional<std::set<std::string>> site_filter;

  /// Throws ParseError when the window is empty.
  void validate() const;
};

/// External header: user_id,site,first_visit,last_visit,sessions.
/// Internal header: user_id,site,page,first_visit,last_visit,sessions.
/// Throws ParseError on a missing or wrong header; bad data rows go to
/// `rejects` and parsing continues.
ParsedLog parse_usage_log(std::istream& in, LogKind kind);

/// Renames every record by the first matching rule, then combines records
/// sharing (user_id, name): sessions summed, earliest first_visit, latest
/// last_visit. Output is sorted by (user_id, site_or_page).
std::vector<UsageRecord> apply_merge_map(const std::vector<UsageRecord>& records,
                                         const std::vector<MergeRule>& merge_map);

/// Objects are the surviving users and attributes the surviving sites or
/// pages, both sorted. Throws EmptyContextError when nothing survives.
FormalContext build_context(const std::vector<UsageRecord>& records, const IngestConfig& cfg);

/// "PREFIX<TAB>MERGED_NAME" per line, '#' starts a comment line.
std::vector<MergeRule> read_merge_map(std::istream& in);
/// One site per line; blank lines and '#' comments ignored.
std::set<std::string> read_site_allowlist(std::istream& in);

}  // namespace fca
