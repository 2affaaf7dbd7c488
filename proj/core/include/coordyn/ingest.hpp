#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coordyn/timeutil.hpp"

namespace coordyn {

/// One user retweeting one original tweet. Hashtags are lowercase, without
/// the leading '#', and deduplicated.
struct RetweetEvent {
  std::string user_id;
  std::string tweet_id;
  std::string original_tweet_id;
  Seconds timestamp = 0;
  std::vector<std::string> hashtags;

  friend bool operator==(const RetweetEvent&, const RetweetEvent&) = default;
};

enum class EventFormat { jsonl, csv };

EventFormat parse_event_format(std::string_view name);

struct TimeSpan {
  Seconds start = 0;
  Seconds end = 0;  // exclusive

  Seconds length() const { return end - start; }
};

struct ParseOptions {
  /// Malformed rows are tolerated up to this fraction of all rows.
  double max_bad_fraction = 0.01;
  /// When set, events outside [start, end) are dropped and counted.
  std::optional<TimeSpan> span;
};

struct ParseResult {
  std::vector<RetweetEvent> events;  // sorted by timestamp
  std::size_t rows = 0;
  std::size_t bad_records = 0;
  std::size_t out_of_span = 0;
  std::vector<std::string> bad_samples;  // first few diagnostics
};

/// Lowercases, strips leading '#', trims and deduplicates (order of first
/// appearance kept). Empty tags are dropped.
std::vector<std::string> normalize_hashtags(const std::vector<std::string>& raw);

/// Reads a JSONL or CSV event log. Throws InputError when the stream is
/// unreadable, malformed rows exceed the tolerance, or nothing survives.
ParseResult parse_events(std::istream& in, EventFormat format, const ParseOptions& options = {});
ParseResult parse_events_file(const std::string& path, EventFormat format, const ParseOptions& options = {});

/// Writes events in the CSV input schema (round-trips through parse_events).
void write_events_csv(std::ostream& out, const std::vector<RetweetEvent>& events);

/// Users ranked by number of retweets made; returns the top
/// ceil(top_fraction * users). Ties at the cutoff resolve by user id.
std::set<std::string> select_superspreaders(const std::vector<RetweetEvent>& events, double top_fraction);

struct WindowSpec {
  Seconds start = 0;
  int duration_days = 7;
  int offset_days = 1;
  int index = 0;

  Seconds end() const { return start + duration_days * kSecondsPerDay; }
  bool contains(Seconds t) const { return start <= t && t < end(); }
};

/// floor((span - d) / delta) + 1 half-open windows starting at
/// span.start + i * delta days.
std::vector<WindowSpec> make_windows(Seconds span_start, Seconds span_end, int duration_days, int offset_days);

/// The span covering every event, widened to whole UTC days.
TimeSpan event_span(const std::vector<RetweetEvent>& events);

struct WindowedCorpus {
  std::vector<WindowSpec> windows;
  /// Superspreader events, timestamp order. Window membership refers to
  /// positions in this vector.
  std::vector<RetweetEvent> events;
  std::vector<std::vector<std::size_t>> window_events;

  std::size_t window_count() const { return windows.size(); }
};

/// Keeps superspreader events and places each one in every window covering
/// its timestamp.
WindowedCorpus window_events(const std::vector<RetweetEvent>& events, const std::vector<WindowSpec>& windows,
                             const std::set<std::string>& superspreaders);

}  // namespace coordyn
