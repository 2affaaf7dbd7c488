#include "coordyn/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "coordyn/csv.hpp"
#include "coordyn/error.hpp"

namespace coordyn {
namespace {

constexpr std::size_t kMaxBadSamples = 5;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Ids may arrive as JSON numbers in some exports.
std::optional<std::string> json_id(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  if (it->is_number_unsigned()) return std::to_string(it->get<unsigned long long>());
  return std::nullopt;
}

RetweetEvent event_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw InputError("record is not a JSON object");
  RetweetEvent ev;
  auto user = json_id(obj, "user_id");
  auto original = json_id(obj, "original_tweet_id");
  if (!user || user->empty()) throw InputError("missing user_id");
  if (!original || original->empty()) throw InputError("missing original_tweet_id");
  ev.user_id = std::move(*user);
  ev.original_tweet_id = std::move(*original);
  ev.tweet_id = json_id(obj, "tweet_id").value_or("");

  auto ts = obj.find("timestamp");
  if (ts == obj.end() || ts->is_null()) throw InputError("missing timestamp");
  if (ts->is_number()) {
    ev.timestamp = static_cast<Seconds>(std::floor(ts->get<double>()));
  } else if (ts->is_string()) {
    ev.timestamp = parse_timestamp(ts->get<std::string>());
  } else {
    throw InputError("timestamp has unsupported type");
  }

  if (auto tags = obj.find("hashtags"); tags != obj.end() && !tags->is_null()) {
    if (!tags->is_array()) throw InputError("hashtags is not an array");
    std::vector<std::string> raw;
    for (const auto& t : *tags) {
      if (!t.is_string()) throw InputError("hashtag is not a string");
      raw.push_back(t.get<std::string>());
    }
    ev.hashtags = normalize_hashtags(raw);
  }
  return ev;
}

struct CsvColumns {
  std::size_t user, tweet, original, timestamp;
  std::optional<std::size_t> hashtags;
};

RetweetEvent event_from_csv(const std::vector<std::string>& f, const CsvColumns& c, std::size_t width) {
  if (f.size() != width) throw InputError(fmt::format("expected {} fields, found {}", width, f.size()));
  RetweetEvent ev;
  ev.user_id = trim(f[c.user]);
  ev.tweet_id = trim(f[c.tweet]);
  ev.original_tweet_id = trim(f[c.original]);
  if (ev.user_id.empty()) throw InputError("missing user_id");
  if (ev.original_tweet_id.empty()) throw InputError("missing original_tweet_id");
  ev.timestamp = parse_timestamp(f[c.timestamp]);
  if (c.hashtags && !f[*c.hashtags].empty()) {
    std::vector<std::string> raw;
    std::string_view rest = f[*c.hashtags];
    while (true) {
      auto bar = rest.find('|');
      raw.emplace_back(rest.substr(0, bar));
      if (bar == std::string_view::npos) break;
      rest.remove_prefix(bar + 1);
    }
    ev.hashtags = normalize_hashtags(raw);
  }
  return ev;
}

}  // namespace

EventFormat parse_event_format(std::string_view name) {
  if (name == "jsonl" || name == "json") return EventFormat::jsonl;
  if (name == "csv") return EventFormat::csv;
  throw InputError(fmt::format("unknown event format '{}' (expected jsonl or csv)", name));
}

std::vector<std::string> normalize_hashtags(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& tag : raw) {
    std::string t = trim(tag);
    while (!t.empty() && t.front() == '#') t.erase(t.begin());
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (t.empty()) continue;
    if (seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

ParseResult parse_events(std::istream& in, EventFormat format, const ParseOptions& options) {
  if (!in) throw InputError("event stream is not readable");
  ParseResult result;

  auto accept = [&](RetweetEvent&& ev) {
    if (options.span && (ev.timestamp < options.span->start || ev.timestamp >= options.span->end)) {
      ++result.out_of_span;
      return;
    }
    result.events.push_back(std::move(ev));
  };
  auto reject = [&](std::size_t line, const std::string& why) {
    ++result.bad_records;
    if (result.bad_samples.size() < kMaxBadSamples) result.bad_samples.push_back(fmt::format("line {}: {}", line, why));
  };

  if (format == EventFormat::jsonl) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ++result.rows;
      try {
        accept(event_from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        reject(lineno, e.what());
      } catch (const InputError& e) {
        reject(lineno, e.what());
      }
    }
    if (in.bad()) throw InputError("read error on event stream");
  } else {
    csv::Reader reader(in);
    CsvColumns cols{reader.column("user_id"), reader.column("tweet_id"), reader.column("original_tweet_id"),
                    reader.column("timestamp"), std::nullopt};
    if (reader.has_column("hashtags")) cols.hashtags = reader.column("hashtags");
    const std::size_t width = reader.header().size();
    std::vector<std::string> fields;
    while (true) {
      try {
        if (!reader.next(fields)) break;
      } catch (const InputError& e) {
        ++result.rows;
        reject(reader.line_number(), e.what());
        continue;
      }
      ++result.rows;
      try {
        accept(event_from_csv(fields, cols, width));
      } catch (const InputError& e) {
        reject(reader.line_number(), e.what());
      }
    }
  }

  const auto allowed = static_cast<std::size_t>(std::floor(options.max_bad_fraction * static_cast<double>(result.rows)));
  if (result.bad_records > allowed) {
    std::string detail;
    for (const auto& s : result.bad_samples) detail += "\n  " + s;
    throw InputError(fmt::format("{} of {} records malformed (tolerance {}){}", result.bad_records, result.rows,
                                 allowed, detail));
  }
  if (result.events.empty()) throw InputError("event log contains no usable events");

  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const RetweetEvent& a, const RetweetEvent& b) { return a.timestamp < b.timestamp; });
  return result;
}

ParseResult parse_events_file(const std::string& path, EventFormat format, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open event file '{}'", path));
  return parse_events(in, format, options);
}

void write_events_csv(std::ostream& out, const std::vector<RetweetEvent>& events) {
  csv::Writer w(out);
  w.row({"user_id", "tweet_id", "original_tweet_id", "timestamp", "hashtags"});
  for (const auto& ev : events) {
    std::string tags;
    for (std::size_t i = 0; i < ev.hashtags.size(); ++i) {
      if (i) tags.push_back('|');
      tags += ev.hashtags[i];
    }
    w.row({ev.user_id, ev.tweet_id, ev.original_tweet_id, std::to_string(ev.timestamp), tags});
  }
}

std::set<std::string> select_superspreaders(const std::vector<RetweetEvent>& events, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw InputError(fmt::format("top_fraction must lie in (0, 1], got {}", top_fraction));
  }
  if (events.empty()) throw InputError("cannot select superspreaders from an empty event list");

  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& ev : events) ++counts[ev.user_id];
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  // Guard against 0.01 * 300 landing a hair above 3.
  const double want = top_fraction * static_cast<double>(ranked.size());
  auto keep = static_cast<std::size_t>(std::ceil(want - 1e-9));
  keep = std::clamp<std::size_t>(keep, 1, ranked.size());

  std::set<std::string> out;
  for (std::size_t i = 0; i < keep; ++i) out.insert(ranked[i].first);
  return out;
}

std::vector<WindowSpec> make_windows(Seconds span_start, Seconds span_end, int duration_days, int offset_days) {
  if (duration_days < 1) throw InputError("window duration must be at least one day");
  if (offset_days < 1) throw InputError("window offset must be at least one day");
  const Seconds duration = duration_days * kSecondsPerDay;
  const Seconds offset = offset_days * kSecondsPerDay;
  const Seconds span = span_end - span_start;
  if (span < duration) {
    throw InputError(fmt::format("span of {} s is shorter than the {}-day window", span, duration_days));
  }
  const auto count = static_cast<int>((span - duration) / offset + 1);
  std::vector<WindowSpec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back({span_start + i * offset, duration_days, offset_days, i});
  return out;
}

TimeSpan event_span(const std::vector<RetweetEvent>& events) {
  if (events.empty()) throw InputError("cannot derive a span from no events");
  auto [lo, hi] = std::minmax_element(events.begin(), events.end(), [](const auto& a, const auto& b) {
    return a.timestamp < b.timestamp;
  });
  return {floor_to_day(lo->timestamp), floor_to_day(hi->timestamp) + kSecondsPerDay};
}

WindowedCorpus window_events(const std::vector<RetweetEvent>& events, const std::vector<WindowSpec>& windows,
                             const std::set<std::string>& superspreaders) {
  if (windows.empty()) throw InputError("no windows to place events into");
  WindowedCorpus corpus;
  corpus.windows = windows;
  std::sort(corpus.windows.begin(), corpus.windows.end(),
            [](const WindowSpec& a, const WindowSpec& b) { return a.start < b.start; });
  corpus.window_events.resize(windows.size());

  for (const auto& ev : events) {
    if (!superspreaders.count(ev.user_id)) continue;
    corpus.events.push_back(ev);
  }
  std::stable_sort(corpus.events.begin(), corpus.events.end(),
                   [](const RetweetEvent& a, const RetweetEvent& b) { return a.timestamp < b.timestamp; });

  const auto& ws = corpus.windows;
  const bool uniform = std::all_of(ws.begin(), ws.end(), [&](const WindowSpec& w) {
    return w.duration_days == ws.front().duration_days;
  });
  for (std::size_t e = 0; e < corpus.events.size(); ++e) {
    const Seconds t = corpus.events[e].timestamp;
    // Windows with start <= t form a prefix; walk back while they still cover t.
    auto hi = std::upper_bound(ws.begin(), ws.end(), t, [](Seconds v, const WindowSpec& w) { return v < w.start; });
    for (auto it = hi; it != ws.begin();) {
      --it;
      if (it->contains(t)) {
        corpus.window_events[static_cast<std::size_t>(it - ws.begin())].push_back(e);
      } else if (uniform) {
        break;
      }
    }
  }
  for (auto& list : corpus.window_events) std::sort(list.begin(), list.end());
  return corpus;
}

}  // namespace coordyn
