#include "coordyn/timeutil.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "coordyn/error.hpp"

namespace coordyn {
namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  auto res = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return res.ec == std::errc{};
}

std::optional<Seconds> civil_to_epoch(int y, int mo, int d) {
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd}.time_since_epoch().count() * kSecondsPerDay;
}

[[noreturn]] void bad(std::string_view text) {
  throw InputError(fmt::format("unrecognised timestamp '{}'", text));
}

}  // namespace

bool is_date_only(std::string_view text) {
  int y = 0, m = 0, d = 0;
  return text.size() == 10 && text[4] == '-' && text[7] == '-' && read_int(text, 0, 4, y) &&
         read_int(text, 5, 2, m) && read_int(text, 8, 2, d);
}

Seconds parse_timestamp(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad(text);

  // Epoch seconds.
  if (text.size() < 10 || text[4] != '-') {
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) bad(text);
    return static_cast<Seconds>(std::floor(value));
  }

  int y = 0, mo = 0, d = 0;
  if (!read_int(text, 0, 4, y) || text[4] != '-' || !read_int(text, 5, 2, mo) || text[7] != '-' ||
      !read_int(text, 8, 2, d)) {
    bad(text);
  }
  const auto date = civil_to_epoch(y, mo, d);
  if (!date) bad(text);
  const Seconds base = *date;
  if (text.size() == 10) return base;

  if (text[10] != 'T' && text[10] != ' ') bad(text);
  int hh = 0, mm = 0, ss = 0;
  if (!read_int(text, 11, 2, hh) || text.size() < 16 || text[13] != ':' || !read_int(text, 14, 2, mm)) bad(text);
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    if (!read_int(text, pos + 1, 2, ss)) bad(text);
    pos += 3;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  if (hh > 23 || mm > 59 || ss > 60) bad(text);
  Seconds offset = 0;
  if (pos < text.size()) {
    const char c = text[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      int oh = 0, om = 0;
      if (!read_int(text, pos + 1, 2, oh)) bad(text);
      std::size_t p2 = pos + 3;
      if (p2 < text.size() && text[p2] == ':') ++p2;
      if (!read_int(text, p2, 2, om)) bad(text);
      offset = (c == '+' ? 1 : -1) * (oh * 3600 + om * 60);
      pos = p2 + 2;
    } else {
      bad(text);
    }
  }
  if (pos != text.size()) bad(text);
  return base + hh * 3600 + mm * 60 + ss - offset;
}

std::string format_timestamp(Seconds t) {
  using namespace std::chrono;
  const Seconds day_start = floor_to_day(t);
  const year_month_day ymd{sys_days{days{day_start / kSecondsPerDay}}};
  const Seconds rem = t - day_start;
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), rem / 3600,
                     (rem / 60) % 60, rem % 60);
}

Seconds floor_to_day(Seconds t) {
  Seconds q = t / kSecondsPerDay;
  if (t % kSecondsPerDay < 0) --q;
  return q * kSecondsPerDay;
}

}  // namespace coordyn
