#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace coordyn {

using Seconds = std::int64_t;

inline constexpr Seconds kSecondsPerDay = 86400;

/// Parses epoch seconds ("1573516800", optionally fractional) or ISO-8601
/// ("2019-11-12", "2019-11-12T10:00:00Z", "2019-11-12 10:00:00+01:00").
/// Throws InputError on anything else.
Seconds parse_timestamp(std::string_view text);

/// True when `text` is a bare calendar date (YYYY-MM-DD).
bool is_date_only(std::string_view text);

/// UTC ISO-8601 rendering, e.g. "2019-11-12T00:00:00Z".
std::string format_timestamp(Seconds t);

/// Floors to the UTC midnight at or before `t`.
Seconds floor_to_day(Seconds t);

}  // namespace coordyn
