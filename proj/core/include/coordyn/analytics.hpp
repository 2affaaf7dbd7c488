#pragma once

#include "coordyn/analytics/archetypes.hpp"
#include "coordyn/analytics/closeness.hpp"
#include "coordyn/analytics/hashtags.hpp"
#include "coordyn/analytics/influence.hpp"
#include "coordyn/analytics/overlap.hpp"
#include "coordyn/analytics/polarity.hpp"
#include "coordyn/analytics/rbo.hpp"
#include "coordyn/analytics/shifts.hpp"
#include "coordyn/analytics/stability.hpp"
#include "coordyn/analytics/stats.hpp"
#include "coordyn/analytics/trends.hpp"
