// phrasebreak/report.h
//
// Metric reports. Every row carries its raw counts so each percentage can be
// recomputed; undefined metrics print as "undef", never as 0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phrasebreak/metrics.h"

namespace phrasebreak {

inline constexpr const char *kUndefined = "undef";

// Percent with 2 decimals, e.g. "88.22".
std::string FormatPercent(const Metric &m);
// Fraction with 6 decimals, e.g. "0.882230".
std::string FormatFraction(const Metric &m);

struct ReportRow {
  std::string label;
  DetectionCounts counts;
  std::optional<FpBreakdown> fp;
  // Pooled overlap sums; present when raw peak times were available.
  std::optional<OverlapSum> purity;
  std::optional<OverlapSum> coverage;
};

// Sums counts into an "all" row. Breakdowns and overlap sums are summed too
// when every row has them.
ReportRow AggregateRow(const std::vector<ReportRow> &rows, const std::string &label = "all");

std::string FormatReportTsv(const std::vector<ReportRow> &rows);
// Column-aligned table for terminals.
std::string FormatReportTable(const std::vector<ReportRow> &rows);

}  // namespace phrasebreak
