// src/report.cc

#include "phrasebreak/report.h"

#include <algorithm>

#include "phrasebreak/text_io.h"

namespace phrasebreak {

std::string FormatPercent(const Metric &m) {
  return m ? FormatFixed(*m * 100.0, 2) : kUndefined;
}

std::string FormatFraction(const Metric &m) {
  return m ? FormatFixed(*m, 6) : kUndefined;
}

ReportRow AggregateRow(const std::vector<ReportRow> &rows, const std::string &label) {
  ReportRow all;
  all.label = label;
  bool have_fp = !rows.empty();
  bool have_seg = !rows.empty();
  FpBreakdown fp;
  OverlapSum purity, coverage;
  for (const auto &r : rows) {
    all.counts += r.counts;
    if (r.fp) {
      fp += *r.fp;
    } else {
      have_fp = false;
    }
    if (r.purity && r.coverage) {
      purity += *r.purity;
      coverage += *r.coverage;
    } else {
      have_seg = false;
    }
  }
  if (have_fp) all.fp = fp;
  if (have_seg) {
    all.purity = purity;
    all.coverage = coverage;
  }
  return all;
}

namespace {

std::vector<std::string> Header() {
  return {"label", "accuracy", "precision", "recall", "f1", "tp", "fp", "fn", "tn",
          "fp_intermediate", "fp_nobreak", "purity", "coverage"};
}

std::vector<std::string> Cells(const ReportRow &r) {
  const auto m = ComputeMetrics(r.counts);
  std::vector<std::string> c = {r.label,
                                FormatPercent(m.accuracy),
                                FormatPercent(m.precision),
                                FormatPercent(m.recall),
                                FormatPercent(m.f1),
                                std::to_string(r.counts.tp),
                                std::to_string(r.counts.fp),
                                std::to_string(r.counts.fn),
                                std::to_string(r.counts.tn)};
  if (r.fp) {
    c.push_back(std::to_string(r.fp->fp_intermediate));
    c.push_back(std::to_string(r.fp->fp_nobreak));
  } else {
    c.insert(c.end(), {"-", "-"});
  }
  if (r.purity && r.coverage) {
    c.push_back(FormatPercent(r.purity->ratio()));
    c.push_back(FormatPercent(r.coverage->ratio()));
  } else {
    c.insert(c.end(), {"-", "-"});
  }
  return c;
}

}  // namespace

std::string FormatReportTsv(const std::vector<ReportRow> &rows) {
  std::vector<std::vector<std::string>> table = {Header()};
  for (const auto &r : rows) table.push_back(Cells(r));
  std::string out;
  for (const auto &line : table) {
    for (size_t i = 0; i < line.size(); ++i) {
      if (i) out += '\t';
      out += line[i];
    }
    out += '\n';
  }
  return out;
}

std::string FormatReportTable(const std::vector<ReportRow> &rows) {
  std::vector<std::vector<std::string>> table = {Header()};
  for (const auto &r : rows) table.push_back(Cells(r));
  std::vector<size_t> width(table[0].size(), 0);
  for (const auto &line : table) {
    for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (const auto &line : table) {
    for (size_t i = 0; i < line.size(); ++i) {
      const size_t pad = width[i] - line[i].size();
      if (i == 0) {
        out += line[i] + std::string(pad, ' ');
      } else {
        out += "  " + std::string(pad, ' ') + line[i];
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace phrasebreak
