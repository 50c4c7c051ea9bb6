// Copyright 2026 The SSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssc/threshold.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ssc/errors.h"
#include "ssc/parallel.h"

namespace ssc {
namespace {

void CheckT(const SourceModel& model, int t) {
  Require(t >= 1 && t <= model.num_users(), ErrorKind::kInvalidParameter,
          "threshold t=" + std::to_string(t) + " outside [1, " +
              std::to_string(model.num_users()) + "]");
}

bool Leq(double a, double b) { return a <= b + kVerdictDeadBand; }
bool Geq(double a, double b) { return a + kVerdictDeadBand >= b; }

std::vector<ThresholdRow> AllRows(const SourceModel& model, double d) {
  std::vector<ThresholdRow> rows(static_cast<std::size_t>(model.num_users()));
  ParallelFor(rows.size(), [&](std::size_t k) {
    rows[k] = ThresholdRowFor(model, d, static_cast<int>(k) + 1);
  });
  return rows;
}

bool IsG1(const ThresholdRow& r) { return r.tr_a >= r.tr_b; }

std::vector<Verdict> InclusionFrom(const std::vector<ThresholdRow>& rows,
                                  double s, int lo, int hi) {
  std::vector<Verdict> out;
  const ThresholdRow& full = rows.back();
  const int num_users = static_cast<int>(rows.size());
  for (int t = lo; t <= hi; ++t) {
    const ThresholdRow& row = rows[t - 1];
    Verdict v;
    v.t = t;
    v.i = num_users - t;
    v.predicate_id = "inclusion_trace_ratio";
    v.applicable = row.hypothesis_holds && full.hypothesis_holds;
    if (v.applicable) {
      v.predicted = Leq((s + row.tr_a) / (s + row.tr_b),
                        (s + full.tr_a) / (s + full.tr_b));
      v.observed = Leq(full.r_min, row.r_min) &&
                   Leq(full.delta_min, row.delta_min);
    }
    out.push_back(v);
  }
  for (int t = lo; t <= hi; ++t) {
    for (int j = t + 1; j <= hi; ++j) {
      const ThresholdRow& a = rows[t - 1];
      const ThresholdRow& b = rows[j - 1];
      Verdict v;
      v.t = t;
      v.i = j - t;
      v.predicate_id = "rate_nonincreasing";
      v.applicable = a.hypothesis_holds && b.hypothesis_holds;
      if (v.applicable) {
        v.predicted = true;
        v.observed = Geq(a.r_min, b.r_min);
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Verdict> LeakageOrderFrom(const std::vector<ThresholdRow>& rows,
                                  double s, int lo, int hi) {
  std::vector<Verdict> out;
  for (int t = lo; t <= hi; ++t) {
    for (int j = t + 1; j <= hi; ++j) {
      const ThresholdRow& a = rows[t - 1];
      const ThresholdRow& b = rows[j - 1];
      Verdict v;
      v.t = t;
      v.i = j - t;
      v.applicable = a.hypothesis_holds && b.hypothesis_holds;
      const bool g1_a = IsG1(a);
      const bool g1_b = IsG1(b);
      if (!g1_a && !g1_b) {
        v.predicate_id = "leakage_trace_difference";
        v.predicted = Geq(b.tr_a - a.tr_a, b.tr_b - a.tr_b);
        v.observed = Geq(a.delta_min, b.delta_min);
      } else if (g1_a && g1_b) {
        v.predicate_id = "leakage_trace_ratio";
        v.predicted =
            Geq((s + a.tr_b) / (s + a.tr_a), (s + b.tr_b) / (s + b.tr_a));
        v.observed = Geq(a.delta_min, b.delta_min);
      } else if (g1_a) {
        v.predicate_id = "leakage_forced_nondecreasing";
        v.predicted = true;
        v.observed = Leq(a.delta_min, b.delta_min);
      } else {
        v.predicate_id = "leakage_forced_nonincreasing";
        v.predicted = true;
        v.observed = Geq(a.delta_min, b.delta_min);
      }
      if (!v.applicable) v.predicted = v.observed = false;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::vector<int> UsersByDecreasingNoise(const SourceModel& model) {
  std::vector<int> order(static_cast<std::size_t>(model.num_users()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return model.noise_vars[a] > model.noise_vars[b];
  });
  return order;
}

OptimalSets NestedOptimalSets(const SourceModel& model, int t) {
  model.Validate();
  CheckT(model, t);
  const std::vector<int> order = UsersByDecreasingNoise(model);
  const int num_users = model.num_users();
  OptimalSets s;
  for (int k = 0; k < t; ++k) s.a_star = s.a_star.With(order[k]);
  for (int k = num_users - (t - 1); k < num_users; ++k) {
    s.b_star = s.b_star.With(order[k]);
  }
  return s;
}

ThresholdRow ThresholdRowFor(const SourceModel& model, double d, int t) {
  const OptimalSets sets = NestedOptimalSets(model, t);
  ThresholdRow row;
  row.t = t;
  row.a_star = sets.a_star;
  row.b_star = sets.b_star;
  row.tr_a = InverseTrace(model, sets.a_star);
  row.tr_b = InverseTrace(model, sets.b_star);
  const RegionResult r = RegionFromTraces(model.sigma_x2, d, row.tr_a,
                                          row.tr_b);
  row.r_min = r.r_min;
  row.delta_min = r.delta_min;
  row.case_tag = r.case_tag;
  row.hypothesis_holds = row.tr_a < 1.0 / d - 1.0 / model.sigma_x2;
  return row;
}

std::vector<Verdict> InclusionVerdicts(const SourceModel& model, double d) {
  const std::vector<ThresholdRow> rows = AllRows(model, d);
  return InclusionFrom(rows, 1.0 / model.sigma_x2, 1, model.num_users());
}

std::vector<Verdict> LeakageOrderVerdicts(const SourceModel& model, double d) {
  const std::vector<ThresholdRow> rows = AllRows(model, d);
  return LeakageOrderFrom(rows, 1.0 / model.sigma_x2, 1, model.num_users());
}

bool ThresholdReport::AllConsistent() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.consistent(); });
}

ThresholdReport BuildThresholdReport(const SourceModel& model, double d,
                                     int t_lo, int t_hi) {
  model.Validate();
  CheckT(model, t_lo);
  CheckT(model, t_hi);
  Require(t_lo <= t_hi, ErrorKind::kInvalidParameter,
          "t-range must satisfy lo <= hi");
  const std::vector<ThresholdRow> rows = AllRows(model, d);
  const double s = 1.0 / model.sigma_x2;
  ThresholdReport report;
  report.rows.assign(rows.begin() + (t_lo - 1), rows.begin() + t_hi);
  report.verdicts = InclusionFrom(rows, s, t_lo, t_hi);
  std::vector<Verdict> v3 = LeakageOrderFrom(rows, s, t_lo, t_hi);
  report.verdicts.insert(report.verdicts.end(), v3.begin(), v3.end());
  return report;
}

}  // namespace ssc
