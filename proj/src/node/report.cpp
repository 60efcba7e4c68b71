#include "e2dev/node/report.hpp"

#include "e2dev/common/error.hpp"

namespace e2dev::node {

namespace m = kpm::metric;

kpm::MeasRecord compute_record(std::span<const TraceRow> rows, std::uint64_t granularity_ms,
                               const std::vector<std::string>& metrics, const OverheadModel& model,
                               std::uint64_t* unknown_metrics) {
  if (granularity_ms == 0) throw ValidationError("granularity must be positive");
  std::uint64_t dl = 0, ul = 0, prb_dl = 0, prb_ul = 0;
  double delay_weighted = 0;
  for (const auto& r : rows) {
    const auto row_dl = pdcp_bytes(r.dl_app_bytes, r.dl_pkts, model);
    dl += row_dl;
    ul += pdcp_bytes(r.ul_app_bytes, r.ul_pkts, model);
    prb_dl += r.prb_dl;
    prb_ul += r.prb_ul;
    delay_weighted += r.rlc_delay_dl_ms * static_cast<double>(row_dl);
  }
  const double g = static_cast<double>(granularity_ms);

  kpm::MeasRecord rec;
  rec.values.reserve(metrics.size());
  for (const auto& name : metrics) {
    if (name == m::kPdcpSduVolumeDl) {
      rec.values.push_back(kpm::MeasValue::integer(dl));
    } else if (name == m::kPdcpSduVolumeUl) {
      rec.values.push_back(kpm::MeasValue::integer(ul));
    } else if (name == m::kUeThpDl) {
      rec.values.push_back(kpm::MeasValue::real(static_cast<double>(dl * 8) / g));
    } else if (name == m::kUeThpUl) {
      rec.values.push_back(kpm::MeasValue::real(static_cast<double>(ul * 8) / g));
    } else if (name == m::kPrbTotDl) {
      rec.values.push_back(kpm::MeasValue::integer(prb_dl));
    } else if (name == m::kPrbTotUl) {
      rec.values.push_back(kpm::MeasValue::integer(prb_ul));
    } else if (name == m::kRlcSduDelayDl) {
      rec.values.push_back(dl == 0 ? kpm::MeasValue::none()
                                   : kpm::MeasValue::real(delay_weighted / static_cast<double>(dl)));
    } else {
      rec.values.push_back(kpm::MeasValue::none());
      if (unknown_metrics) ++*unknown_metrics;
    }
  }
  return rec;
}

std::pair<kpm::IndicationHeader, kpm::IndicationMessage> build_indication(
    const TrafficTrace& trace, const UePresence& presence, const kpm::ActionDefinition& action,
    ReportWindow window, const std::string& sender, const OverheadModel& model,
    std::uint64_t* unknown_metrics) {
  const auto g = action.granularity_period_ms;
  if (g == 0 || window.period_ms == 0 || window.period_ms % g != 0) {
    throw ValidationError("granularity must divide the reporting period");
  }
  const auto window_end = window.start_ms + window.period_ms;

  kpm::PerUeReport report;
  for (const auto& ue : presence.present_in(window.start_ms, window_end)) {
    if (report.ue_reports.size() == kpm::kUeReportsMax) break;
    kpm::UeReport r{ue, {}};
    for (auto t = window.start_ms; t < window_end; t += g) {
      r.records.push_back(compute_record(trace.slice(ue, t, t + g), g, action.metrics, model, unknown_metrics));
    }
    report.ue_reports.push_back(std::move(r));
  }
  return {kpm::IndicationHeader{window.start_ms, sender}, std::move(report)};
}

}  // namespace e2dev::node
