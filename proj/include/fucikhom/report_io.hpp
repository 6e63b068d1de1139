#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fucikhom/fucik.hpp"
#include "fucikhom/homrates.hpp"
#include "fucikhom/plap.hpp"

namespace fucikhom {

/// Fixed 17-significant-digit formatting used for every float written to
/// CSV; round-trips doubles exactly.
std::string format_double(double x);

nlohmann::ordered_json eigen_estimate_json(const EigenEstimate& est);
nlohmann::ordered_json curve_point_json(const CurvePoint& pt);

nlohmann::ordered_json sweep_report_json(const SweepReport& rep);
nlohmann::ordered_json fucik_sweep_json(const FucikSweepReport& rep);

/// CSV with header "eps,gap,bound,ratio" and a "# fitted_order,..." footer.
std::string sweep_report_csv(const SweepReport& rep);
SweepReport parse_sweep_csv(const std::string& text);

/// CSV with columns eps,gap_alpha,bound_alpha,ratio_alpha,gap_beta,
/// bound_beta,ratio_beta and fitted_order footer.
std::string fucik_sweep_csv(const FucikSweepReport& rep);
FucikSweepReport parse_fucik_sweep_csv(const std::string& text);

/// CSV of curve points: s,alpha,beta,c,t_0..t_{k+1}.
std::string curve_csv(const std::vector<CurvePoint>& pts);

/// gnuplot scripts referencing the written CSV.
std::string sweep_plot_script(const std::string& csv_name, bool fucik);
std::string curve_plot_script(const std::string& csv_name);

}  // namespace fucikhom
