#include "fucikhom/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fucikhom/errors.hpp"

namespace fucikhom {

namespace {

double parse_field(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("CSV: malformed numeric field '" + s + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

const char* method_name(EigenMethod m) {
  switch (m) {
    case EigenMethod::Shooting: return "shooting";
    case EigenMethod::Rayleigh: return "rayleigh";
    case EigenMethod::ClosedForm: return "closed_form";
  }
  return "?";
}

void append_record_rows(const SweepReport& rep, std::ostringstream& os) {
  for (const RateRecord& r : rep.records)
    os << format_double(r.eps) << ',' << format_double(r.measured_gap) << ','
       << format_double(r.bound) << ',' << format_double(r.ratio) << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::ordered_json eigen_estimate_json(const EigenEstimate& est) {
  return {{"lambda", est.lambda},
          {"method", method_name(est.method)},
          {"residual", est.residual},
          {"evaluations", est.evaluations}};
}

nlohmann::ordered_json curve_point_json(const CurvePoint& pt) {
  return {{"k", pt.k},
          {"sign", pt.sign == Sign::Plus ? "plus" : "minus"},
          {"s", pt.s},
          {"c", pt.c},
          {"alpha", pt.alpha},
          {"beta", pt.beta},
          {"breakpoints", pt.partition.breakpoints},
          {"outside_stated_validity", pt.outside_stated_validity}};
}

nlohmann::ordered_json sweep_report_json(const SweepReport& rep) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const RateRecord& r : rep.records)
    records.push_back({{"eps", r.eps},
                       {"gap", r.measured_gap},
                       {"bound", r.bound},
                       {"ratio", r.ratio},
                       {"degenerate", r.degenerate}});
  nlohmann::ordered_json j{{"quantity", rep.quantity},
                           {"weight_m", rep.weight_m},
                           {"weight_n", rep.weight_n},
                           {"p", rep.p},
                           {"k", rep.k},
                           {"sign", rep.sign},
                           {"s", rep.s},
                           {"interval", {rep.a, rep.b}},
                           {"solver_tol", rep.solver_tol},
                           {"rate_constant", rep.rate_constant},
                           {"records", records},
                           {"usable_records", rep.usable_records}};
  if (std::isnan(rep.fitted_order))
    j["fitted_order"] = nullptr;
  else
    j["fitted_order"] = rep.fitted_order;
  return j;
}

nlohmann::ordered_json fucik_sweep_json(const FucikSweepReport& rep) {
  return {{"alpha", sweep_report_json(rep.alpha)},
          {"beta", sweep_report_json(rep.beta)},
          {"stated_bound_alpha", rep.stated_bound_alpha},
          {"stated_bound_beta", rep.stated_bound_beta},
          {"stated_k_bound_held", rep.stated_k_bound_held}};
}

std::string sweep_report_csv(const SweepReport& rep) {
  std::ostringstream os;
  os << "eps,gap,bound,ratio\n";
  append_record_rows(rep, os);
  os << "# fitted_order," << format_double(rep.fitted_order) << '\n';
  return os.str();
}

SweepReport parse_sweep_csv(const std::string& text) {
  SweepReport rep;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != "eps,gap,bound,ratio")
        throw ConfigError("CSV: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    if (line.rfind("# fitted_order,", 0) == 0) {
      rep.fitted_order = parse_field(line.substr(15));
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 4) throw ConfigError("CSV: expected 4 fields: " + line);
    RateRecord r;
    r.eps = parse_field(f[0]);
    r.measured_gap = parse_field(f[1]);
    r.bound = parse_field(f[2]);
    r.ratio = parse_field(f[3]);
    rep.records.push_back(r);
  }
  return rep;
}

std::string fucik_sweep_csv(const FucikSweepReport& rep) {
  std::ostringstream os;
  os << "eps,gap_alpha,bound_alpha,ratio_alpha,gap_beta,bound_beta,"
        "ratio_beta\n";
  for (std::size_t i = 0; i < rep.alpha.records.size(); ++i) {
    const RateRecord& a = rep.alpha.records[i];
    const RateRecord& b = rep.beta.records[i];
    os << format_double(a.eps) << ',' << format_double(a.measured_gap) << ','
       << format_double(a.bound) << ',' << format_double(a.ratio) << ','
       << format_double(b.measured_gap) << ',' << format_double(b.bound)
       << ',' << format_double(b.ratio) << '\n';
  }
  os << "# fitted_order," << format_double(rep.alpha.fitted_order) << '\n';
  os << "# stated_k_bound_held," << (rep.stated_k_bound_held ? 1 : 0) << '\n';
  return os.str();
}

FucikSweepReport parse_fucik_sweep_csv(const std::string& text) {
  FucikSweepReport rep;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (line.rfind("# fitted_order,", 0) == 0) {
      rep.alpha.fitted_order = parse_field(line.substr(15));
      rep.beta.fitted_order = rep.alpha.fitted_order;
      continue;
    }
    if (line.rfind("# stated_k_bound_held,", 0) == 0) {
      rep.stated_k_bound_held = parse_field(line.substr(22)) != 0.0;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 7) throw ConfigError("CSV: expected 7 fields: " + line);
    RateRecord a, b;
    a.eps = b.eps = parse_field(f[0]);
    a.measured_gap = parse_field(f[1]);
    a.bound = parse_field(f[2]);
    a.ratio = parse_field(f[3]);
    b.measured_gap = parse_field(f[4]);
    b.bound = parse_field(f[5]);
    b.ratio = parse_field(f[6]);
    rep.alpha.records.push_back(a);
    rep.beta.records.push_back(b);
  }
  return rep;
}

std::string curve_csv(const std::vector<CurvePoint>& pts) {
  std::ostringstream os;
  os << "s,alpha,beta,c";
  if (!pts.empty())
    for (std::size_t i = 0; i < pts.front().partition.breakpoints.size(); ++i)
      os << ",t" << i;
  os << '\n';
  for (const CurvePoint& pt : pts) {
    os << format_double(pt.s) << ',' << format_double(pt.alpha) << ','
       << format_double(pt.beta) << ',' << format_double(pt.c);
    for (double t : pt.partition.breakpoints) os << ',' << format_double(t);
    os << '\n';
  }
  return os.str();
}

std::string sweep_plot_script(const std::string& csv_name, bool fucik) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'epsilon'\n"
     << "set ylabel 'gap'\n"
     << "set key left top\n";
  if (fucik)
    os << "plot '" << csv_name
       << "' every ::1 using 1:2 with linespoints title 'alpha gap', '"
       << csv_name
       << "' every ::1 using 1:3 with lines title 'alpha bound', '"
       << csv_name
       << "' every ::1 using 1:5 with linespoints title 'beta gap', '"
       << csv_name << "' every ::1 using 1:6 with lines title 'beta bound'\n";
  else
    os << "plot '" << csv_name
       << "' every ::1 using 1:2 with linespoints title 'gap', '" << csv_name
       << "' every ::1 using 1:3 with lines title 'bound'\n";
  return os.str();
}

std::string curve_plot_script(const std::string& csv_name) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set xlabel 'alpha'\n"
     << "set ylabel 'beta'\n"
     << "plot '" << csv_name
     << "' every ::1 using 2:3 with linespoints title 'eigencurve'\n";
  return os.str();
}

}  // namespace fucikhom
