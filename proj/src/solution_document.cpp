#include "fxdiv/solution_document.hpp"

#include <charconv>
#include <cmath>

#include "fxdiv/model_json.hpp"

namespace fxdiv {

namespace {

using nlohmann::json;

json terms_json(const std::vector<ExpSum::Term>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    arr.push_back({{"coefficient", t.coefficient}, {"rate", t.rate}});
  }
  return arr;
}

std::vector<ExpSum::Term> terms_from(const json& arr) {
  std::vector<ExpSum::Term> out;
  for (const auto& t : arr) {
    out.push_back({t.at("coefficient").get<double>(), t.at("rate").get<double>()});
  }
  return out;
}

json certificate_json(const CertificateEntry& c) {
  return {{"passed", c.passed}, {"worst", c.worst}, {"witness", c.witness}};
}

CertificateEntry certificate_from(const json& j) {
  return {j.at("passed").get<bool>(), j.at("worst").get<double>(),
          j.at("witness").get<double>()};
}

CertificateEntry entry(const Certificate& c) {
  return {c.passed, c.worst, c.witness};
}

}  // namespace

bool SolutionDocument::verified() const {
  bool ok = true;
  if (scale) ok = ok && scale->optimal;
  if (ode) ok = ok && ode->derivative_check;
  if (cross_check) ok = ok && cross_check->passed;
  return ok;
}

ScaleSection make_scale_section(const BarrierSolution& sol,
                                const OptimalityReport& report) {
  const auto& c = sol.components();
  ScaleSection s;
  s.alpha = c.alpha;
  s.psi_numerator = c.psi_r.numerator().coefficients();
  s.psi_denominator = c.psi_r.denominator().coefficients();
  s.roots = c.roots;
  s.w_alpha = c.w_alpha.terms();
  s.delta = c.delta.terms();
  s.kappa = c.gerber_shiu.kappa();
  s.gerber_shiu = c.gerber_shiu.discounted().terms();
  s.a_star = sol.a_star();
  s.value_at_barrier = sol.value_on_barrier();
  s.monotone = entry(report.monotone);
  s.generator = entry(report.generator);
  s.monotonicity_passed = report.monotonicity.passed;
  s.monotonicity_applicable = report.monotonicity_applicable;
  s.interior_residual = report.interior_residual;
  s.smooth_fit_residual = report.smooth_fit_residual;
  s.optimal = report.optimal;
  return s;
}

OdeSection make_ode_section(const OdeSolution& ode) {
  OdeSection s;
  s.a2 = ode.cubic().a2;
  s.a1 = ode.cubic().a1;
  s.a0 = ode.cubic().a0;
  s.gamma = ode.cubic().gamma;
  for (auto z : ode.cubic().roots) s.roots.push_back({z.real(), z.imag()});
  s.coefficients = ode.coefficients();
  s.a_star = ode.a_star();
  s.value_at_barrier = ode.F(ode.a_star());
  s.derivative_check = ode.derivative_check();
  return s;
}

json to_json(const SolutionDocument& doc) {
  json j;
  j["model"] = model_to_json(doc.model);
  j["route"] = doc.route;
  j["a_star"] = doc.a_star;
  j["value_at_barrier"] = doc.value_at_barrier;
  if (doc.scale) {
    const auto& s = *doc.scale;
    j["scale"] = {
        {"alpha", s.alpha},
        {"psi_r",
         {{"numerator", s.psi_numerator}, {"denominator", s.psi_denominator}}},
        {"roots", s.roots},
        {"w_alpha", terms_json(s.w_alpha)},
        {"delta", terms_json(s.delta)},
        {"kappa", s.kappa},
        {"gerber_shiu", terms_json(s.gerber_shiu)},
        {"a_star", s.a_star},
        {"value_at_barrier", s.value_at_barrier},
        {"verification",
         {{"monotone", certificate_json(s.monotone)},
          {"generator", certificate_json(s.generator)},
          {"complete_monotonicity",
           {{"passed", s.monotonicity_passed},
            {"applicable", s.monotonicity_applicable}}},
          {"interior_residual", s.interior_residual},
          {"smooth_fit_residual", s.smooth_fit_residual},
          {"optimal", s.optimal}}}};
  }
  if (doc.ode) {
    const auto& o = *doc.ode;
    json roots = json::array();
    for (const auto& r : o.roots) roots.push_back({{"re", r[0]}, {"im", r[1]}});
    j["ode"] = {{"cubic",
                 {{"a2", o.a2}, {"a1", o.a1}, {"a0", o.a0}, {"gamma", o.gamma}}},
                {"roots", roots},
                {"coefficients", o.coefficients},
                {"a_star", o.a_star},
                {"value_at_barrier", o.value_at_barrier},
                {"derivative_check", o.derivative_check}};
  }
  if (doc.cross_check) {
    j["cross_check"] = {{"max_abs", doc.cross_check->max_abs},
                        {"relative", doc.cross_check->relative},
                        {"passed", doc.cross_check->passed}};
  }
  j["verified"] = doc.verified();
  return j;
}

SolutionDocument solution_from_json(const json& j) {
  SolutionDocument doc;
  doc.model = model_from_json(j.at("model"));
  doc.route = j.at("route").get<std::string>();
  doc.a_star = j.at("a_star").get<double>();
  doc.value_at_barrier = j.at("value_at_barrier").get<double>();
  if (j.contains("scale")) {
    const json& s = j.at("scale");
    const json& v = s.at("verification");
    ScaleSection out;
    out.alpha = s.at("alpha").get<double>();
    out.psi_numerator = s.at("psi_r").at("numerator").get<std::vector<double>>();
    out.psi_denominator =
        s.at("psi_r").at("denominator").get<std::vector<double>>();
    out.roots = s.at("roots").get<std::vector<double>>();
    out.w_alpha = terms_from(s.at("w_alpha"));
    out.delta = terms_from(s.at("delta"));
    out.kappa = s.at("kappa").get<double>();
    out.gerber_shiu = terms_from(s.at("gerber_shiu"));
    out.a_star = s.at("a_star").get<double>();
    out.value_at_barrier = s.at("value_at_barrier").get<double>();
    out.monotone = certificate_from(v.at("monotone"));
    out.generator = certificate_from(v.at("generator"));
    out.monotonicity_passed =
        v.at("complete_monotonicity").at("passed").get<bool>();
    out.monotonicity_applicable =
        v.at("complete_monotonicity").at("applicable").get<bool>();
    out.interior_residual = v.at("interior_residual").get<double>();
    out.smooth_fit_residual = v.at("smooth_fit_residual").get<double>();
    out.optimal = v.at("optimal").get<bool>();
    doc.scale = std::move(out);
  }
  if (j.contains("ode")) {
    const json& o = j.at("ode");
    OdeSection out;
    out.a2 = o.at("cubic").at("a2").get<double>();
    out.a1 = o.at("cubic").at("a1").get<double>();
    out.a0 = o.at("cubic").at("a0").get<double>();
    out.gamma = o.at("cubic").at("gamma").get<double>();
    for (const auto& r : o.at("roots")) {
      out.roots.push_back({r.at("re").get<double>(), r.at("im").get<double>()});
    }
    out.coefficients = o.at("coefficients").get<std::array<double, 3>>();
    out.a_star = o.at("a_star").get<double>();
    out.value_at_barrier = o.at("value_at_barrier").get<double>();
    out.derivative_check = o.at("derivative_check").get<bool>();
    doc.ode = std::move(out);
  }
  if (j.contains("cross_check")) {
    const json& c = j.at("cross_check");
    doc.cross_check = CrossCheckSection{c.at("max_abs").get<double>(),
                                        c.at("relative").get<double>(),
                                        c.at("passed").get<bool>()};
  }
  return doc;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(const BarrierSolution& sol, double from, double to,
                     double step, std::ostream& out) {
  const auto& c = sol.components();
  const auto n = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
  out << "x,F,Fp,Fpp,invDeltaPrime,H\n";
  for (long long i = 0; i < n; ++i) {
    const double x = from + static_cast<double>(i) * step;
    out << format_double(x) << ',' << format_double(sol.F(x, 0)) << ','
        << format_double(sol.F(x, 1)) << ',' << format_double(sol.F(x, 2))
        << ',' << format_double(1.0 / c.delta(x, 1)) << ','
        << format_double(h_function(c, x)) << '\n';
  }
}

}  // namespace fxdiv
