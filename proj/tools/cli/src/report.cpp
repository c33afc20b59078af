#include "allee/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "allee/error.hpp"

namespace allee::cli {
namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

bool on_surface(double value, double threshold) {
  return std::abs(value - threshold) <= kFlagTolerance * std::max(1.0, std::abs(threshold));
}

template <typename T>
T parse_or_throw(std::optional<T> v, const std::string& text, const char* what) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> critical_flags(const ModelParams& p, const Thresholds& t) {
  std::vector<std::string> flags;
  if (on_surface(p.h, t.h1)) flags.emplace_back("h1");
  if (on_surface(p.h, t.h2)) flags.emplace_back("h2");
  if (on_surface(p.h, t.h3)) flags.emplace_back("h3");
  if (t.s1 && on_surface(p.s, *t.s1)) flags.emplace_back("s1");
  if (t.s2 && on_surface(p.s, *t.s2)) flags.emplace_back("s2");
  if (t.s3 && on_surface(p.s, *t.s3)) flags.emplace_back("s3");
  return flags;
}

AnalysisReport analyze(const ModelParams& p) {
  validate(p);
  AnalysisReport r;
  r.params = p;
  r.discriminants = discriminants(p);
  r.equilibria = full_portrait(p);
  r.thresholds = thresholds(p);
  r.bifurcation_flags = critical_flags(p, r.thresholds);
  return r;
}

json to_json(const ModelParams& p) { return json{{"q", p.q}, {"s", p.s}, {"h", p.h}, {"m", p.m}}; }

ModelParams params_from_json(const json& j) {
  return ModelParams{.q = j.at("q").get<double>(),
                     .s = j.at("s").get<double>(),
                     .h = j.at("h").get<double>(),
                     .m = j.at("m").get<double>()};
}

json to_json(const Equilibrium& e) {
  json coincident = json::array();
  for (const Tag& t : e.coincident) {
    coincident.push_back({{"branch", to_string(t.branch)}, {"label", to_string(t.label)}});
  }
  return json{
      {"label", to_string(e.label)},
      {"branch", to_string(e.branch)},
      {"x", e.location.x},
      {"y", e.location.y},
      {"classification", to_string(e.classification)},
      {"eigenvalues",
       {{e.eigenvalues[0].real(), e.eigenvalues[0].imag()}, {e.eigenvalues[1].real(), e.eigenvalues[1].imag()}}},
      {"trace", e.trace},
      {"det", e.det},
      {"coincident", coincident},
  };
}

json to_json(const Thresholds& t) {
  return json{{"h1", t.h1},
              {"h2", t.h2},
              {"h3", t.h3},
              {"s1", optional_number(t.s1)},
              {"s2", optional_number(t.s2)},
              {"s3", optional_number(t.s3)}};
}

json to_json(const AnalysisReport& r) {
  json eqs = json::array();
  for (const Equilibrium& e : r.equilibria) eqs.push_back(to_json(e));
  const BranchDiscriminants& d = r.discriminants;
  return json{
      {"params", to_json(r.params)},
      {"discriminants",
       {{"A", d.A}, {"delta1", d.delta1}, {"B", optional_number(d.B)}, {"C", d.C}, {"delta2", d.delta2},
        {"D", optional_number(d.D)}}},
      {"equilibria", eqs},
      {"thresholds", to_json(r.thresholds)},
      {"bifurcation_flags", r.bifurcation_flags},
  };
}

AnalysisReport analysis_from_json(const json& j) {
  AnalysisReport r;
  r.params = params_from_json(j.at("params"));
  const json& d = j.at("discriminants");
  r.discriminants.A = d.at("A").get<double>();
  r.discriminants.delta1 = d.at("delta1").get<double>();
  r.discriminants.B = optional_from(d.at("B"));
  r.discriminants.C = d.at("C").get<double>();
  r.discriminants.delta2 = d.at("delta2").get<double>();
  r.discriminants.D = optional_from(d.at("D"));
  for (const json& je : j.at("equilibria")) {
    Equilibrium e;
    const auto label = je.at("label").get<std::string>();
    const auto branch = je.at("branch").get<std::string>();
    const auto kind = je.at("classification").get<std::string>();
    e.label = parse_or_throw(label_from_string(label), label, "label");
    e.branch = parse_or_throw(branch_from_string(branch), branch, "branch");
    e.classification = parse_or_throw(stability_from_string(kind), kind, "classification");
    e.location = {je.at("x").get<double>(), je.at("y").get<double>()};
    const json& ev = je.at("eigenvalues");
    for (int k = 0; k < 2; ++k) e.eigenvalues[k] = {ev.at(k).at(0).get<double>(), ev.at(k).at(1).get<double>()};
    e.trace = je.at("trace").get<double>();
    e.det = je.at("det").get<double>();
    for (const json& jt : je.at("coincident")) {
      const auto tb = jt.at("branch").get<std::string>();
      const auto tl = jt.at("label").get<std::string>();
      e.coincident.push_back({parse_or_throw(branch_from_string(tb), tb, "branch"),
                              parse_or_throw(label_from_string(tl), tl, "label")});
    }
    r.equilibria.push_back(std::move(e));
  }
  const json& t = j.at("thresholds");
  r.thresholds.h1 = t.at("h1").get<double>();
  r.thresholds.h2 = t.at("h2").get<double>();
  r.thresholds.h3 = t.at("h3").get<double>();
  r.thresholds.s1 = optional_from(t.at("s1"));
  r.thresholds.s2 = optional_from(t.at("s2"));
  r.thresholds.s3 = optional_from(t.at("s3"));
  r.bifurcation_flags = j.at("bifurcation_flags").get<std::vector<std::string>>();
  return r;
}

json to_json(const HopfReport& r) {
  return json{
      {"which", to_string(r.which)},
      {"location", {{"x", r.location.x}, {"y", r.location.y}}},
      {"s_critical", r.s_critical},
      {"transversality", r.transversality},
      {"M", r.M},
      {"phi", r.phi},
      {"sigma", r.sigma},
      {"sigma_general", r.sigma_general},
      {"sigma_as_printed", r.sigma_as_printed},
      {"sigma_corrected", r.sigma_corrected},
      {"direction", to_string(r.direction)},
  };
}

json to_json(const BtLadder& l) {
  const BtExpansion& ab = l.ab;
  return json{
      {"a", {{"a00", ab.a00}, {"a10", ab.a10}, {"a01", ab.a01}, {"a20", ab.a20}, {"a11", ab.a11}}},
      {"b", {{"b10", ab.b10}, {"b01", ab.b01}, {"b20", ab.b20}, {"b11", ab.b11}, {"b02", ab.b02}}},
      {"c", {{"c00", l.c.c00}, {"c20", l.c.c20}, {"c11", l.c.c11}}},
      {"d",
       {{"d00", l.d.d00}, {"d10", l.d.d10}, {"d01", l.d.d01}, {"d20", l.d.d20}, {"d11", l.d.d11}, {"d02", l.d.d02}}},
      {"e",
       {{"e00", l.e.e00}, {"e10", l.e.e10}, {"e01", l.e.e01}, {"e20", l.e.e20}, {"e11", l.e.e11}, {"e02", l.e.e02}}},
      {"f", {{"f00", l.f.f00}, {"f10", l.f.f10}, {"f01", l.f.f01}, {"f20", l.f.f20}, {"f11", l.f.f11}}},
      {"g", {{"g00", l.g.g00}, {"g10", l.g.g10}, {"g01", l.g.g01}, {"g11", l.g.g11}}},
      {"h", {{"h00", l.h.h00}, {"h01", l.h.h01}, {"h11", l.h.h11}}},
      {"l", {{"l00", l.l00}, {"l01", l.l01}}},
  };
}

json to_json(const BTReport& r, const ModelParams& base) {
  return json{
      {"params", to_json(base)},
      {"eta", r.eta},
      {"l00", r.l00},
      {"l01", r.l01},
      {"jacobian", r.jacobian},
      {"jac_det", r.jac_det},
      {"verdict", to_string(r.verdict)},
      {"mirrored", r.mirrored},
      {"ladder", to_json(r.ladder)},
  };
}

json to_json(const Trajectory& t) {
  json samples = json::array();
  for (const Sample& s : t.samples) samples.push_back({s.t, s.x, s.y});
  return json{{"terminal", to_string(t.terminal)}, {"samples", samples}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string equilibria_csv(const AnalysisReport& r) {
  std::ostringstream os;
  os << "label,branch,x,y,classification,trace,det,coincident\n";
  for (const Equilibrium& e : r.equilibria) {
    os << to_string(e.label) << ',' << to_string(e.branch) << ',' << format_double(e.location.x) << ','
       << format_double(e.location.y) << ',' << to_string(e.classification) << ',' << format_double(e.trace) << ','
       << format_double(e.det) << ',';
    for (std::size_t k = 0; k < e.coincident.size(); ++k) {
      os << (k ? ";" : "") << to_string(e.coincident[k].label);
    }
    os << '\n';
  }
  return os.str();
}

std::string hopf_csv(const HopfReport& r) {
  std::ostringstream os;
  os << "which,x,y,s_critical,transversality,M,sigma,sigma_general,sigma_as_printed,sigma_corrected,direction\n"
     << to_string(r.which) << ',' << format_double(r.location.x) << ',' << format_double(r.location.y) << ','
     << format_double(r.s_critical) << ',' << format_double(r.transversality) << ',' << format_double(r.M) << ','
     << format_double(r.sigma) << ',' << format_double(r.sigma_general) << ',' << format_double(r.sigma_as_printed)
     << ',' << format_double(r.sigma_corrected) << ',' << to_string(r.direction) << '\n';
  return os.str();
}

std::string bt_csv(const std::vector<BTReport>& reports) {
  std::ostringstream os;
  os << "eta1,eta2,l00,l01,jac_det,verdict\n";
  for (const BTReport& r : reports) {
    os << format_double(r.eta[0]) << ',' << format_double(r.eta[1]) << ',' << format_double(r.l00) << ','
       << format_double(r.l01) << ',' << format_double(r.jac_det) << ',' << to_string(r.verdict) << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t,x,y\n";
  for (const Sample& s : t.samples) {
    out += format_double(s.t);
    out += ',';
    out += format_double(s.x);
    out += ',';
    out += format_double(s.y);
    out += '\n';
  }
  return out;
}

}  // namespace allee::cli
