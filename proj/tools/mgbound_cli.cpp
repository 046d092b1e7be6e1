#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgbound/bounds.hpp"
#include "mgbound/comparison.hpp"
#include "mgbound/lp.hpp"
#include "mgbound/process.hpp"
#include "mgbound/support.hpp"

using namespace mgbound;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInconclusive = 3, kIo = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kJson, kCsv };

struct KindFlags {
  bool mg = false;
  bool smg = false;
  bool supermg = false;
  bool none = false;

  void add(CLI::App* app, bool allow_all) {
    auto* g = app->add_option_group("kind");
    g->add_flag("--mg", mg, "martingale (default)");
    g->add_flag("--smg,--submg", smg, "submartingale");
    if (allow_all) {
      g->add_flag("--supermg", supermg, "supermartingale");
      g->add_flag("--none", none, "no structural assumption");
    }
    g->require_option(0, 1);
  }

  ProcessKind kind() const {
    if (smg) return ProcessKind::kSubmartingale;
    if (supermg) return ProcessKind::kSupermartingale;
    if (none) return ProcessKind::kUnconstrained;
    return ProcessKind::kMartingale;
  }
};

struct Common {
  std::string format = "text";
  std::string output;

  void add(CLI::App* app, bool csv) {
    std::vector<std::string> allowed{"text", "json"};
    if (csv) allowed.push_back("csv");
    app->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
    app->add_option("-o,--output", output, "write the report to this file instead of stdout");
  }

  Format fmt() const { return format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText; }
};

RationalVector parse_all(const std::vector<std::string>& items) {
  RationalVector out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

std::string decimal17(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(17) << q.get_d();
  return os.str();
}

std::string decimal17(const Real& r) {
  std::ostringstream os;
  os << std::setprecision(17) << r;
  return os.str();
}

json label_list(const std::vector<PieceLabel>& labels) {
  json out = json::array();
  for (const auto& l : labels) out.push_back(l.str());
  return out;
}

std::string join_labels(const std::vector<PieceLabel>& labels, const char* sep = " ") {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : sep) + l.str();
  return out;
}

std::string path_text(const NodePath& path) {
  std::string out = "root";
  for (auto i : path) out += "/" + std::to_string(i);
  return out;
}

json point_json(std::span<const Rational> x) {
  json out = json::array();
  for (const auto& v : x) out.push_back(to_string(v));
  return out;
}

std::string point_text(std::span<const Rational> x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + to_string(x[i]);
  return out + ")";
}

void emit(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output);
  if (!out) throw IoError("cannot write " + common.output);
  out << text;
  if (!out) throw IoError("write to " + common.output + " failed");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string summary_text(const MomentSummary& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.ex_abs_x.size(); ++i)
    os << "E|X_" << i + 1 << "| = " << to_string(m.ex_abs_x[i]) << "   E|S_" << i + 1
       << "| = " << to_string(m.ex_abs_s[i]) << "   E S_" << i + 1 << " = " << to_string(m.ex_s[i]) << "\n";
  return os.str();
}

json summary_json(const MomentSummary& m) {
  return {{"ex_abs_x", point_json(m.ex_abs_x)},
          {"ex_abs_s", point_json(m.ex_abs_s)},
          {"ex_s", point_json(m.ex_s)},
          {"objective", to_string(m.objective)}};
}

Rational structured_bound(ProcessKind kind, const MomentVector& a) {
  switch (kind) {
    case ProcessKind::kMartingale: return eval_f_mg(a).value;
    case ProcessKind::kSubmartingale:
    case ProcessKind::kSupermartingale: return eval_f_smg(a).value;
    case ProcessKind::kUnconstrained: return *eval_f_none(1, a).exact;
  }
  return 0;
}

AffineFamily family_for(ProcessKind kind, std::size_t n) {
  if (kind == ProcessKind::kUnconstrained) throw std::invalid_argument("this command needs --mg or --smg");
  return kind == ProcessKind::kMartingale ? pieces_mg(n) : pieces_smg(n);
}

// ---------------------------------------------------------------------------

struct BoundCmd {
  std::vector<std::string> a;
  std::string r = "1";
  KindFlags kind;
  Common common;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("bound", "closed-form lower bounds on E|S_n| for increment moments a");
    sub->add_option("a", a, "targets E|X_i| as rationals p/q")->required();
    sub->add_option("-r", r, "exponent for the unstructured L^r bounds");
    kind.add(sub, false);
    common.add(sub, true);
    sub->callback([this] { code = run(); });
  }

  int code = kOk;

  int run() const {
    const MomentVector m(parse_all(a));
    const Rational exponent = parse_rational(r);
    const bool show_mg = !kind.smg;
    const bool show_smg = !kind.mg;
    auto mg = eval_f_mg(m);
    auto smg = eval_f_smg(m);
    auto lower = eval_f_none(exponent, m);
    auto upper = eval_F_none(exponent, m);
    auto ks = kemperman_smit(m);
    auto ic = f_ic_partial(m);
    auto mgs = mg_sandwich(m);
    auto smgs = smg_sandwich(m);
    auto norm_text = [](const NormBound& b) { return b.exact ? to_string(*b.exact) : decimal17(b.approx); };
    auto norm_json = [](const NormBound& b) { return b.exact ? json(to_string(*b.exact)) : json(b.approx.str(50)); };

    std::ostringstream os;
    switch (common.fmt()) {
      case Format::kText:
        os << "a = " << point_text(m.values()) << "\n";
        if (show_mg) {
          os << "f_MG = " << to_string(mg.value) << "   active: " << join_labels(mg.active) << "\n";
          os << "  sandwich " << to_string(mgs.lower) << " <= f_MG <= " << to_string(mgs.upper) << "\n";
        }
        if (show_smg) {
          os << "f_SMG = " << to_string(smg.value) << "   active: " << join_labels(smg.active) << "\n";
          os << "  sandwich " << to_string(smgs.lower) << " <= f_SMG <= " << to_string(smgs.upper) << "\n";
        }
        os << "f_N(r=" << to_string(exponent) << ") = " << norm_text(lower) << "\n";
        os << "F_N(r=" << to_string(exponent) << ") = " << norm_text(upper) << "\n";
        os << "Kemperman-Smit = " << to_string(ks) << "\n";
        if (ic) os << "f_IC = " << to_string(*ic) << "\n";
        break;
      case Format::kJson: {
        json out{{"a", point_json(m.values())}, {"r", to_string(exponent)}};
        if (show_mg)
          out["f_mg"] = {{"value", to_string(mg.value)},
                         {"active", label_list(mg.active)},
                         {"sandwich", {to_string(mgs.lower), to_string(mgs.upper)}}};
        if (show_smg)
          out["f_smg"] = {{"value", to_string(smg.value)},
                          {"active", label_list(smg.active)},
                          {"sandwich", {to_string(smgs.lower), to_string(smgs.upper)}}};
        out["f_none"] = norm_json(lower);
        out["F_none"] = norm_json(upper);
        out["kemperman_smit"] = to_string(ks);
        out["f_ic"] = ic ? json(to_string(*ic)) : json(nullptr);
        os << out.dump(2) << "\n";
        break;
      }
      case Format::kCsv:
        os << "quantity,exact,decimal,active\n";
        if (show_mg) os << "f_mg," << to_string(mg.value) << "," << decimal17(mg.value) << ","
                        << join_labels(mg.active) << "\n";
        if (show_smg) os << "f_smg," << to_string(smg.value) << "," << decimal17(smg.value) << ","
                         << join_labels(smg.active) << "\n";
        os << "f_none," << (lower.exact ? to_string(*lower.exact) : "") << "," << decimal17(lower.approx) << ",\n";
        os << "F_none," << (upper.exact ? to_string(*upper.exact) : "") << "," << decimal17(upper.approx) << ",\n";
        os << "kemperman_smit," << to_string(ks) << "," << decimal17(ks) << ",\n";
        break;
    }
    emit(common, os.str());
    return kOk;
  }
};

struct WitnessCmd {
  std::string family;
  std::size_t n = 0;
  std::string p;
  std::vector<std::string> a;
  std::string summary_format = "text";
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("witness", "write an extremal process law as JSON");
    sub->add_option("family", family, "mg, smg-a (positive part of a product), smg-b (positive part), ic")
        ->required()
        ->check(CLI::IsMember({"mg", "smg-a", "smg-b", "ic"}));
    sub->add_option("-n", n, "number of steps (ignored for ic)");
    sub->add_option("-p", p, "construction parameter in (0, 1)")->required();
    sub->add_option("--a", a, "targets for the ic family")->delimiter(',');
    sub->add_option("-o,--output", common.output, "law JSON destination (default stdout)");
    sub->callback([this] { code = run(); });
  }

  int run() const {
    const Rational param = parse_rational(p);
    std::optional<ProcessLaw> law;
    ProcessKind kind = ProcessKind::kMartingale;
    if (family == "ic") {
      if (a.empty()) throw CLI::ValidationError("--a", "the ic family needs targets");
      law = build_ic_spread(MomentVector(parse_all(a)), param);
    } else {
      if (n == 0) throw CLI::ValidationError("-n", "needs n >= 1");
      if (family == "mg") law = build_mg_extremal(n, param);
      if (family == "smg-a") law = build_smg_extremal_pos_product(n, param);
      if (family == "smg-b") law = build_smg_extremal_pospart(n, param);
      if (family != "mg") kind = ProcessKind::kSubmartingale;
    }
    const std::string text = law_to_json(*law).dump() + "\n";
    auto m = moments(*law);
    if (common.output.empty()) {
      std::cout << text;
      std::cerr << summary_text(m) << "E|S_n| = " << to_string(m.objective) << "\n";
    } else {
      emit(common, text);
      std::cout << "kind " << to_string(kind) << ", " << law->leaf_count() << " leaves\n"
                << summary_text(m) << "E|S_n| = " << to_string(m.objective) << "\n";
    }
    return kOk;
  }
};

struct CheckCmd {
  std::string path;
  bool from_zero = false;
  KindFlags kind;
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("check", "validate a process law file and compare E|S_n| with the bound");
    sub->add_option("law", path, "process law JSON")->required();
    sub->add_flag("--from-zero", from_zero, "constrain the first martingale step as well");
    kind.add(sub, true);
    common.add(sub, false);
    sub->callback([this] { code = run(); });
  }

  int run() const {
    json j = read_json_file(path);
    ProcessLaw law = [&] {
      try {
        return law_from_json(j);
      } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
      }
    }();
    const ProcessKind k = kind.kind();
    auto report = validate(law, k, from_zero);
    std::optional<MomentSummary> m;
    std::optional<Rational> bound;
    if (report.structurally_valid()) {
      m = moments(law);
      bound = structured_bound(k, m->increments());
    }
    const bool holds = bound && m->objective >= *bound;
    const bool ok = report.ok() && holds;

    std::ostringstream os;
    if (common.fmt() == Format::kJson) {
      json structural = json::array(), violations = json::array();
      for (const auto& e : report.structural) structural.push_back({{"path", e.path}, {"message", e.message}});
      for (const auto& v : report.violations)
        violations.push_back(
            {{"path", v.path}, {"step", v.step}, {"conditional_mean", to_string(v.conditional_mean)}});
      json out{{"kind", to_string(k)},      {"valid", report.ok()},        {"structural", structural},
               {"violations", violations}, {"bound_holds", holds}};
      if (m) {
        out["moments"] = summary_json(*m);
        out["bound"] = to_string(*bound);
      }
      os << out.dump(2) << "\n";
    } else {
      os << "kind " << to_string(k) << ": " << (report.ok() ? "valid" : "invalid") << "\n";
      for (const auto& e : report.structural) os << "  structure at " << path_text(e.path) << ": " << e.message << "\n";
      for (const auto& v : report.violations)
        os << "  step " << v.step << " at " << path_text(v.path) << ": conditional mean " << to_string(v.conditional_mean)
           << "\n";
      if (m) {
        os << summary_text(*m);
        os << "E|S_n| = " << to_string(m->objective) << (holds ? " >= " : " < ") << to_string(*bound)
           << " = bound\n";
      }
    }
    emit(common, os.str());
    return ok ? kOk : kCheckFailed;
  }
};

struct LpCmd {
  std::vector<std::string> a;
  std::vector<std::string> ps{"1/4", "1/16", "1/64"};
  std::string cap;
  std::vector<std::string> support_files;
  bool use_float = false;
  std::string export_path;
  std::string witness_path;
  KindFlags kind;
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("lp", "solve min E|S_n| on a nested schedule of finite supports");
    sub->add_option("a", a, "targets E|X_i|")->required();
    sub->add_option("-p,--schedule", ps, "construction parameters, one support per entry")->delimiter(',');
    sub->add_option("-M,--grid-cap", cap, "also add the grid {0, +-2^j <= M} at every node");
    sub->add_option("--support", support_files, "explicit support tree JSON, replaces the construction schedule");
    sub->add_flag("--float", use_float, "solve in double precision");
    sub->add_option("--export-lp", export_path, "write the last LP in CPLEX LP format");
    sub->add_option("--witness", witness_path, "write the last optimal witness law as JSON");
    kind.add(sub, true);
    common.add(sub, true);
    sub->callback([this] { code = run(); });
  }

  int run() const {
    const MomentVector m(parse_all(a));
    const ProcessKind k = kind.kind();
    std::optional<GridSpec> grid;
    if (!cap.empty()) grid = GridSpec{1, parse_rational(cap), false};
    std::vector<SupportTree> schedule;
    std::vector<std::string> names;
    for (const auto& path : support_files) {
      auto next = support_from_json(read_json_file(path));
      schedule.push_back(grid ? grid_union(next, *grid) : next);
      names.push_back(path);
    }
    if (support_files.empty())
      for (const auto& text : ps) {
        auto next = construction_oracle_support(k, m, parse_rational(text));
        if (grid) next = grid_union(next, *grid);
        schedule.push_back(schedule.empty() ? next : support_union(schedule.back(), next));
        names.push_back("p = " + text);
      }
    if (schedule.empty()) throw CLI::ValidationError("--schedule", "needs at least one entry");
    SolveOptions options;
    if (use_float) options.mode = SolveMode::kFloat;
    auto report = refine_and_converge(m, k, schedule, options);

    if (!export_path.empty()) {
      std::ofstream out(export_path);
      if (!out) throw IoError("cannot write " + export_path);
      write_lp_format(out, build_problem(schedule.back(), m, k));
    }
    if (!witness_path.empty()) {
      const LpSolution* last = nullptr;
      for (const auto& s : report.solutions)
        if (s.witness) last = &s;
      if (last) {
        std::ofstream out(witness_path);
        if (!out) throw IoError("cannot write " + witness_path);
        out << law_to_json(*last->witness).dump() << "\n";
      }
    }

    std::ostringstream os;
    switch (common.fmt()) {
      case Format::kText:
        os << "a = " << point_text(m.values()) << ", kind " << to_string(k) << ", closed form "
           << to_string(report.closed_form) << "\n";
        for (std::size_t i = 0; i < report.solutions.size(); ++i) {
          const auto& s = report.solutions[i];
          os << names[i] << ": " << schedule[i].node_count() << " nodes, " << to_string(s.status);
          if (s.status == LpStatus::kOptimal)
            os << ", value " << (use_float ? decimal17(s.value) : to_string(s.value)) << ", gap "
               << decimal17(s.value - report.closed_form) << ", " << s.iterations << " pivots";
          if (s.unstable) os << ", unstable";
          os << "\n";
        }
        os << "nested " << report.nested << ", monotone " << report.monotone << ", dominates bound "
           << report.dominates_bound << "\n";
        break;
      case Format::kJson: {
        json sols = json::array();
        for (std::size_t i = 0; i < report.solutions.size(); ++i) {
          const auto& s = report.solutions[i];
          json e{{"support", names[i]},
                 {"nodes", schedule[i].node_count()},
                 {"status", to_string(s.status)},
                 {"iterations", s.iterations}};
          if (s.status == LpStatus::kOptimal) {
            e["value"] = use_float ? json(s.value.get_d()) : json(to_string(s.value));
            e["max_residual"] = s.max_residual;
            e["unstable"] = s.unstable;
          }
          sols.push_back(e);
        }
        json out{{"a", point_json(m.values())},
                 {"kind", to_string(k)},
                 {"closed_form", to_string(report.closed_form)},
                 {"solutions", sols},
                 {"nested", report.nested},
                 {"monotone", report.monotone},
                 {"dominates_bound", report.dominates_bound},
                 {"final_gap", report.final_gap ? json(to_string(*report.final_gap)) : json(nullptr)}};
        os << out.dump(2) << "\n";
        break;
      }
      case Format::kCsv:
        os << "support,nodes,status,value,gap\n";
        for (std::size_t i = 0; i < report.solutions.size(); ++i) {
          const auto& s = report.solutions[i];
          os << names[i] << "," << schedule[i].node_count() << "," << to_string(s.status) << ",";
          if (s.status == LpStatus::kOptimal)
            os << decimal17(s.value) << "," << decimal17(s.value - report.closed_form);
          else
            os << ",";
          os << "\n";
        }
        break;
    }
    emit(common, os.str());
    if (report.all_infeasible()) return kInconclusive;
    return report.monotone && report.dominates_bound ? kOk : kCheckFailed;
  }
};

struct DistinguishedCmd {
  std::size_t n = 0;
  KindFlags kind;
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("distinguished", "interior simplex points with n independent active pieces");
    sub->add_option("-n", n, "dimension")->required()->check(CLI::Range(2, 7));
    kind.add(sub, false);
    common.add(sub, true);
    sub->callback([this] { code = run(); });
  }

  int run() const {
    auto family = family_for(kind.kind(), n);
    auto points = enumerate_distinguished_points(family, Polytope::standard_simplex(n));
    std::ostringstream os;
    switch (common.fmt()) {
      case Format::kText:
        os << points.size() << " distinguished point" << (points.size() == 1 ? "" : "s") << "\n";
        for (const auto& p : points)
          os << point_text(p.point) << "  value " << to_string(p.value) << "  rank " << p.independence_rank
             << "  active " << join_labels(p.active) << (p.degenerate ? "  degenerate" : "") << "\n";
        break;
      case Format::kJson: {
        json out = json::array();
        for (const auto& p : points)
          out.push_back({{"point", point_json(p.point)},
                         {"value", to_string(p.value)},
                         {"active", label_list(p.active)},
                         {"independence_rank", p.independence_rank},
                         {"degenerate", p.degenerate}});
        os << out.dump(2) << "\n";
        break;
      }
      case Format::kCsv:
        for (std::size_t i = 1; i <= n; ++i) os << "a" << i << ",";
        os << "value,rank,active\n";
        for (const auto& p : points) {
          for (const auto& v : p.point) os << to_string(v) << ",";
          os << to_string(p.value) << "," << p.independence_rank << "," << join_labels(p.active) << "\n";
        }
        break;
    }
    emit(common, os.str());
    return kOk;
  }
};

struct VerifyCmd {
  std::size_t n = 0;
  std::string p = "1/64";
  std::string tolerance;
  KindFlags kind;
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "verify", "check the closed form against LP upper bounds on the boundary and at distinguished points");
    sub->add_option("-n", n, "dimension")->required()->check(CLI::Range(1, 6));
    sub->add_option("-p", p, "construction parameter");
    sub->add_option("--tolerance", tolerance, "allowed slack (default p)");
    kind.add(sub, false);
    common.add(sub, true);
    sub->callback([this] { code = run(); });
  }

  int run() const {
    const ProcessKind k = kind.kind();
    const Rational param = parse_rational(p);
    VerifyOptions options{tolerance.empty() ? param : parse_rational(tolerance)};
    auto report = verify_bound(construction_lp_oracle(k, param), family_for(k, n), Polytope::standard_simplex(n),
                               simplex_coordinate_deletion(), options);
    std::ostringstream os;
    switch (common.fmt()) {
      case Format::kText:
        for (const auto& c : report.points) {
          os << std::left << std::setw(13) << to_string(c.outcome) << point_text(c.point) << "  g "
             << to_string(c.bound);
          if (c.f_upper) os << "  f <= " << to_string(*c.f_upper) << "  slack " << to_string(c.slack);
          else os << "  " << c.note;
          os << "  [" << c.face << "]\n";
        }
        os << report.points.size() << " points, " << report.failures << " failed, " << report.inconclusive
           << " inconclusive";
        if (report.max_slack) os << ", max slack " << to_string(*report.max_slack);
        os << "\n" << (report.passed() ? "PASS" : "FAIL") << "\n";
        break;
      case Format::kJson: os << report.to_json().dump(2) << "\n"; break;
      case Format::kCsv:
        for (std::size_t i = 1; i <= n; ++i) os << "a" << i << ",";
        os << "face_dimension,bound,f_upper,slack,outcome\n";
        for (const auto& c : report.points) {
          for (const auto& v : c.point) os << decimal17(v) << ",";
          os << c.face_dimension << "," << decimal17(c.bound) << ","
             << (c.f_upper ? decimal17(*c.f_upper) : "") << "," << (c.f_upper ? decimal17(c.slack) : "") << ","
             << to_string(c.outcome) << "\n";
        }
        break;
    }
    emit(common, os.str());
    if (report.failures) return kCheckFailed;
    return report.passed() ? kOk : kInconclusive;
  }
};

struct SweepCmd {
  std::size_t n = 0;
  std::size_t resolution = 10;
  KindFlags kind;
  Common common;
  int code = kOk;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("sweep", "CSV of the closed form on the simplex lattice {k / resolution}");
    sub->add_option("-n", n, "dimension")->required()->check(CLI::Range(1, 8));
    sub->add_option("--resolution", resolution, "lattice denominator")->check(CLI::Range(1, 1000));
    kind.add(sub, false);
    sub->add_option("-o,--output", common.output, "CSV destination (default stdout)");
    sub->callback([this] { code = run(); });
  }

  void walk(std::ostringstream& os, const AffineFamily& family, RationalVector& x, std::size_t left) const {
    if (x.size() + 1 == n) {
      Rational last(static_cast<long>(left), static_cast<long>(resolution));
      last.canonicalize();
      x.push_back(last);
      auto value = family.max_value(x);
      for (const auto& v : x) os << decimal17(v) << ",";
      os << decimal17(value) << "," << join_labels(family.active_set(x), ";") << "\n";
      x.pop_back();
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      Rational v(static_cast<long>(k), static_cast<long>(resolution));
      v.canonicalize();
      x.push_back(v);
      walk(os, family, x, left - k);
      x.pop_back();
    }
  }

  int run() const {
    auto family = family_for(kind.kind(), n);
    std::ostringstream os;
    for (std::size_t i = 1; i <= n; ++i) os << "a" << i << ",";
    os << "bound,active\n";
    RationalVector x;
    walk(os, family, x, resolution);
    emit(common, os.str());
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp lower bounds for E|S_n| under martingale and submartingale assumptions"};
  app.require_subcommand(1);
  BoundCmd bound;
  WitnessCmd witness;
  CheckCmd check;
  LpCmd lp;
  DistinguishedCmd distinguished;
  VerifyCmd verify;
  SweepCmd sweep;
  bound.add(app);
  witness.add(app);
  check.add(app);
  lp.add(app);
  distinguished.add(app);
  verify.add(app);
  sweep.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (int c : {bound.code, witness.code, check.code, lp.code, distinguished.code, verify.code, sweep.code})
    if (c != kOk) return c;
  return kOk;
}
