#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "maxarity.hpp"

namespace mj = maxarity::json;
using maxarity::CpwlExpr;
using maxarity::Error;
using maxarity::ErrorCode;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kParse = 2, kDimension = 3, kInternal = 4 };

CpwlExpr load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mj::parse_expr(ss.str());
}

maxarity::Vec parse_point(const std::string& text) {
  std::vector<maxarity::Rat> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(maxarity::Rat::parse(item));
  if (xs.empty()) throw Error(ErrorCode::parse, "empty point");
  return maxarity::Vec(std::move(xs));
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_eval(const std::string& file, const std::string& point) {
  auto f = load(file);
  auto x = parse_point(point);
  std::cout << f.eval(x).str() << "\n";
  return kOk;
}

int cmd_arity(const std::string& file, bool as_json, int check) {
  auto f = load(file);
  if (check > 0) {
    auto r = maxarity::check_arity(f, static_cast<std::size_t>(check));
    if (as_json) {
      json out = {{"k", check}, {"holds", r.holds}, {"violation", nullptr}};
      if (r.violation) {
        out["violation"] = {{"flag", mj::flag(r.violation->flag)},
                            {"first", mj::vec(r.violation->first)},
                            {"second", mj::vec(r.violation->second)}};
      }
      print_json(out);
    } else {
      std::cout << "arity " << check << ": " << (r.holds ? "holds" : "fails") << "\n";
      if (r.violation) std::cout << "non-constant on " << r.violation->flag.str() << "\n";
    }
    return r.holds ? kOk : kNegative;
  }
  auto cert = maxarity::minimal_arity(f);
  if (as_json) {
    print_json(mj::certificate(cert));
    return kOk;
  }
  std::cout << "k_star " << cert.k_star << "\n";
  std::cout << "depth_bound " << cert.depth_bound << "\n";
  if (cert.witness) {
    const auto& w = *cert.witness;
    std::cout << "witness flag " << w.flag.str() << ": " << w.first_value.str() << " at "
              << w.first.str() << ", " << w.second_value.str() << " at " << w.second.str() << "\n";
  }
  std::cout << "constant flags " << cert.constancy.size() << "\n";
  return kOk;
}

json trace_json(const std::vector<maxarity::PeelStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    out.push_back({{"flag", mj::flag(s.flag)},
                   {"x0", mj::vec(s.x0)},
                   {"lineality_dim", s.lineality_dim},
                   {"w_dim", s.w_dim},
                   {"flags_before", s.flags_before},
                   {"flags_after", s.flags_after},
                   {"piece", mj::expr(s.piece)}});
  }
  return out;
}

int cmd_decompose(const std::string& file, bool trace, bool as_json, const std::string& output) {
  auto f = load(file);
  auto d = maxarity::decompose(f);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw Error(ErrorCode::parse, "cannot write " + output);
    out << mj::expr(d.expr).dump(2) << "\n";
  }
  if (as_json) {
    json out = {{"arity_bound", d.arity_bound},
                {"arity", d.expr.arity()},
                {"synthesized", d.synthesized},
                {"verified", d.check.equal},
                {"expression", mj::expr(d.expr)}};
    if (trace) out["trace"] = trace_json(d.trace);
    print_json(out);
    return kOk;
  }
  std::cout << "arity_bound " << d.arity_bound << "\n";
  std::cout << "synthesized " << (d.synthesized ? "yes" : "no") << "\n";
  std::cout << "verified " << (d.check.equal ? "EQUAL" : "NOT EQUAL") << "\n";
  if (trace) {
    for (std::size_t i = 0; i < d.trace.size(); ++i) {
      const auto& s = d.trace[i];
      std::cout << "step " << i + 1 << ": flag " << s.flag.str() << " x0 " << s.x0.str()
                << " lineality " << s.lineality_dim << " w " << s.w_dim << " flags "
                << s.flags_before << " -> " << s.flags_after << "\n";
    }
  }
  if (output.empty()) std::cout << mj::expr(d.expr).dump(2) << "\n";
  return kOk;
}

int cmd_equal(const std::string& a, const std::string& b, bool as_json) {
  auto f = load(a);
  auto g = load(b);
  auto r = maxarity::equivalent(f, g);
  if (as_json) {
    json out = {{"equal", r.equal}, {"witness", nullptr}};
    if (r.witness) {
      out["witness"] = {{"point", mj::vec(*r.witness)},
                        {"first", mj::rat(f.eval(*r.witness))},
                        {"second", mj::rat(g.eval(*r.witness))}};
    }
    print_json(out);
  } else if (r.equal) {
    std::cout << "EQUAL\n";
  } else {
    std::cout << "NOT EQUAL at " << r.witness->str() << ": " << f.eval(*r.witness).str()
              << " vs " << g.eval(*r.witness).str() << "\n";
  }
  return r.equal ? kOk : kNegative;
}

int cmd_delta(const std::string& file, const std::string& flag_text, bool as_json) {
  auto f = load(file);
  auto flag = mj::parse_flag(flag_text, f.dimension());
  auto dir = maxarity::make_directional(flag);
  maxarity::DeltaEngine e{maxarity::GradientField(f)};
  const auto& d = e.delta(flag);
  if (as_json) {
    json cells = json::array();
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      cells.push_back({{"sample", mj::vec(d.cells.cells()[i].sample)}, {"value", mj::vec(d.values[i])}});
    }
    json dirs = json::array();
    for (const auto& v : dir.vectors) dirs.push_back(mj::vec(v));
    print_json({{"flag", mj::flag(flag)},
                {"directional", dirs},
                {"cells", cells},
                {"constant", d.is_constant()},
                {"zero", d.is_zero()}});
    return kOk;
  }
  std::cout << "flag " << flag.str() << "\n";
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    std::cout << "  " << d.cells.cells()[i].sample.str() << " -> " << d.values[i].str() << "\n";
  }
  std::cout << "cells " << d.values.size() << "\n";
  std::cout << "constant " << (d.is_constant() ? "true" : "false") << "\n";
  std::cout << "zero " << (d.is_zero() ? "true" : "false") << "\n";
  return kOk;
}

int cmd_report(const std::string& file, bool as_json, bool with_decomposition) {
  auto start = std::chrono::steady_clock::now();
  auto f = load(file);
  auto r = maxarity::make_report(f);
  std::optional<maxarity::Decomposition> d;
  if (with_decomposition) d = maxarity::decompose(f);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (as_json) {
    json out = {{"dimension", r.dimension},
                {"terms", r.terms},
                {"arity", r.arity},
                {"p", r.stats.pieces},
                {"q", r.stats.regions},
                {"cells", r.stats.cells},
                {"k_star", r.certificate.k_star},
                {"depth_bound", r.certificate.depth_bound},
                {"certificate", mj::certificate(r.certificate)},
                {"decomposition", nullptr},
                {"timing_ms", ms}};
    if (d) {
      out["decomposition"] = {{"arity_bound", d->arity_bound},
                              {"synthesized", d->synthesized},
                              {"expression", mj::expr(d->expr)}};
    }
    print_json(out);
    return kOk;
  }
  std::cout << "dimension " << r.dimension << "\n";
  std::cout << "terms " << r.terms << "\n";
  std::cout << "arity " << r.arity << "\n";
  std::cout << "p " << r.stats.pieces << "\n";
  std::cout << "q " << r.stats.regions << "\n";
  std::cout << "k_star " << r.certificate.k_star << "\n";
  std::cout << "depth_bound " << r.certificate.depth_bound << "\n";
  if (d) std::cout << "decomposition arity " << d->expr.arity() << "\n";
  std::cout << "time_ms " << ms << "\n";
  return kOk;
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse:
    case ErrorCode::invalid_argument:
      return kParse;
    case ErrorCode::dimension_mismatch:
      return kDimension;
    case ErrorCode::non_generic:
    case ErrorCode::internal_verification:
      return kInternal;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of max-of-affine CPWL expressions"};
  app.require_subcommand(1);
  std::string file, other, point, flag, output;
  bool as_json = false, trace = false, with_decomposition = false;
  int check = 0;
  int rc = kOk;

  auto* eval = app.add_subcommand("eval", "Evaluate at a point");
  eval->add_option("file", file, "expression JSON")->required();
  eval->add_option("point", point, "comma separated coordinates")->required();

  auto* arity = app.add_subcommand("arity", "Minimal max arity certificate");
  arity->add_option("file", file, "expression JSON")->required();
  arity->add_flag("--json", as_json, "machine-readable output");
  arity->add_option("--check", check, "only test whether arity K suffices")->check(CLI::PositiveNumber);

  auto* dec = app.add_subcommand("decompose", "Rewrite with minimal arity");
  dec->add_option("file", file, "expression JSON")->required();
  dec->add_flag("--trace", trace, "log peel steps");
  dec->add_flag("--json", as_json, "machine-readable output");
  dec->add_option("-o,--output", output, "write the expression JSON here");

  auto* eq = app.add_subcommand("equal", "Exact equivalence check");
  eq->add_option("first", file, "expression JSON")->required();
  eq->add_option("second", other, "expression JSON")->required();
  eq->add_flag("--json", as_json, "machine-readable output");

  auto* del = app.add_subcommand("delta", "Delta of the gradient on a flag");
  del->add_option("file", file, "expression JSON")->required();
  del->add_option("--flag", flag, "equations separated by ';', e.g. \"x-y=0; x+y=0\"")->required();
  del->add_flag("--json", as_json, "machine-readable output");

  auto* rep = app.add_subcommand("report", "Summary statistics");
  rep->add_option("file", file, "expression JSON")->required();
  rep->add_flag("--json", as_json, "machine-readable output");
  rep->add_flag("--decompose", with_decomposition, "include a decomposition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*eval) rc = cmd_eval(file, point);
    else if (*arity) rc = cmd_arity(file, as_json, check);
    else if (*dec) rc = cmd_decompose(file, trace, as_json, output);
    else if (*eq) rc = cmd_equal(file, other, as_json);
    else if (*del) rc = cmd_delta(file, flag, as_json);
    else if (*rep) rc = cmd_report(file, as_json, with_decomposition);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return rc;
}
