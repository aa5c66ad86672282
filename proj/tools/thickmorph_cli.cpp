// thickmorph command-line front end.
//
//   thickmorph_cli <command> [options]
//
// Exit status: 0 success, 1 a verification came out false, 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thickmorph/thickmorph.hpp"

namespace thm = thickmorph;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct Options {
  std::string command;
  std::string gen_file;
  std::vector<std::string> g, h, f;
  unsigned K = 3;
  std::optional<unsigned> Q;
  std::string hm_file, hn_file;
  std::string json_path;
};

class CliError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Expands "<expr>" or "@file" arguments into a list of Polys on the chart.
std::vector<thm::Poly> read_functions(const std::vector<std::string>& args, const thm::Ring& ring, const char* flag) {
  std::vector<thm::Poly> out;
  for (const auto& a : args) {
    if (!a.empty() && a[0] == '@') {
      const std::string path = a.substr(1);
      auto polys = thm::parse_expression_file(read_file(path), ring, path);
      if (polys.empty()) throw thm::FixtureError(path, 1, 0, "no expressions");
      out.insert(out.end(), polys.begin(), polys.end());
    } else {
      try {
        out.push_back(thm::parse_poly(a, ring));
      } catch (const thm::ParseError& e) {
        throw thm::FixtureError(std::string("<") + flag + ">", 1, e.offset(), e.what());
      }
    }
  }
  return out;
}

/// {"k": canonical [a]_k} over non-zero lambda orders.
Json orders_json(const thm::Poly& a) {
  Json j = Json::object();
  const unsigned top = a.degree_in(a.ring().vars().lambda());
  for (unsigned k = 0; k <= top; ++k) {
    thm::Poly c = thm::grade_component(a.in_ring(a.ring().with_lambda_cap(thm::kUnbounded)), k);
    if (!c.is_zero()) j[std::to_string(k)] = thm::render_canonical(c);
  }
  return j;
}

std::string index_key(const thm::MultiIndex& idx) {
  std::string s;
  for (auto a : idx) s += (s.empty() ? "" : " ") + std::to_string(a + 1);
  return s;
}

Json genfunction_json(const thm::GenFunction& S) {
  Json j = Json::object();
  for (unsigned k = 0; k <= S.max_q_degree(); ++k) {
    Json t = Json::object();
    for (const auto& [idx, v] : S.tensor(k)) t[index_key(idx)] = thm::render_canonical(v);
    if (!t.empty()) j[std::to_string(k)] = t;
  }
  return j;
}

struct Context {
  Options opt;
  std::optional<thm::GenFunctionFile> file;

  const thm::GenFunctionFile& gen() {
    if (!file) {
      if (opt.gen_file.empty()) throw CliError(opt.command + ": -S <genfunction file> is required");
      thm::GenFunctionFile parsed = thm::parse_genfunction(read_file(opt.gen_file), opt.gen_file);
      if (opt.Q) parsed.S = parsed.S.truncated(*opt.Q);
      file = std::move(parsed);
    }
    return *file;
  }
  const thm::ChartPair& chart() { return gen().S.chart(); }
  thm::Functional functional() { return thm::perturbed_thick(gen().S, opt.K, gen().perturbations); }

  std::vector<thm::Poly> gs(bool required) {
    if (opt.g.empty()) {
      if (required) throw CliError(opt.command + ": -g is required");
      return default_targets();
    }
    auto v = read_functions(opt.g, chart().base(), "-g");
    for (const auto& p : v) thm::require_on_N(p, "-g");
    return v;
  }

  std::vector<thm::Poly> hs() {
    if (opt.h.empty()) return default_targets();
    auto v = read_functions(opt.h, chart().base(), "-h");
    for (const auto& p : v) thm::require_on_N(p, "-h");
    return v;
  }

  // y^a, 1 + sum_a y^a and the square of that sum.
  std::vector<thm::Poly> default_targets() {
    const auto& ch = chart();
    std::vector<thm::Poly> v;
    thm::Poly total = thm::Poly::constant(ch.base(), 1);
    for (unsigned a = 0; a < ch.dim_N(); ++a) {
      v.push_back(thm::Poly::variable(ch.base(), ch.y(a)));
      total += v.back();
    }
    v.push_back(total);
    v.push_back(total * total);
    return v;
  }

  thm::Hamiltonian hamiltonian(const std::string& path, thm::Side side, const char* flag) {
    if (path.empty()) throw CliError(opt.command + ": " + flag + " <hamiltonian file> is required");
    return thm::parse_hamiltonian(read_file(path), chart(), side, path);
  }
};

int cmd_pullback(Context& c, Json& out) {
  auto L = c.functional();
  auto gs = c.gs(true);
  if (gs.size() == 1) {
    out = orders_json(thm::evaluate(L, gs[0]));
  } else {
    out = Json::array();
    for (const auto& g : gs) out.push_back(orders_json(thm::evaluate(L, g)));
  }
  return kOk;
}

int cmd_ymap(Context& c, Json& out) {
  auto gs = c.gs(true);
  auto one = [&](const thm::Poly& g) {
    Json j = Json::object();
    auto y = thm::solve_y_map(c.gen().S, g, c.opt.K);
    for (unsigned a = 0; a < y.components.size(); ++a) j["y" + std::to_string(a + 1)] = orders_json(y.components[a]);
    return j;
  };
  if (gs.size() == 1) {
    out = one(gs[0]);
  } else {
    out = Json::array();
    for (const auto& g : gs) out.push_back(one(g));
  }
  return kOk;
}

int cmd_associate(Context& c, Json& out) {
  out = genfunction_json(thm::associate(c.functional()));
  return kOk;
}

int cmd_verify_hom(Context& c, Json& out) {
  auto L = c.functional();
  auto gs = c.gs(false);
  auto hs = c.hs();
  std::size_t checks = 0;
  for (const auto& g : gs) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      for (std::size_t j = i; j < hs.size(); ++j) {
        ++checks;
        auto r = thm::homomorphism_check(L, g, hs[i], hs[j], c.opt.K);
        if (!r.holds) {
          out = Json{{"holds", false},
                     {"g", thm::render_canonical(g)},
                     {"h1", thm::render_canonical(hs[i])},
                     {"h2", thm::render_canonical(hs[j])},
                     {"witness", orders_json(r.witness)}};
          return kFalse;
        }
      }
    }
  }
  out = Json{{"holds", true}, {"checks", checks}};
  return kOk;
}

int cmd_roundtrip(Context& c, Json& out) {
  auto rep = thm::roundtrip_verify(c.functional(), c.opt.K, c.gs(false));
  out = Json::array();
  for (const auto& o : rep.orders) {
    out.push_back(Json{{"order", o.order},
                       {"status", o.ok ? "ok" : "fail"},
                       {"witness", thm::render_canonical(o.witness)}});
  }
  return rep.ok ? kOk : kFalse;
}

int cmd_polarise(Context& c, Json& out) {
  auto gs = c.gs(true);
  const unsigned k = static_cast<unsigned>(gs.size());
  if (k > c.opt.K) throw CliError("polarise: number of -g arguments exceeds -K");
  out = Json{{"k", k}, {"value", thm::render_canonical(thm::polarise(c.functional(), k, gs))}};
  return kOk;
}

int cmd_brackets(Context& c, Json& out) {
  auto H = c.hamiltonian(c.opt.hm_file, thm::Side::source, "--hm");
  auto fs = read_functions(c.opt.f, c.chart().base(), "-f");
  for (const auto& f : fs) {
    if (!f.only_classes({thm::SymbolClass::x, thm::SymbolClass::param})) throw CliError("-f: functions on the source chart only");
  }
  auto constant = thm::measured_bracket_constant(H, fs);
  out = Json{{"k", fs.size()},
             {"bracket", thm::render_canonical(thm::derived_bracket(H, fs))},
             {"contraction", thm::render_canonical(thm::coefficient_contraction(H, fs))},
             {"constant", constant ? Json(thm::detail::render_scalar(*constant)) : Json(nullptr)}};
  return kOk;
}

int cmd_s_related(Context& c, Json& out) {
  auto HM = c.hamiltonian(c.opt.hm_file, thm::Side::source, "--hm");
  auto HN = c.hamiltonian(c.opt.hn_file, thm::Side::target, "--hn");
  auto r = thm::s_related_check(HM, HN, c.gen().S, c.opt.Q.value_or(c.opt.K));
  out = Json{{"holds", r.holds}, {"witness", thm::render_canonical(r.witness)}};
  return r.holds ? kOk : kFalse;
}

int cmd_morphism_check(Context& c, Json& out) {
  auto HM = c.hamiltonian(c.opt.hm_file, thm::Side::source, "--hm");
  auto HN = c.hamiltonian(c.opt.hn_file, thm::Side::target, "--hn");
  const auto& S = c.gen().S;
  auto rel = thm::s_related_check(HM, HN, S, c.opt.Q.value_or(c.opt.K));
  if (!rel.holds) {
    out = Json{{"status", "precondition_fails"}, {"witness", thm::render_canonical(rel.witness)}};
    return kFalse;
  }
  out = Json::array();
  int status = kOk;
  for (const auto& g : c.gs(false)) {
    auto r = thm::bracket_morphism_check(S, HM, HN, g, c.opt.K, false);
    out.push_back(Json{{"g", thm::render_canonical(g)},
                       {"status", r.holds() ? "holds" : "morphism_fails"},
                       {"witness", orders_json(r.witness)}});
    if (!r.holds()) status = kFalse;
  }
  return status;
}

int dispatch(Context& c, Json& out) {
  const auto& cmd = c.opt.command;
  if (cmd == "pullback") return cmd_pullback(c, out);
  if (cmd == "ymap") return cmd_ymap(c, out);
  if (cmd == "associate") return cmd_associate(c, out);
  if (cmd == "verify-hom") return cmd_verify_hom(c, out);
  if (cmd == "roundtrip") return cmd_roundtrip(c, out);
  if (cmd == "polarise") return cmd_polarise(c, out);
  if (cmd == "brackets") return cmd_brackets(c, out);
  if (cmd == "s-related") return cmd_s_related(c, out);
  if (cmd == "morphism-check") return cmd_morphism_check(c, out);
  throw CliError("unknown command '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thick morphisms: pull-backs, reconstruction and bracket checks"};
  Options opt;
  app.set_help_flag("--help", "print this help message and exit");
  app.add_option("command", opt.command, "pullback | ymap | associate | verify-hom | roundtrip | polarise | brackets | s-related | morphism-check")
      ->required()
      ->check(CLI::IsMember({"pullback", "ymap", "associate", "verify-hom", "roundtrip", "polarise", "brackets",
                             "s-related", "morphism-check"}));
  app.add_option("-S", opt.gen_file, "generating function file");
  app.add_option("-g", opt.g, "function(s) on the target chart: expression or @file (repeatable)");
  app.add_option("-h", opt.h, "test function(s) for differentials: expression or @file (repeatable)");
  app.add_option("-f", opt.f, "bracket argument(s) on the source chart: expression or @file (repeatable)");
  app.add_option("-K", opt.K, "lambda order cap")->check(CLI::Range(1U, 64U));
  app.add_option("-Q", opt.Q, "q-degree cap")->check(CLI::Range(1U, 64U));
  app.add_option("--hm", opt.hm_file, "source Hamiltonian file");
  app.add_option("--hn", opt.hn_file, "target Hamiltonian file");
  app.add_option("--json", opt.json_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Context ctx{opt, std::nullopt};
  Json out;
  int status = kOk;
  try {
    status = dispatch(ctx, out);
  } catch (const thm::FixtureError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const thm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const std::string text = out.dump(2) + "\n";
  if (opt.json_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(opt.json_path, std::ios::binary);
    if (!o) {
      std::cerr << "error: cannot write '" << opt.json_path << "'\n";
      return kUsage;
    }
    o << text;
  }
  return status;
}
