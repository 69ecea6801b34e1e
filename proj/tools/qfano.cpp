// qfano: command-line front end.
//
//   qfano hilbert --q 5 --A3 1/12 --basket "2,2,3,4" --to 5
//   qfano search --q 7 --require-dim3A-le 0 --format table
//   qfano wps --hypersurface "1,2,3,4,5 : 10" --to 10
//   qfano equivariant --hypersurface "1,2,3,4,5 : 8 / mu 2 : 0,1,1,1,1 ; 0" --to 5
//   qfano classify-x10 --equation "x5^2 + x4^2*x2 + x4*x3^2 + x1^10"
//   qfano link solve --scenario s.json      qfano link replay --id prop-8.2 --trace
//   qfano dp [--surface "P(1,2,3)"]
//
// Exit codes: 0 success, 1 domain error, 2 usage error. Any command accepts
// --config FILE: a JSON object whose keys are option names (without the
// leading dashes); a "command" key (string or list) supplies the
// subcommand when none is given on the command line. Explicit flags win.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfano/orbifold_rr.hpp"
#include "qfano/render.hpp"
#include "qfano/replay.hpp"
#include "qfano/sarkisov.hpp"
#include "qfano/search.hpp"
#include "qfano/wps.hpp"

namespace {

using namespace qfano;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Expands --config FILE into ordinary arguments.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("config file " + path + ": " + ex.what());
  }
  if (!cfg.is_object()) throw UsageError("config file " + path + ": expected a JSON object");
  std::vector<std::string> out;
  // a subcommand, when given, comes first; later bare words are flag values
  const bool has_command = !args.empty() && args.front().rfind("-", 0) != 0;
  if (!has_command && cfg.contains("command")) {
    if (cfg["command"].is_string()) {
      std::istringstream words(cfg["command"].get<std::string>());
      for (std::string w; words >> w;) out.push_back(w);
    } else {
      for (const auto& w : cfg["command"]) out.push_back(w.get<std::string>());
    }
  }
  out.insert(out.end(), args.begin(), args.end());
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else {
      out.push_back(flag);
      out.push_back(value.dump());
    }
  }
  return out;
}

Int parse_int_opt(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(what) + " expects an integer, got '" + text + "'");
}

std::vector<Int> parse_int_list(const std::string& text, const char* what) {
  std::vector<Int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(parse_int_opt(item, what));
  return out;
}

int run(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  auto args = expand_config(raw);

  CLI::App app{"Numerical tools for Q-Fano threefolds of large Fano index"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  std::string config_unused;
  app.add_option("--config", config_unused, "JSON file replacing flags");

  // hilbert
  auto* hil = app.add_subcommand("hilbert", "h^0(mA) for m = 0..M by orbifold Riemann-Roch");
  Int h_q = 0, h_to = -1;
  std::string h_A3, h_basket;
  bool h_strict = false;
  hil->add_option("--q", h_q, "Fano index")->required();
  hil->add_option("--A3", h_A3, "A^3 as p/q")->required();
  hil->add_option("--basket", h_basket, "e.g. \"2,2,3,4\" or \"2,6,10:3\"")->required();
  hil->add_option("--to", h_to, "last multiple (default max(q+3, 12))");
  hil->add_flag("--strict", h_strict, "fail on a non-integral chi instead of printing it");

  // search
  auto* sea = app.add_subcommand("search", "enumerate numerical candidates of index q");
  SearchConfig scfg;
  std::optional<Int> s_dim3;
  std::string s_format = "table", s_cube, s_cap;
  bool s_serial = false, s_no_vanishing = false, s_no_bk = false, s_no_km = false, s_no_cover = false;
  sea->add_option("--q", scfg.q, "Fano index")->required();
  sea->add_option("--require-dim3A-le", s_dim3, "keep rows with dim|3A| <= value");
  sea->add_option("--torsion", scfg.torsion_order, "torsion order n of Cl(X)");
  sea->add_option("--format", s_format, "table, json or csv");
  sea->add_option("--jobs", scfg.jobs, "OpenMP threads (0: default)");
  sea->add_option("--max-cube", s_cube, "bound on q^3 A^3 (p/q)");
  sea->add_option("--basket-cap", s_cap, "bound on sum(r - 1/r) (p/q)");
  sea->add_option("--integrality-span", scfg.integrality_span, "chi checked for m <= span * lcm(12, r(X))");
  sea->add_option("--truncation", scfg.truncation, "Hilbert row length");
  sea->add_flag("--superadditivity", scfg.superadditivity, "require h^0 superadditivity");
  sea->add_flag("--wide-denominator", scfg.wide_denominator, "A^3 denominators lcm(12, r(X))");
  sea->add_flag("--keep-rejections", scfg.keep_rejections, "report rejected candidates");
  sea->add_flag("--no-vanishing", s_no_vanishing, "disable chi(-tA) = 0 for 0 < t < q");
  sea->add_flag("--no-bogomolov-kawamata", s_no_bk, "disable the Bogomolov-Kawamata bound");
  sea->add_flag("--no-kawamata-miyaoka", s_no_km, "disable (-K)^3 <= 3(-K.c2)");
  sea->add_flag("--no-torsion-cover", s_no_cover, "disable the cover test in torsion mode");
  sea->add_flag("--serial", s_serial, "use the serial reference kernel");

  // wps / equivariant
  auto* wps = app.add_subcommand("wps", "invariants and Hilbert series of a weighted hypersurface");
  std::string w_text;
  Int w_to = 10;
  wps->add_option("--hypersurface", w_text, "\"w1,...,wn : d\"")->required();
  wps->add_option("--to", w_to, "last degree");
  auto* equ = app.add_subcommand("equivariant", "T-Hilbert series of a quotient hypersurface");
  std::string e_text;
  Int e_to = 5, e_twist = 0;
  equ->add_option("--hypersurface", e_text, "\"w1,...,wn : d / mu n : c1,...,cn ; cf\"")->required();
  equ->add_option("--to", e_to, "last degree");
  equ->add_option("--twist", e_twist, "report the series for A + cT instead of A");

  // classify-x10
  auto* cls = app.add_subcommand("classify-x10", "normal form of a degree-10 hypersurface in P(1,2,3,4,5)");
  std::string c_eq;
  cls->add_option("--equation", c_eq, "e.g. \"x5^2 + x4^2*x2 + x4*x3^2 + x1^10\"")->required();

  // link
  auto* link = app.add_subcommand("link", "Sarkisov link numerics");
  link->require_subcommand(1);
  auto* lsolve = link->add_subcommand("solve", "solve the main relation for a scenario");
  std::string l_scenario, l_secondary;
  Int l_delta = 0;
  lsolve->add_option("--scenario", l_scenario, "scenario JSON file")->required();
  lsolve->add_option("--secondary", l_secondary, "comma-separated k: extend each solution by s_k, beta_k");
  lsolve->add_option("--divisorial", l_delta, "also list (delta, b, gamma) up to this delta");
  auto* lrep = link->add_subcommand("replay", "replay a recorded case analysis");
  std::string r_id;
  bool r_trace = false, r_list = false;
  lrep->add_option("--id", r_id, "replay id or published-case alias");
  lrep->add_flag("--trace", r_trace, "print every candidate with its fate");
  lrep->add_flag("--list", r_list, "list the available replays");

  // dp
  auto* dp = app.add_subcommand("dp", "del Pezzo surfaces used as conic-bundle bases");
  std::string d_name;
  dp->add_option("--surface", d_name, "P2, P(1,1,2), P(1,2,3) or S_DP5 (default: all)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::ostream& out = std::cout;
  if (*hil) {
    auto parsed = parse_basket(h_basket);
    auto A3 = parse_rational(h_A3);
    Int M = h_to >= 0 ? h_to : default_truncation(h_q);
    std::vector<std::string> cells;
    for (Int m = 0; m <= M; ++m) {
      Rational chi = chi_mA(h_q, A3, parsed.basket, m);
      if (!is_integer(chi) && h_strict)
        throw Error(ErrorKind::precondition, "chi(" + std::to_string(m) + "A) = " + to_string(chi) + " is not an integer");
      cells.push_back(to_string(chi));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? " " : "") << cells[i];
    out << "\n";
  } else if (*sea) {
    auto fmt = parse_format(s_format);
    if (s_cube.size()) scfg.max_anticanonical_cube = parse_rational(s_cube);
    if (s_cap.size()) scfg.basket_cap = parse_rational(s_cap);
    scfg.max_dim3A = s_dim3;
    scfg.vanishing = !s_no_vanishing;
    scfg.bogomolov_kawamata = !s_no_bk;
    scfg.kawamata_miyaoka = !s_no_km;
    scfg.torsion_cover = !s_no_cover;
    auto result = s_serial ? search_q_serial(scfg) : search_q(scfg);
    out << render_result(result, fmt);
  } else if (*wps) {
    auto wh = parse_hypersurface(w_text);
    out << format_hypersurface(wh) << "\n";
    out << "index " << fano_index(wh) << "\n";
    out << "A^3 " << to_string(degree_A3(wh)) << "\n";
    out << "hilbert " << join_ints(hilbert_series(wh, w_to)) << "\n";
  } else if (*equ) {
    auto wh = parse_hypersurface(e_text);
    if (!wh.action) throw UsageError("equivariant needs a '/ mu n : ... ; cf' action");
    out << format_series(retwist(equivariant_series(wh, e_to), e_twist)) << "\n";
  } else if (*cls) {
    auto v = classify_x10(parse_poly5(c_eq));
    out << normal_form_name(v.verdict) << "\n";
    if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
    if (v.verdict == NormalFormCase::case_a_cyclic)
      out << "phi6 contains x3^2: " << (v.phi6_has_x3sq ? "yes" : "no")
          << "\nphi10 contains x3^3*x1: " << (v.phi10_has_x3cube_x1 ? "yes" : "no") << "\n";
    if (v.lambda) out << "lambda: " << to_string(*v.lambda) << "\n";
    if (v.verdict != NormalFormCase::non_terminal) out << "rational: " << (v.rational ? "yes" : "no") << "\n";
  } else if (*lsolve) {
    auto sc = parse_scenario_json(read_file(l_scenario));
    auto ks = parse_int_list(l_secondary, "--secondary");
    auto sols = solve_main(sc);
    Int shown = 0;
    for (const auto& sol : sols) {
      std::vector<LinkSolution> expanded{sol};
      for (Int k : ks) {
        std::vector<LinkSolution> next;
        for (const auto& s : expanded)
          for (const auto& v : extend_secondary(sc, s, k)) {
            auto copy = s;
            copy.secondary[k] = v;
            next.push_back(std::move(copy));
          }
        expanded = std::move(next);
      }
      for (const auto& s : expanded) {
        out << format_solution(s) << "\n";
        ++shown;
        if (l_delta > 0 && s.kind == LinkKind::birational)
          for (const auto& d : divisorial_relations(sc, s, ks, l_delta)) {
            out << "  delta=" << d.delta << " b=" << to_string(d.b);
            for (const auto& [k, g] : d.gamma) out << " gamma" << k << "=" << to_string(g);
            out << "\n";
          }
      }
    }
    if (std::any_of(sols.begin(), sols.end(), [&](const LinkSolution& s) { return at_gorenstein_cap(sc, s); }))
      std::cerr << "warning: solutions reach the Gorenstein discrepancy cap (alpha=" << sc.gorenstein_cap
                << "); raise gorenstein_cap to explore larger values\n";
    out << "SOLUTIONS: " << shown << "\n";
  } else if (*lrep) {
    if (r_list) {
      for (const auto& cfg : replay_library()) out << cfg.id << " (" << cfg.alias << "): " << cfg.summary << "\n";
      return 0;
    }
    if (r_id.empty()) throw UsageError("link replay needs --id (or --list)");
    out << replay(r_id).render(r_trace);
  } else if (*dp) {
    auto show = [&](const DelPezzoSurface& s) {
      out << s.name << " K^2=" << s.K2 << " qW=" << s.qW << " A^2=" << to_string(s.A2) << " sing=" << s.singularities
          << " dims=" << join_ints(s.dims) << "\n";
    };
    if (d_name.empty())
      for (const auto& s : del_pezzo_table()) show(s);
    else
      show(del_pezzo(d_name));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const qfano::Error& e) {
    const bool usage = e.kind() == qfano::ErrorKind::input || e.kind() == qfano::ErrorKind::unknown_id;
    std::cerr << (usage ? "usage error: " : "error: ") << e.what() << "\n";
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
