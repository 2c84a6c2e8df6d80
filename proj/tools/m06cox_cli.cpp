// Command-line surface: class algebra, effectivity certificates,
// restrictions, oracle queries, lifting traces and verification sweeps.
//
// Exit codes: 0 success / verified, 1 mathematical negative (not effective,
// criterion failed, sweep failures), 2 usage or I/O errors.

#include "m06cox/m06cox.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <thread>

using namespace m06cox;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CurveClassM parse_curve(const std::string& s) {
  if (s == "l") return curve_l();
  if (s == "C") return curve_C();
  if (s == "B") return curve_B();
  if (s == "Lx") return curve_L(Alpha::x);
  if (s == "Ly") return curve_L(Alpha::y);
  if (s == "Lz") return curve_L(Alpha::z);
  auto digit = [](char c) { return c >= '1' && c <= '5'; };
  if (s.size() == 2 && s[0] == 'e' && digit(s[1])) return curve_e(s[1] - '0');
  if (s.size() == 3 && s[0] == 'e' && digit(s[1]) && digit(s[2]))
    return curve_e_pair(s[1] - '0', s[2] - '0');
  if (s.size() == 2 && s[0] == 'B' && digit(s[1])) return curve_B_pt(s[1] - '0');
  if (s.size() == 2 && s[0] == 'C' && digit(s[1])) return curve_C_pt(s[1] - '0');
  if (s.size() == 3 && s[0] == 'C' && digit(s[1]) && digit(s[2]))
    return curve_C_pair(s[1] - '0', s[2] - '0');
  if (s.size() == 4 && s[0] == 'C' && s[2] == ';' && digit(s[1]) && digit(s[3]))
    return curve_C_sep(s[1] - '0', s[3] - '0');
  throw UsageError("unknown curve name: " + s);
}

DivisorClassM parse_class_token(const std::string& s) {
  if (const auto g = parse_generator(s)) return generator_class(*g);
  try {
    return parse_divisor(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError("cannot parse class '" + s + "': " + e.what());
  }
}

int cmd_class(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw UsageError("class: empty expression");
  DivisorClassM acc = parse_class_token(tokens[0]);
  std::size_t i = 1;
  while (i < tokens.size()) {
    if (tokens[i] == "pair") {
      if (i + 1 >= tokens.size()) throw UsageError("class: 'pair' needs a curve");
      std::cout << dot(acc, parse_curve(tokens[i + 1])) << "\n";
      return 0;
    }
    if (tokens[i] == "+" || tokens[i] == "-") {
      if (i + 1 >= tokens.size()) throw UsageError("class: dangling operator");
      const DivisorClassM rhs = parse_class_token(tokens[i + 1]);
      if (tokens[i] == "+")
        acc += rhs;
      else
        acc -= rhs;
      i += 2;
      continue;
    }
    throw UsageError("class: unexpected token '" + tokens[i] + "'");
  }
  std::cout << to_string(acc) << "\n";
  return 0;
}

XClass parse_xclass(const std::string& s) {
  const auto p1 = s.find(';');
  const auto p2 = s.find(';', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw UsageError("x-class needs 'd; m1,..,m4; m12,m13,m14,m23,m24,m34'");
  XClass x;
  try {
    const auto ds = detail::parse_int_list(s.substr(0, p1));
    const auto ms = detail::parse_int_list(s.substr(p1 + 1, p2 - p1 - 1));
    const auto ls = detail::parse_int_list(s.substr(p2 + 1));
    if (ds.size() != 1 || ms.size() != 4 || ls.size() != 6) throw UsageError("x-class needs 1+4+6 integers");
    x.d = ds[0];
    for (int i = 0; i < 4; ++i) x.m[i] = ms[i];
    for (int i = 0; i < 6; ++i) x.mline[i] = ls[i];
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad x-class: ") + e.what());
  }
  return x;
}

Surface4Class parse_s4(const std::string& s) {
  const auto p1 = s.find(';');
  if (p1 == std::string::npos) throw UsageError("surface class needs 'd; m1,m2,m3,m4'");
  Surface4Class out;
  try {
    const auto ds = detail::parse_int_list(s.substr(0, p1));
    const auto ms = detail::parse_int_list(s.substr(p1 + 1));
    if (ds.size() != 1 || ms.size() != 4) throw UsageError("surface class needs 1+4 integers");
    out.d = ds[0];
    for (int i = 0; i < 4; ++i) out.m[i] = ms[i];
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad surface class: ") + e.what());
  }
  return out;
}

template <class ClassT>
json cert_json(const EffCertificate<ClassT>& cert) {
  json j;
  j["effective"] = cert.effective;
  if (cert.effective) {
    json parts = json::array();
    for (const auto& p : cert.parts) parts.push_back({{"name", p.name}, {"mult", p.mult.str()}});
    j["decomposition"] = parts;
  } else {
    j["witness"] = cert.witness;
    j["slack"] = cert.slack.str();
  }
  return j;
}

template <class ClassT>
void print_cert(const EffCertificate<ClassT>& cert, bool records) {
  if (records) {
    std::cout << cert_json(cert).dump() << "\n";
    return;
  }
  if (cert.effective) {
    std::cout << "Effective:";
    if (cert.parts.empty()) std::cout << " (empty sum)";
    for (const auto& p : cert.parts) {
      std::cout << " " << p.name;
      if (p.mult != 1) std::cout << "^" << p.mult;
    }
    std::cout << "\n";
  } else {
    std::cout << "NotEffective: " << cert.witness << " violated (slack " << cert.slack << ")\n";
  }
}

ExpY parse_exponents(const std::string& s) {
  ExpY e;
  std::string token;
  std::istringstream is(s);
  while (std::getline(is, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("exponent entries look like a12=2");
    const std::string key = token.substr(0, eq);
    Int val;
    try {
      val = Int(token.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad exponent value in '" + token + "'");
    }
    if (val < 0) throw UsageError("exponents are nonnegative");
    auto alpha_of = [](char c) {
      return c == 'x' ? Alpha::x : c == 'y' ? Alpha::y : Alpha::z;
    };
    if (key.size() == 3 && key[0] == 'a')
      e.a_at(key[1] - '0', key[2] - '0') = val;
    else if (key.size() == 2 && key[0] == 'l' && key[1] >= '1' && key[1] <= '4')
      e.l[key[1] - '1'] = val;
    else if (key.size() == 2 && key[0] == 'c' && (key[1] == 'x' || key[1] == 'y' || key[1] == 'z'))
      e.c_of(alpha_of(key[1])) = val;
    else if (key.size() == 2 && key[0] == 'l' && (key[1] == 'x' || key[1] == 'y' || key[1] == 'z'))
      e.l_of(alpha_of(key[1])) = val;
    else
      throw UsageError("unknown exponent key '" + key + "'");
  }
  return e;
}

json exp_json(const ExpE5& e) {
  json a = json::object(), l = json::object();
  for (int t = 0; t < 6; ++t) {
    const auto& p = pairs4()[t];
    a[std::to_string(p[0]) + std::to_string(p[1])] = e.a[t].str();
  }
  for (int i = 0; i < 4; ++i) l[std::to_string(i + 1)] = e.l[i].str();
  return {{"a", a}, {"l", l}};
}

json exp_json(const ExpY& e) {
  json a = json::object(), l = json::object(), c = json::object(), lx = json::object();
  for (int t = 0; t < 6; ++t) {
    const auto& p = pairs4()[t];
    a[std::to_string(p[0]) + std::to_string(p[1])] = e.a[t].str();
  }
  for (int i = 0; i < 4; ++i) l[std::to_string(i + 1)] = e.l[i].str();
  for (Alpha al : {Alpha::x, Alpha::y, Alpha::z}) {
    c[alpha_name(al)] = e.c_of(al).str();
    lx[alpha_name(al)] = e.l_of(al).str();
  }
  return {{"a", a}, {"l", l}, {"c", c}, {"lxyz", lx}};
}

template <class E>
int run_lift(const DivisorClassM& D, const E& e, bool records) {
  const bool is_y = std::is_same_v<E, ExpY>;
  CriterionReport crit;
  if constexpr (std::is_same_v<E, ExpY>)
    crit = lift_II_criterion(D, e);
  else
    crit = lift_I_criterion(D, e);

  json out;
  out["case"] = is_y ? "II" : "I";
  out["criterion"] = crit.ok;
  SectionExpr<E> expr;
  if (crit.ok) {
    expr.terms.push_back({Rat(1), e});
    out["rewriting"] = "not needed";
  } else {
    if constexpr (std::is_same_v<E, ExpY>)
      expr = rewrite_II(D, e);
    else
      expr = rewrite_I(D, e);
    out["rewriting"] = "applied";
  }
  json terms = json::array();
  for (const auto& t : expr.terms) {
    LiftResult lr;
    if constexpr (std::is_same_v<E, ExpY>)
      lr = delta_II(D, t.exp);
    else
      lr = delta_I(D, t.exp);
    const auto cert = x_decompose(lr.delta);
    json jt;
    jt["coeff"] = rat_str(t.coeff);
    jt["exp"] = exp_json(t.exp);
    jt["monomial"] = monomial_name(lr.monomial);
    jt["delta"] = cert_json(cert);
    terms.push_back(jt);
  }
  out["terms"] = terms;
  if (records) {
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "case " << out["case"].get<std::string>() << ", criterion "
              << (crit.ok ? "holds" : "fails") << ", rewriting "
              << out["rewriting"].get<std::string>() << ", " << expr.terms.size() << " term(s)\n";
    for (const auto& jt : terms) {
      std::cout << "  coeff " << jt["coeff"].get<std::string>() << "  lift "
                << jt["monomial"].get<std::string>() << "  delta ";
      if (jt["delta"]["effective"].get<bool>()) {
        std::cout << "effective:";
        for (const auto& p : jt["delta"]["decomposition"]) {
          std::cout << " " << p["name"].get<std::string>();
          if (p["mult"].get<std::string>() != "1") std::cout << "^" << p["mult"].get<std::string>();
        }
      } else {
        std::cout << "NOT effective (" << jt["delta"]["witness"].get<std::string>() << ")";
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(int max_total, const std::vector<long>& box, int jobs, const std::string& out_path,
               bool records) {
  if (box.empty() && max_total < 0) throw UsageError("--max-total must be nonnegative");
  // collect the classes
  std::vector<DivisorClassM> classes;
  {
    std::set<std::string> seen;
    if (!box.empty()) {
      if (box.size() != 3) throw UsageError("--box needs d_max,m_max,mline_max");
      const long dmax = box[0], mmax = box[1], lmax = box[2];
      if (dmax < 0 || mmax < 0 || lmax < 0) throw UsageError("--box bounds must be nonnegative");
      std::function<void(int, DivisorClassM&)> rec = [&](int slot, DivisorClassM& acc) {
        if (slot == 15) {
          if (seen.insert(to_string(acc)).second) classes.push_back(acc);
          return;
        }
        const long hi = slot < 5 ? mmax : lmax;
        for (long v = 0; v <= hi; ++v) {
          if (slot < 5)
            acc.m[slot] = v;
          else
            acc.mline[slot - 5] = v;
          rec(slot + 1, acc);
        }
      };
      for (long d = 0; d <= dmax; ++d) {
        DivisorClassM acc;
        acc.d = d;
        rec(0, acc);
      }
    } else {
      const auto& gens = all_generators();
      std::function<void(std::size_t, int, DivisorClassM&)> rec = [&](std::size_t from, int left,
                                                                      DivisorClassM& acc) {
        if (seen.insert(to_string(acc)).second) classes.push_back(acc);
        if (left == 0) return;
        for (std::size_t g = from; g < gens.size(); ++g) {
          acc += generator_class(gens[g]);
          rec(g, left - 1, acc);
          acc -= generator_class(gens[g]);
        }
      };
      DivisorClassM acc;
      rec(0, max_total, acc);
    }
  }

  std::ofstream file;
  std::ostream* sink = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << "\n";
      return 2;
    }
    sink = &file;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<long> failures{0};
  std::mutex write_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= classes.size()) return;
      const auto t0 = std::chrono::steady_clock::now();
      const VerifyReport rep = verify_theorem(classes[i]);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
              .count();
      if (!rep.pass) failures.fetch_add(1);
      std::lock_guard<std::mutex> lock(write_mutex);
      if (records) {
        json j{{"class", to_string(rep.cls)},
               {"h0", rep.h0.str()},
               {"monomials", rep.n_monomials},
               {"rank", rep.rank},
               {"pass", rep.pass},
               {"ms", ms}};
        (*sink) << j.dump() << "\n";
      } else {
        (*sink) << (rep.pass ? "pass" : "FAIL") << "  h0=" << rep.h0 << " rank=" << rep.rank
                << " monomials=" << rep.n_monomials << "  [" << to_string(rep.cls) << "]\n";
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::max(1, jobs);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  const long fails = failures.load();
  if (records) {
    json j{{"summary", true},
           {"total", classes.size()},
           {"pass", static_cast<long>(classes.size()) - fails},
           {"fail", fails}};
    (*sink) << j.dump() << "\n";
  } else {
    (*sink) << "total " << classes.size() << ", pass " << classes.size() - static_cast<std::size_t>(fails)
            << ", fail " << fails << "\n";
  }
  if (sink == &file && !file) {
    std::cerr << "write failure on " << out_path << "\n";
    return 2;
  }
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact divisor-class computations on the five-point blow-up model"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  std::string format = "text";
  app.add_option("--format", format)->check(CLI::IsMember({"text", "records"}));

  auto* c_class = app.add_subcommand("class", "class algebra and pairings");
  std::vector<std::string> class_tokens;
  c_class->add_option("expr", class_tokens, "e.g.  Q12.34 pair C   or   L123 + E1");

  auto* c_certify = app.add_subcommand("certify", "effectivity certificates");
  std::string opt_x, opt_s4, opt_s4q, opt_m;
  c_certify->add_option("--x", opt_x, "class on the four-point threefold");
  c_certify->add_option("--s4", opt_s4, "class on the four-point plane blow-up");
  c_certify->add_option("--s4q", opt_s4q, "same, avoiding the distinguished node");
  c_certify->add_option("--m", opt_m, "full class: run the restriction inequalities");

  auto* c_restrict = app.add_subcommand("restrict", "restrict a class to a generator divisor");
  std::string restrict_to, restrict_cls;
  c_restrict->add_option("--to", restrict_to)->required();
  c_restrict->add_option("class", restrict_cls)->required();

  auto* c_h0 = app.add_subcommand("h0", "exact section-space dimensions");
  std::string h0_surface_cfg, h0_cls;
  bool h0_on_x = false;
  c_h0->add_option("--surface", h0_surface_cfg)->check(CLI::IsMember({"bl4", "kv6", "y7"}));
  c_h0->add_flag("--x", h0_on_x, "interpret as a class on the four-point threefold");
  c_h0->add_option("class", h0_cls)->required();

  auto* c_mono = app.add_subcommand("monomials", "distinguished monomials of a class");
  std::string mono_cls;
  c_mono->add_option("class", mono_cls)->required();

  auto* c_lift = app.add_subcommand("lift", "lifting trace for exponent data");
  std::string lift_cls, lift_exp;
  bool lift_reduce = false;
  c_lift->add_option("class", lift_cls)->required();
  c_lift->add_option("--exp", lift_exp, "a12=1,l1=0,cx=0,lx=0,...");
  c_lift->add_flag("--reduce", lift_reduce, "run the outer reduction loop instead");

  auto* c_verify = app.add_subcommand("verify", "degree-by-degree generation sweep");
  int max_total = 2;
  std::vector<long> box;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  std::string out_path;
  c_verify->add_option("--max-total", max_total, "generator-sum size bound (default 2)");
  c_verify->add_option("--box", box)->delimiter(',');
  c_verify->add_option("--jobs", jobs);
  c_verify->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") return app.exit(e);
    app.exit(e);
    return 2;
  }

  const bool records = format == "records";
  try {
    if (c_class->parsed()) return cmd_class(class_tokens);
    if (c_certify->parsed()) {
      if (!opt_x.empty()) {
        const auto cert = x_decompose(parse_xclass(opt_x));
        print_cert(cert, records);
        return cert.effective ? 0 : 1;
      }
      if (!opt_s4.empty()) {
        const auto cert = surface4_effective(parse_s4(opt_s4));
        print_cert(cert, records);
        return cert.effective ? 0 : 1;
      }
      if (!opt_s4q.empty()) {
        const auto cert = surface4_avoid_q(parse_s4(opt_s4q));
        print_cert(cert, records);
        return cert.effective ? 0 : 1;
      }
      if (!opt_m.empty()) {
        const auto slacks = necessary_inequalities(parse_class_token(opt_m));
        bool pass = true;
        for (const auto& s : slacks) {
          if (s.value < 0) pass = false;
          if (records) {
            std::cout << json{{"name", s.name}, {"slack", s.value.str()}}.dump() << "\n";
          } else if (s.value < 0) {
            std::cout << "violated: " << s.name << " (slack " << s.value << ")\n";
          }
        }
        std::cout << (pass ? "all restriction inequalities hold\n" : "restriction inequalities fail\n");
        return pass ? 0 : 1;
      }
      throw UsageError("certify: choose one of --x, --s4, --s4q, --m");
    }
    if (c_restrict->parsed()) {
      const auto g = parse_generator(restrict_to);
      if (!g) throw UsageError("unknown generator: " + restrict_to);
      const auto D = parse_class_token(restrict_cls);
      switch (g->kind) {
        case GeneratorId::Kind::ExcPoint: {
          const auto s = restrict_to_Ei(D, g->idx[0]);
          std::cout << s.d << "; " << s.m[0] << "," << s.m[1] << "," << s.m[2] << "," << s.m[3] << "\n";
          break;
        }
        case GeneratorId::Kind::ExcLine: {
          const auto b = restrict_to_Eij(D, g->idx[0], g->idx[1]);
          std::cout << "(" << b.a << ", " << b.b << ")\n";
          break;
        }
        case GeneratorId::Kind::Plane: {
          const auto s = restrict_to_plane(D, g->idx[0], g->idx[1], g->idx[2]);
          std::cout << s.d << "; " << s.m[0] << "," << s.m[1] << "," << s.m[2] << "," << s.m[3]
                    << "  (last entry: the node)\n";
          break;
        }
        case GeneratorId::Kind::KV: {
          const auto s = restrict_to_KV(D, *g);
          std::cout << s.d << "; " << s.m[0] << "," << s.m[1] << "," << s.m[2] << "," << s.m[3]
                    << "; x:" << s.mx << ",y:" << s.my << "\n";
          break;
        }
      }
      return 0;
    }
    if (c_h0->parsed()) {
      if (h0_on_x) {
        std::cout << h0_x(parse_xclass(h0_cls)) << "\n";
        return 0;
      }
      if (!h0_surface_cfg.empty()) {
        // "d; m1,..,m4[; mx,my,mz]"
        SurfaceYClass s;
        const auto p1 = h0_cls.find(';');
        const auto p2 = h0_cls.find(';', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos) throw UsageError("surface class needs at least 'd; m1,..,m4'");
        const auto s4 = parse_s4(p2 == std::string::npos ? h0_cls : h0_cls.substr(0, p2));
        s.d = s4.d;
        s.m = s4.m;
        if (p2 != std::string::npos) {
          const auto diag = detail::parse_int_list(h0_cls.substr(p2 + 1));
          if (diag.size() != 3) throw UsageError("diagonal block needs mx,my,mz");
          s.mx = diag[0];
          s.my = diag[1];
          s.mz = diag[2];
        }
        const SurfaceConfig cfg = h0_surface_cfg == "bl4" ? SurfaceConfig::Bl4
                                  : h0_surface_cfg == "kv6" ? SurfaceConfig::KV6
                                                            : SurfaceConfig::Y7;
        std::cout << h0_surface(cfg, s) << "\n";
        return 0;
      }
      std::cout << h0_p3(parse_class_token(h0_cls)) << "\n";
      return 0;
    }
    if (c_mono->parsed()) {
      const auto monos = enumerate_monomials(parse_class_token(mono_cls));
      if (records) {
        for (const auto& m : monos) std::cout << json{{"monomial", monomial_name(m)}}.dump() << "\n";
        std::cout << json{{"count", monos.size()}}.dump() << "\n";
      } else {
        for (const auto& m : monos) std::cout << monomial_name(m) << "\n";
        std::cout << monos.size() << " monomial(s)\n";
      }
      return 0;
    }
    if (c_lift->parsed()) {
      const auto D = parse_class_token(lift_cls);
      if (lift_reduce) {
        const auto trace = reduce_loop(D);
        if (records) {
          json steps = json::array();
          for (const auto& s : trace)
            steps.push_back({{"subtract", generator_name(s.gen)}, {"class", to_string(s.after)}});
          std::cout << json{{"trace", steps}}.dump() << "\n";
        } else {
          for (const auto& s : trace)
            std::cout << "- " << generator_name(s.gen) << "  ->  " << to_string(s.after) << "\n";
          std::cout << trace.size() << " step(s)\n";
        }
        return 0;
      }
      if (lift_exp.empty()) throw UsageError("lift: provide --exp or --reduce");
      const ExpY ey = parse_exponents(lift_exp);
      if (case_split(D) == CaseSplit::CaseI) {
        if (ey.c[0] != 0 || ey.c[1] != 0 || ey.c[2] != 0 || ey.lxyz[0] != 0 || ey.lxyz[1] != 0 ||
            ey.lxyz[2] != 0)
          throw UsageError("the class pairs nonnegatively with every transversal; only a/l exponents apply");
        ExpE5 e5;
        e5.a = ey.a;
        e5.l = ey.l;
        if (!is_member_e5(D, e5)) {
          std::cerr << "exponents violate the membership equations (plane case)\n";
          return 1;
        }
        return run_lift(D, e5, records);
      }
      if (!is_member_y(D, ey)) {
        std::cerr << "exponents violate the membership equations (Y case)\n";
        return 1;
      }
      return run_lift(D, ey, records);
    }
    if (c_verify->parsed()) return cmd_verify(max_total, box, jobs, out_path, records);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
