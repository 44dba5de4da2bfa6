// hess: command-line front end for the hessmap library.
// Exit codes: 0 success, 1 domain error (e.g. vanishing Hessian), 2 usage error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hessmap/binary_forms.hpp"
#include "hessmap/ff_lab.hpp"
#include "hessmap/hessian.hpp"
#include "hessmap/parser.hpp"
#include "hessmap/ternary_cubics.hpp"
#include "hessmap/waring.hpp"

using nlohmann::json;
using namespace hessmap;

namespace {

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

std::vector<std::vector<Rational>> parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_rational_list(row));
  if (rows.empty()) throw usage_error("empty matrix");
  return rows;
}

/// "key: value" lines; nested objects use dotted keys, arrays are comma separated.
void render_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    if (j.empty()) os << prefix << ":\n";
    return;
  }
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  os << prefix << ": ";
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? "," : "") << scalar(j[i]);
  } else {
    os << scalar(j);
  }
  os << "\n";
}

struct Output {
  bool text = false;
  void emit(const json& j) const {
    if (text)
      render_text(j, "", std::cout);
    else
      std::cout << j.dump() << "\n";
  }
};

json special_fiber_json(const SpecialFiberReport& r) {
  json forced = json::array();
  for (const auto& s : r.forced)
    forced.push_back({{"p", s.p}, {"coefficient", s.coefficient.get_str()}, {"variables", s.variables}});
  return {{"d", r.d},
          {"target", r.target},
          {"unique", r.unique},
          {"curve_branch_ok", r.curve_branch_ok},
          {"fiber_points", r.fiber_points},
          {"forced", forced},
          {"jacobian_rank", r.jacobian_rank},
          {"trace", r.trace}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hessian map toolkit: exact Hessians, binary forms, plane cubics, Waring forms, finite-field fibres"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--text", out.text, "human-readable output instead of JSON");

  std::function<void()> action;
  std::size_t nvars = 0;
  std::string poly_text, a_text, t_text, x_text, y_text, L_text, c_text, map_id, out_path;
  unsigned d = 0, degree = 4, workers = 1;
  std::optional<unsigned> target;
  std::uint32_t prime = 0;
  std::uint64_t seed = kInvariantSeed, max_points = EnumerationOptions{}.max_points;

  auto* eval = app.add_subcommand("eval", "hessian of a homogeneous form");
  eval->add_option("--nvars", nvars, "number of variables")->required();
  eval->add_option("--poly", poly_text, "polynomial in x0, x1, ...")->required();
  eval->add_option("--prime", prime, "work over F_p instead of Q");
  eval->callback([&] {
    action = [&] {
      auto report = [&](auto f) {
        auto h = hessian(f);
        if (h.vanished) throw vanishing_hessian("hessian vanishes identically");
        out.emit({{"hessian", print_poly(h.hessian)}});
      };
      if (prime)
        report(parse_poly(poly_text, nvars, PrimeField(prime)));
      else
        report(parse_poly(poly_text, nvars));
    };
  });

  auto* cone = app.add_subcommand("cone", "cone test by the rank of the polar map");
  cone->add_option("--nvars", nvars)->required();
  cone->add_option("--poly", poly_text)->required();
  cone->callback([&] {
    action = [&] {
      auto f = parse_poly(poly_text, nvars);
      auto c = cone_test(f);
      out.emit({{"cone", c.is_cone}, {"polar_rank", c.polar_rank}, {"hessian_vanishes", hessian(f).vanished}});
    };
  });

  auto* drank = app.add_subcommand("diff-rank", "rank of the differential of the Hessian map at f");
  drank->add_option("--nvars", nvars)->required();
  drank->add_option("--poly", poly_text)->required();
  drank->callback([&] {
    action = [&] {
      auto dm = differential_matrix(parse_poly(poly_text, nvars));
      auto rk = rank(dm.matrix);
      out.emit({{"rank", rk}, {"kernel", dm.col_basis.size() - rk}, {"source_dim", dm.col_basis.size()}});
    };
  });

  auto* bq = app.add_subcommand("binary-q", "coefficients Q_p of hess(f) for f = sum a_i C(d,i) x0^(d-i) x1^i");
  bq->add_option("--a", a_text, "a_0,...,a_d")->required();
  bq->callback([&] {
    action = [&] {
      BinaryACoords f(parse_rational_list(a_text));
      auto q = qp_coefficients(f);
      out.emit({{"d", f.d},
                {"q", rationals(q)},
                {"scale", qp_scale(f.d).get_str()},
                {"cone", is_cone_point(f)},
                {"hessian", print_poly(hessian(f.to_poly()).hessian)}});
    };
  });

  auto* bf = app.add_subcommand("binary-fiber", "elimination check of the fibre over x0^(d-k) x1^k");
  bf->add_option("--d", d)->required();
  bf->add_option("--target", target, "k (default d-2, or 5 when d = 8)");
  bf->callback([&] { action = [&] { out.emit(special_fiber_json(special_fiber_verify(d, target))); }; });

  auto* chord = app.add_subcommand("chord", "hessian image of the chord (or tangent) of the rational normal curve");
  chord->add_option("--d", d)->required();
  chord->add_option("--x", x_text, "point u,v of P^1")->required();
  chord->add_option("--y", y_text, "second point; omitted or equal gives the tangent");
  chord->callback([&] {
    action = [&] {
      auto x = ProjParam::parse(x_text);
      if (y_text.empty() || ProjParam::parse(y_text) == x)
        out.emit({{"kind", "tangent"}, {"image", print_poly(tangent_image(x, d))}});
      else
        out.emit({{"kind", "chord"}, {"image", print_poly(chord_image(x, ProjParam::parse(y_text), d))}});
    };
  });

  auto* qd = app.add_subcommand("quadric-dims", "quadrics through the rational normal curve and its tangents");
  qd->add_option("--d", d)->required();
  qd->callback([&] {
    action = [&] {
      auto q = quadric_space_dims(d);
      out.emit({{"through_curve", q.through_curve},
                {"through_tangents", q.through_tangents},
                {"difference", q.difference}});
    };
  });

  auto* cp = app.add_subcommand("cubic-pencil", "Hessian parameter map on x0^3+x1^3+x2^3-3t x0x1x2");
  cp->add_option("--t", t_text, "parameter u,v (t = v/u) or t")->required();
  cp->callback([&] {
    action = [&] {
      auto t = ProjParam::parse(t_text);
      auto s = pencil_hessian_param(t);
      out.emit({{"s", s.str()}, {"fixed", s == t}});
    };
  });

  auto* cc = app.add_subcommand("cubic-classify", "Hessians of singular cubics, or of a given cubic");
  cc->add_option("--poly", poly_text, "ternary cubic; omitted runs the canonical suite");
  cc->callback([&] {
    action = [&] {
      if (poly_text.empty()) {
        json cases = json::array();
        for (const auto& c : singular_hessian_classification_suite())
          cases.push_back({{"name", c.name}, {"cubic", print_poly(c.cubic)}, {"hessian", print_poly(c.hessian)},
                           {"holds", c.holds}});
        out.emit({{"cases", cases}});
        return;
      }
      auto f = parse_poly(poly_text, 3);
      auto h = hessian(f);
      if (h.vanished) {
        out.emit({{"hessian", "0"}, {"gn_tangent_codim", gn_tangent_codim(f)}});
        return;
      }
      auto lambda = double_hessian_check(f);
      out.emit({{"hessian", print_poly(h.hessian)},
                {"self_hessian", is_proportional(h.hessian, f).has_value()},
                {"double_hessian", lambda ? json(lambda->get_str()) : json(nullptr)}});
    };
  });

  auto* inv = app.add_subcommand("invariant", "invariant of ternary cubics by interpolation (coefficients x0..x9)");
  inv->add_option("--degree", degree, "4 (S) or 6 (T)");
  inv->add_option("--seed", seed);
  inv->add_option("--poly", poly_text, "evaluate at this cubic");
  inv->callback([&] {
    action = [&] {
      auto basis = invariant_interpolation(degree, seed);
      const auto& S = basis.front();
      json j = {{"degree", S.degree},
                {"seed", S.seed},
                {"witnesses", S.witnesses},
                {"dimension", basis.size()},
                {"terms", S.poly.size()},
                {"invariant", print_poly(S.poly)}};
      if (!poly_text.empty()) j["value"] = S(parse_poly(poly_text, 3)).get_str();
      out.emit(j);
    };
  });

  auto* aron = app.add_subcommand("aronhold", "Aronhold map on a cubic, or its action on the Hesse pencil");
  aron->add_option("--poly", poly_text, "ternary cubic");
  aron->add_option("--t", t_text, "pencil parameter u,v");
  aron->callback([&] {
    action = [&] {
      if (poly_text.empty() == t_text.empty()) throw usage_error("give exactly one of --poly and --t");
      if (!t_text.empty()) {
        out.emit({{"action", aronhold_pencil_action(ProjParam::parse(t_text)).str()}});
        return;
      }
      auto f = parse_poly(poly_text, 3);
      out.emit({{"image", print_poly(projective_normalize(aronhold_map(f)))}, {"S", aronhold_invariant()(f).get_str()}});
    };
  });

  auto waring_input = [&](CLI::App* sub, bool need_c) {
    sub->add_option("--L", L_text, "linear forms as rows, e.g. \"1,0,0;0,1,0;0,0,1;1,1,1\"")->required();
    sub->add_option("--d", d)->required();
    if (need_c) sub->add_option("--c", c_text, "coefficients c_0,...,c_{r+1}")->required();
  };
  auto make_waring = [&] {
    auto L = parse_matrix(L_text);
    if (L.size() < 3) throw usage_error("need at least three linear forms");
    return WaringForm(static_cast<unsigned>(L.size() - 2), d, L, parse_rational_list(c_text));
  };

  auto* wh = app.add_subcommand("waring-hessian", "closed-form Hessian of sum c_i l_i^d");
  waring_input(wh, true);
  wh->callback([&] {
    action = [&] {
      auto w = make_waring();
      auto lambda = verify_prop_hessian(w);
      out.emit({{"closed_form", print_poly(closed_form_hessian(w))},
                {"lambda", lambda.get_str()},
                {"weights", rationals(minor_weights(w))}});
    };
  });

  auto* wr = app.add_subcommand("waring-recover", "recover c from a Hessian and the linear forms");
  waring_input(wr, false);
  wr->add_option("--poly", poly_text, "the Hessian H; omitted uses hess(sum c_i l_i^d) with --c");
  wr->add_option("--c", c_text, "coefficients used to build H when --poly is omitted");
  wr->callback([&] {
    action = [&] {
      auto L = parse_matrix(L_text);
      if (L.empty() || L.front().empty()) throw usage_error("empty linear forms");
      QPoly H(L.front().size());
      if (!poly_text.empty())
        H = parse_poly(poly_text, L.front().size());
      else if (!c_text.empty())
        H = hess(make_waring().form());
      else
        throw usage_error("give --poly or --c");
      out.emit({{"c", rationals(recover_coefficients(H, L, d))}});
    };
  });

  auto* wm = app.add_subcommand("waring-mult", "vanishing orders of hess(f) along l_i = l_j (= l_k) = 0");
  waring_input(wm, true);
  wm->callback([&] {
    action = [&] {
      auto prof = multiplicity_profile(make_waring());
      auto rows = [](const std::vector<SubspaceOrder>& v) {
        json a = json::array();
        for (const auto& s : v) a.push_back({{"forms", s.indices}, {"order", s.order}});
        return a;
      };
      out.emit({{"pairs", rows(prof.pairs)}, {"triples", rows(prof.triples)}});
    };
  });

  auto* ff = app.add_subcommand("ff", "fibre statistics of h41 or h32 over F_p");
  ff->add_option("--map", map_id, "h41 or h32")->required()->check(CLI::IsMember({"h41", "h32"}));
  ff->add_option("--prime", prime, "odd prime")->required();
  ff->add_option("--workers", workers, "worker threads");
  ff->add_option("--max-points", max_points, "memory budget in domain points");
  ff->add_option("--out", out_path, "write the report here instead of stdout");
  ff->callback([&] {
    action = [&] {
      auto rep = to_json(enumerate_fibers(map_id, prime, {workers, max_points}));
      if (out_path.empty()) {
        out.emit(rep);
        return;
      }
      std::ofstream os(out_path);
      if (!os) throw usage_error("cannot write " + out_path);
      os << rep.dump(2) << "\n";
      out.emit({{"written", out_path}, {"domain", rep["domain"]}, {"unexplained", rep["unexplained"]}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
  } catch (const parse_error& e) {
    std::cerr << "hess: " << e.what() << "\n";
    std::cout << json{{"error", "parse_error"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const vanishing_hessian& e) {
    std::cerr << "hess: " << e.what() << "\n";
    std::cout << json{{"error", "vanishing_hessian"}}.dump() << "\n";
    return 1;
  } catch (const not_in_span& e) {
    std::cerr << "hess: " << e.what() << "\n";
    std::cout << json{{"error", "not_in_span"}, {"residual", print_poly(e.residual())}}.dump() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "hess: " << e.what() << "\n";
    std::cout << json{{"error", "domain_error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hess: " << e.what() << "\n";
    std::cout << json{{"error", "usage_error"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
