// omega-forge: deciders, constructors and analyzers for preimage
// cardinality spectra of continuous functions on [0, 1].

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "omegaforge/construct.hpp"
#include "omegaforge/json_io.hpp"
#include "omegaforge/oracle.hpp"
#include "omegaforge/polyreal.hpp"
#include "omegaforge/sweep.hpp"

using namespace omegaforge;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

long enumeration_budget() {
  const char* env = std::getenv("OMEGA_FORGE_BUDGET");
  if (!env) return 50000000;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v <= 0) return 50000000;
  return v;
}

CardinalitySpec parse_spec_or_exit(const std::string& text) {
  std::string err;
  auto s = parse_spec(text, &err);
  if (!s) {
    std::cerr << "error: bad set '" << text << "': " << err << "\n";
    std::exit(kExitError);
  }
  return *s;
}

// Fixed-precision decimal rendering of an exact rational, for SVG output.
std::string fixed_decimal(const Rat& q, int digits = 4) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rat scaled = q * Rat(scale);
  Int rounded = floor_int(scaled + make_rat(1, 2));
  bool neg = rounded < 0;
  Int a = abs(rounded);
  Int whole = a / scale, frac = a % scale;
  std::string fs = frac.get_str();
  while (static_cast<int>(fs.size()) < digits) fs.insert(fs.begin(), '0');
  std::string out = (neg ? "-" : "") + whole.get_str() + "." + fs;
  return out;
}

void write_svg(const std::vector<std::pair<Rat, Rat>>& pts,
               const std::string& path, const std::string& caption) {
  if (pts.size() < 2) throw std::runtime_error("nothing to plot");
  Rat xmin = pts.front().first, xmax = pts.back().first;
  Rat ymin = pts.front().second, ymax = pts.front().second;
  for (const auto& [x, y] : pts) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (ymin == ymax) {
    ymin -= 1;
    ymax += 1;
  }
  const long W = 640, H = 480, M = 40;
  auto px = [&](const Rat& x) -> Rat {
    return Rat(M) + (x - xmin) / (xmax - xmin) * Rat(W - 2 * M);
  };
  auto py = [&](const Rat& y) -> Rat {
    return Rat(H - M) - (y - ymin) / (ymax - ymin) * Rat(H - 2 * M);
  };
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H
     << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M
     << "\" y2=\"" << H - M << "\" stroke=\"#999\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M
     << "\" y2=\"" << H - M << "\" stroke=\"#999\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) os << " ";
    os << fixed_decimal(px(pts[i].first)) << ","
       << fixed_decimal(py(pts[i].second));
  }
  os << "\"/>\n";
  if (!caption.empty())
    os << "<text x=\"" << M << "\" y=\"" << M - 12
       << "\" font-family=\"monospace\" font-size=\"13\">" << caption
       << "</text>\n";
  os << "</svg>\n";
}

std::set<long> profile_counts(const OmegaProfile& prof) {
  return prof.count_set();
}

std::string counts_text(const OmegaProfile& prof) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (long c : profile_counts(prof)) {
    if (!first) os << ",";
    os << c;
    first = false;
  }
  if (prof.has_infinite()) os << (first ? "inf" : ",inf");
  os << "}";
  return os.str();
}

int cmd_decide(const std::string& spec_text, bool continuous, bool analytic,
               bool as_json) {
  CardinalitySpec s = parse_spec_or_exit(spec_text);
  Json out;
  int code = kExitAccept;
  if (continuous) {
    bool ok = decide_continuous(s);
    out["mode"] = "continuous";
    out["set"] = s.str();
    out["realizable"] = ok;
    code = ok ? kExitAccept : kExitReject;
    if (!as_json)
      std::cout << (ok ? "realizable" : "not realizable by any continuous function")
                << "\n";
  } else if (analytic) {
    auto w = decide_analytic(s);
    out["mode"] = "analytic";
    out["set"] = s.str();
    out["realizable"] = w.has_value();
    if (w) out["witness"] = to_json(*w);
    code = w ? kExitAccept : kExitReject;
    if (!as_json) {
      if (w) {
        std::cout << "realizable; witness sequence:";
        for (long v : w->sequence.values) std::cout << " " << v;
        std::cout << "\n";
      } else {
        std::cout << "not realizable by any analytic function\n";
      }
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return code;
}

int cmd_construct(const std::string& spec_text, bool continuous, bool analytic,
                  bool with_inf, bool realize, bool as_json) {
  CardinalitySpec s = parse_spec_or_exit(spec_text);
  Json out;
  try {
    if (continuous) {
      Construction c = construct_continuous(s);
      out["mode"] = "continuous";
      out["set"] = s.str();
      out["recipe"] = recipe_name(c.recipe);
      out["spectrum"] = to_json(c.spectrum);
      out["tree"] = to_json(c.tree);
      if (!as_json)
        std::cout << "constructed (" << recipe_name(c.recipe)
                  << "), spectrum " << c.spectrum.str() << "\n";
    } else if (with_inf) {
      Construction c = construct_with_infinity(s);
      out["mode"] = "with-infinity";
      out["set"] = s.str();
      out["spectrum"] = to_json(c.spectrum);
      out["tree"] = to_json(c.tree);
      if (!as_json)
        std::cout << "constructed, spectrum " << c.spectrum.str() << "\n";
    } else if (analytic) {
      auto [w, f] = decide_analytic_with_witness(s);
      out["mode"] = "analytic";
      out["set"] = s.str();
      out["witness"] = to_json(w);
      out["plfunction"] = to_json(f);
      if (realize) {
        PolyWitness pw = realize_poly(s);
        out["polynomial"] = to_json(pw);
      }
      if (!as_json) {
        std::cout << "constructed; witness sequence:";
        for (long v : w.sequence.values) std::cout << " " << v;
        std::cout << "\n";
      }
    }
  } catch (const std::invalid_argument& e) {
    std::string what = e.what();
    if (what.find("realizable") != std::string::npos) {
      if (as_json) {
        out["set"] = s.str();
        out["realizable"] = false;
        out["reason"] = what;
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << what << "\n";
      }
      return kExitReject;
    }
    throw;
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return kExitAccept;
}

int cmd_analyze_poly(const std::string& coeffs, bool as_json) {
  RatPoly p = parse_coeff_list(coeffs);
  OmegaProfile prof = omega_poly(p);
  if (as_json) {
    Json out;
    out["poly"] = to_json(p);
    out["profile"] = to_json(prof);
    out["omega"] = counts_text(prof);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "p(x) = " << p.str() << "\n";
    std::cout << "omega = " << counts_text(prof) << "\n";
    if (!prof.has_infinite()) {
      auto seq = extract_sequence(prof);
      std::cout << "sequence =";
      for (long v : seq.values) std::cout << " " << v;
      std::cout << "\n";
    }
  }
  return kExitAccept;
}

int cmd_analyze_pl(const std::string& path, bool as_json) {
  std::ifstream is(path);
  if (!is) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitError;
  }
  Json doc = Json::parse(is, nullptr, true);
  PLFunction f = pl_from_json(doc);
  OmegaProfile prof = omega_pl(f);
  if (as_json) {
    Json out;
    out["profile"] = to_json(prof);
    out["omega"] = counts_text(prof);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "omega = " << counts_text(prof) << "\n";
  }
  return kExitAccept;
}

int cmd_crosscheck(long extrema, long levels, bool as_json) {
  DifferentialReport rep = differential_thm2(extrema, levels,
                                             enumeration_budget());
  if (as_json) {
    Json out;
    out["extrema"] = extrema;
    out["levels"] = levels;
    out["shapes"] = rep.shapes;
    out["spectra"] = rep.spectra;
    Json gaps = Json::array();
    for (const auto& [sp, w] : rep.soundness_gaps) {
      Json g;
      g["spectrum"] = std::vector<long>(sp.begin(), sp.end());
      g["shape"] = w.values;
      gaps.push_back(std::move(g));
    }
    out["soundness_gaps"] = std::move(gaps);
    Json cg = Json::array();
    for (const auto& sp : rep.completeness_gaps)
      cg.push_back(std::vector<long>(sp.begin(), sp.end()));
    out["completeness_gaps_advisory"] = std::move(cg);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "shapes enumerated: " << rep.shapes << "\n";
    std::cout << "distinct spectra: " << rep.spectra << "\n";
    std::cout << "soundness gaps: " << rep.soundness_gaps.size() << "\n";
    std::cout << "completeness gaps (advisory): "
              << rep.completeness_gaps.size() << "\n";
  }
  return rep.sound() ? kExitAccept : kExitReject;
}

int cmd_plot(const std::string& input, long depth, long samples,
             const std::string& out_path) {
  // input may be a file path or inline text
  std::string text = input;
  {
    std::ifstream is(input);
    if (is) {
      std::stringstream ss;
      ss << is.rdbuf();
      text = ss.str();
    }
  }
  std::vector<std::pair<Rat, Rat>> pts;
  std::string caption;
  // JSON documents carry a type tag; anything else is a coefficient list
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    Json doc = Json::parse(text);
    std::string type = doc.value("type", "");
    if (type == "plfunction") {
      pts = pl_from_json(doc).breakpoints;
    } else if (type == "polynomial") {
      RatPoly p = poly_from_json(doc);
      for (long i = 0; i < samples; ++i) {
        Rat x = make_rat(i, samples - 1);
        pts.emplace_back(x, p.eval(x));
      }
    } else {
      TreePtr t = tree_from_json(doc);
      pts = materialize(t, depth, 1).breakpoints;
      caption = "approximate rendering (depth " + std::to_string(depth) + ")";
    }
  } else {
    RatPoly p = parse_coeff_list(text);
    for (long i = 0; i < samples; ++i) {
      Rat x = make_rat(i, samples - 1);
      pts.emplace_back(x, p.eval(x));
    }
  }
  write_svg(pts, out_path, caption);
  std::cout << "wrote " << out_path << "\n";
  return kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deciders, constructors and analyzers for preimage "
               "cardinality spectra on [0,1]"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON reports");

  // decide
  auto* decide = app.add_subcommand("decide", "test realizability of a set");
  std::string decide_spec;
  bool d_cont = false, d_anal = false;
  decide->add_option("set", decide_spec, "target set, e.g. \"{0,2,3,4}\"")
      ->required();
  auto* dc = decide->add_flag("--continuous", d_cont, "continuous functions");
  auto* da = decide->add_flag("--analytic", d_anal, "analytic functions");
  dc->excludes(da);

  // construct
  auto* construct = app.add_subcommand("construct", "build a witness");
  std::string cons_spec;
  bool c_cont = false, c_anal = false, c_inf = false, c_realize = false;
  construct->add_option("set", cons_spec, "target set")->required();
  auto* cc = construct->add_flag("--continuous", c_cont, "continuous witness");
  auto* ca = construct->add_flag("--analytic", c_anal,
                                 "piecewise linear witness for an analytic set");
  auto* ci = construct->add_flag("--with-infinity", c_inf,
                                 "witness for the set united with infinity");
  construct->add_flag("--realize", c_realize,
                      "also fit a polynomial witness (with --analytic)");
  cc->excludes(ca);
  cc->excludes(ci);
  ca->excludes(ci);

  // analyze-poly
  auto* apoly = app.add_subcommand("analyze-poly",
                                   "exact spectrum of a rational polynomial");
  std::string coeffs;
  apoly->add_option("coeffs", coeffs,
                    "coefficients lowest degree first, e.g. \"0,1\"")
      ->required();

  // analyze-pl
  auto* apl = app.add_subcommand("analyze-pl",
                                 "exact spectrum of a piecewise linear file");
  std::string pl_path;
  apl->add_option("file", pl_path, "plfunction JSON document")->required();

  // crosscheck
  auto* cross = app.add_subcommand("crosscheck",
                                   "differential test against enumeration");
  long cr_extrema = 4, cr_levels = 4;
  cross->add_option("--extrema", cr_extrema, "max interior extrema");
  cross->add_option("--levels", cr_levels, "max integer levels");

  // plot
  auto* plot = app.add_subcommand("plot", "emit a deterministic SVG");
  std::string plot_input, plot_out;
  long plot_depth = 3, plot_samples = 512;
  plot->add_option("input", plot_input,
                   "tree/plfunction/polynomial JSON file or inline, or a "
                   "coefficient list")
      ->required();
  plot->add_option("--depth", plot_depth, "stair truncation depth");
  plot->add_option("--samples", plot_samples, "polynomial sample count");
  plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (decide->parsed()) {
      if (!d_cont && !d_anal) {
        std::cerr << "error: pick --continuous or --analytic\n";
        return kExitError;
      }
      return cmd_decide(decide_spec, d_cont, d_anal, as_json);
    }
    if (construct->parsed()) {
      if (!c_cont && !c_anal && !c_inf) {
        std::cerr << "error: pick --continuous, --analytic or --with-infinity\n";
        return kExitError;
      }
      return cmd_construct(cons_spec, c_cont, c_anal, c_inf, c_realize, as_json);
    }
    if (apoly->parsed()) return cmd_analyze_poly(coeffs, as_json);
    if (apl->parsed()) return cmd_analyze_pl(pl_path, as_json);
    if (cross->parsed()) return cmd_crosscheck(cr_extrema, cr_levels, as_json);
    if (plot->parsed())
      return cmd_plot(plot_input, plot_depth, plot_samples, plot_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
