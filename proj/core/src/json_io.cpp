#include "omegaforge/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace omegaforge {

Json to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  auto r = rat_parse(j.get<std::string>());
  if (!r) throw std::invalid_argument("bad rational: " + j.dump());
  return *r;
}

Json to_json(const PLFunction& f) {
  Json j;
  j["type"] = "plfunction";
  Json bps = Json::array();
  for (const auto& [x, y] : f.breakpoints)
    bps.push_back(Json::array({rat_str(x), rat_str(y)}));
  j["breakpoints"] = std::move(bps);
  return j;
}

PLFunction pl_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "plfunction")
    throw std::invalid_argument("not a plfunction document");
  std::vector<std::pair<Rat, Rat>> bps;
  for (const auto& p : j.at("breakpoints"))
    bps.emplace_back(rat_from_json(p.at(0)), rat_from_json(p.at(1)));
  return make_pl(std::move(bps));
}

Json to_json(const OmegaProfile& p) {
  Json j;
  Json levels = Json::array();
  for (const auto& l : p.levels) {
    Json e;
    if (l.value.exact)
      e["value"] = rat_str(l.value.value);
    else
      e["value"] =
          Json{{"box", Json::array({rat_str(l.value.box.lo),
                                    rat_str(l.value.box.hi)})}};
    if (l.count == kInfCard)
      e["count"] = "inf";
    else
      e["count"] = l.count;
    e["endpoint_hits"] = l.endpoint_hits;
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  j["bands"] = p.bands;
  return j;
}

Json to_json(const ExtremaSequence& s) {
  return Json(s.values);
}

Json to_json(const OmegaSet& s) {
  Json j;
  j["finite"] = std::vector<long>(s.finite.begin(), s.finite.end());
  Json tails = Json::array();
  for (const auto& [start, step] : s.tails)
    tails.push_back(Json{{"start", start}, {"step", step}});
  j["tails"] = std::move(tails);
  j["infinite"] = s.has_inf;
  j["text"] = s.str();
  return j;
}

Json to_json(const SequenceWitness& w) {
  Json j;
  j["sequence"] = w.sequence.values;
  Json cls = Json::array();
  for (TripleClass c : w.classes) cls.push_back(triple_class_name(c));
  j["classes"] = std::move(cls);
  return j;
}

Json to_json(const RatPoly& p) {
  Json j;
  j["type"] = "polynomial";
  Json c = Json::array();
  for (const Rat& q : p.coeffs()) c.push_back(rat_str(q));
  j["coefficients"] = std::move(c);
  j["text"] = p.str();
  return j;
}

RatPoly poly_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "polynomial")
    throw std::invalid_argument("not a polynomial document");
  std::vector<Rat> c;
  for (const auto& q : j.at("coefficients")) c.push_back(rat_from_json(q));
  return RatPoly(std::move(c));
}

Json to_json(const PolyWitness& w) {
  Json j;
  j["poly"] = to_json(w.poly);
  j["target"] = w.target.str();
  Json r;
  r["status"] = w.report.exact ? "exact" : "unverified";
  r["spectrum"] =
      std::vector<long>(w.report.computed_spectrum.begin(),
                        w.report.computed_spectrum.end());
  if (!w.report.exact) r["max_residual"] = w.report.max_residual;
  if (!w.report.note.empty()) r["note"] = w.report.note;
  j["report"] = std::move(r);
  return j;
}

namespace {

Json interval_json(const Rat& a, const Rat& b) {
  return Json::array({rat_str(a), rat_str(b)});
}

}  // namespace

Json to_json(const TreePtr& t) {
  Json j;
  switch (t->kind) {
    case ConstructTree::Kind::Segment:
      j["type"] = "segment";
      j["x"] = interval_json(t->xa, t->xb);
      j["y"] = interval_json(t->ya, t->yb);
      return j;
    case ConstructTree::Kind::Plateau:
      j["type"] = "plateau";
      j["x"] = interval_json(t->xa, t->xb);
      j["value"] = rat_str(t->ya);
      return j;
    case ConstructTree::Kind::Wave:
      j["type"] = "wave";
      j["n"] = t->wave_n;
      j["x"] = interval_json(t->xa, t->xb);
      j["m"] = rat_str(t->wave_m);
      j["M"] = rat_str(t->wave_M);
      return j;
    case ConstructTree::Kind::InfStair: {
      j["type"] = "infstair";
      j["x"] = interval_json(t->xa, t->xb);
      j["range"] = interval_json(t->c, t->d);
      Json sig;
      switch (t->sig.kind) {
        case SignatureDescr::Kind::Constant:
          sig["kind"] = "constant";
          sig["k"] = t->sig.k;
          break;
        case SignatureDescr::Kind::Pair:
          sig["kind"] = "pair";
          sig["p"] = t->sig.p;
          sig["q"] = t->sig.q;
          sig["pivot"] = rat_str(t->pivot);
          break;
        case SignatureDescr::Kind::Periodic:
          sig["kind"] = "periodic";
          sig["word"] = t->sig.word;
          break;
      }
      j["signature"] = std::move(sig);
      return j;
    }
    case ConstructTree::Kind::Stack: {
      j["type"] = "stack";
      j["x"] = interval_json(t->xa, t->xb);
      j["range"] = interval_json(t->c, t->d);
      j["head"] = t->stack_head;
      if (t->stack_tail)
        j["tail"] = Json{{"start", t->stack_tail->first},
                         {"step", t->stack_tail->second}};
      return j;
    }
    case ConstructTree::Kind::StrandStair: {
      j["type"] = "strand-stair";
      j["x"] = interval_json(t->xa, t->xb);
      Json cuts = Json::array();
      for (const Rat& c : t->cuts) cuts.push_back(rat_str(c));
      j["cuts"] = std::move(cuts);
      j["sigmas"] = t->sigmas;
      j["descending"] = t->descending;
      return j;
    }
    case ConstructTree::Kind::Concat: {
      j["type"] = "concat";
      Json parts = Json::array();
      for (const TreePtr& p : t->parts) parts.push_back(to_json(p));
      j["parts"] = std::move(parts);
      return j;
    }
    case ConstructTree::Kind::Amend: {
      j["type"] = "amend";
      j["host"] = to_json(t->host);
      Json parts = Json::array();
      for (const TreePtr& p : t->parts) parts.push_back(to_json(p));
      j["patches"] = std::move(parts);
      return j;
    }
    case ConstructTree::Kind::Affine: {
      j["type"] = "affine";
      j["x_scale"] = rat_str(t->x_scale);
      j["x_off"] = rat_str(t->x_off);
      j["y_scale"] = rat_str(t->y_scale);
      j["y_off"] = rat_str(t->y_off);
      j["sub"] = to_json(t->sub);
      return j;
    }
  }
  throw std::logic_error("unknown node");
}

TreePtr tree_from_json(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  auto iv = [&](const char* key, Rat* a, Rat* b) {
    *a = rat_from_json(j.at(key).at(0));
    *b = rat_from_json(j.at(key).at(1));
  };
  if (type == "segment") {
    Rat xa, xb, ya, yb;
    iv("x", &xa, &xb);
    iv("y", &ya, &yb);
    return mk_segment(xa, ya, xb, yb);
  }
  if (type == "plateau") {
    Rat xa, xb;
    iv("x", &xa, &xb);
    return mk_plateau(xa, xb, rat_from_json(j.at("value")));
  }
  if (type == "wave") {
    Rat xa, xb;
    iv("x", &xa, &xb);
    return mk_wave(j.at("n").get<long>(), xa, xb, rat_from_json(j.at("m")),
                   rat_from_json(j.at("M")));
  }
  if (type == "infstair") {
    Rat xa, xb, c, d;
    iv("x", &xa, &xb);
    iv("range", &c, &d);
    const Json& sig = j.at("signature");
    std::string kind = sig.at("kind").get<std::string>();
    if (kind == "constant") {
      SignatureDescr s;
      s.kind = SignatureDescr::Kind::Constant;
      s.k = sig.at("k").get<long>();
      return mk_infstair(s, xa, xb, c, d);
    }
    if (kind == "pair")
      return mk_infstair_pivot(sig.at("p").get<long>(), sig.at("q").get<long>(),
                               rat_from_json(sig.at("pivot")), xa, xb, c, d);
    if (kind == "periodic") {
      SignatureDescr s;
      s.kind = SignatureDescr::Kind::Periodic;
      s.word = sig.at("word").get<std::vector<long>>();
      return mk_infstair(s, xa, xb, c, d);
    }
    throw std::invalid_argument("unknown signature kind");
  }
  if (type == "stack") {
    Rat xa, xb, c, d;
    iv("x", &xa, &xb);
    iv("range", &c, &d);
    std::optional<std::pair<long, long>> tail;
    if (j.contains("tail"))
      tail = std::make_pair(j.at("tail").at("start").get<long>(),
                            j.at("tail").at("step").get<long>());
    return mk_stack(xa, xb, c, d, j.at("head").get<std::vector<long>>(), tail);
  }
  if (type == "strand-stair") {
    Rat xa, xb;
    iv("x", &xa, &xb);
    std::vector<Rat> cuts;
    for (const auto& c : j.at("cuts")) cuts.push_back(rat_from_json(c));
    return mk_strand_stair(xa, xb, std::move(cuts),
                           j.at("sigmas").get<std::vector<long>>(),
                           j.value("descending", false));
  }
  if (type == "concat") {
    std::vector<TreePtr> parts;
    for (const auto& p : j.at("parts")) parts.push_back(tree_from_json(p));
    return mk_concat(std::move(parts));
  }
  if (type == "amend") {
    std::vector<TreePtr> patches;
    for (const auto& p : j.at("patches")) patches.push_back(tree_from_json(p));
    return mk_amend(tree_from_json(j.at("host")), std::move(patches));
  }
  if (type == "affine") {
    return mk_affine(tree_from_json(j.at("sub")),
                     rat_from_json(j.at("x_scale")),
                     rat_from_json(j.at("x_off")),
                     rat_from_json(j.at("y_scale")),
                     rat_from_json(j.at("y_off")));
  }
  throw std::invalid_argument("unknown tree node type: " + type);
}

RatPoly parse_coeff_list(const std::string& text) {
  std::vector<Rat> coeffs;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    // trim spaces
    size_t a = cur.find_first_not_of(" \t");
    size_t b = cur.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw std::invalid_argument("empty coefficient");
    auto r = rat_parse(cur.substr(a, b - a + 1));
    if (!r) throw std::invalid_argument("bad coefficient: " + cur);
    coeffs.push_back(*r);
  }
  if (coeffs.empty()) throw std::invalid_argument("no coefficients");
  return RatPoly(std::move(coeffs));
}

std::string coeff_list(const RatPoly& p) {
  std::ostringstream os;
  const auto& c = p.coeffs();
  if (c.empty()) return "0";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ",";
    os << rat_str(c[i]);
  }
  return os.str();
}

}  // namespace omegaforge
