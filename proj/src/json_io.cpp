#include "sammy/json_io.hpp"

#include <fstream>

namespace sammy {

Json to_json(const FinCat& c) {
  Json j;
  j["objects"] = c.n_objects;
  Json mors = Json::array();
  for (MorId m = 0; m < c.n_morphisms(); ++m) mors.push_back({{"src", c.src[m]}, {"tgt", c.tgt[m]}});
  j["morphisms"] = std::move(mors);
  j["identities"] = c.identity;
  Json comp = Json::array();
  for (MorId g = 0; g < c.n_morphisms(); ++g)
    for (MorId f = 0; f < c.n_morphisms(); ++f)
      if (c.compose(g, f) != kNoMor) comp.push_back({g, f, c.compose(g, f)});
  j["comp"] = std::move(comp);
  return j;
}

Json to_json(const FunctorData& f) {
  Json j;
  j["dom"] = to_json(f.dom);
  j["cod"] = to_json(f.cod);
  j["obj_map"] = f.obj_map;
  j["mor_map"] = f.mor_map;
  return j;
}

Json to_json(const NatTransData& t) {
  Json j;
  j["src_fun"] = to_json(t.src_fun);
  j["tgt_fun"] = to_json(t.tgt_fun);
  j["components"] = t.components;
  return j;
}

Json value_to_json(const Value& v) {
  switch (kind_of(v)) {
    case ValueKind::Cat: return to_json(std::get<FinCat>(v));
    case ValueKind::Functor: return to_json(std::get<FunctorData>(v));
    case ValueKind::NatTrans: return to_json(std::get<NatTransData>(v));
    case ValueKind::Obj: {
      const auto& o = std::get<ObjRef>(v);
      Json j;
      j["kind"] = "object";
      j["home"] = to_json(o.home);
      j["id"] = o.id;
      return j;
    }
    case ValueKind::Mor: {
      const auto& m = std::get<MorRef>(v);
      Json j;
      j["kind"] = "morphism";
      j["home"] = to_json(m.home);
      j["id"] = m.id;
      return j;
    }
  }
  fail(ErrKind::Internal, "unreachable");
}

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrKind::Parse, msg); }

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) bad(std::string("expected integer '") + key + "'");
  return j[key].get<int>();
}

std::vector<std::int32_t> get_int_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) bad(std::string("expected array '") + key + "'");
  std::vector<std::int32_t> out;
  for (const auto& x : j[key]) {
    if (!x.is_number_integer()) bad(std::string("array '") + key + "' holds a non-integer");
    out.push_back(x.get<std::int32_t>());
  }
  return out;
}

}  // namespace

FinCat cat_from_json(const Json& j) {
  if (!j.is_object()) bad("category document must be a JSON object");
  FinCat c;
  c.n_objects = get_int(j, "objects");
  if (c.n_objects < 0) bad("negative object count");
  if (!j.contains("morphisms") || !j["morphisms"].is_array()) bad("expected array 'morphisms'");
  for (const auto& m : j["morphisms"]) {
    c.src.push_back(get_int(m, "src"));
    c.tgt.push_back(get_int(m, "tgt"));
  }
  c.identity = get_int_array(j, "identities");
  const int mc = c.n_morphisms();
  c.comp.assign(static_cast<size_t>(mc) * mc, kNoMor);
  if (!j.contains("comp") || !j["comp"].is_array()) bad("expected array 'comp'");
  for (const auto& t : j["comp"]) {
    if (!t.is_array() || t.size() != 3) bad("comp entries must be [g, f, gf] triples");
    int g = t[0].get<int>(), f = t[1].get<int>(), gf = t[2].get<int>();
    if (g < 0 || g >= mc || f < 0 || f >= mc) bad("comp entry indexes an unknown morphism");
    c.comp[static_cast<size_t>(g) * mc + f] = gf;
  }
  return c;
}

FunctorData functor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod"))
    bad("functor document needs 'dom' and 'cod'");
  FunctorData f;
  f.dom = cat_from_json(j["dom"]);
  f.cod = cat_from_json(j["cod"]);
  f.obj_map = get_int_array(j, "obj_map");
  f.mor_map = get_int_array(j, "mor_map");
  return f;
}

NatTransData nat_trans_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("src_fun") || !j.contains("tgt_fun"))
    bad("transformation document needs 'src_fun' and 'tgt_fun'");
  NatTransData t;
  t.src_fun = functor_from_json(j["src_fun"]);
  t.tgt_fun = functor_from_json(j["tgt_fun"]);
  t.components = get_int_array(j, "components");
  return t;
}

Value value_from_json(const Json& j) {
  if (!j.is_object()) bad("value document must be a JSON object");
  if (j.contains("kind")) {
    std::string k = j["kind"].get<std::string>();
    FinCat home = cat_from_json(j.contains("home") ? j["home"] : Json());
    auto violations = validate_category(home);
    if (!violations.empty())
      bad("home category fails validation: " + violations.front().law);
    int id = get_int(j, "id");
    if (k == "object") {
      if (id < 0 || id >= home.n_objects) bad("object id out of range");
      return ObjRef{std::move(home), id};
    }
    if (k == "morphism") {
      if (id < 0 || id >= home.n_morphisms()) bad("morphism id out of range");
      return MorRef{std::move(home), id};
    }
    bad("unknown value kind '" + k + "'");
  }
  if (j.contains("components")) {
    NatTransData t = nat_trans_from_json(j);
    std::string why;
    if (!check_nat_trans(t, &why)) bad("transformation fails validation: " + why);
    return t;
  }
  if (j.contains("obj_map")) {
    FunctorData f = functor_from_json(j);
    std::string why;
    if (!check_functor(f, &why)) bad("functor fails validation: " + why);
    return f;
  }
  if (j.contains("objects")) {
    FinCat c = cat_from_json(j);
    auto violations = validate_category(c);
    if (!violations.empty())
      bad("category fails validation: " + violations.front().law + " (" +
          violations.front().detail + ")");
    return c;
  }
  bad("unrecognized value document");
}

std::string dump_value(const Value& v) { return value_to_json(v).dump(); }

Value parse_value_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return value_from_json(j);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::Io, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON in " + path);
  return j;
}

Value parse_value_file(const std::string& path) { return value_from_json(load_json_file(path)); }

}  // namespace sammy
