#include "binfty/io.hpp"

#include <fstream>
#include <sstream>

namespace binfty {

namespace {

Error parse_error(const std::string& where, const std::string& msg) {
  return Error(ErrorKind::ParseError, (where.empty() ? std::string("/") : where) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw parse_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw parse_error(where, "expected a string");
  return j.get<std::string>();
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw parse_error(where, "expected an integer");
  return j.get<int>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where, "expected an array");
  return j;
}

int basis_index(const GradedSpace& S, const Json& j, const std::string& where) {
  std::string n = as_string(j, where);
  auto i = S.find_name(n);
  if (!i) throw parse_error(where, "unknown basis element '" + n + "'");
  return *i;
}

// [[basis, "p/q"], ...]
Vec parse_vec(const GradedSpace& S, const Json& j, const std::string& where) {
  Vec v;
  const Json& arr = as_array(j, where);
  for (std::size_t t = 0; t < arr.size(); ++t) {
    std::string w = where + "/" + std::to_string(t);
    const Json& term = arr[t];
    if (!term.is_array() || term.size() != 2) throw parse_error(w, "expected [basis, \"p/q\"]");
    int i = basis_index(S, term[0], w + "/0");
    if (!term[1].is_string()) throw parse_error(w + "/1", "coefficients are strings \"p/q\"");
    Rational c;
    try {
      c = parse_rational(term[1].get<std::string>());
    } catch (const Error& e) {
      throw parse_error(w + "/1", e.what());
    }
    v.add(i, c);
  }
  return v;
}

Json vec_to_json(const GradedSpace& S, const Vec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) out.push_back(Json::array({S.name(i), to_string(c)}));
  return out;
}

Json info_object(const std::vector<std::pair<std::string, std::string>>& info) {
  Json o = Json::object();
  for (const auto& [k, v] : info) o[k] = v;
  return o;
}

}  // namespace

AlgebraPresentation algebra_from_json(const Json& j, const std::string& where) {
  AlgebraPresentation A;
  A.name = as_string(field(j, "name", where), where + "/name");
  if (as_string(field(j, "field", where), where + "/field") != "Q")
    throw parse_error(where + "/field", "only the field \"Q\" is supported");
  auto S = std::make_shared<GradedSpace>(A.name);
  const Json& basis = as_array(field(j, "basis", where), where + "/basis");
  if (basis.empty()) throw parse_error(where + "/basis", "empty basis");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string w = where + "/basis/" + std::to_string(i);
    std::string n = as_string(field(basis[i], "name", w), w + "/name");
    int d = as_int(field(basis[i], "deg", w), w + "/deg");
    if (S->find_name(n)) throw parse_error(w + "/name", "duplicate basis name '" + n + "'");
    S->add(n, d);
  }
  A.space = S;
  if (j.contains("mult")) {
    const Json& mult = as_array(j["mult"], where + "/mult");
    for (std::size_t e = 0; e < mult.size(); ++e) {
      std::string w = where + "/mult/" + std::to_string(e);
      int a = basis_index(*S, field(mult[e], "left", w), w + "/left");
      int b = basis_index(*S, field(mult[e], "right", w), w + "/right");
      if (A.mult.count({a, b})) throw parse_error(w, "duplicate product " + S->name(a) + "*" + S->name(b));
      Vec v = parse_vec(*S, field(mult[e], "out", w), w + "/out");
      if (!v.is_zero()) A.mult[{a, b}] = v;
    }
  }
  if (j.contains("diff")) {
    const Json& diff = as_array(j["diff"], where + "/diff");
    for (std::size_t e = 0; e < diff.size(); ++e) {
      std::string w = where + "/diff/" + std::to_string(e);
      int a = basis_index(*S, field(diff[e], "in", w), w + "/in");
      if (A.diff.count(a)) throw parse_error(w, "duplicate differential of " + S->name(a));
      Vec v = parse_vec(*S, field(diff[e], "out", w), w + "/out");
      if (!v.is_zero()) A.diff[a] = v;
    }
  }
  if (j.contains("unit") && !j["unit"].is_null()) A.unit = basis_index(*S, j["unit"], where + "/unit");
  return A;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

bool is_morphism_json(const Json& j) { return j.is_object() && j.contains("map"); }

AlgebraMorphism morphism_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& where) {
  AlgebraMorphism f;
  f.name = as_string(field(j, "name", where), where + "/name");
  auto side = [&](const char* key) {
    const Json& v = field(j, key, where);
    std::string w = where + "/" + key;
    if (v.is_string()) {
      std::filesystem::path p = base_dir / v.get<std::string>();
      try {
        return algebra_from_json(read_json_file(p), "");
      } catch (const Error& e) {
        throw parse_error(w, "in " + p.string() + ": " + e.message());
      }
    }
    if (v.is_object()) return algebra_from_json(v, w);
    throw parse_error(w, "expected a path or an inline algebra");
  };
  f.dom = side("dom");
  f.cod = side("cod");
  const Json& map = as_array(field(j, "map", where), where + "/map");
  for (std::size_t e = 0; e < map.size(); ++e) {
    std::string w = where + "/map/" + std::to_string(e);
    int a = basis_index(*f.dom.space, field(map[e], "in", w), w + "/in");
    if (f.map.count(a)) throw parse_error(w, "duplicate image of " + f.dom.space->name(a));
    Vec v = parse_vec(*f.cod.space, field(map[e], "out", w), w + "/out");
    if (!v.is_zero()) f.map[a] = v;
  }
  return f;
}

Json algebra_to_json(const AlgebraPresentation& A) {
  const GradedSpace& S = *A.space;
  Json j;
  j["name"] = A.name;
  j["field"] = "Q";
  j["basis"] = Json::array();
  for (int i = 0; i < S.dim(); ++i) j["basis"].push_back({{"name", S.name(i)}, {"deg", S.degree(i)}});
  j["mult"] = Json::array();
  for (const auto& [ab, v] : A.mult)
    j["mult"].push_back({{"left", S.name(ab.first)}, {"right", S.name(ab.second)}, {"out", vec_to_json(S, v)}});
  j["diff"] = Json::array();
  for (const auto& [a, v] : A.diff) j["diff"].push_back({{"in", S.name(a)}, {"out", vec_to_json(S, v)}});
  if (A.unit) j["unit"] = S.name(*A.unit);
  return j;
}

Json morphism_to_json(const AlgebraMorphism& f) {
  Json j;
  j["name"] = f.name;
  j["dom"] = algebra_to_json(f.dom);
  j["cod"] = algebra_to_json(f.cod);
  j["map"] = Json::array();
  for (const auto& [a, v] : f.map) j["map"].push_back({{"in", f.dom.space->name(a)}, {"out", vec_to_json(*f.cod.space, v)}});
  return j;
}

std::vector<CheckResult> validation_checks(const AlgebraPresentation& A) { return validate_algebra(A); }

std::vector<CheckResult> validation_checks(const AlgebraMorphism& f) {
  std::vector<CheckResult> out = validate_algebra(f.dom);
  for (auto& c : validate_algebra(f.cod)) out.push_back(std::move(c));
  for (auto& c : validate_morphism(f)) out.push_back(std::move(c));
  return out;
}

namespace {

template <class T>
void require_valid(const T& x, const std::string& what) {
  auto checks = validation_checks(x);
  std::vector<CheckResult> failed;
  for (const auto& c : checks)
    if (!c.passed) failed.push_back(c);
  if (!failed.empty()) throw ValidationError(what + " failed validation (" + failed.front().id + ")", failed);
}

}  // namespace

AlgebraPresentation load_algebra(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  if (is_morphism_json(j)) throw Error(ErrorKind::ParseError, path.string() + ": expected an algebra, found a morphism");
  AlgebraPresentation A;
  try {
    A = algebra_from_json(j);
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.message());
  }
  require_valid(A, path.string());
  return A;
}

AlgebraMorphism load_morphism(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  if (!is_morphism_json(j)) throw Error(ErrorKind::ParseError, path.string() + ": expected a morphism (no 'map' field)");
  AlgebraMorphism f;
  try {
    f = morphism_from_json(j, path.parent_path());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.message());
  }
  require_valid(f, path.string());
  return f;
}

std::string render_text(const Report& r) {
  std::ostringstream o;
  o << "suite: " << r.suite << "\n";
  if (!r.inputs.empty()) {
    o << "inputs:";
    for (const auto& i : r.inputs) o << " " << i;
    o << "\n";
  }
  o << "cutoffs: N=" << r.cutoffs.arity << " P=" << r.cutoffs.weight << " F=" << r.cutoffs.filtration << "\n";
  o << "seed: " << r.seed << "  samples: " << r.samples << "\n";
  for (const auto& [k, v] : r.info) o << "  " << k << ": " << v << "\n";
  long failed = 0;
  for (const auto& c : r.checks) {
    if (!c.passed) ++failed;
    o << (c.passed ? "PASS " : "FAIL ") << c.id << " [" << c.tag << "] probes=" << c.probes;
    if (c.skipped_unsafe) o << " skipped_unsafe=" << c.skipped_unsafe;
    if (!c.modulus.empty()) o << " modulo " << c.modulus;
    o << "\n";
    for (const auto& [k, v] : c.info) o << "    " << k << ": " << v << "\n";
    if (c.witness) {
      o << "    inputs: " << c.witness->inputs << "\n";
      o << "    lhs:    " << c.witness->lhs << "\n";
      o << "    rhs:    " << c.witness->rhs << "\n";
      if (!c.witness->diff.empty()) o << "    diff:   " << c.witness->diff << "\n";
    }
  }
  if (r.error) o << "error: " << *r.error << "\n";
  o << "result: " << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks, " << failed << " failed)\n";
  return o.str();
}

std::string render_machine(const Report& r) {
  Json j;
  j["schema"] = "binfty-report/1";
  j["suite"] = r.suite;
  j["inputs"] = r.inputs;
  j["cutoffs"] = {{"N", r.cutoffs.arity}, {"P", r.cutoffs.weight}, {"F", r.cutoffs.filtration}};
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["info"] = info_object(r.info);
  j["status"] = r.passed() ? "pass" : "fail";
  j["error"] = r.error ? Json(*r.error) : Json(nullptr);
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["tag"] = c.tag;
    cj["status"] = c.passed ? "pass" : "fail";
    cj["probes"] = c.probes;
    cj["skipped_unsafe"] = c.skipped_unsafe;
    cj["modulus"] = c.modulus;
    cj["info"] = info_object(c.info);
    if (c.witness)
      cj["witness"] = {{"inputs", c.witness->inputs}, {"lhs", c.witness->lhs}, {"rhs", c.witness->rhs}, {"diff", c.witness->diff}};
    else
      cj["witness"] = nullptr;
    j["checks"].push_back(std::move(cj));
  }
  return j.dump(2) + "\n";
}

std::string emit_report(const Report& r, ReportFormat format) {
  return format == ReportFormat::machine ? render_machine(r) : render_text(r);
}

}  // namespace binfty
