#include "logchow/json_io.hpp"

#include <sstream>

namespace logchow {

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() &&
      x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error("expected integer");
}

json rational_to_json(const Rational& x) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(x);
  if (boost::multiprecision::denominator(x) != 1)
    os << "/" << boost::multiprecision::denominator(x);
  return os.str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw Error("expected rational");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

namespace {

json vector_to_json(const LatticeVector& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(int_to_json(v[i]));
  return a;
}

LatticeVector vector_from_json(const json& j) {
  std::vector<Int> coords;
  for (const auto& x : j) coords.push_back(int_from_json(x));
  return LatticeVector(std::move(coords));
}

std::string exponents_key(const Polynomial::Exponents& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  return os.str();
}

Polynomial::Exponents exponents_from_key(const std::string& key, int arity) {
  Polynomial::Exponents e;
  if (!key.empty()) {
    std::istringstream is(key);
    std::string part;
    while (std::getline(is, part, ',')) e.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  if (static_cast<int>(e.size()) != arity) throw Error("monomial key arity mismatch: " + key);
  return e;
}

}  // namespace

json to_json(const ConeComplex& c) {
  json cones = json::array();
  for (const auto& [id, cone] : c.cones()) {
    json jc;
    jc["id"] = cone.id;
    jc["dim"] = cone.dim;
    jc["ray_labels"] = cone.ray_labels;
    cones.push_back(jc);
  }
  json maps = json::array();
  auto sorted = c.face_maps();
  std::sort(sorted.begin(), sorted.end(), [](const FaceMap& a, const FaceMap& b) {
    return std::tie(a.source, a.target, a.ray_assignment) <
           std::tie(b.source, b.target, b.ray_assignment);
  });
  for (const auto& m : sorted) {
    json jm;
    jm["source"] = m.source;
    jm["target"] = m.target;
    jm["ray_assignment"] = m.ray_assignment;
    maps.push_back(jm);
  }
  return json{{"cones", cones}, {"face_maps", maps}};
}

ConeComplex complex_from_json(const json& j) {
  std::vector<Cone> cones;
  for (const auto& jc : j.at("cones")) {
    Cone c;
    c.id = jc.at("id").get<std::string>();
    c.dim = jc.at("dim").get<int>();
    if (jc.contains("ray_labels"))
      c.ray_labels = jc.at("ray_labels").get<std::vector<std::string>>();
    cones.push_back(c);
  }
  std::vector<FaceMap> maps;
  for (const auto& jm : j.value("face_maps", json::array())) {
    FaceMap m;
    m.source = jm.at("source").get<std::string>();
    m.target = jm.at("target").get<std::string>();
    m.ray_assignment = jm.at("ray_assignment").get<std::vector<int>>();
    maps.push_back(m);
  }
  return ConeComplex(cones, maps);
}

json to_json(const ConeComplex& c, const PPSection& s) {
  json per_cone = json::object();
  for (const auto& [id, p] : s.per_cone) {
    json terms = json::object();
    for (const auto& [e, coeff] : p.terms()) terms[exponents_key(e)] = rational_to_json(coeff);
    per_cone[id] = terms;
  }
  return json{{"degree", s.degree}, {"per_cone", per_cone}};
}

PPSection section_from_json(const ConeComplex& c, const json& j) {
  PPSection s{j.at("degree").get<int>(), {}};
  for (const auto& id : c.maximal_cones()) {
    int arity = c.cone(id).dim;
    Polynomial p(arity);
    if (j.at("per_cone").contains(id))
      for (const auto& [key, coeff] : j.at("per_cone").at(id).items())
        p.add_term(exponents_from_key(key, arity), rational_from_json(coeff));
    s.per_cone[id] = p;
  }
  validate_section(c, s);
  return s;
}

json to_json(const Subdivision& s) {
  json containment = json::array();
  for (const auto& rid : s.refined().maximal_cones()) {
    json jc;
    jc["refinedCone"] = rid;
    jc["baseCone"] = s.carrier(rid);
    const IntegerMatrix& emb = s.embedding(rid);
    json imgs = json::array();
    for (std::size_t col = 0; col < emb.cols(); ++col) imgs.push_back(vector_to_json(emb.column(col)));
    jc["rayImages"] = imgs;
    containment.push_back(jc);
  }
  return json{{"base", to_json(s.base())}, {"containment", containment},
              {"refined", to_json(s.refined())}};
}

Subdivision subdivision_from_json(const json& j) {
  ConeComplex base = complex_from_json(j.at("base"));
  // local fans of maximal cones from the containment entries
  std::map<ConeId, LocalFan> fans;
  for (const auto& [id, cone] : base.cones()) {
    LocalFan f;
    f.dim = cone.dim;
    fans[id] = f;
  }
  std::map<ConeId, std::vector<std::vector<LatticeVector>>> pieces;
  for (const auto& jc : j.at("containment")) {
    ConeId bid = jc.at("baseCone").get<std::string>();
    std::vector<LatticeVector> rays;
    for (const auto& img : jc.at("rayImages")) rays.push_back(vector_from_json(img));
    pieces[bid].push_back(rays);
  }
  auto maximal = base.maximal_cones();
  std::set<ConeId> maxset(maximal.begin(), maximal.end());
  for (const auto& [bid, cs] : pieces) {
    if (!maxset.count(bid)) throw Error("subdivision json: containment on non-maximal cone " + bid);
    LocalFan f;
    f.dim = base.cone(bid).dim;
    for (const auto& piece : cs) {
      std::vector<int> idxs;
      for (const auto& r : piece) {
        auto pos = std::find(f.rays.begin(), f.rays.end(), r);
        if (pos == f.rays.end()) {
          f.rays.push_back(r);
          idxs.push_back(static_cast<int>(f.rays.size() - 1));
        } else {
          idxs.push_back(static_cast<int>(pos - f.rays.begin()));
        }
      }
      f.cones.push_back(idxs);
    }
    f.normalize();
    fans[bid] = f;
  }
  // derive fans on non-maximal cones by restriction along any chain into a
  // maximal cone
  for (const auto& [id, cone] : base.cones()) {
    if (maxset.count(id)) continue;
    for (const auto& m : base.morphisms_from(id)) {
      if (!maxset.count(m.target)) continue;
      fans[id] = fans.at(m.target).restrict_to_face(m.assignment);
      break;
    }
  }
  Subdivision out(base, std::move(fans));
  if (j.contains("refined")) {
    ConeComplex ref = complex_from_json(j.at("refined"));
    if (!same_complex(ref, out.refined()))
      throw Error("subdivision json: refined complex does not match the containment data");
  }
  return out;
}

json to_json(const CompleteFan& f) {
  json rays = json::array();
  for (const auto& r : f.rays) rays.push_back(vector_to_json(r));
  return json{{"maximal_cones", f.max_cones}, {"rays", rays}};
}

CompleteFan fan_from_json(const json& j) {
  CompleteFan f;
  for (const auto& r : j.at("rays")) f.rays.push_back(vector_from_json(r));
  f.max_cones = j.at("maximal_cones").get<std::vector<std::vector<int>>>();
  f.dim = f.rays.empty() ? 0 : static_cast<int>(f.rays[0].dim());
  f.validate();
  return f;
}

json to_json(const ChowClass& c) {
  json coords = json::array();
  for (const auto& x : c.coords) coords.push_back(rational_to_json(x));
  return json{{"coords", coords}, {"degree", c.degree}};
}

ChowClass chow_class_from_json(const json& j) {
  ChowClass c;
  c.degree = j.at("degree").get<int>();
  for (const auto& x : j.at("coords")) c.coords.push_back(rational_from_json(x));
  return c;
}

json to_json(const TropicalCurve& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"genus", v.genus}, {"id", v.id}});
  json legs = json::array();
  for (const auto& l : g.legs()) legs.push_back({{"marking", l.marking}, {"vertex", l.vertex}});
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"from", e.from}, {"length_ray", e.length_ray}, {"to", e.to}});
  return json{{"base_dim", g.base_dim()}, {"edges", edges}, {"legs", legs},
              {"vertices", vertices}};
}

TropicalCurve curve_from_json(const json& j) {
  std::vector<CurveVertex> vertices;
  for (const auto& jv : j.at("vertices"))
    vertices.push_back({jv.at("id").get<std::string>(), jv.value("genus", 0)});
  std::vector<CurveLeg> legs;
  for (const auto& jl : j.value("legs", json::array()))
    legs.push_back({jl.at("vertex").get<std::string>(), jl.value("marking", 0)});
  std::vector<CurveEdge> edges;
  int max_ray = -1;
  for (const auto& je : j.at("edges")) {
    CurveEdge e{je.at("from").get<std::string>(), je.at("to").get<std::string>(),
                je.at("length_ray").get<int>()};
    max_ray = std::max(max_ray, e.length_ray);
    edges.push_back(e);
  }
  int base_dim = j.value("base_dim", max_ray + 1);
  TropicalCurve g(vertices, legs, edges, base_dim);
  g.validate();
  return g;
}

json to_json(const Divisor& d) {
  json md = json::object();
  for (const auto& [v, deg] : d.multidegree) md[v] = int_to_json(deg);
  return json{{"multidegree", md}};
}

Divisor divisor_from_json(const json& j) {
  Divisor d;
  for (const auto& [v, deg] : j.at("multidegree").items()) d.multidegree[v] = int_from_json(deg);
  return d;
}

Divisor divisor_from_array(const TropicalCurve& g, const json& arr) {
  if (arr.size() != g.vertices().size())
    throw Error("divisor array length must match the vertex count");
  Divisor d;
  for (std::size_t i = 0; i < g.vertices().size(); ++i)
    d.multidegree[g.vertices()[i].id] = int_from_json(arr[i]);
  return d;
}

json to_json(const TropicalCurve& g, const PLFunction& a) {
  json slopes = json::array();
  for (const auto& s : a.slopes) slopes.push_back(int_to_json(s));
  json values = json::object();
  for (const auto& [v, val] : a.values) values[v] = vector_to_json(val);
  (void)g;
  return json{{"base_vertex", a.base_vertex}, {"slopes", slopes}, {"values", values}};
}

json to_json(const ExtFan& f) {
  json cones = json::array();
  for (const auto& c : f.max_cones) {
    json jc;
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back(vector_to_json(g));
    jc["generators"] = gens;
    auto cert_json = [](const TwistCertificate& t) {
      json o = json::object();
      for (std::size_t e = 0; e < t.slopes.size(); ++e)
        o[std::to_string(e)] = int_to_json(t.slopes[e]);
      return o;
    };
    if (c.certificates.size() == 1) {
      jc["certificate"] = cert_json(c.certificates[0]);
    } else {
      json cs = json::array();
      for (const auto& t : c.certificates) cs.push_back(cert_json(t));
      jc["certificates"] = cs;
    }
    cones.push_back(jc);
  }
  json bounds{{"B", int_to_json(f.bound)}};
  if (f.height != 0) bounds["H"] = int_to_json(f.height);
  return json{{"base_cone", json{{"dim", f.base_dim}}},
              {"bounds", bounds},
              {"complete", f.complete},
              {"maximal_cones", cones}};
}

json to_json(const GlobalGenReport& r) {
  json coker = json::array();
  for (const auto& d : r.cokernel) coker.push_back(int_to_json(d));
  return json{{"cokernel", coker}, {"image_rank", r.image_rank}, {"pp_rank", r.pp_rank}};
}

json to_json(const EtaCorrection& e) {
  json cones = json::array();
  for (const auto& pc : e.cones) {
    json gens = json::array();
    for (const auto& g : pc.generators) gens.push_back(vector_to_json(g));
    json vals = json::array();
    for (const auto& v : pc.values) vals.push_back(int_to_json(v));
    cones.push_back(json{{"covector", vector_to_json(pc.covector)},
                         {"generators", gens},
                         {"values", vals}});
  }
  return json{{"cones", cones}};
}

json to_json(const SimplicityReport& r) {
  return json{{"simple", r.simple}, {"witness", r.witness}};
}

json to_json(const StratumReport& r) {
  return json{{"components", r.components}, {"label_subset", r.label_subset}};
}

}  // namespace logchow
