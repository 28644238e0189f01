// Command-line front end: load complexes, curves and fans from JSON, run one
// operation, emit a deterministic JSON report.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logchow/json_io.hpp"

namespace {

using namespace logchow;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

// FNV-1a, stable across runs; timing is reported separately so payloads can
// be compared byte for byte.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// Reports wrap their result in a payload; accept both bare artifacts and
// reports written by --out so commands chain.
json load_artifact(const std::string& path) {
  json j = parse_file(path);
  if (j.is_object() && j.contains("payload") && j.contains("verb")) return j.at("payload");
  return j;
}

json parse_inline_or_file(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) return json::parse(arg);
  return parse_file(arg);
}

int max_threads() {
  if (const char* env = std::getenv("LOGCHOW_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

struct Invocation {
  std::string verb;
  std::vector<std::string> inputs;
  json flags = json::object();
};

json run_verb(const Invocation& inv) {
  const auto& inputs = inv.inputs;
  const json& flags = inv.flags;
  auto need = [&](std::size_t n) {
    if (inputs.size() != n) throw Error(inv.verb + ": expected " + std::to_string(n) + " input file(s)");
  };

  if (inv.verb == "validate") {
    need(1);
    ConeComplex c = complex_from_json(parse_file(inputs[0]));
    c.validate();
    return json{{"valid", true}};
  }
  if (inv.verb == "pp-basis") {
    need(1);
    ConeComplex c = complex_from_json(parse_file(inputs[0]));
    c.validate();
    int n = flags.at("degree").get<int>();
    json basis = json::array();
    for (const auto& s : pp_basis(c, n)) basis.push_back(to_json(c, s));
    return json{{"basis", basis}, {"rank", basis.size()}};
  }
  if (inv.verb == "global-gen") {
    need(1);
    ConeComplex c = complex_from_json(parse_file(inputs[0]));
    c.validate();
    return to_json(sym_to_pp(c, flags.at("degree").get<int>()));
  }
  if (inv.verb == "barycentric") {
    need(1);
    ConeComplex c = complex_from_json(parse_file(inputs[0]));
    c.validate();
    return to_json(barycentric(c));
  }
  if (inv.verb == "stellar") {
    need(1);
    ConeComplex c = complex_from_json(parse_file(inputs[0]));
    c.validate();
    std::vector<Int> coords;
    for (const auto& x : json::parse(flags.at("ray").get<std::string>()))
      coords.push_back(int_from_json(x));
    return to_json(stellar(c, flags.at("cone").get<std::string>(), LatticeVector(coords)));
  }
  if (inv.verb == "refine") {
    need(2);
    Subdivision a = subdivision_from_json(load_artifact(inputs[0]));
    Subdivision b = subdivision_from_json(load_artifact(inputs[1]));
    auto cr = common_refine(a, b);
    return json{{"refinement", to_json(cr.sub)}, {"witness_a", cr.in_a}, {"witness_b", cr.in_b}};
  }
  if (inv.verb == "chow") {
    need(1);
    ToricChow ring(fan_from_json(parse_file(inputs[0])));
    json dims = json::array();
    for (auto d : ring.graded_dimensions()) dims.push_back(d);
    // graded basis as lifted sections, and exact structure constants
    json basis = json::object();
    auto unit_class = [&](int degree, std::size_t i) {
      ChowClass c = ring.zero(degree);
      c.coords[i] = 1;
      return c;
    };
    for (int n = 0; n <= ring.dim(); ++n) {
      json level = json::array();
      for (std::size_t i = 0; i < ring.quotient().dimension(n); ++i)
        level.push_back(to_json(ring.complex(), ring.lift(unit_class(n, i))));
      basis[std::to_string(n)] = level;
    }
    json constants = json::object();
    for (int m = 1; m <= ring.dim(); ++m)
      for (int n = m; m + n <= ring.dim(); ++n) {
        for (std::size_t i = 0; i < ring.quotient().dimension(m); ++i)
          for (std::size_t j = 0; j < ring.quotient().dimension(n); ++j) {
            ChowClass prod = ring.mul(unit_class(m, i), unit_class(n, j));
            constants["b" + std::to_string(m) + "_" + std::to_string(i) + "*b" +
                      std::to_string(n) + "_" + std::to_string(j)] = to_json(prod);
          }
      }
    // divisor classes against the published basis
    json divisors = json::array();
    for (std::size_t i = 0; i < ring.fan().rays.size(); ++i)
      divisors.push_back(to_json(ring.divisor(static_cast<int>(i))));
    return json{{"basis", basis},
                {"divisor_classes", divisors},
                {"graded_dimensions", dims},
                {"structure_constants", constants}};
  }
  if (inv.verb == "phi") {
    need(2);
    ToricChow ring(fan_from_json(parse_file(inputs[0])));
    PPSection s = section_from_json(ring.complex(), load_artifact(inputs[1]));
    return to_json(ring.phi(s));
  }
  if (inv.verb == "pushforward") {
    need(2);
    json sub_json = load_artifact(inputs[0]);
    FanSubdivision sub{fan_from_json(sub_json.at("base")), fan_from_json(sub_json.at("refined"))};
    sub.validate();
    ToricChow base(sub.base);
    LogChowClass z{sub, chow_class_from_json(load_artifact(inputs[1]))};
    return to_json(log_pushforward(base, z));
  }
  if (inv.verb == "ext-fan" || inv.verb == "twist" || inv.verb == "eta") {
    need(1);
    TropicalCurve g = curve_from_json(parse_file(inputs[0]));
    Divisor d = divisor_from_array(g, parse_inline_or_file(flags.at("divisor").get<std::string>()));
    Int bound = flags.contains("bound") ? Int(flags.at("bound").get<std::int64_t>()) : Int(0);
    TwistProblem p{g, {d}, bound};
    if (inv.verb == "twist") {
      std::vector<LatticeVector> gens;
      for (const auto& row : json::parse(flags.at("cone").get<std::string>())) {
        std::vector<Int> coords;
        for (const auto& x : row) coords.push_back(int_from_json(x));
        gens.push_back(LatticeVector(coords));
      }
      auto cert = find_twist(p, gens);
      if (!cert) return json{{"twistable", false}};
      json slopes = json::object();
      for (std::size_t e = 0; e < cert->slopes.size(); ++e)
        slopes[std::to_string(e)] = int_to_json(cert->slopes[e]);
      return json{{"certificate", slopes}, {"twistable", true}};
    }
    ExtFan fan = ext_fan(p, flags.value("certified-bound", false));
    if (flags.contains("height")) fan.height = Int(flags.at("height").get<std::int64_t>());
    if (inv.verb == "ext-fan") return to_json(fan);
    return to_json(eta_correction(g, fan));
  }
  if (inv.verb == "extend-pl") {
    need(2);
    TropicalCurve g = curve_from_json(parse_file(inputs[0]));
    json in = parse_file(inputs[1]);
    std::map<int, std::map<VertexId, Int>> ray_values;
    for (const auto& [ray, vals] : in.items())
      for (const auto& [v, x] : vals.items()) ray_values[std::stoi(ray)][v] = int_from_json(x);
    PLFunction alpha = extend_pl(g, ray_values);
    json out = to_json(g, alpha);
    out["divisor"] = to_json(div_of(alpha, g));
    return out;
  }
  if (inv.verb == "invariance") {
    need(1);
    TropicalCurve g = curve_from_json(parse_file(inputs[0]));
    std::vector<Divisor> ds;
    for (const auto& row : parse_inline_or_file(flags.at("divisors").get<std::string>()))
      ds.push_back(divisor_from_array(g, row));
    json mj = json::parse(flags.at("matrix").get<std::string>());
    IntegerMatrix m(mj.size(), mj.empty() ? 0 : mj[0].size());
    for (std::size_t i = 0; i < mj.size(); ++i)
      for (std::size_t j = 0; j < mj[i].size(); ++j) m(i, j) = int_from_json(mj[i][j]);
    Int bound = flags.contains("bound") ? Int(flags.at("bound").get<std::int64_t>()) : Int(0);
    return json{{"invariant", gl_invariance_check(g, ds, m, bound)}};
  }
  throw Error("unknown verb: " + inv.verb);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropical and polyhedral calculus for logarithmic intersection theory"};
  app.require_subcommand(1);

  Invocation inv;
  std::string out_path;
  int degree = 0;
  std::string divisor, divisors, cone_id, ray, matrix, cone_gens;
  std::int64_t bound = 0, height = 0;
  bool certified = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("inputs", inv.inputs, "input JSON file(s)");
    sub->add_option("--out", out_path, "write the report to this path");
  };
  for (const char* verb : {"pp-basis", "global-gen", "barycentric", "stellar", "refine", "chow",
                           "phi", "pushforward", "ext-fan", "twist", "extend-pl", "eta",
                           "invariance", "validate"}) {
    CLI::App* sub = app.add_subcommand(verb);
    add_common(sub);
    if (std::string(verb) == "pp-basis" || std::string(verb) == "global-gen")
      sub->add_option("--degree", degree, "graded degree")->required();
    if (std::string(verb) == "stellar") {
      sub->add_option("--cone", cone_id, "cone id")->required();
      sub->add_option("--ray", ray, "interior ray, e.g. [1,1]")->required();
    }
    if (std::string(verb) == "ext-fan" || std::string(verb) == "twist" ||
        std::string(verb) == "eta") {
      sub->add_option("--divisor", divisor, "divisor as [d_v ...] in vertex order")->required();
      sub->add_option("--bound", bound, "slope bound");
      sub->add_flag("--certified-bound", certified, "record the bound as exhaustive");
      if (std::string(verb) == "twist")
        sub->add_option("--cone", cone_gens, "subcone generators, e.g. [[1,1]]")->required();
    }
    if (std::string(verb) == "invariance") {
      sub->add_option("--divisors", divisors, "list of divisors")->required();
      sub->add_option("--matrix", matrix, "unimodular integer matrix")->required();
      sub->add_option("--bound", bound, "slope bound");
    }
    if (std::string(verb) == "ext-fan" || std::string(verb) == "eta")
      sub->add_option("--height", height, "height cutoff recorded with the fan");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  inv.verb = sub->get_name();
  if (degree || inv.verb == "pp-basis" || inv.verb == "global-gen") inv.flags["degree"] = degree;
  if (!divisor.empty()) inv.flags["divisor"] = divisor;
  if (!divisors.empty()) inv.flags["divisors"] = divisors;
  if (!cone_id.empty()) inv.flags["cone"] = cone_id;
  if (!cone_gens.empty()) inv.flags["cone"] = cone_gens;
  if (!ray.empty()) inv.flags["ray"] = ray;
  if (!matrix.empty()) inv.flags["matrix"] = matrix;
  if (bound) inv.flags["bound"] = bound;
  if (height) inv.flags["height"] = height;
  if (certified) inv.flags["certified-bound"] = true;

  (void)max_threads();

  auto start = std::chrono::steady_clock::now();
  json report;
  try {
    report["payload"] = run_verb(inv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  report["verb"] = inv.verb;
  std::string in_bytes;
  for (const auto& p : inv.inputs) in_bytes += read_file(p);
  report["input_digest"] = digest(in_bytes + inv.flags.dump());
  report["flags"] = inv.flags;
  report["timing_ms"] = elapsed.count();

  std::string text = canonical_dump(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}
