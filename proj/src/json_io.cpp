#include "eberlein/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace eberlein {

namespace {

const json& need(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at + "/" + key, "missing field");
  return *it;
}

double need_number(const json& j, const char* key, const std::string& at) {
  const json& v = need(j, key, at);
  if (!v.is_number()) throw SchemaError(at + "/" + key, "expected a number");
  return v.get<double>();
}

cplx complex_from_json(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError(at, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

Point point_from_json(const json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) throw SchemaError(at, "expected a coordinate array");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(at + "/" + std::to_string(i), "expected a number");
    p.push_back(j[i].get<double>());
  }
  return p;
}

json values_to_json(const std::vector<cplx>& values, std::size_t first, std::size_t last) {
  json arr = json::array();
  for (std::size_t i = first; i <= last && i < values.size(); ++i)
    arr.push_back(complex_to_json(values[i]));
  return arr;
}

}  // namespace

json group_to_json(const GroupSpec& g) {
  if (g.kind == GroupSpec::Kind::finite) {
    json j{{"kind", "finite"}, {"orders", g.orders}};
    if (std::abs(g.haar - 1.0) > 1e-15) j["weight"] = g.haar;
    return j;
  }
  return json{{"kind", "real_line"}, {"L", g.window}, {"h", g.step}};
}

GroupSpec group_from_json(const json& j, const std::string& at) {
  const json& kind = need(j, "kind", at);
  if (!kind.is_string()) throw SchemaError(at + "/kind", "expected a string");
  if (kind == "finite") {
    const json& orders = need(j, "orders", at);
    if (!orders.is_array() || orders.empty())
      throw SchemaError(at + "/orders", "expected a nonempty array");
    std::vector<std::int64_t> o;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (!orders[i].is_number_integer() || orders[i].get<std::int64_t>() < 1)
        throw SchemaError(at + "/orders/" + std::to_string(i), "expected a positive integer");
      o.push_back(orders[i].get<std::int64_t>());
    }
    const double w = j.contains("weight") ? need_number(j, "weight", at) : 1.0;
    if (w <= 0.0) throw SchemaError(at + "/weight", "expected a positive number");
    return GroupSpec::finite(std::move(o), w);
  }
  if (kind == "real_line") {
    const double L = need_number(j, "L", at);
    const double h = need_number(j, "h", at);
    try {
      return GroupSpec::real_line(L, h);
    } catch (const std::exception& e) {
      throw SchemaError(at, e.what());
    }
  }
  throw SchemaError(at + "/kind", "expected \"finite\" or \"real_line\"");
}

json compact_to_json(const CompactFunction& f) {
  const GroupSpec& g = f.group;
  if (g.kind == GroupSpec::Kind::finite)
    return json{{"orders", g.orders}, {"values", values_to_json(f.values, 0, f.values.size() - 1)}};
  std::size_t first = g.index_of(Point{std::max(-g.window, f.support_lo)});
  std::size_t last = g.index_of(Point{std::min(g.window, f.support_hi)});
  // snap outward so interpolation inside the support is lossless
  if (first > 0) --first;
  if (last + 1 < g.size()) ++last;
  return json{{"support", {g.coord(first), g.coord(last)}},
              {"step", g.step},
              {"values", values_to_json(f.values, first, last)}};
}

CompactFunction compact_from_json(const json& j, const GroupSpec& g, const std::string& at) {
  CompactFunction f;
  f.group = g;
  f.values.assign(g.size(), cplx(0.0));
  const json& values = need(j, "values", at);
  if (!values.is_array()) throw SchemaError(at + "/values", "expected an array");
  if (g.kind == GroupSpec::Kind::finite) {
    if (values.size() != g.size()) throw SchemaError(at + "/values", "wrong sample count");
    for (std::size_t i = 0; i < values.size(); ++i)
      f.values[i] = complex_from_json(values[i], at + "/values/" + std::to_string(i));
    return f;
  }
  const json& support = need(j, "support", at);
  if (!support.is_array() || support.size() != 2)
    throw SchemaError(at + "/support", "expected [lo, hi]");
  const double lo = support[0].get<double>();
  const double hi = support[1].get<double>();
  const double step = need_number(j, "step", at);
  if (std::abs(step - g.step) > 1e-12)
    throw SchemaError(at + "/step", "step does not match the group grid");
  f.support_lo = lo;
  f.support_hi = hi;
  std::size_t first;
  try {
    first = g.index_of(Point{lo});
  } catch (const std::exception&) {
    throw SchemaError(at + "/support", "support bound is off the grid");
  }
  if (first + values.size() > g.size()) throw SchemaError(at + "/values", "values leave the window");
  for (std::size_t i = 0; i < values.size(); ++i)
    f.values[first + i] = complex_from_json(values[i], at + "/values/" + std::to_string(i));
  return f;
}

json k2_to_json(const K2Function& f) {
  json terms = json::array();
  for (const auto& t : f.terms())
    terms.push_back(json{{"coef", complex_to_json(t.coef)},
                         {"left", compact_to_json(t.left)},
                         {"right", compact_to_json(t.right)}});
  json j{{"terms", terms}};
  if (f.group().kind == GroupSpec::Kind::real_line)
    j["support"] = {f.support_lo(), f.support_hi()};
  return j;
}

K2Function k2_from_json(const json& j, const GroupSpec& g, const std::string& at) {
  const json& terms = need(j, "terms", at);
  if (!terms.is_array() || terms.empty())
    throw SchemaError(at + "/terms", "expected a nonempty array");
  std::optional<K2Function> f;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string here = at + "/terms/" + std::to_string(i);
    const cplx c = complex_from_json(need(terms[i], "coef", here), here + "/coef");
    const auto left = compact_from_json(need(terms[i], "left", here), g, here + "/left");
    const auto right = compact_from_json(need(terms[i], "right", here), g, here + "/right");
    auto term = K2Function::from_pair(left, right).scaled(c);
    f = f ? f->plus(term) : term;
  }
  return *f;
}

json measure_to_json(const ConcreteMeasure& mu) {
  ConcreteMeasure canon = mu;
  canon.normalize();
  json atoms = json::array();
  for (const Atom& a : canon.atoms)
    atoms.push_back(json{{"point", a.point}, {"weight", complex_to_json(a.weight)}});
  json j{{"group", group_to_json(mu.group)}, {"atoms", atoms}};
  if (canon.ac_density) {
    CompactFunction d;
    d.group = mu.group;
    d.values = *canon.ac_density;
    d.support_lo = -mu.group.window;
    d.support_hi = mu.group.window;
    j["ac_density"] = compact_to_json(d);
  } else {
    j["ac_density"] = nullptr;
  }
  if (canon.sc_part) {
    json sc_atoms = json::array();
    for (const Atom& a : canon.sc_part->atoms)
      sc_atoms.push_back(json{{"point", a.point}, {"weight", complex_to_json(a.weight)}});
    j["sc_part"] = json{{"atoms", sc_atoms}, {"level", canon.sc_part->level}};
  } else {
    j["sc_part"] = nullptr;
  }
  return j;
}

namespace {

std::vector<Atom> atoms_from_json(const json& arr, const std::string& at) {
  if (!arr.is_array()) throw SchemaError(at, "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string here = at + "/" + std::to_string(i);
    Atom a;
    a.point = point_from_json(need(arr[i], "point", here), here + "/point");
    a.weight = complex_from_json(need(arr[i], "weight", here), here + "/weight");
    atoms.push_back(std::move(a));
  }
  return atoms;
}

}  // namespace

ConcreteMeasure measure_from_json(const json& j, const std::string& at) {
  ConcreteMeasure mu;
  mu.group = group_from_json(need(j, "group", at), at + "/group");
  mu.atoms = atoms_from_json(need(j, "atoms", at), at + "/atoms");
  for (std::size_t i = 0; i < mu.atoms.size(); ++i)
    if (mu.atoms[i].point.size() !=
        (mu.group.kind == GroupSpec::Kind::finite ? mu.group.orders.size() : 1))
      throw SchemaError(at + "/atoms/" + std::to_string(i) + "/point", "wrong dimension");
  if (j.contains("ac_density") && !j["ac_density"].is_null()) {
    const auto d = compact_from_json(j["ac_density"], mu.group, at + "/ac_density");
    mu.ac_density = d.values;
  }
  if (j.contains("sc_part") && !j["sc_part"].is_null()) {
    const json& sc = j["sc_part"];
    ScApproximant part;
    part.atoms = atoms_from_json(need(sc, "atoms", at + "/sc_part"), at + "/sc_part/atoms");
    const json& level = need(sc, "level", at + "/sc_part");
    if (!level.is_number_integer())
      throw SchemaError(at + "/sc_part/level", "expected an integer");
    part.level = level.get<int>();
    mu.sc_part = std::move(part);
  }
  mu.normalize();
  return mu;
}

json semimeasure_to_json(const SemiMeasure& sm) {
  json j{{"group", group_to_json(sm.group())},
         {"dual_measure", measure_to_json(sm.dual_measure())}};
  if (sm.original())
    j["provenance"] = json{{"lifted_from_measure", measure_to_json(*sm.original())}};
  else
    j["provenance"] = "constructed_from_dual";
  return j;
}

SemiMeasure semimeasure_from_json(const json& j, const std::string& at) {
  const GroupSpec primal = group_from_json(need(j, "group", at), at + "/group");
  ConcreteMeasure nu = measure_from_json(need(j, "dual_measure", at), at + "/dual_measure");
  if (!nu.group.same_grid(dual(primal)))
    throw SchemaError(at + "/dual_measure/group", "not the dual of the primal group");
  const json& prov = need(j, "provenance", at);
  if (prov.is_string() && prov == "constructed_from_dual")
    return SemiMeasure::from_dual(primal, std::move(nu));
  if (prov.is_object() && prov.contains("lifted_from_measure")) {
    ConcreteMeasure mu =
        measure_from_json(prov["lifted_from_measure"], at + "/provenance/lifted_from_measure");
    return SemiMeasure::lift_with_dual(std::move(mu), std::move(nu));
  }
  throw SchemaError(at + "/provenance", "expected constructed_from_dual or lifted_from_measure");
}

json fb_series_to_json(const FBSeries& s) {
  json entries = json::array();
  for (const auto& e : s.entries)
    entries.push_back(json{{"chi", e.chi}, {"coef", complex_to_json(e.coefficient)}});
  return json{{"entries", entries}, {"residual_bound", s.residual_bound}};
}

json report_to_json(const ProbeReport& r) {
  json trace = json::array();
  for (const auto& [x, s] : r.trace) trace.push_back(json::array({x, s}));
  json j{{"verdict", to_string(r.verdict)},
         {"trace", trace},
         {"witnesses", r.witnesses},
         {"tolerances", r.tolerance},
         {"note", r.note}};
  if (r.growth)
    j["fitted_growth"] = json{{"model", to_string(r.growth->model)},
                              {"rate", r.growth->rate},
                              {"significance", r.growth->significance},
                              {"residual", r.growth->residual}};
  else
    j["fitted_growth"] = nullptr;
  return j;
}

json artifact(json payload, const GroupSpec& g, json options, std::uint64_t seed) {
  json j{{"version", "1.0.0"},
         {"generator", "eberlein"},
         {"group", group_to_json(g)},
         {"options", std::move(options)},
         {"seed", seed}};
  j.update(payload);
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("parse error: ") + e.what());
  }
  return j;
}

void write_json_atomic(const std::string& path, const json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << j.dump(2) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << header << '\n';
    out.precision(17);
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace eberlein
