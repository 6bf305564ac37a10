#include "smoothed/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace smoothed {

namespace {

using nlohmann::json;

// JSON has no infinity; -inf logs are written as null.
json log_value(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double read_log(const json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string to_json(const DiscreteDistribution& dist) {
  json atoms = json::array();
  for (const Atom& a : dist.atoms()) {
    atoms.push_back({{"v", a.unit}, {"p", a.prob()}, {"ln_scale", a.ln_scale}, {"ln_p", log_value(a.ln_prob)}});
  }
  return json{{"m", dist.items()}, {"atoms", atoms}}.dump(2);
}

DiscreteDistribution discrete_from_json(const std::string& text) {
  const json doc = parse(text);
  DiscreteDistribution dist = guarded([&] {
    DiscreteDistribution d(doc.at("m").get<std::size_t>());
    for (const json& a : doc.at("atoms")) {
      Atom atom;
      atom.unit = a.at("v").get<Vector>();
      atom.ln_scale = a.value("ln_scale", 0.0);
      if (a.contains("ln_p")) {
        atom.ln_prob = read_log(a.at("ln_p"));
      } else {
        const double p = a.at("p").get<double>();
        if (p < 0.0) throw FormatError("negative probability");
        atom.ln_prob = std::log(p);
      }
      d.add(std::move(atom));
    }
    return d;
  });
  if (const auto v = validate(dist)) throw FormatError("invalid distribution: " + v->message);
  return dist;
}

std::string to_json(const JointDiscreteDistribution& dist) {
  json profiles = json::array();
  for (const Profile& p : dist.profiles()) profiles.push_back({{"v", p.values}, {"p", p.prob}});
  return json{{"n", dist.buyers()}, {"m", dist.items()}, {"profiles", profiles}}.dump(2);
}

JointDiscreteDistribution joint_from_json(const std::string& text) {
  const json doc = parse(text);
  JointDiscreteDistribution dist = guarded([&] {
    JointDiscreteDistribution d(doc.at("n").get<std::size_t>(), doc.at("m").get<std::size_t>());
    for (const json& p : doc.at("profiles")) {
      d.add(Profile{p.at("v").get<std::vector<Vector>>(), p.at("p").get<double>()});
    }
    return d;
  });
  if (const auto v = validate(dist)) throw FormatError("invalid joint distribution: " + v->message);
  return dist;
}

std::string to_json(const Menu& menu) {
  json entries = json::array();
  for (const MenuEntry& e : menu.entries()) {
    const double linear = e.price.linear();
    entries.push_back({{"q", e.allocation},
                       {"price", std::isfinite(linear) ? json(linear) : json(nullptr)},
                       {"ln_price", log_value(e.price.ln())}});
  }
  return json{{"m", menu.items()}, {"entries", entries}}.dump(2);
}

Menu menu_from_json(const std::string& text) {
  const json doc = parse(text);
  return guarded([&] {
    Menu menu(doc.at("m").get<std::size_t>());
    try {
      for (const json& e : doc.at("entries")) {
        Vector q = e.at("q").get<Vector>();
        if (e.contains("ln_price")) {
          menu.add(std::move(q), LogScaled::from_log(read_log(e.at("ln_price"))));
        } else {
          menu.add(std::move(q), e.at("price").get<double>());
        }
      }
    } catch (const std::invalid_argument& err) {
      throw FormatError(std::string("invalid menu: ") + err.what());
    }
    return menu;
  });
}

std::string to_json(const Table& table, const std::vector<std::pair<std::string, std::string>>& meta) {
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  // ordered_json keeps the declared key order so output is stable and readable
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["experiment"] = table.experiment;
  doc["meta"] = m;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace smoothed
