#include "cbal/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cbal {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line, std::string field)
    : std::runtime_error(message), line_(line), field_(std::move(field)) {}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what, 0, field);
}

const json& member(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

const json& array_at(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  return value;
}

Rational read_number(const json& value, const std::string& path) {
  try {
    if (value.is_number_integer()) return Rational(value.dump());
    if (value.is_number_float()) return parse_rational(json(value.get<double>()).dump());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path, "expected a number or rational string");
}

std::size_t read_index(const json& value, const std::string& path) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return value.get<std::size_t>();
}

DiscreteDistribution read_law(const json& value, const std::string& path) {
  array_at(value, path);
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < value.size(); ++k) {
    std::string at = path + "[" + std::to_string(k) + "]";
    const json& pair = value[k];
    if (!pair.is_array() || pair.size() != 2) fail(at, "expected [value, prob]");
    atoms.push_back({read_number(pair[0], at + "[0]"), read_number(pair[1], at + "[1]")});
  }
  try {
    return DiscreteDistribution(std::move(atoms));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json write_number(const Rational& r) {
  if (r.get_den() == 1 && mpz_fits_slong_p(r.get_num().get_mpz_t())) return json(r.get_num().get_si());
  double d = to_double(r);
  if (parse_rational(json(d).dump()) == r) return json(d);
  return json(to_string(r));
}

json write_law(const DiscreteDistribution& d) {
  json out = json::array();
  for (const auto& atom : d.atoms()) out.push_back(json::array({write_number(atom.value), write_number(atom.prob)}));
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) line += text[i] == '\n';
  return line;
}

Instance from_json(const json& doc) {
  const json& kind_value = member(doc, "kind", "");
  if (!kind_value.is_string()) fail("kind", "expected a string");
  const std::string kind = kind_value.get<std::string>();
  if (kind == "config") {
    ConfigInstance out;
    out.m = read_index(member(doc, "m", ""), "m");
    const json& requests = array_at(member(doc, "requests", ""), "requests");
    for (std::size_t j = 0; j < requests.size(); ++j) {
      std::string at = "requests[" + std::to_string(j) + "]";
      Request request;
      request.id = requests[j].contains("id") ? read_index(requests[j]["id"], at + ".id") : j;
      const json& configs = array_at(member(requests[j], "configs", at), at + ".configs");
      for (std::size_t c = 0; c < configs.size(); ++c) {
        std::string cat = at + ".configs[" + std::to_string(c) + "]";
        const json& mult = array_at(member(configs[c], "multipliers", cat), cat + ".multipliers");
        std::vector<Rational> multipliers;
        for (std::size_t i = 0; i < mult.size(); ++i) {
          multipliers.push_back(read_number(mult[i], cat + ".multipliers[" + std::to_string(i) + "]"));
        }
        request.configs.push_back({std::move(multipliers), read_law(member(configs[c], "law", cat), cat + ".law")});
      }
      out.requests.push_back(std::move(request));
    }
    return out;
  }
  if (kind == "unrelated") {
    UnrelatedInstance out;
    out.m = read_index(member(doc, "m", ""), "m");
    const json& jobs = array_at(member(doc, "jobs", ""), "jobs");
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      std::string at = "jobs[" + std::to_string(j) + "]";
      array_at(jobs[j], at);
      std::vector<DiscreteDistribution> laws;
      for (std::size_t i = 0; i < jobs[j].size(); ++i) {
        laws.push_back(read_law(jobs[j][i], at + "[" + std::to_string(i) + "]"));
      }
      out.jobs.push_back(std::move(laws));
    }
    return out;
  }
  if (kind == "related") {
    RelatedInstance out;
    const json& speeds = array_at(member(doc, "speeds", ""), "speeds");
    for (std::size_t i = 0; i < speeds.size(); ++i) {
      out.speeds.push_back(read_number(speeds[i], "speeds[" + std::to_string(i) + "]"));
    }
    const json& jobs = array_at(member(doc, "jobs", ""), "jobs");
    for (std::size_t j = 0; j < jobs.size(); ++j) out.jobs.push_back(read_law(jobs[j], "jobs[" + std::to_string(j) + "]"));
    return out;
  }
  if (kind == "routing") {
    RoutingInstance out;
    out.vertices = read_index(member(doc, "vertices", ""), "vertices");
    const json& edges = array_at(member(doc, "edges", ""), "edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::string at = "edges[" + std::to_string(e) + "]";
      if (!edges[e].is_array() || edges[e].size() != 3) fail(at, "expected [tail, head, capacity]");
      out.edges.push_back({read_index(edges[e][0], at + "[0]"), read_index(edges[e][1], at + "[1]"),
                           read_number(edges[e][2], at + "[2]")});
    }
    const json& requests = array_at(member(doc, "requests", ""), "requests");
    for (std::size_t j = 0; j < requests.size(); ++j) {
      std::string at = "requests[" + std::to_string(j) + "]";
      if (!requests[j].is_array() || requests[j].size() != 3) fail(at, "expected [source, sink, law]");
      out.requests.push_back({read_index(requests[j][0], at + "[0]"), read_index(requests[j][1], at + "[1]"),
                              read_law(requests[j][2], at + "[2]")});
    }
    return out;
  }
  fail("kind", "unknown kind '" + kind + "'");
}

json to_json(const Instance& instance) {
  json doc;
  doc["kind"] = instance_kind(instance);
  if (const auto* c = std::get_if<ConfigInstance>(&instance)) {
    doc["m"] = c->m;
    json requests = json::array();
    for (const auto& request : c->requests) {
      json configs = json::array();
      for (const auto& config : request.configs) {
        json mult = json::array();
        for (const auto& a : config.multipliers) mult.push_back(write_number(a));
        configs.push_back({{"multipliers", mult}, {"law", write_law(config.law)}});
      }
      requests.push_back({{"id", request.id}, {"configs", configs}});
    }
    doc["requests"] = requests;
  } else if (const auto* u = std::get_if<UnrelatedInstance>(&instance)) {
    doc["m"] = u->m;
    json jobs = json::array();
    for (const auto& job : u->jobs) {
      json laws = json::array();
      for (const auto& law : job) laws.push_back(write_law(law));
      jobs.push_back(laws);
    }
    doc["jobs"] = jobs;
  } else if (const auto* r = std::get_if<RelatedInstance>(&instance)) {
    json speeds = json::array();
    for (const auto& s : r->speeds) speeds.push_back(write_number(s));
    doc["speeds"] = speeds;
    json jobs = json::array();
    for (const auto& job : r->jobs) jobs.push_back(write_law(job));
    doc["jobs"] = jobs;
  } else {
    const auto& g = std::get<RoutingInstance>(instance);
    doc["vertices"] = g.vertices;
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back(json::array({e.tail, e.head, write_number(e.capacity)}));
    doc["edges"] = edges;
    json requests = json::array();
    for (const auto& req : g.requests) requests.push_back(json::array({req.source, req.sink, write_law(req.demand)}));
    doc["requests"] = requests;
  }
  return doc;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = line_of(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line, "");
  }
  Instance instance = from_json(doc);
  validate(instance);
  return instance;
}

std::string format_instance(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path.string());
  out << format_instance(instance);
}

}  // namespace cbal
