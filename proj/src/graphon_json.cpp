#include "gspec/graphon_json.hpp"

#include "gspec/error.hpp"

namespace gspec {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("graphon JSON is missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

json to_json(const Profile1D& r) {
  switch (r.kind()) {
    case Profile1D::Kind::kSqrt: return "sqrt";
    case Profile1D::Kind::kIdentity: return "identity";
    case Profile1D::Kind::kAffine: return json{{"name", "affine"}, {"a", r.a()}, {"b", r.b()}};
    case Profile1D::Kind::kSampled: return json{{"name", "sampled"}, {"values", r.samples()}};
  }
  return nullptr;
}

Profile1D profile_from_json(const json& j) {
  const std::string name = j.is_string() ? j.get<std::string>() : field(j, "name").get<std::string>();
  if (name == "sqrt") return Profile1D::sqrt();
  if (name == "identity") return Profile1D::identity();
  if (name == "affine") return Profile1D::affine(field(j, "a").get<double>(), field(j, "b").get<double>());
  if (name == "sampled") return Profile1D::sampled(field(j, "values").get<std::vector<double>>());
  throw ValidationError("unknown profile '" + name + "'");
}

json to_json(const Graphon& w) {
  if (const auto* c = std::get_if<ConstantGraphon>(&w.variant())) {
    return json{{"type", "constant"}, {"value", c->value}};
  }
  if (const auto* p = std::get_if<ProductGraphon>(&w.variant())) {
    json out{{"type", "product"}};
    json prof = to_json(p->profile);
    if (prof.is_string()) {
      out["profile"] = prof;
    } else {
      out["profile"] = prof["name"];
      for (auto& [k, v] : prof.items())
        if (k != "name") out[k] = v;
    }
    return out;
  }
  if (const auto* s = std::get_if<StepGraphon>(&w.variant())) {
    json rows = json::array();
    for (std::size_t i = 0; i < s->kernel.n; ++i) {
      const auto r = s->kernel.row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return json{{"type", "step"}, {"n", s->kernel.n}, {"values", rows}};
  }
  const auto& k = std::get<KernelGraphon>(w.variant());
  return json{{"type", "kernel"}, {"name", k.name}};
}

Graphon graphon_from_json(const json& j) {
  try {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "constant") return Graphon::constant(field(j, "value").get<double>());
    if (type == "product") {
      const json& prof = field(j, "profile");
      if (prof.is_string()) {
        json spec = j;
        spec["name"] = prof;
        return Graphon::product(profile_from_json(spec));
      }
      return Graphon::product(profile_from_json(prof));
    }
    if (type == "step") {
      const auto rows = field(j, "values").get<std::vector<std::vector<double>>>();
      const auto n = field(j, "n").get<std::size_t>();
      if (rows.size() != n) throw ValidationError("step graphon 'n' does not match the values matrix");
      return empirical_graphon(rows);
    }
    if (type == "kernel") return Graphon::named_kernel(field(j, "name").get<std::string>());
    throw ValidationError("unknown graphon type '" + type + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed graphon JSON: ") + e.what());
  }
}

}  // namespace gspec
