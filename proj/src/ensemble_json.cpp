#include "gspec/ensembles.hpp"
#include "gspec/error.hpp"
#include "gspec/graphon_json.hpp"
#include "overloaded.hpp"

namespace gspec {

using detail::Overloaded;
using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("ensemble JSON is missing field '") + key + "'");
  return j.at(key);
}

EntryLaw law_from_string(const std::string& s) {
  if (s == "gaussian") return EntryLaw::kGaussian;
  if (s == "rademacher") return EntryLaw::kRademacher;
  throw ValidationError("unknown entry law '" + s + "'");
}

VarianceRule rule_from_string(const std::string& s) {
  if (s == "grid") return VarianceRule::kGrid;
  if (s == "block_average") return VarianceRule::kBlockAverage;
  throw ValidationError("unknown variance rule '" + s + "'");
}

}  // namespace

json to_json(const EnsembleSpec& spec) {
  json out{{"model", spec.name()}, {"n", spec.n}, {"seed", spec.seed}};
  std::visit(Overloaded{
                 [&](const GeneralizedWigner& m) {
                   out["graphon"] = to_json(m.w);
                   out["law"] = m.law == EntryLaw::kGaussian ? "gaussian" : "rademacher";
                   out["variance_rule"] = m.rule == VarianceRule::kGrid ? "grid" : "block_average";
                   if (m.mean) out["mean"] = to_json(*m.mean);
                 },
                 [&](const InhomER& m) {
                   out["graphon"] = to_json(m.f);
                   out["eps"] = m.eps;
                 },
                 [&](const SparseWRandom& m) {
                   out["graphon"] = to_json(m.w);
                   out["eps"] = m.eps;
                 },
                 [&](const Constrained& m) { out["kstar"] = m.kstar; },
                 [&](const DecoupledModel& m) { out["graphon"] = to_json(m.w); },
                 [&](const MultiplicativeModel& m) { out["profile"] = to_json(m.r); },
             },
             spec.model);
  return out;
}

EnsembleSpec ensemble_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ValidationError("ensemble spec must be a JSON object");
    const auto n = field(j, "n").get<std::size_t>();
    const auto seed = j.value("seed", std::uint64_t{0});
    const std::string model = field(j, "model").get<std::string>();
    auto make = [&](EnsembleVariant v) {
      EnsembleSpec spec{std::move(v), n, seed};
      spec.validate();
      return spec;
    };
    if (model == "generalized_wigner") {
      GeneralizedWigner m{graphon_from_json(field(j, "graphon")), law_from_string(j.value("law", "gaussian")),
                          rule_from_string(j.value("variance_rule", "grid")), std::nullopt};
      if (j.contains("mean")) m.mean = graphon_from_json(j.at("mean"));
      return make(std::move(m));
    }
    if (model == "inhom_er") return make(InhomER{graphon_from_json(field(j, "graphon")), field(j, "eps").get<double>()});
    if (model == "sparse_w_random") {
      return make(SparseWRandom{graphon_from_json(field(j, "graphon")), field(j, "eps").get<double>()});
    }
    if (model == "constrained") {
      const json& k = field(j, "kstar");
      if (k.is_string()) {
        if (k.get<std::string>() != "cube_root") throw ValidationError("unknown kstar rule '" + k.get<std::string>() + "'");
        return make(Constrained{cube_root_degrees(n)});
      }
      return make(Constrained{k.get<std::vector<int>>()});
    }
    if (model == "decoupled") return make(DecoupledModel{graphon_from_json(field(j, "graphon"))});
    if (model == "multiplicative") return make(MultiplicativeModel{profile_from_json(field(j, "profile"))});
    throw ValidationError("unknown ensemble model '" + model + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ensemble JSON: ") + e.what());
  }
}

}  // namespace gspec
