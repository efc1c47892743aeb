#include "qdcr/dcr.hpp"

#include <algorithm>
#include <atomic>

#include "qdcr/error.hpp"
#include "qdcr/qfactor.hpp"

namespace qdcr {

Index compute_d_max(const DCR& dcr) {
  Index d = 1;
  d = std::max({d, dcr.base.exps.max_index(), dcr.root.exps.max_index(), dcr.rad.exps.max_index()});
  for (const auto& r : dcr.ratios) d = std::max(d, r.exps.max_index());
  return d;
}

namespace {
std::atomic<std::uint64_t> g_compiles{0};
}  // namespace

std::uint64_t compile_count() { return g_compiles.load(); }

DCR compile(const SeriesDescriptor& desc) {
  ++g_compiles;
  auto range = bounds(desc);
  if (range.empty()) throw Error("cannot compile an empty series (z_min > z_max)");

  DCR out;
  out.z_min = range.z_min;
  out.z_max = range.z_max;
  auto split = sqrt_split(desc.prefactor_radicand);
  out.root = std::move(split.root);
  out.rad = std::move(split.rad);
  out.base = summand_monomial(desc, range.z_min);
  out.ratios.reserve(static_cast<std::size_t>(range.z_max - range.z_min));
  for (std::int64_t z = range.z_min; z < range.z_max; ++z) out.ratios.push_back(ratio_monomial(desc, z));
  out.d_max = compute_d_max(out);
  return out;
}

DCR compile_sixj(const SixJLabels& labels) { return compile(series_from_sixj(sixj_descriptor(labels))); }

std::string dcr_to_json(const DCR& dcr, int indent) {
  nlohmann::ordered_json j;
  j["z_min"] = dcr.z_min;
  j["z_max"] = dcr.z_max;
  j["d_max"] = dcr.d_max;
  j["base"] = to_json(dcr.base);
  auto ratios = nlohmann::ordered_json::array();
  for (const auto& r : dcr.ratios) ratios.push_back(to_json(r));
  j["ratios"] = std::move(ratios);
  j["root"] = to_json(dcr.root);
  j["rad"] = to_json(dcr.rad);
  return j.dump(indent);
}

DCR dcr_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("DCR JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("DCR JSON: expected an object at /");
  static const char* kKeys[] = {"z_min", "z_max", "d_max", "base", "ratios", "root", "rad"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; }) ==
        std::end(kKeys)) {
      throw ParseError("DCR JSON: unexpected key \"" + key + "\" at /");
    }
  }
  for (const char* key : kKeys) {
    if (!j.contains(key)) throw ParseError(std::string("DCR JSON: missing key \"") + key + "\" at /");
  }
  for (const char* key : {"z_min", "z_max", "d_max"}) {
    if (!j.at(key).is_number_integer()) throw ParseError(std::string("DCR JSON: integer expected at /") + key);
  }
  DCR dcr;
  try {
    dcr.z_min = j.at("z_min").get<std::int64_t>();
    dcr.z_max = j.at("z_max").get<std::int64_t>();
    dcr.d_max = j.at("d_max").get<Index>();
    dcr.base = monomial_from_json(j.at("base"), "/base");
    dcr.root = monomial_from_json(j.at("root"), "/root");
    dcr.rad = monomial_from_json(j.at("rad"), "/rad");
    const auto& ratios = j.at("ratios");
    if (!ratios.is_array()) throw ParseError("DCR JSON: array expected at /ratios");
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      dcr.ratios.push_back(monomial_from_json(ratios[i], "/ratios/" + std::to_string(i)));
    }
  } catch (const ParseError& e) {
    throw ParseError(std::string("DCR JSON: ") + e.what());
  }
  if (static_cast<std::int64_t>(dcr.ratios.size()) != dcr.z_max - dcr.z_min) {
    throw ParseError("DCR JSON: ratio count " + std::to_string(dcr.ratios.size()) + " != z_max - z_min");
  }
  if (dcr.d_max < compute_d_max(dcr)) throw ParseError("DCR JSON: d_max smaller than a stored index");
  return dcr;
}

}  // namespace qdcr
