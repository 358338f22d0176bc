#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "weylks/certificate.hpp"

// Certificate files are UTF-8 JSON with four top-level keys:
//
//   dofs       integer, number of degrees of freedom
//   theta      array of rational strings ("1", "1/3", ...), one per dof
//   monomials  map from id to monomial text ("-1 * U1^-1 V2", ...)
//   contexts   array of arrays of ids
//
// A "format" tag ("weylks-cert/1") is written on save and checked on load
// when present, so older hand-written files without the tag still parse.
// Monomial text uses the same syntax to_string produces, and printing
// followed by parsing is exact, so save/load round-trips certificates
// bit-for-bit including phases.

namespace weylks {

inline constexpr const char* kCertFormatTag = "weylks-cert/1";

inline nlohmann::json certificate_to_json(const Certificate& cert) {
  if (!cert.system) throw error("certificate has no degree-of-freedom system");
  nlohmann::json j;
  j["format"] = kCertFormatTag;
  j["dofs"] = cert.system->n_dof();
  auto theta = nlohmann::json::array();
  for (const auto& t : cert.system->thetas()) theta.push_back(rational_to_string(t));
  j["theta"] = std::move(theta);
  auto mons = nlohmann::json::object();
  for (const auto& [id, w] : cert.monomials) mons[id] = to_string(w);
  j["monomials"] = std::move(mons);
  auto ctxs = nlohmann::json::array();
  for (const auto& ctx : cert.contexts) {
    auto row = nlohmann::json::array();
    for (const auto& id : ctx) row.push_back(id);
    ctxs.push_back(std::move(row));
  }
  j["contexts"] = std::move(ctxs);
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("certificate file: top level is not an object");
  if (j.contains("format")) {
    if (!j["format"].is_string() || j["format"].get<std::string>() != kCertFormatTag)
      throw parse_error("certificate file: unsupported format tag");
  }
  for (const char* key : {"dofs", "theta", "monomials", "contexts"})
    if (!j.contains(key)) throw parse_error(std::string("certificate file: missing key '") + key + "'");

  if (!j["dofs"].is_number_integer() || j["dofs"].get<long>() < 1)
    throw parse_error("certificate file: 'dofs' must be a positive integer");
  const auto dofs = j["dofs"].get<std::size_t>();

  if (!j["theta"].is_array() || j["theta"].size() != dofs)
    throw parse_error("certificate file: 'theta' must list one rational per dof");
  std::vector<Rat> theta;
  theta.reserve(dofs);
  for (const auto& t : j["theta"]) {
    if (!t.is_string()) throw parse_error("certificate file: theta entries must be strings");
    theta.push_back(parse_rational(t.get<std::string>()));
  }

  Certificate cert;
  cert.system = make_system(std::move(theta));

  if (!j["monomials"].is_object())
    throw parse_error("certificate file: 'monomials' must map ids to monomial text");
  for (const auto& [id, text] : j["monomials"].items()) {
    if (id.empty()) throw parse_error("certificate file: empty monomial id");
    if (!text.is_string())
      throw parse_error("certificate file: monomial '" + id + "' is not a string");
    cert.monomials.emplace(id, parse_monomial(text.get<std::string>(), cert.system));
  }

  if (!j["contexts"].is_array())
    throw parse_error("certificate file: 'contexts' must be an array of id arrays");
  for (const auto& row : j["contexts"]) {
    if (!row.is_array() || row.empty())
      throw parse_error("certificate file: each context must be a nonempty array");
    std::vector<std::string> ctx;
    ctx.reserve(row.size());
    for (const auto& id : row) {
      if (!id.is_string()) throw parse_error("certificate file: context ids must be strings");
      auto s = id.get<std::string>();
      if (!cert.monomials.count(s))
        throw parse_error("certificate file: context names unknown monomial '" + s + "'");
      ctx.push_back(std::move(s));
    }
    cert.contexts.push_back(std::move(ctx));
  }
  return cert;
}

inline void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open '" + path + "' for writing");
  out << certificate_to_json(cert).dump(2) << '\n';
  if (!out) throw error("write to '" + path + "' failed");
}

inline Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("certificate file '" + path + "': " + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace weylks
