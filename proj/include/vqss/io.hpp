// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents for shares, transcripts and attack reports. JSON is the
// canonical form: keys are emitted in a fixed order and all residues are
// integers. CSV is derived from the JSON by flattening.

#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "vqss/adversary.hpp"
#include "vqss/protocol.hpp"
#include "vqss/sss.hpp"

namespace vqss::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline Json triple(const protocol::Triple& t) {
  return Json::array({t[0].value(), t[1].value(), t[2].value()});
}

inline Json rational(const stats::Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Json optional_rational(const std::optional<stats::Rational>& r) {
  return r ? rational(*r) : Json(nullptr);
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw ProtocolError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("bad field '") + key + "': " + e.what());
  }
}

inline protocol::Triple parse_triple(PrimeModulus d, const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ProtocolError("expected a triple of residues");
  }
  try {
    return {FieldElement(d, j[0].get<std::uint64_t>()),
            FieldElement(d, j[1].get<std::uint64_t>()),
            FieldElement(d, j[2].get<std::uint64_t>())};
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("bad residue: ") + e.what());
  } catch (const ValidationError& e) {
    throw ProtocolError(e.what());
  }
}

}  // namespace detail

// --- shares ----------------------------------------------------------------

struct ShareFile {
  std::uint64_t d = 0;
  std::size_t t = 0;
  std::vector<sss::Share> shares;
};

inline Json shares_to_json(PrimeModulus d, std::size_t t,
                           std::span<const sss::Share> shares) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["d"] = d.value();
  doc["t"] = t;
  doc["n"] = shares.size();
  Json list = Json::array();
  for (const auto& s : shares) {
    list.push_back(Json{{"x", s.x.value()}, {"y", s.y.value()}});
  }
  doc["shares"] = std::move(list);
  return doc;
}

inline ShareFile shares_from_json(const Json& doc) {
  try {
    ShareFile file;
    file.d = doc.at("d").get<std::uint64_t>();
    file.t = doc.at("t").get<std::size_t>();
    PrimeModulus d(file.d);
    for (const auto& s : doc.at("shares")) {
      file.shares.push_back({FieldElement(d, s.at("x").get<std::uint64_t>()),
                             FieldElement(d, s.at("y").get<std::uint64_t>())});
    }
    if (file.shares.size() != doc.at("n").get<std::size_t>()) {
      throw ValidationError("share count does not match n");
    }
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed share file: ") + e.what());
  }
}

// --- transcripts -----------------------------------------------------------

struct TranscriptExport {
  bool include_secrets = false;
};

inline Json transcript_to_json(const protocol::Transcript& tr,
                               TranscriptExport options = {}) {
  const auto& p = tr.params;
  Json doc;
  doc["version"] = kFormatVersion;
  doc["d"] = p.d.value();
  doc["t"] = p.t;
  doc["n"] = p.n;
  doc["m"] = p.m();
  Json xs = Json::array();
  for (const auto& x : p.active) xs.push_back(x.value());
  doc["xs"] = std::move(xs);
  doc["R"] = tr.published ? detail::triple(*tr.published) : Json(nullptr);
  Json exchanged = Json::array();
  for (const auto& e : tr.exchanged) {
    exchanged.push_back(e ? detail::triple(*e) : Json(nullptr));
  }
  doc["exchanged"] = std::move(exchanged);
  doc["recovered"] = tr.recovered ? detail::triple(*tr.recovered) : Json(nullptr);
  doc["verdict"] =
      tr.verdict ? Json(protocol::to_string(*tr.verdict)) : Json(nullptr);
  Json events = Json::array();
  for (const auto& e : tr.events) {
    std::string name = protocol::to_string(e.kind);
    if (e.participant) name += ":" + std::to_string(e.participant);
    events.push_back(std::move(name));
  }
  doc["events"] = std::move(events);
  if (options.include_secrets && tr.secrets) {
    doc["secrets"] = Json{{"S1", tr.secrets->s1.value()},
                          {"S2", tr.secrets->s2.value()},
                          {"N", tr.secrets->check.value()},
                          {"s", tr.secrets->private_value.value()}};
    Json shares = Json::array();
    for (const auto& s : tr.shares) {
      shares.push_back(Json{{"x", s.x.value()}, {"y", s.y.value()}});
    }
    doc["shares"] = std::move(shares);
    Json hops = Json::array();
    for (const auto& h : tr.hops) {
      Json labels = Json::array();
      for (const auto& l : h.labels_after) {
        labels.push_back(Json::array({l.l.value(), l.k.value()}));
      }
      hops.push_back(Json{{"x", h.participant.value()},
                          {"p", detail::triple(h.p)},
                          {"q", h.q.value()},
                          {"labels", std::move(labels)},
                          {"honest", h.honest}});
    }
    doc["hops"] = std::move(hops);
    doc["measured"] = tr.measured ? detail::triple(*tr.measured) : Json(nullptr);
  }
  return doc;
}

/// Re-derives the verdict of an exported transcript from its public part.
/// Throws ProtocolError if the document is malformed: events out of order
/// (for instance randoms exchanged before R was published), a recovered
/// triple that does not follow from R and the exchanged randoms, or a
/// verdict that does not follow from the recovered triple.
inline protocol::Verdict check_transcript(const Json& doc) {
  using protocol::EventKind;
  const auto d_value = detail::field<std::uint64_t>(doc, "d");
  std::optional<PrimeModulus> d;
  try {
    d.emplace(d_value);
  } catch (const ValidationError& e) {
    throw ProtocolError(e.what());
  }
  protocol::SessionParams params{*d, detail::field<std::size_t>(doc, "t"),
                                 detail::field<std::size_t>(doc, "n"), {}};
  for (auto x : detail::field<std::vector<std::uint64_t>>(doc, "xs")) {
    params.active.push_back(FieldElement::reduce(*d, x));
  }
  if (params.m() != detail::field<std::size_t>(doc, "m")) {
    throw ProtocolError("m does not match xs");
  }
  protocol::Transcript tr{params};
  for (const auto& name : detail::field<std::vector<std::string>>(doc, "events")) {
    auto colon = name.find(':');
    std::string kind = name.substr(0, colon);
    std::size_t who = 0;
    if (colon != std::string::npos) {
      try {
        who = std::stoul(name.substr(colon + 1));
      } catch (const std::exception&) {
        throw ProtocolError("bad event '" + name + "'");
      }
    }
    std::optional<EventKind> parsed;
    for (auto k : {EventKind::prepare, EventKind::hop, EventKind::measure,
                   EventKind::publish, EventKind::exchange, EventKind::recover,
                   EventKind::verify}) {
      if (kind == protocol::to_string(k)) parsed = k;
    }
    if (!parsed) throw ProtocolError("unknown event '" + name + "'");
    tr.events.push_back({*parsed, who});
  }
  if (auto problem = protocol::audit(tr)) {
    throw ProtocolError("malformed transcript: " + *problem);
  }
  const auto published = detail::parse_triple(*d, doc.at("R"));
  std::vector<protocol::Triple> exchanged;
  for (const auto& e : doc.at("exchanged")) {
    exchanged.push_back(detail::parse_triple(*d, e));
  }
  if (exchanged.size() != params.m()) {
    throw ProtocolError("missing participant randoms");
  }
  const auto recovered = protocol::recover(published, exchanged);
  if (recovered != detail::parse_triple(*d, doc.at("recovered"))) {
    throw ProtocolError("recovered values do not follow from R and randoms");
  }
  const auto verdict = protocol::verify(recovered);
  if (detail::field<std::string>(doc, "verdict") != protocol::to_string(verdict)) {
    throw ProtocolError("verdict does not follow from recovered values");
  }
  return verdict;
}

// --- attack reports --------------------------------------------------------

inline Json report_to_json(const adversary::AttackReport& r) {
  const auto ci = r.ci95();
  Json doc;
  doc["strategy"] = std::string(adversary::to_string(r.strategy));
  doc["d"] = r.d;
  doc["t"] = r.t;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["trials"] = r.trials;
  doc["detected"] = r.detected;
  doc["undetected_wrong_secret"] = r.undetected_wrong_secret;
  doc["attacker_learned_secret"] = r.attacker_learned_secret;
  doc["detection_rate"] = r.detection_rate();
  doc["ci95"] = Json::array({ci.low, ci.high});
  doc["prediction"] = r.prediction();
  doc["seed"] = r.seed;
  doc["disturbed"] = r.disturbed;
  doc["disturbance_rate"] = r.disturbance_rate();
  doc["undetected_rate"] = r.undetected_rate();
  doc["learned_rate"] = r.learned_rate();
  doc["nominal_prediction"] = adversary::nominal_prediction(r.d);
  doc["model"] = Json{
      {"detection", detail::optional_rational(r.model.detection)},
      {"undetected_wrong_secret",
       detail::optional_rational(r.model.undetected_wrong_secret)},
      {"disturbance", detail::optional_rational(r.model.disturbance)}};
  doc["published_histogram"] = r.published_histogram;
  return doc;
}

inline Json exact_report_to_json(const adversary::ExactReport& r) {
  Json doc;
  doc["strategy"] = std::string(adversary::to_string(r.strategy));
  doc["mode"] = "exhaustive";
  doc["d"] = r.d;
  doc["t"] = r.t;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["leaves"] = r.leaves;
  doc["detection"] = detail::rational(r.detection);
  doc["undetected_wrong_secret"] = detail::rational(r.undetected_wrong_secret);
  doc["disturbance"] = detail::rational(r.disturbance);
  doc["attacker_learned_secret"] = detail::rational(r.attacker_learned_secret);
  doc["model"] = Json{
      {"detection", detail::optional_rational(r.model.detection)},
      {"undetected_wrong_secret",
       detail::optional_rational(r.model.undetected_wrong_secret)},
      {"disturbance", detail::optional_rational(r.model.disturbance)}};
  doc["seed"] = r.seed;
  return doc;
}

inline Json summary_to_json(std::span<const adversary::SummaryRow> rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back(Json{{"strategy", row.strategy},
                       {"d", row.d},
                       {"trials", row.trials},
                       {"detection_rate", row.detection_rate},
                       {"ci_low", row.ci_low},
                       {"ci_high", row.ci_high},
                       {"prediction", row.prediction},
                       {"nominal_prediction", row.nominal_prediction}});
  }
  return out;
}

// --- text forms ------------------------------------------------------------

/// Canonical serialization: two-space indent, trailing newline.
inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

namespace detail {

inline void flatten(const Json& value, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& cells) {
  if (value.is_object()) {
    for (auto it = value.begin(); it != value.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              cells);
    }
    return;
  }
  std::string text;
  if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) text += ';';
      const Json& item = value[i];
      if (item.is_array()) {
        for (std::size_t k = 0; k < item.size(); ++k) {
          if (k) text += ' ';
          text += item[k].dump();
        }
      } else {
        text += item.is_string() ? item.get<std::string>() : item.dump();
      }
    }
  } else if (value.is_string()) {
    text = value.get<std::string>();
  } else if (!value.is_null()) {
    text = value.dump();
  }
  cells.emplace_back(prefix, std::move(text));
}

}  // namespace detail

/// Header plus one row per object; columns follow the JSON key order with
/// nested keys dotted and arrays joined by ';'.
inline std::string to_csv(const Json& doc) {
  std::vector<Json> rows;
  if (doc.is_array()) {
    rows.assign(doc.begin(), doc.end());
  } else {
    rows.push_back(doc);
  }
  std::ostringstream out;
  bool header = false;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, std::string>> cells;
    detail::flatten(row, "", cells);
    if (!header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "," : "") << cells[i].first;
      }
      out << '\n';
      header = true;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i].second;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vqss::io
