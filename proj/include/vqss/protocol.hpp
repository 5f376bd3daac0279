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

// One secret-sharing session: the dealer embeds (S1, S2, N) and the
// private value s into three qudits, each participant of the line applies
// U_{p_j, c_j}, the last one measures in basis k = 0 and publishes R, the
// participants exchange their p_j, recover p_0 = R - sum p_j and check
// p_0^1 = p_0^2 * p_0^3.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqss/error.hpp"
#include "vqss/gf.hpp"
#include "vqss/qudit.hpp"
#include "vqss/rng.hpp"
#include "vqss/sss.hpp"

namespace vqss::protocol {

using qudit::MubLabel;
using qudit::QuditState;
using qudit::SpacePtr;

/// One value per qudit v = 1, 2, 3.
using Triple = std::array<FieldElement, 3>;

struct SessionParams {
  PrimeModulus d;
  std::size_t t = 1;
  std::size_t n = 1;
  std::vector<FieldElement> active;  // x of Bob_1 .. Bob_m in line order

  std::size_t m() const { return active.size(); }

  /// Shareholders x = 1..n, the first m of them on the line.
  static SessionParams standard(std::uint64_t d, std::size_t t, std::size_t n,
                                std::size_t m) {
    PrimeModulus mod(d);
    SessionParams p{mod, t, n, {}};
    for (std::size_t i = 1; i <= m; ++i) {
      p.active.push_back(FieldElement::reduce(mod, i));
    }
    return p;
  }

  void validate() const {
    const std::uint64_t d_value = d.value();
    if (t < 1) throw ValidationError("threshold t must be at least 1");
    if (n < t) {
      throw ValidationError("threshold t=" + std::to_string(t) +
                            " exceeds shareholder count n=" +
                            std::to_string(n));
    }
    if (n >= d_value) {
      throw ValidationError("shareholder count n=" + std::to_string(n) +
                            " must be below d=" + std::to_string(d_value));
    }
    if (m() < t) {
      throw ValidationError("active participants m=" + std::to_string(m()) +
                            " below threshold t=" + std::to_string(t));
    }
    if (m() > n) {
      throw ValidationError("active participants m=" + std::to_string(m()) +
                            " exceed n=" + std::to_string(n));
    }
    for (const auto& x : active) {
      if (!(x.modulus() == d)) {
        throw ValidationError("participant identity over a different modulus");
      }
    }
    sss::detail::check_identities(active);
  }
};

/// Shares of all n shareholders and the private value s they encode.
struct ClassicalDeal {
  FieldElement private_value;
  std::vector<sss::Share> shares;

  const sss::Share& share_of(FieldElement x) const {
    auto it = std::find_if(shares.begin(), shares.end(),
                           [&](const sss::Share& s) { return s.x == x; });
    if (it == shares.end()) {
      throw ValidationError("no share dealt to x=" + std::to_string(x.value()));
    }
    return *it;
  }
};

/// Deals a uniformly random private value to the identities `xs`
/// (x = 1..n when empty).
inline ClassicalDeal deal_classical(
    const SessionParams& params, Rng& rng,
    std::span<const FieldElement> xs = {},
    const sss::AdditiveComponentScheme& scheme = sss::shamir()) {
  std::vector<FieldElement> ids(xs.begin(), xs.end());
  if (ids.empty()) {
    for (std::size_t i = 1; i <= params.n; ++i) {
      ids.push_back(FieldElement::reduce(params.d, i));
    }
  }
  if (ids.size() != params.n) {
    throw ValidationError("expected " + std::to_string(params.n) +
                          " shareholder identities");
  }
  FieldElement s = rng.field(params.d);
  return {s, scheme.deal(s, params.t, ids, rng)};
}

struct DealerSecrets {
  FieldElement s1;
  FieldElement s2;
  FieldElement check;          // N with S1 = S2 * N
  FieldElement private_value;  // s

  /// N = S1 / S2; S2 = 0 cannot bind S1 and is rejected.
  static DealerSecrets make(FieldElement s1, FieldElement s2,
                            FieldElement private_value) {
    if (s2.is_zero()) {
      throw ValidationError("S2 must be nonzero so that S1 = S2 * N binds S1");
    }
    return {s1, s2, s1 / s2, private_value};
  }

  Triple p0() const { return {s1, s2, check}; }
  FieldElement q0() const { return -private_value; }
};

/// A traveling qudit and its exact MUB label.
struct TrackedQudit {
  QuditState state;
  MubLabel label;
};

using QuditTriple = std::array<TrackedQudit, 3>;

inline QuditTriple dealer_prepare(const SpacePtr& space,
                                  const DealerSecrets& secrets) {
  PrimeModulus d = space->modulus();
  const MubLabel start{FieldElement::zero(d), FieldElement::zero(d)};
  const auto origin = qudit::mub_vector(space, start);
  const Triple p0 = secrets.p0();
  auto prepare = [&](std::size_t v) {
    return TrackedQudit{qudit::apply_unitary(origin, p0[v], secrets.q0()),
                        qudit::label_apply(start, p0[v], secrets.q0())};
  };
  return {prepare(0), prepare(1), prepare(2)};
}

struct HopOptions {
  std::optional<Triple> randoms;          // test hook: forced p_j^v
  std::optional<FieldElement> component;  // replaces c_j
};

struct HopRecord {
  FieldElement participant;  // x_j
  Triple p;
  FieldElement q;
  std::array<MubLabel, 3> labels_after;
  bool honest = true;
};

/// Applies U_{p_j^v, c_j} to each qudit; the same q = c_j is used for all v.
inline HopRecord participant_hop(
    QuditTriple& qudits, const sss::Share& share,
    std::span<const FieldElement> active, Rng& rng,
    const HopOptions& options = {},
    const sss::AdditiveComponentScheme& scheme = sss::shamir()) {
  const PrimeModulus d = share.x.modulus();
  const FieldElement honest_q = scheme.component(share, active).value;
  const FieldElement q = options.component.value_or(honest_q);
  Triple p = options.randoms.value_or(
      Triple{FieldElement::zero(d), FieldElement::zero(d),
             FieldElement::zero(d)});
  for (std::size_t v = 0; v < 3; ++v) {
    if (!options.randoms) p[v] = rng.field(d);
    qudits[v].state = qudit::apply_unitary(qudits[v].state, p[v], q);
    qudits[v].label = qudit::label_apply(qudits[v].label, p[v], q);
  }
  return {share.x, p, q,
          {qudits[0].label, qudits[1].label, qudits[2].label},
          q == honest_q};
}

/// Bob_m measures every qudit in basis {|phi_l^0>}.
inline Triple final_measure(QuditTriple& qudits, Rng& rng) {
  const PrimeModulus d = qudits[0].label.k.modulus();
  const FieldElement basis = FieldElement::zero(d);
  Triple r{basis, basis, basis};
  for (std::size_t v = 0; v < 3; ++v) {
    auto m = qudit::measure_in_basis(qudits[v].state, basis, rng);
    r[v] = m.outcome;
    qudits[v].label = {m.outcome, basis};
    qudits[v].state = std::move(m.post_state);
  }
  return r;
}

/// p_0^v = R_v - sum_j p_j^v.
inline Triple recover(const Triple& published,
                      std::span<const Triple> exchanged) {
  if (exchanged.empty()) throw ProtocolError("no participant randoms");
  Triple p0 = published;
  for (const auto& p : exchanged) {
    for (std::size_t v = 0; v < 3; ++v) p0[v] -= p[v];
  }
  return p0;
}

enum class Verdict { accepted, rejected };

inline const char* to_string(Verdict v) {
  return v == Verdict::accepted ? "accepted" : "rejected";
}

inline Verdict verify(const Triple& recovered) {
  return recovered[0] == recovered[1] * recovered[2] ? Verdict::accepted
                                                     : Verdict::rejected;
}

enum class EventKind { prepare, hop, measure, publish, exchange, recover, verify };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::prepare: return "prepare";
    case EventKind::hop: return "hop";
    case EventKind::measure: return "measure";
    case EventKind::publish: return "publish";
    case EventKind::exchange: return "exchange";
    case EventKind::recover: return "recover";
    case EventKind::verify: return "verify";
  }
  return "?";
}

struct Event {
  EventKind kind;
  std::size_t participant = 0;  // 1-based line position for hop/exchange

  friend bool operator==(const Event&, const Event&) = default;
};

struct Transcript {
  SessionParams params;
  std::optional<DealerSecrets> secrets{};
  std::vector<sss::Share> shares{};  // of the active participants, line order
  std::vector<HopRecord> hops{};
  std::optional<Triple> measured{};
  std::optional<Triple> published{};
  std::vector<std::optional<Triple>> exchanged{};  // indexed by line position
  std::optional<Triple> recovered{};
  std::optional<Verdict> verdict{};
  std::vector<Event> events{};
};

/// Checks the event log: prepare, m hops in line order, measure, publish,
/// one exchange per participant, recover, verify. Returns the first
/// problem found.
inline std::optional<std::string> audit(const Transcript& tr) {
  const std::size_t m = tr.params.m();
  const auto& ev = tr.events;
  std::size_t i = 0;
  auto expect = [&](EventKind kind) -> std::optional<std::string> {
    if (i >= ev.size()) {
      return std::string("missing ") + to_string(kind) + " event";
    }
    if (ev[i].kind != kind) {
      return std::string("expected ") + to_string(kind) + " at event " +
             std::to_string(i) + ", found " + to_string(ev[i].kind);
    }
    ++i;
    return std::nullopt;
  };
  if (auto e = expect(EventKind::prepare)) return e;
  for (std::size_t j = 1; j <= m; ++j) {
    if (auto e = expect(EventKind::hop)) return e;
    if (ev[i - 1].participant != j) return "hops out of line order";
  }
  if (auto e = expect(EventKind::measure)) return e;
  if (auto e = expect(EventKind::publish)) return e;
  std::vector<bool> seen(m + 1, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (auto e = expect(EventKind::exchange)) return e;
    std::size_t who = ev[i - 1].participant;
    if (who < 1 || who > m || seen[who]) return "bad exchange participant";
    seen[who] = true;
  }
  if (auto e = expect(EventKind::recover)) return e;
  if (auto e = expect(EventKind::verify)) return e;
  if (i != ev.size()) return "trailing events after verify";
  return std::nullopt;
}

/// Sequential session with the step order enforced.
class Session {
 public:
  Session(SessionParams params, SpacePtr space = nullptr,
          const sss::AdditiveComponentScheme& scheme = sss::shamir())
      : space_(space ? std::move(space) : qudit::QuditSpace::make(params.d)),
        scheme_(&scheme),
        tr_{validated(std::move(params))} {
    if (!(space_->modulus() == tr_.params.d)) {
      throw ValidationError("qudit space dimension differs from d");
    }
    tr_.exchanged.resize(tr_.params.m());
  }

  void prepare(FieldElement s1, FieldElement s2, FieldElement private_value) {
    require(phase_ == Phase::fresh, "prepare");
    tr_.secrets = DealerSecrets::make(s1, s2, private_value);
    qudits_ = dealer_prepare(space_, *tr_.secrets);
    log({EventKind::prepare});
    phase_ = Phase::hopping;
  }

  /// The qudits currently in the channel toward the next participant.
  QuditTriple& in_flight() {
    if (!qudits_) throw ProtocolError("no qudits prepared");
    return *qudits_;
  }

  /// 1-based position of the next participant on the line.
  std::size_t next_participant() const { return tr_.hops.size() + 1; }

  const HopRecord& hop(const sss::Share& share, Rng& rng,
                       const HopOptions& options = {}) {
    require(phase_ == Phase::hopping && tr_.hops.size() < tr_.params.m(),
            "hop");
    const FieldElement expected = tr_.params.active[tr_.hops.size()];
    if (!(share.x == expected)) {
      throw ProtocolError("hop by x=" + std::to_string(share.x.value()) +
                          " but the line expects x=" +
                          std::to_string(expected.value()));
    }
    tr_.hops.push_back(participant_hop(*qudits_, share, tr_.params.active, rng,
                                       options, *scheme_));
    tr_.shares.push_back(share);
    log({EventKind::hop, tr_.hops.size()});
    return tr_.hops.back();
  }

  Triple measure(Rng& rng) {
    require(phase_ == Phase::hopping && tr_.hops.size() == tr_.params.m(),
            "measure");
    tr_.measured = final_measure(*qudits_, rng);
    log({EventKind::measure});
    phase_ = Phase::measured;
    return *tr_.measured;
  }

  void publish(const Triple& r) {
    require(phase_ == Phase::measured, "publish");
    tr_.published = r;
    log({EventKind::publish});
    phase_ = Phase::published;
  }

  /// Participant `position` (1-based) reveals its p_j^v.
  void exchange(std::size_t position) {
    require(phase_ == Phase::published, "exchange");
    if (position < 1 || position > tr_.params.m()) {
      throw ProtocolError("no participant at line position " +
                          std::to_string(position));
    }
    if (tr_.exchanged[position - 1]) {
      throw ProtocolError("participant exchanged twice");
    }
    tr_.exchanged[position - 1] = tr_.hops[position - 1].p;
    log({EventKind::exchange, position});
  }

  Triple recover() {
    require(phase_ == Phase::published, "recover");
    std::vector<Triple> randoms;
    for (std::size_t j = 0; j < tr_.exchanged.size(); ++j) {
      if (!tr_.exchanged[j]) {
        throw ProtocolError("missing randoms of participant " +
                            std::to_string(j + 1));
      }
      randoms.push_back(*tr_.exchanged[j]);
    }
    tr_.recovered = protocol::recover(*tr_.published, randoms);
    log({EventKind::recover});
    phase_ = Phase::recovered;
    return *tr_.recovered;
  }

  Verdict verify() {
    require(phase_ == Phase::recovered, "verify");
    tr_.verdict = protocol::verify(*tr_.recovered);
    log({EventKind::verify});
    phase_ = Phase::done;
    return *tr_.verdict;
  }

  const Transcript& transcript() const { return tr_; }
  Transcript release() && { return std::move(tr_); }
  const SpacePtr& space() const { return space_; }
  const sss::AdditiveComponentScheme& scheme() const { return *scheme_; }

 private:
  enum class Phase { fresh, hopping, measured, published, recovered, done };

  static SessionParams validated(SessionParams params) {
    params.validate();
    return params;
  }

  void require(bool ok, const char* step) const {
    if (!ok) throw ProtocolError(std::string("step '") + step + "' out of order");
  }

  void log(Event e) { tr_.events.push_back(e); }

  SpacePtr space_;
  const sss::AdditiveComponentScheme* scheme_;
  Transcript tr_;
  std::optional<QuditTriple> qudits_;
  Phase phase_ = Phase::fresh;
};

/// Hooks through which an adversary acts on a running session. The default
/// implementation is honest.
class Interceptor {
 public:
  virtual ~Interceptor() = default;

  /// Qudits in the channel into line position `next` (1 = dealer to Bob_1).
  virtual void on_channel(std::size_t /*next*/, QuditTriple& /*qudits*/,
                          Rng& /*rng*/) {}

  /// Value used instead of the honest component c_j, if any.
  virtual std::optional<FieldElement> substitute_component(
      std::size_t /*position*/, FieldElement /*honest*/, Rng& /*rng*/) {
    return std::nullopt;
  }

  /// What Bob_m announces given what he measured.
  virtual Triple publish(const Triple& measured, Rng& /*rng*/) {
    return measured;
  }
};

/// Runs prepare, hops, measure, publish, exchange, recover and verify in
/// order. The line follows params.active; any permutation of it gives the
/// same verdict since the hop operators commute.
inline Transcript run_session(
    const SessionParams& params, const ClassicalDeal& deal, FieldElement s1,
    FieldElement s2, Rng& rng, Interceptor* interceptor = nullptr,
    const SpacePtr& space = nullptr,
    const sss::AdditiveComponentScheme& scheme = sss::shamir()) {
  Interceptor honest;
  Interceptor& adversary = interceptor ? *interceptor : honest;
  Session session(params, space, scheme);
  session.prepare(s1, s2, deal.private_value);
  for (std::size_t j = 1; j <= params.m(); ++j) {
    adversary.on_channel(j, session.in_flight(), rng);
    const sss::Share& share = deal.share_of(params.active[j - 1]);
    HopOptions options;
    options.component = adversary.substitute_component(
        j, scheme.component(share, params.active).value, rng);
    session.hop(share, rng, options);
  }
  const Triple measured = session.measure(rng);
  session.publish(adversary.publish(measured, rng));
  for (std::size_t j = 1; j <= params.m(); ++j) session.exchange(j);
  session.recover();
  session.verify();
  return std::move(session).release();
}

inline Transcript run_honest_session(const SessionParams& params,
                                     const ClassicalDeal& deal,
                                     FieldElement s1, FieldElement s2,
                                     Rng& rng,
                                     const SpacePtr& space = nullptr) {
  return run_session(params, deal, s1, s2, rng, nullptr, space);
}

/// Accepted and (S1, S2) recovered exactly.
inline bool recovered_correctly(const Transcript& tr) {
  return tr.verdict == Verdict::accepted && tr.recovered && tr.secrets &&
         (*tr.recovered)[0] == tr.secrets->s1 &&
         (*tr.recovered)[1] == tr.secrets->s2;
}

}  // namespace vqss::protocol
