#include "slicebroker/broker.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "slicebroker/error.hpp"

namespace slicebroker {

bool is_allowed_transition(SliceState from, SliceState to) noexcept {
  using S = SliceState;
  if (to == S::RELEASED) return from != S::RELEASED;
  switch (from) {
    case S::PENDING:
      return to == S::ACTIVE || to == S::EXPIRED;
    case S::ACTIVE:
      return to == S::DORMANT || to == S::EXPIRED;
    case S::DORMANT:
      return to == S::ACTIVE || to == S::EXPIRED;
    case S::EXPIRED:
    case S::RELEASED:
      return false;
  }
  return false;
}

std::vector<CellId> determine_cells(const ValidatedRequest& req, const Topology& topology,
                                    const std::vector<UeModel>& ues) {
  const SliceRequest& r = req.request();
  if (r.cells) return *r.cells;

  std::vector<CellId> cells;
  for (const auto& ue : ues) {
    if (ue.owner == r.tenant && ue.serving_cell) cells.push_back(*ue.serving_cell);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  if (cells.empty() && r.slice_template == SliceTemplate::MIOT) {
    for (const auto& [id, c] : topology.cells) cells.push_back(id);
  }
  if (cells.empty()) {
    throw Error(Errc::NO_FEASIBLE_CELLS, "tenant " + r.tenant.str() + " has no attached UEs");
  }
  return cells;
}

// CommitmentTable ------------------------------------------------------------

CommitmentTable::CommitmentTable(const std::map<CellId, std::int64_t>& capacities, Slot base, Slot length)
    : capacities_(capacities), base_(base), length_(std::max<Slot>(length, 0)) {
  for (const auto& [cell, cap] : capacities_) {
    load_[cell].assign(static_cast<std::size_t>(length_), 0);
  }
}

std::int64_t CommitmentTable::capacity(const CellId& cell) const {
  auto it = capacities_.find(cell);
  if (it == capacities_.end()) throw Error(Errc::UNKNOWN_CELL, cell);
  return it->second;
}

std::int64_t CommitmentTable::at(const CellId& cell, Slot t) const {
  auto it = load_.find(cell);
  if (it == load_.end()) throw Error(Errc::UNKNOWN_CELL, cell);
  if (t < base_ || t >= end()) return 0;
  return it->second[static_cast<std::size_t>(t - base_)];
}

void CommitmentTable::add(const CellId& cell, Interval span, std::int64_t prb) {
  auto it = load_.find(cell);
  if (it == load_.end()) throw Error(Errc::UNKNOWN_CELL, cell);
  const Slot from = std::max(span.begin, base_);
  const Slot to = std::min(span.end, end());
  for (Slot t = from; t < to; ++t) it->second[static_cast<std::size_t>(t - base_)] += prb;
}

void CommitmentTable::advance(Slot new_base) {
  if (new_base <= base_) return;
  const Slot shift = std::min(new_base - base_, length_);
  for (auto& [cell, load] : load_) {
    load.erase(load.begin(), load.begin() + shift);
    load.resize(static_cast<std::size_t>(length_), 0);
  }
  base_ = new_base;
}

// Broker ---------------------------------------------------------------------

namespace {

/// How many leading recurrences of `time` lie fully inside a window ending
/// at `end`; nullopt when a bounded time spec does not fit at all.
std::optional<std::int64_t> committable(const TimeSpec& time, Slot end) {
  const Slot d = time.duration_slots;
  if (!time.periodicity_slots) {
    if (time.start_slot + d > end) return std::nullopt;
    return 1;
  }
  const Slot p = *time.periodicity_slots;
  if (time.window_end_slot) {
    const std::int64_t count = (*time.window_end_slot - time.start_slot) / p + 1;
    if (recurrence_start(time, count - 1) + d > end) return std::nullopt;
    return count;
  }
  if (time.start_slot + d > end) return std::nullopt;
  return (end - d - time.start_slot) / p + 1;
}

Interval recurrence(const TimeSpec& time, std::int64_t k) {
  const Slot s = recurrence_start(time, k);
  return {s, s + time.duration_slots};
}

}  // namespace

Broker::Broker(BrokerConfig config, std::map<CellId, std::int64_t> capacities) : config_(config) {
  if (config_.slots_per_day <= 0) config_.slots_per_day = 1;
  registry_.committed = CommitmentTable(capacities, 0, config_.horizon_slots);
}

BrokerOutput Broker::advance_to(Slot t) {
  if (t < clock_) {
    throw Error(Errc::CLOCK_SKEW, "advance to " + std::to_string(t) + " behind " + std::to_string(clock_));
  }
  BrokerOutput out;
  if (t == clock_) return out;
  clock_ = t;
  registry_.committed.advance(t);

  std::vector<SliceRecord*> order;
  for (auto& [id, rec] : registry_.slices) {
    if (rec.open_ended) order.push_back(&rec);
  }
  std::sort(order.begin(), order.end(),
            [](const SliceRecord* a, const SliceRecord* b) { return a->admission_seq < b->admission_seq; });
  for (SliceRecord* rec : order) {
    if (!renew(*rec)) {
      out.events.push_back({t, rec->grant.slice_id, rec->grant.tenant, LifecycleKind::RENEWAL_FAILED, rec->state});
    }
  }
  return out;
}

bool Broker::renew(SliceRecord& rec) {
  auto& table = registry_.committed;
  for (;;) {
    const Interval iv = recurrence(rec.grant.time, rec.next_recurrence);
    if (iv.end > table.end()) return true;
    for (const auto& [cell, prb] : rec.grant.per_cell_prb) {
      const std::int64_t cap = table.capacity(cell);
      for (Slot t = std::max(iv.begin, table.base()); t < iv.end; ++t) {
        if (table.at(cell, t) + prb > cap) {
          rec.open_ended = false;
          return false;
        }
      }
    }
    for (const auto& [cell, prb] : rec.grant.per_cell_prb) table.add(cell, iv, prb);
    rec.next_recurrence += 1;
  }
}

void Broker::commit(SliceRecord& rec) {
  const auto count = committable(rec.grant.time, registry_.committed.end()).value_or(0);
  for (std::int64_t k = 0; k < count; ++k) {
    const Interval iv = recurrence(rec.grant.time, k);
    for (const auto& [cell, prb] : rec.grant.per_cell_prb) registry_.committed.add(cell, iv, prb);
  }
  rec.next_recurrence = count;
}

SliceGrant Broker::make_grant(const ValidatedRequest& req, const std::vector<CellId>& cells,
                              std::int64_t prb) const {
  const SliceRequest& r = req.request();
  SliceGrant g;
  g.slice_id = "slice-" + std::to_string(registry_.next_seq);
  g.request_id = r.request_id;
  g.tenant = r.tenant;
  for (const auto& c : cells) g.per_cell_prb[c] = prb;
  g.time = r.time;
  g.qos = r.qos;
  g.mode = config_.mode;
  return g;
}

void Broker::apply_grant(const SliceGrant& grant) {
  SliceRecord rec;
  rec.grant = grant;
  rec.admission_seq = registry_.next_seq++;
  rec.admitted_at = clock_;
  rec.open_ended = grant.time.periodicity_slots && !grant.time.window_end_slot;
  commit(rec);
  registry_.request_ids.insert(grant.request_id);
  registry_.slices.emplace(grant.slice_id, std::move(rec));
}

Decision Broker::admit(const ValidatedRequest& req, const std::vector<CellId>& cells,
                       const BackgroundForecast& forecast) {
  const SliceRequest& r = req.request();
  auto finish = [&](Decision d) {
    DecisionLogEntry e;
    e.kind = DecisionLogEntry::Kind::ADMIT;
    e.slot = clock_;
    e.seq = log_.size();
    e.request = r;
    e.decision = d;
    log_.push_back(std::move(e));
    return d;
  };
  auto reject = [&](RejectReason reason, std::string detail) {
    return finish(Decision::rejected(r.request_id, reason, std::move(detail)));
  };

  if (registry_.request_ids.count(r.request_id) != 0) {
    return reject(RejectReason::VALIDATION_FAILED, "duplicate request_id");
  }
  if (r.time.start_slot < clock_) {
    return reject(RejectReason::VALIDATION_FAILED, "start_slot before broker clock");
  }
  if (cells.empty()) return reject(RejectReason::NO_FEASIBLE_CELLS, "empty cell set");

  auto& table = registry_.committed;
  const auto count = committable(r.time, table.end());
  if (!count) return reject(RejectReason::HORIZON_EXCEEDED, "request extends past the commitment horizon");

  const std::int64_t prb = needed_prb(r, config_.efficiency, config_.slot_seconds);
  std::unordered_map<Slot, std::int64_t> predicted;
  for (const auto& cell : cells) {
    const std::int64_t cap = table.capacity(cell);
    predicted.clear();
    for (std::int64_t k = 0; k < *count; ++k) {
      const Interval iv = recurrence(r.time, k);
      for (Slot t = iv.begin; t < iv.end; ++t) {
        const Slot sod = t % config_.slots_per_day;
        auto it = predicted.find(sod);
        if (it == predicted.end()) {
          const double f = forecast ? forecast(cell, sod) : 0.0;
          it = predicted.emplace(sod, static_cast<std::int64_t>(std::ceil(std::max(f, 0.0)))).first;
        }
        if (table.at(cell, t) + it->second + prb > cap) {
          return reject(RejectReason::CAPACITY_EXCEEDED,
                        "cell " + cell + " slot " + std::to_string(t) + " over capacity");
        }
      }
    }
  }

  SliceGrant grant = make_grant(req, cells, prb);
  apply_grant(grant);
  return finish(Decision::granted(std::move(grant)));
}

Decision Broker::submit(const ValidatedRequest& req, const Topology& topology,
                        const std::vector<UeModel>& ues, const BackgroundForecast& forecast) {
  std::vector<CellId> cells;
  try {
    cells = determine_cells(req, topology, ues);
  } catch (const Error& e) {
    if (e.code() != Errc::NO_FEASIBLE_CELLS) throw;
    // Empty set: admit() records the rejection.
  }
  return admit(req, cells, forecast);
}

Decision Broker::reject_invalid(const SliceRequest& req, const std::string& detail) {
  Decision d = Decision::rejected(req.request_id, RejectReason::VALIDATION_FAILED, detail);
  DecisionLogEntry e;
  e.kind = DecisionLogEntry::Kind::ADMIT;
  e.slot = clock_;
  e.seq = log_.size();
  e.decision = d;
  log_.push_back(std::move(e));
  return d;
}

void Broker::transition(SliceRecord& rec, SliceState to) {
  if (!is_allowed_transition(rec.state, to)) {
    throw Error(Errc::INVARIANT_VIOLATION, "illegal transition " + std::string(enum_name(rec.state)) +
                                               " -> " + std::string(enum_name(to)) + " for " +
                                               rec.grant.slice_id);
  }
  rec.state = to;
}

BrokerOutput Broker::release(const SliceId& slice_id) {
  auto it = registry_.slices.find(slice_id);
  if (it == registry_.slices.end()) throw Error(Errc::UNKNOWN_SLICE, slice_id);
  SliceRecord& rec = it->second;
  if (rec.state == SliceState::RELEASED) throw Error(Errc::ALREADY_RELEASED, slice_id);

  // Slots already ticked stay accounted for.
  const Slot now = (last_tick_ && *last_tick_ >= clock_) ? *last_tick_ + 1 : clock_;
  for (std::int64_t k = 0; k < rec.next_recurrence; ++k) {
    Interval iv = recurrence(rec.grant.time, k);
    iv.begin = std::max(iv.begin, now);
    if (iv.begin >= iv.end) continue;
    for (const auto& [cell, prb] : rec.grant.per_cell_prb) registry_.committed.add(cell, iv, -prb);
  }

  BrokerOutput out;
  if (rec.state == SliceState::ACTIVE) {
    out.pushes.push_back(push_config(rec.grant, ConfigAction::DEACTIVATE, rec.admission_seq));
  }
  transition(rec, SliceState::RELEASED);
  rec.open_ended = false;
  out.events.push_back({now, slice_id, rec.grant.tenant, LifecycleKind::RELEASE, SliceState::RELEASED});

  DecisionLogEntry e;
  e.kind = DecisionLogEntry::Kind::RELEASE;
  e.slot = clock_;
  e.seq = log_.size();
  e.slice_id = slice_id;
  log_.push_back(std::move(e));
  return out;
}

BrokerOutput Broker::tick(Slot t) {
  if ((last_tick_ && t <= *last_tick_) || t < clock_) {
    throw Error(Errc::CLOCK_SKEW, "tick " + std::to_string(t));
  }
  BrokerOutput out = advance_to(t);

  std::vector<SliceRecord*> order;
  for (auto& [id, rec] : registry_.slices) {
    if (rec.state != SliceState::EXPIRED && rec.state != SliceState::RELEASED) order.push_back(&rec);
  }
  std::sort(order.begin(), order.end(),
            [](const SliceRecord* a, const SliceRecord* b) { return a->admission_seq < b->admission_seq; });

  for (SliceRecord* rec : order) {
    const TimeSpec& time = rec->grant.time;
    bool active = false;
    bool future = false;
    if (!time.periodicity_slots) {
      active = rec->next_recurrence > 0 && recurrence(time, 0).contains(t);
      future = time.start_slot > t;
    } else {
      const Slot p = *time.periodicity_slots;
      const std::int64_t k = t < time.start_slot ? -1 : (t - time.start_slot) / p;
      active = k >= 0 && k < rec->next_recurrence && recurrence(time, k).contains(t);
      future = k + 1 < rec->next_recurrence || rec->open_ended;
    }

    const auto& id = rec->grant.slice_id;
    const auto& tenant = rec->grant.tenant;
    if (active) {
      if (rec->state != SliceState::ACTIVE) {
        transition(*rec, SliceState::ACTIVE);
        rec->active_spans.push_back({t, t + 1});
        out.events.push_back({t, id, tenant, LifecycleKind::ACTIVATE, SliceState::ACTIVE});
        out.pushes.push_back(push_config(rec->grant, ConfigAction::ACTIVATE, rec->admission_seq));
      } else {
        rec->active_spans.back().end = t + 1;
      }
      continue;
    }
    if (rec->state == SliceState::ACTIVE) {
      const SliceState next = future ? SliceState::DORMANT : SliceState::EXPIRED;
      transition(*rec, next);
      out.events.push_back({t, id, tenant, LifecycleKind::DEACTIVATE, next});
      out.pushes.push_back(push_config(rec->grant, ConfigAction::DEACTIVATE, rec->admission_seq));
    } else if (!future) {
      transition(*rec, SliceState::EXPIRED);
      out.events.push_back({t, id, tenant, LifecycleKind::EXPIRE, SliceState::EXPIRED});
    }
  }

  last_tick_ = t;
  return out;
}

void Broker::log_clock() {
  DecisionLogEntry e;
  e.kind = DecisionLogEntry::Kind::CLOCK;
  e.slot = last_tick_.value_or(-1);
  e.seq = log_.size();
  log_.push_back(std::move(e));
}

std::int64_t Broker::prb_slots_active(const SliceId& slice, Interval range) const {
  auto it = registry_.slices.find(slice);
  if (it == registry_.slices.end()) throw Error(Errc::UNKNOWN_SLICE, slice);
  std::int64_t prb = 0;
  for (const auto& [cell, p] : it->second.grant.per_cell_prb) prb += p;
  std::int64_t slots = 0;
  for (const auto& span : it->second.active_spans) {
    slots += std::max<Slot>(0, std::min(span.end, range.end) - std::max(span.begin, range.begin));
  }
  return prb * slots;
}

Broker Broker::replay(BrokerConfig config, std::map<CellId, std::int64_t> capacities,
                      const std::vector<DecisionLogEntry>& log) {
  Broker b(config, std::move(capacities));
  auto tick_through = [&b](Slot upto) {
    for (Slot u = b.last_tick_ ? *b.last_tick_ + 1 : 0; u <= upto; ++u) b.tick(u);
  };

  for (const auto& e : log) {
    switch (e.kind) {
      case DecisionLogEntry::Kind::ADMIT: {
        tick_through(e.slot - 1);
        b.advance_to(e.slot);
        if (!e.decision) throw Error(Errc::DECODE_ERROR, "ADMIT entry without decision");
        if (e.decision->is_granted()) b.apply_grant(*e.decision->grant);
        DecisionLogEntry copy = e;
        copy.seq = b.log_.size();
        b.log_.push_back(std::move(copy));
        break;
      }
      case DecisionLogEntry::Kind::RELEASE:
        tick_through(e.slot - 1);
        b.advance_to(e.slot);
        if (!e.slice_id) throw Error(Errc::DECODE_ERROR, "RELEASE entry without slice_id");
        b.release(*e.slice_id);
        break;
      case DecisionLogEntry::Kind::CLOCK:
        tick_through(e.slot);
        b.log_clock();
        break;
    }
  }
  return b;
}

bool Broker::within_capacity() const {
  const auto& table = registry_.committed;
  for (const auto& [cell, cap] : table.capacities()) {
    for (Slot t = table.base(); t < table.end(); ++t) {
      if (table.at(cell, t) > cap) return false;
    }
  }
  return true;
}

}  // namespace slicebroker
