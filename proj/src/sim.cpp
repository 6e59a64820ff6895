#include "owncash/sim.hpp"

#include <sstream>

namespace owncash {

namespace {

// Seed-derivation domains; each deterministic stream in a run is keyed by
// (sim seed, domain, index).
constexpr uint64_t kDomainIdentity = 2;
constexpr uint64_t kDomainRotation = 3;
constexpr uint64_t kDomainDelivery = 4;

std::string field_or_dash(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : "-";
}

}  // namespace

std::string to_string(const TraceEntry& e) {
    std::ostringstream out;
    out << e.tick << ' ' << e.seq << ' ' << e.from << ' ' << e.to << ' '
        << e.kind << ' ' << field_or_dash(e.note_number) << ' '
        << field_or_dash(e.epoch) << ' ' << e.result;
    return out.str();
}

Simulation::Simulation(const SimConfig& config,
                       const crypto::PublicKey& trusted_issuer,
                       DbPolicy db_policy)
    : config_(config),
      delivery_rng_(derive_seed(config.seed, kDomainDelivery)) {
    if (config_.node_count == 0) {
        throw SimError("node_count must be positive");
    }
    nodes_.reserve(config_.node_count);
    for (NodeId id = 0; id < config_.node_count; ++id) {
        crypto::KeyPair identity = crypto::generate_keypair(
            make_seed(derive_seed(config_.seed, kDomainIdentity, id)));
        auto node = std::make_unique<NodeState>(trusted_issuer, db_policy,
                                                std::move(identity));
        node->wallet.set_broadcaster(
            [this, id](const OwnershipCert& cert) { broadcast(id, cert); });
        node->wallet.set_key_seeder(
            [stream = SplitMix64(derive_seed(config_.seed, kDomainRotation, id))]() mutable {
                return make_seed(stream);
            });
        nodes_.push_back(std::move(node));
    }
}

void Simulation::require_node(NodeId id) const {
    if (id >= nodes_.size()) {
        throw SimError("unknown node " + std::to_string(id));
    }
}

CertificateDb& Simulation::db(NodeId id) {
    require_node(id);
    return nodes_[id]->db;
}
const CertificateDb& Simulation::db(NodeId id) const {
    require_node(id);
    return nodes_[id]->db;
}
Wallet& Simulation::wallet(NodeId id) {
    require_node(id);
    return nodes_[id]->wallet;
}
const Wallet& Simulation::wallet(NodeId id) const {
    require_node(id);
    return nodes_[id]->wallet;
}

void Simulation::push(uint64_t tick, NodeId from, NodeId to, Payload payload) {
    queue_.push(Event{tick, next_seq_++, from, to, std::move(payload)});
}

void Simulation::broadcast(NodeId from, const OwnershipCert& cert) {
    require_node(from);
    for (NodeId to = 0; to < nodes_.size(); ++to) {
        if (to == from) continue;
        uint64_t tick = now_;
        if (const auto* delay = std::get_if<RandomDelay>(&config_.delivery)) {
            tick += delivery_rng_.next_below(delay->max_delay_ticks + 1);
        } else if (const auto* drop = std::get_if<DropList>(&config_.delivery)) {
            bool blocked = false;
            for (const auto& [f, t] : drop->blocked) {
                if (f == from && t == to) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
        }
        push(tick, from, to, CertDelivery{cert});
    }
}

void Simulation::send_cert(NodeId from, NodeId to, const OwnershipCert& cert) {
    require_node(from);
    require_node(to);
    push(now_ + 1, from, to, CertDelivery{cert});
}

void Simulation::send_note(NodeId from, NodeId to, Note note, NoteIntent intent,
                           const crypto::PublicKey& expected_payer) {
    require_node(from);
    require_node(to);
    push(now_ + 1, from, to, NoteDelivery{std::move(note), intent, expected_payer});
}

void Simulation::schedule(uint64_t tick, NodeId node, std::function<void()> action) {
    require_node(node);
    if (tick < now_) {
        throw ScriptError("cannot schedule in the past");
    }
    push(tick, node, node, Action{std::move(action)});
}

void Simulation::dispatch(const Event& event) {
    TraceEntry entry;
    entry.tick = event.tick;
    entry.seq = event.seq;
    entry.from = event.from;
    entry.to = event.to;

    if (const auto* cd = std::get_if<CertDelivery>(&event.payload)) {
        entry.kind = "cert";
        entry.note_number = cd->cert.note_number;
        entry.epoch = cd->cert.epoch;
        ApplyResult result = nodes_[event.to]->db.apply_certificate(cd->cert);
        if (result.applied) {
            nodes_[event.to]->wallet.on_certificate_applied(cd->cert);
        }
        entry.result = to_string(result);
    } else if (const auto* nd = std::get_if<NoteDelivery>(&event.payload)) {
        entry.kind = "note";
        entry.note_number = nd->note.part_b.note_number;
        entry.epoch = nd->note.part_a.epoch;
        Wallet& recipient = nodes_[event.to]->wallet;
        WalletResult result =
            nd->intent == NoteIntent::Issued
                ? recipient.receive_issued(nd->note)
                : recipient.accept_transfer(nd->note, nd->expected_payer);
        entry.result = to_string(result);
    } else {
        entry.kind = "ctrl";
        entry.result = "ok";
        std::get<Action>(event.payload).fn();
    }
    trace_.push_back(std::move(entry));
}

uint64_t Simulation::run_until_quiescent() {
    uint64_t last_tick = 0;
    while (!queue_.empty()) {
        if (queue_.top().tick > config_.max_ticks) {
            throw QuiescenceTimeout("event queue nonempty past tick " +
                                    std::to_string(config_.max_ticks));
        }
        Event event = queue_.top();
        queue_.pop();
        now_ = event.tick;
        last_tick = event.tick;
        dispatch(event);
    }
    return last_tick;
}

std::string Simulation::trace_text() const {
    std::string out;
    for (const TraceEntry& entry : trace_) {
        out += to_string(entry);
        out += '\n';
    }
    return out;
}

void inject_adversary(Simulation& sim, const AdversaryScript& script) {
    for (const AdversaryAction& action : script.actions) {
        if (action.from >= sim.node_count() ||
            (action.kind == AdversaryAction::Kind::Unicast &&
             action.to >= sim.node_count())) {
            throw ScriptError("adversary action references unknown node");
        }
    }
    for (const AdversaryAction& action : script.actions) {
        sim.schedule(action.tick, action.from, [&sim, action] {
            if (action.kind == AdversaryAction::Kind::Broadcast) {
                sim.broadcast(action.from, action.cert);
            } else {
                sim.send_cert(action.from, action.to, action.cert);
            }
        });
    }
}

}  // namespace owncash
