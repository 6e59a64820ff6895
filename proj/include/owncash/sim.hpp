#pragma once

// Deterministic discrete-event broadcast simulator. Virtual time is integer
// ticks; events are processed in strict (tick, seq) order with seq assigned
// at scheduling time, so a (config, script) pair fully determines the event
// trace and every node's final database.
//
// Broadcast deliveries carry only the certificate — never the sender's
// identity — so protocol decisions at a node depend solely on its own db,
// wallet state, and the delivered payload. Point-to-point sends (handing a
// note to a payee, adversary unicast) use a separate direct channel that
// always delivers one tick later, independent of the broadcast policy.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include "owncash/certificate_db.hpp"
#include "owncash/note.hpp"
#include "owncash/rng.hpp"
#include "owncash/wallet.hpp"

namespace owncash {

using NodeId = uint32_t;

struct ReliableFifo {};

// Each delivery is independently delayed by rng() % (max_delay_ticks + 1);
// the generator is the repo-wide splitmix64, seeded from the sim seed.
struct RandomDelay {
    uint64_t max_delay_ticks = 0;
};

// Reliable FIFO except that broadcasts from .first are never delivered
// to .second.
struct DropList {
    std::vector<std::pair<NodeId, NodeId>> blocked;
};

using DeliveryPolicy = std::variant<ReliableFifo, RandomDelay, DropList>;

struct SimConfig {
    uint64_t seed = 1;
    uint32_t node_count = 5;
    DeliveryPolicy delivery = ReliableFifo{};
    uint64_t max_ticks = 100000;
};

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuiescenceTimeout : SimError {
    using SimError::SimError;
};
struct ScriptError : SimError {
    using SimError::SimError;
};

enum class NoteIntent { Issued, Transfer };

struct TraceEntry {
    uint64_t tick = 0;
    uint64_t seq = 0;
    NodeId from = 0;
    NodeId to = 0;
    std::string kind;  // cert | note | ctrl
    std::optional<uint64_t> note_number;
    std::optional<uint64_t> epoch;
    std::string result;
};

// "tick seq from to kind note_number epoch result"; '-' for absent fields.
std::string to_string(const TraceEntry& entry);

class Simulation {
  public:
    Simulation(const SimConfig& config, const crypto::PublicKey& trusted_issuer,
               DbPolicy db_policy);

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    uint32_t node_count() const { return config_.node_count; }
    uint64_t now() const { return now_; }

    CertificateDb& db(NodeId id);
    const CertificateDb& db(NodeId id) const;
    Wallet& wallet(NodeId id);
    const Wallet& wallet(NodeId id) const;

    // One delivery event per other node, subject to the delivery policy.
    // The recipient applies the certificate to its db on delivery.
    void broadcast(NodeId from, const OwnershipCert& cert);

    // Direct channel: certificate to a single node (adversary use).
    void send_cert(NodeId from, NodeId to, const OwnershipCert& cert);

    // Direct channel: hand a full note to a node. On delivery the recipient
    // wallet runs receive_issued (Issued) or accept_transfer against
    // expected_payer (Transfer).
    void send_note(NodeId from, NodeId to, Note note, NoteIntent intent,
                   const crypto::PublicKey& expected_payer = {});

    // Scripted action at a future tick, attributed to `node` in the trace.
    void schedule(uint64_t tick, NodeId node, std::function<void()> action);

    // Processes events in (tick, seq) order until the queue drains; returns
    // the final tick. Throws QuiescenceTimeout if an event lies beyond
    // max_ticks while the queue is nonempty.
    uint64_t run_until_quiescent();

    const std::vector<TraceEntry>& trace() const { return trace_; }
    std::string trace_text() const;

  private:
    struct CertDelivery {
        OwnershipCert cert;
    };
    struct NoteDelivery {
        Note note;
        NoteIntent intent;
        crypto::PublicKey expected_payer;
    };
    struct Action {
        std::function<void()> fn;
    };
    using Payload = std::variant<CertDelivery, NoteDelivery, Action>;

    struct Event {
        uint64_t tick;
        uint64_t seq;
        NodeId from;
        NodeId to;
        Payload payload;
    };
    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            if (a.tick != b.tick) return a.tick > b.tick;
            return a.seq > b.seq;
        }
    };

    struct NodeState {
        CertificateDb db;
        Wallet wallet;

        NodeState(const crypto::PublicKey& issuer, DbPolicy policy,
                  crypto::KeyPair identity)
            : db(issuer, policy), wallet(std::move(identity), issuer, &db) {}
    };

    void require_node(NodeId id) const;
    void push(uint64_t tick, NodeId from, NodeId to, Payload payload);
    void dispatch(const Event& event);

    SimConfig config_;
    std::vector<std::unique_ptr<NodeState>> nodes_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    uint64_t next_seq_ = 0;
    uint64_t now_ = 0;
    SplitMix64 delivery_rng_;
    std::vector<TraceEntry> trace_;
};

struct AdversaryAction {
    enum class Kind { Broadcast, Unicast };

    uint64_t tick = 0;
    NodeId from = 0;
    Kind kind = Kind::Broadcast;
    NodeId to = 0;  // Unicast only
    OwnershipCert cert;
};

struct AdversaryScript {
    std::vector<AdversaryAction> actions;
};

// Schedules the script's certificate injections. Adversary actions bypass
// wallet-side honesty checks but not the recipients' db validation.
// Throws ScriptError on node ids outside the simulation.
void inject_adversary(Simulation& sim, const AdversaryScript& script);

}  // namespace owncash
