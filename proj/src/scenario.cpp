#include "owncash/scenario.hpp"

#include <memory>
#include <sstream>

#include "owncash/issuer.hpp"

namespace owncash {

namespace {

constexpr uint64_t kDomainIssuerKey = 1;
constexpr uint64_t kFirstNoteNumber = 12345;
constexpr NodeId kIssuerNode = 0;

struct Env {
    uint64_t seed;
    crypto::KeyPair issuer_key;
    Issuer issuer;
    Simulation sim;

    Env(uint64_t seed_in, const PolicyOverrides& overrides, bool dishonest_issuer,
        std::optional<uint64_t> cap)
        : seed(seed_in),
          issuer_key(crypto::generate_keypair(
              make_seed(derive_seed(seed_in, kDomainIssuerKey)))),
          issuer(dishonest_issuer
                     ? Issuer::dishonest(issuer_key, kFirstNoteNumber, cap)
                     : Issuer(issuer_key, kFirstNoteNumber, cap)),
          sim(SimConfig{seed_in, 5, ReliableFifo{}, 100000},
              issuer_key.public_key,
              DbPolicy{overrides.require_acceptance_signature.value_or(false),
                       overrides.retain_history.value_or(false)}) {}

    crypto::PublicKey user_key(NodeId id) const {
        return sim.wallet(id).active_public_key();
    }
};

void check(std::vector<Verdict>& verdicts, std::string name, bool pass,
           std::string detail) {
    verdicts.push_back({std::move(name), pass, std::move(detail)});
}

std::string key_tag(const crypto::PublicKey& key) {
    return to_hex(std::span(key).subspan(0, 8));
}

// Owner of a note when all nodes agree on it.
std::optional<crypto::PublicKey> uniform_owner(const Simulation& sim, uint64_t n) {
    std::optional<crypto::PublicKey> owner;
    for (NodeId id = 0; id < sim.node_count(); ++id) {
        auto at_node = sim.db(id).current_owner(n);
        if (!at_node) return std::nullopt;
        if (owner && *owner != *at_node) return std::nullopt;
        owner = at_node;
    }
    return owner;
}

void check_uniform_owner(std::vector<Verdict>& verdicts, const Env& env,
                         std::string name, uint64_t n,
                         const crypto::PublicKey& expected) {
    auto owner = uniform_owner(env.sim, n);
    bool pass = owner && *owner == expected;
    std::string detail = owner ? "owner=" + key_tag(*owner) + " nodes=" +
                                     std::to_string(env.sim.node_count()) + "/" +
                                     std::to_string(env.sim.node_count())
                               : "nodes disagree or note unknown";
    check(verdicts, std::move(name), pass, std::move(detail));
}

struct TraceTally {
    size_t total = 0;
    size_t matching = 0;
};

// Tallies delivery entries of one kind for a note, counting those whose
// result matches `result` exactly.
TraceTally tally(const Simulation& sim, const std::string& kind, uint64_t n,
                 const std::string& result, std::optional<uint64_t> epoch = {}) {
    TraceTally t;
    for (const TraceEntry& e : sim.trace()) {
        if (e.kind != kind || e.note_number != n) continue;
        if (epoch && e.epoch != *epoch) continue;
        ++t.total;
        if (e.result == result) ++t.matching;
    }
    return t;
}

std::string ratio(const TraceTally& t) {
    return std::to_string(t.matching) + "/" + std::to_string(t.total);
}

// Mints a note and schedules its issuance to `owner_node` at `tick`: the
// note goes out on the direct channel, the recipient validates,
// countersigns and broadcasts. Returns the note number.
uint64_t schedule_issuance(Env& env, uint64_t tick, NodeId owner_node,
                           uint64_t amount = 1000) {
    Bytes picture = bytes_of("note artwork #" + std::to_string(env.seed));
    uint64_t n = env.issuer.mint_note(picture, amount, "EUR").first.note_number;
    env.sim.schedule(tick, kIssuerNode, [&env, n, owner_node] {
        OwnershipCert genesis =
            env.issuer.issue_to(n, env.sim.wallet(owner_node).active_public_key());
        env.sim.send_note(kIssuerNode, owner_node, env.issuer.assemble_note(n, genesis),
                          NoteIntent::Issued);
    });
    return n;
}

// Schedules an honest payment of note n from payer to payee at `tick`.
void schedule_payment(Env& env, uint64_t tick, NodeId payer, NodeId payee,
                      uint64_t n) {
    env.sim.schedule(tick, payer, [&env, payer, payee, n] {
        crypto::PublicKey payer_key =
            env.sim.db(payer).current_owner(n).value();
        Note note = env.sim.wallet(payer).make_transfer(
            n, env.sim.wallet(payee).active_public_key());
        env.sim.send_note(payer, payee, std::move(note), NoteIntent::Transfer,
                          payer_key);
    });
}

// ---------------------------------------------------------------------------
// Scenarios. Node 0 is the issuer's node; 1..4 are users.
// ---------------------------------------------------------------------------

void scenario_honest_issue_and_pay(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);
    schedule_payment(env, 10, 1, 2, n);
    env.sim.run_until_quiescent();

    check_uniform_owner(verdicts, env, "final_owner_is_payee", n, env.user_key(2));
    check(verdicts, "payer_holding_released", !env.sim.wallet(1).holds(n),
          "payer holdings after payee broadcast");
    check(verdicts, "payee_holds_note", env.sim.wallet(2).holds(n),
          "payee holdings after acceptance");

    TraceTally genesis = tally(env.sim, "cert", n, "applied", 0);
    check(verdicts, "genesis_applied_at_every_delivery",
          genesis.total == 4 && genesis.matching == 4, ratio(genesis));
    TraceTally transfer = tally(env.sim, "cert", n, "applied", 1);
    check(verdicts, "transfer_applied_at_every_delivery",
          transfer.total == 4 && transfer.matching == 4, ratio(transfer));
}

void scenario_double_spend(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);

    env.sim.schedule(10, 1, [&env, n] {
        // Both transfer certificates are locally constructible before any
        // broadcast lands: copies are free, only the db arbitrates.
        Note to_u2 = env.sim.wallet(1).make_transfer(n, env.user_key(2));
        Note to_u3 = env.sim.wallet(1).make_transfer(n, env.user_key(3));
        crypto::PublicKey payer_key = env.user_key(1);

        env.sim.send_note(1, 2, to_u2, NoteIntent::Transfer, payer_key);

        auto competitor = std::make_shared<Note>(std::move(to_u3));
        env.sim.schedule(20, 1, [&env, competitor] {
            // The payer pushes the competing certificate to the network
            // itself, skipping the payee's acceptance.
            env.sim.broadcast(1, competitor->part_a);
        });
        env.sim.schedule(30, 1, [&env, competitor, payer_key] {
            env.sim.send_note(1, 3, *competitor, NoteIntent::Transfer, payer_key);
        });
    });
    env.sim.run_until_quiescent();

    check_uniform_owner(verdicts, env, "winner_owns_everywhere", n, env.user_key(2));

    TraceTally applied = tally(env.sim, "cert", n, "applied", 1);
    check(verdicts, "winner_applied_at_every_delivery",
          applied.total == 8 && applied.matching == 4,
          ratio(applied) + " epoch-1 deliveries applied");
    TraceTally rejected = tally(env.sim, "cert", n, "rejected:EpochMismatch", 1);
    check(verdicts, "competitor_rejected_at_every_delivery",
          rejected.matching == 4, ratio(rejected) + " rejected EpochMismatch");

    TraceTally direct = tally(env.sim, "note", n, "rejected:PayerNotCurrentOwner", 1);
    check(verdicts, "second_payee_refuses_direct_spend", direct.matching == 1,
          ratio(direct));

    bool exports_equal = true;
    std::string first = env.sim.db(0).export_db();
    for (NodeId id = 1; id < env.sim.node_count(); ++id) {
        exports_equal = exports_equal && env.sim.db(id).export_db() == first;
    }
    check(verdicts, "zero_divergence", exports_equal,
          "all node exports byte-identical");
}

void scenario_bank_accomplice(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);

    env.sim.schedule(10, 3, [&env, n] {
        // Issuer signs a second genesis for the accomplice at node 3, who
        // broadcasts it as if it were fresh.
        OwnershipCert second = env.issuer.issue_to(n, env.user_key(3));
        inject_adversary(env.sim, AdversaryScript{{
            {env.sim.now() + 1, 3, AdversaryAction::Kind::Broadcast, 0, second},
        }});
    });
    env.sim.run_until_quiescent();

    TraceTally genesis = tally(env.sim, "cert", n, "rejected:DuplicateGenesis", 0);
    check(verdicts, "accomplice_genesis_rejected_everywhere",
          genesis.matching == 4, ratio(genesis) + " rejected DuplicateGenesis");
    check_uniform_owner(verdicts, env, "first_owner_keeps_note", n, env.user_key(1));
}

void scenario_theft_without_key(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);
    const NodeId thief = 3;

    env.sim.schedule(10, thief, [&env, n] {
        // The thief has a full copy of everything broadcast, but not the
        // owner's private key; it signs with its own.
        const CertRecord* record = env.sim.db(thief).find(n);
        OwnershipCert forged;
        forged.note_number = n;
        forged.epoch = record->current.epoch + 1;
        forged.owner_public_key = env.user_key(thief);
        forged.prev_cert_digest = cert_digest(record->current);
        forged.transfer_signature = crypto::sign(
            encode_ownership_statement(forged), env.sim.wallet(thief).identities()[0]);
        env.sim.broadcast(thief, forged);

        // Direct spend attempt at a merchant with the same missing key.
        env.sim.schedule(20, thief, [&env, n] {
            const CertRecord* current = env.sim.db(thief).find(n);
            OwnershipCert to_merchant;
            to_merchant.note_number = n;
            to_merchant.epoch = current->current.epoch + 1;
            to_merchant.owner_public_key = env.user_key(2);
            to_merchant.prev_cert_digest = cert_digest(current->current);
            to_merchant.transfer_signature =
                crypto::sign(encode_ownership_statement(to_merchant),
                             env.sim.wallet(thief).identities()[0]);
            env.sim.send_note(thief, 2, env.issuer.assemble_note(n, to_merchant),
                              NoteIntent::Transfer, env.user_key(1));
        });
    });
    env.sim.run_until_quiescent();

    TraceTally forged = tally(env.sim, "cert", n, "rejected:NotSignedByCurrentOwner", 1);
    check(verdicts, "forged_transfer_rejected_everywhere", forged.matching == 4,
          ratio(forged) + " rejected NotSignedByCurrentOwner");
    TraceTally direct = tally(env.sim, "note", n, "rejected:BadChainLink", 1);
    check(verdicts, "merchant_rejects_thief_spend", direct.matching == 1,
          ratio(direct));
    check_uniform_owner(verdicts, env, "owner_unchanged", n, env.user_key(1));
    check(verdicts, "thief_holds_nothing", !env.sim.wallet(thief).holds(n),
          "thief holdings empty");
}

void scenario_replay_old_certificate(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);
    schedule_payment(env, 10, 1, 2, n);

    auto replayed = std::make_shared<OwnershipCert>();
    env.sim.schedule(15, 4, [&env, n, replayed] {
        // Snapshot the settled U1->U2 certificate before ownership cycles
        // back; this is the certificate the adversary will replay.
        *replayed = env.sim.db(4).find(n)->current;
    });
    schedule_payment(env, 20, 2, 1, n);
    env.sim.schedule(30, 4, [&env, replayed] {
        env.sim.broadcast(4, *replayed);
    });
    env.sim.run_until_quiescent();

    TraceTally replay = tally(env.sim, "cert", n, "rejected:EpochMismatch", 1);
    // Epoch-1 deliveries: 4 from the original settle (applied) and 4 from
    // the replay (rejected).
    check(verdicts, "replay_rejected_everywhere",
          replay.total == 8 && replay.matching == 4,
          ratio(replay) + " rejected EpochMismatch");
    check_uniform_owner(verdicts, env, "owner_back_at_first_user", n,
                        env.user_key(1));

    bool epoch_ok = true;
    for (NodeId id = 0; id < env.sim.node_count(); ++id) {
        epoch_ok = epoch_ok && env.sim.db(id).find(n)->current.epoch == 2;
    }
    check(verdicts, "chain_head_at_epoch_2", epoch_ok, "replay did not advance chain");
}

void scenario_key_rotation(Env& env, std::vector<Verdict>& verdicts) {
    uint64_t n = schedule_issuance(env, 1, 1);
    auto fresh = std::make_shared<crypto::KeyPair>();
    crypto::PublicKey old_key{};

    env.sim.schedule(10, 1, [&env, n, fresh] {
        *fresh = env.sim.wallet(1).rotate_identity(n).first;
    });
    old_key = env.user_key(1);
    env.sim.run_until_quiescent();

    check_uniform_owner(verdicts, env, "fresh_key_owns_everywhere", n,
                        fresh->public_key);
    check(verdicts, "fresh_key_differs_from_old",
          fresh->public_key != old_key,
          "old=" + key_tag(old_key) + " new=" + key_tag(fresh->public_key));

    bool old_key_gone = true;
    for (NodeId id = 0; id < env.sim.node_count(); ++id) {
        old_key_gone = old_key_gone &&
                       env.sim.db(id).find(n)->current.owner_public_key != old_key;
    }
    check(verdicts, "old_key_absent_from_current_certificates", old_key_gone,
          "no current certificate names the retired key");
    check(verdicts, "wallet_still_holds_note", env.sim.wallet(1).holds(n),
          "self-transfer kept the holding");
}

void scenario_over_issuance_audit(Env& env, std::vector<Verdict>& verdicts) {
    constexpr uint64_t kCap = 3;
    std::vector<uint64_t> notes;
    for (uint64_t i = 0; i < kCap + 1; ++i) {
        notes.push_back(schedule_issuance(env, 1 + i * 10, 1 + (i % 4)));
    }
    env.sim.run_until_quiescent();

    bool counts_exact = true;
    bool flagged = true;
    for (NodeId id = 0; id < env.sim.node_count(); ++id) {
        IssuanceAudit audit =
            audit_issuance(env.sim.db(id), env.issuer_key.public_key, kCap);
        counts_exact = counts_exact && audit.count == kCap + 1;
        flagged = flagged && audit.over_cap;
    }
    check(verdicts, "audit_count_exact_at_all_nodes", counts_exact,
          "counted " + std::to_string(kCap + 1) + " issued notes");
    check(verdicts, "audit_flags_over_cap", flagged,
          "cap " + std::to_string(kCap) + " exceeded");
}

void scenario_quorum_check_payment(Env& env, std::vector<Verdict>& verdicts,
                                   uint64_t quorum_threshold) {
    const NodeId owner = 1, merchant = 2, accomplice = 3;

    env.sim.wallet(merchant).set_quorum(QuorumConfig{
        {&env.sim.db(0), &env.sim.db(owner), &env.sim.db(4)},
        quorum_threshold});

    Bytes picture = bytes_of("note artwork #" + std::to_string(env.seed));
    uint64_t n = env.issuer.mint_note(picture, 1000, "EUR").first.note_number;

    env.sim.schedule(1, accomplice, [&env, n] {
        // Poison the merchant's db first: a second issuer-signed genesis
        // naming the accomplice, delivered to the merchant alone.
        OwnershipCert fake_genesis = env.issuer.issue_to(n, env.user_key(accomplice));
        env.sim.send_cert(accomplice, merchant, fake_genesis);
    });
    env.sim.schedule(5, kIssuerNode, [&env, n, owner] {
        OwnershipCert genesis = env.issuer.issue_to(n, env.user_key(owner));
        env.sim.send_note(kIssuerNode, owner, env.issuer.assemble_note(n, genesis),
                          NoteIntent::Issued);
    });
    env.sim.schedule(20, accomplice, [&env, n] {
        // The accomplice spends its fake genesis at the merchant. Every
        // merchant-local check passes; only the peer quorum disagrees.
        const OwnershipCert& fake = env.sim.db(merchant).find(n)->current;
        OwnershipCert payment;
        payment.note_number = n;
        payment.epoch = fake.epoch + 1;
        payment.owner_public_key = env.user_key(merchant);
        payment.prev_cert_digest = cert_digest(fake);
        payment.transfer_signature =
            crypto::sign(encode_ownership_statement(payment),
                         env.sim.wallet(accomplice).identities()[0]);
        env.sim.send_note(accomplice, merchant,
                          env.issuer.assemble_note(n, payment),
                          NoteIntent::Transfer, env.user_key(accomplice));
    });
    env.sim.run_until_quiescent();

    TraceTally refused = tally(env.sim, "note", n, "rejected:QuorumDisagreement", 1);
    check(verdicts, "merchant_refuses_on_quorum_disagreement",
          refused.matching == 1, ratio(refused));
    check(verdicts, "merchant_never_countersigned", !env.sim.wallet(merchant).holds(n),
          "no holding, no broadcast");

    bool honest_agree = true;
    for (NodeId id : {NodeId{0}, owner, NodeId{4}}) {
        auto o = env.sim.db(id).current_owner(n);
        honest_agree = honest_agree && o && *o == env.user_key(owner);
    }
    check(verdicts, "honest_peers_name_real_owner", honest_agree,
          "owner=" + key_tag(env.user_key(owner)));

    auto merchant_view = env.sim.db(merchant).current_owner(n);
    check(verdicts, "tampered_local_state_detected",
          merchant_view && *merchant_view == env.user_key(accomplice),
          "merchant db still poisoned, payment blocked by quorum");
}

// ---------------------------------------------------------------------------

struct ScenarioDef {
    const char* name;
    bool dishonest_issuer;
    std::optional<uint64_t> cap;
    bool force_retention;
    void (*run)(Env&, std::vector<Verdict>&, const PolicyOverrides&);
};

constexpr uint64_t kDefaultQuorumThreshold = 2;

const ScenarioDef kScenarios[] = {
    {"honest_issue_and_pay", false, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_honest_issue_and_pay(e, v);
     }},
    {"double_spend", false, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_double_spend(e, v);
     }},
    {"bank_accomplice", true, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_bank_accomplice(e, v);
     }},
    {"theft_without_key", false, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_theft_without_key(e, v);
     }},
    {"replay_old_certificate", false, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_replay_old_certificate(e, v);
     }},
    {"key_rotation", false, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_key_rotation(e, v);
     }},
    {"over_issuance_audit", true, 3, true,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides&) {
         scenario_over_issuance_audit(e, v);
     }},
    {"quorum_check_payment", true, std::nullopt, false,
     [](Env& e, std::vector<Verdict>& v, const PolicyOverrides& o) {
         scenario_quorum_check_payment(
             e, v, o.quorum_threshold.value_or(kDefaultQuorumThreshold));
     }},
};

}  // namespace

bool ScenarioReport::all_passed() const {
    if (verdicts.empty()) return false;
    for (const Verdict& v : verdicts) {
        if (!v.pass) return false;
    }
    return true;
}

std::string ScenarioReport::to_text() const {
    std::ostringstream out;
    for (const Verdict& v : verdicts) {
        out << (v.pass ? "PASS" : "FAIL") << ' ' << v.check << ' ' << v.detail
            << '\n';
    }
    out << "OWNERS\n";
    for (const auto& [id, exported] : node_exports) {
        out << "NODE " << id << '\n' << exported;
    }
    return out.str();
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const ScenarioDef& def : kScenarios) {
        names.push_back(def.name);
    }
    return names;
}

ScenarioReport run_scenario(const std::string& name, uint64_t seed,
                            const PolicyOverrides& overrides) {
    const ScenarioDef* def = nullptr;
    for (const ScenarioDef& candidate : kScenarios) {
        if (name == candidate.name) {
            def = &candidate;
            break;
        }
    }
    if (def == nullptr) {
        throw UnknownScenario(name);
    }

    PolicyOverrides effective = overrides;
    if (def->force_retention && !effective.retain_history) {
        effective.retain_history = true;
    }

    Env env(seed, effective, def->dishonest_issuer, def->cap);
    ScenarioReport report;
    report.scenario_name = name;
    report.seed = seed;

    try {
        def->run(env, report.verdicts, effective);
    } catch (const QuiescenceTimeout& timeout) {
        report.verdicts.push_back({"quiescence", false, timeout.what()});
    }

    for (NodeId id = 0; id < env.sim.node_count(); ++id) {
        for (const auto& [n, record] : env.sim.db(id).records()) {
            report.final_owners[id][n] = record.current.owner_public_key;
        }
        report.node_exports.emplace_back(id, env.sim.db(id).export_db());
    }
    report.trace_text = env.sim.trace_text();
    return report;
}

}  // namespace owncash
