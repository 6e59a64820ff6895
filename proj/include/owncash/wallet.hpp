#pragma once

// A user's protocol agent. The wallet verifies what it is handed, never what
// it constructs: received notes are checked against the trusted issuer key
// and the node's own certificate db before anything is countersigned,
// stored, or broadcast.
//
// A payer keeps a spent note in holdings until the payee's countersigned
// certificate is observed applied locally — the broadcast is the only
// commit signal there is.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "owncash/certificate_db.hpp"
#include "owncash/note.hpp"

namespace owncash {

enum class WalletReject {
    BadAuthenticity,
    BadGenesisSignature,
    NotAddressedToMe,
    PayerNotCurrentOwner,
    BadChainLink,
    QuorumDisagreement,
    LocalDbRejected,
};

const char* to_string(WalletReject reason);

struct WalletResult {
    bool accepted = false;
    std::optional<WalletReject> reason;

    static WalletResult ok() { return {true, std::nullopt}; }
    static WalletResult rejected(WalletReject r) { return {false, r}; }
};

std::string to_string(const WalletResult& result);

struct WalletError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownHolding : WalletError {
    UnknownHolding() : WalletError("note is not held by this wallet") {}
};
struct NotOwnerLocally : WalletError {
    NotOwnerLocally()
        : WalletError("local db does not name this wallet as current owner") {}
};

// Peer databases consulted before finalizing a payment; threshold 0
// disables the check.
struct QuorumConfig {
    std::vector<const CertificateDb*> peers;
    size_t threshold = 0;
};

class Wallet {
  public:
    using BroadcastFn = std::function<void(const OwnershipCert&)>;
    using KeySeeder = std::function<crypto::Seed()>;

    Wallet(crypto::KeyPair initial_identity, crypto::PublicKey trusted_issuer,
           CertificateDb* db)
        : identities_{std::move(initial_identity)},
          trusted_issuer_(trusted_issuer),
          db_(db) {}

    void set_broadcaster(BroadcastFn fn) { broadcast_ = std::move(fn); }
    void set_key_seeder(KeySeeder fn) { key_seeder_ = std::move(fn); }
    void set_quorum(QuorumConfig quorum) { quorum_ = std::move(quorum); }

    const crypto::PublicKey& active_public_key() const {
        return identities_.back().public_key;
    }
    const std::vector<crypto::KeyPair>& identities() const { return identities_; }
    bool owns_key(const crypto::PublicKey& pub) const;

    // Freshly issued note addressed to one of this wallet's keys: verify
    // authenticity and the issuer-signed genesis, countersign, apply
    // locally, broadcast.
    WalletResult receive_issued(const Note& note);

    // Builds the next ownership certificate naming the payee and returns the
    // note to hand over. The note stays in holdings (copies are expected);
    // it leaves only when the payee's broadcast is applied locally. Throws
    // UnknownHolding / NotOwnerLocally.
    Note make_transfer(uint64_t note_number, const crypto::PublicKey& payee);

    // Incoming payment: authenticity, the payer being current owner in OUR
    // db, the chain link, and (when configured) peer quorum agreement must
    // all hold before the wallet countersigns, stores and broadcasts.
    WalletResult accept_transfer(const Note& note,
                                 const crypto::PublicKey& expected_payer);

    // Self-transfer to a fresh identity: unlinks the note from every key
    // broadcast before. Returns the new identity and the broadcast note.
    std::pair<crypto::KeyPair, Note> rotate_identity(uint64_t note_number);

    // Simulator hook, called after a broadcast certificate was applied to
    // this node's db. Keeps holdings coherent with the db: a note whose
    // current certificate names someone else's key is gone.
    void on_certificate_applied(const OwnershipCert& cert);

    bool holds(uint64_t note_number) const { return holdings_.contains(note_number); }
    const std::map<uint64_t, Note>& holdings() const { return holdings_; }
    const CertificateDb& db() const { return *db_; }

  private:
    const crypto::KeyPair* identity_for(const crypto::PublicKey& pub) const;
    WalletResult commit_and_broadcast(Note note);

    std::vector<crypto::KeyPair> identities_;  // active identity last
    crypto::PublicKey trusted_issuer_;
    CertificateDb* db_;
    std::map<uint64_t, Note> holdings_;
    BroadcastFn broadcast_;
    KeySeeder key_seeder_;
    QuorumConfig quorum_;
};

}  // namespace owncash
