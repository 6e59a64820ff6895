#include "owncash/wallet.hpp"

namespace owncash {

const char* to_string(WalletReject reason) {
    switch (reason) {
        case WalletReject::BadAuthenticity: return "BadAuthenticity";
        case WalletReject::BadGenesisSignature: return "BadGenesisSignature";
        case WalletReject::NotAddressedToMe: return "NotAddressedToMe";
        case WalletReject::PayerNotCurrentOwner: return "PayerNotCurrentOwner";
        case WalletReject::BadChainLink: return "BadChainLink";
        case WalletReject::QuorumDisagreement: return "QuorumDisagreement";
        case WalletReject::LocalDbRejected: return "LocalDbRejected";
    }
    return "Unknown";
}

std::string to_string(const WalletResult& result) {
    if (result.accepted) return "accepted";
    return std::string("rejected:") + to_string(*result.reason);
}

bool Wallet::owns_key(const crypto::PublicKey& pub) const {
    return identity_for(pub) != nullptr;
}

const crypto::KeyPair* Wallet::identity_for(const crypto::PublicKey& pub) const {
    for (const auto& kp : identities_) {
        if (kp.public_key == pub) return &kp;
    }
    return nullptr;
}

// Countersign part A with the owner identity, apply it to our own db, store
// the holding, and broadcast. Shared tail of every acceptance path.
WalletResult Wallet::commit_and_broadcast(Note note) {
    const crypto::KeyPair* owner = identity_for(note.part_a.owner_public_key);
    note.part_a.acceptance_signature =
        crypto::sign(encode_ownership_statement(note.part_a), *owner);

    if (!db_->apply_certificate(note.part_a).applied) {
        return WalletResult::rejected(WalletReject::LocalDbRejected);
    }
    OwnershipCert broadcast_cert = note.part_a;
    holdings_[note.part_b.note_number] = std::move(note);
    if (broadcast_) {
        broadcast_(broadcast_cert);
    }
    return WalletResult::ok();
}

WalletResult Wallet::receive_issued(const Note& note) {
    if (!verify_authenticity(note, trusted_issuer_)) {
        return WalletResult::rejected(WalletReject::BadAuthenticity);
    }
    if (note.part_a.note_number != note.part_b.note_number ||
        !is_valid_genesis(note.part_a, trusted_issuer_)) {
        return WalletResult::rejected(WalletReject::BadGenesisSignature);
    }
    if (!owns_key(note.part_a.owner_public_key)) {
        return WalletResult::rejected(WalletReject::NotAddressedToMe);
    }
    return commit_and_broadcast(note);
}

Note Wallet::make_transfer(uint64_t note_number, const crypto::PublicKey& payee) {
    auto held = holdings_.find(note_number);
    if (held == holdings_.end()) {
        throw UnknownHolding();
    }
    const CertRecord* record = db_->find(note_number);
    if (record == nullptr || !owns_key(record->current.owner_public_key)) {
        throw NotOwnerLocally();
    }
    const crypto::KeyPair& owner_key =
        *identity_for(record->current.owner_public_key);

    OwnershipCert next;
    next.note_number = note_number;
    next.epoch = record->current.epoch + 1;
    next.owner_public_key = payee;
    next.prev_cert_digest = cert_digest(record->current);
    next.transfer_signature =
        crypto::sign(encode_ownership_statement(next), owner_key);

    return Note{next, held->second.part_b, held->second.part_c};
}

WalletResult Wallet::accept_transfer(const Note& note,
                                     const crypto::PublicKey& expected_payer) {
    if (!verify_authenticity(note, trusted_issuer_)) {
        return WalletResult::rejected(WalletReject::BadAuthenticity);
    }
    if (!owns_key(note.part_a.owner_public_key)) {
        return WalletResult::rejected(WalletReject::NotAddressedToMe);
    }
    const uint64_t n = note.part_a.note_number;
    const CertRecord* record = db_->find(n);
    if (record == nullptr || record->current.owner_public_key != expected_payer) {
        return WalletResult::rejected(WalletReject::PayerNotCurrentOwner);
    }
    if (note.part_a.note_number != note.part_b.note_number ||
        !verify_transfer_link(record->current, note.part_a)) {
        return WalletResult::rejected(WalletReject::BadChainLink);
    }
    if (quorum_.threshold > 0 &&
        !quorum_owner_check(quorum_.peers, n, expected_payer, quorum_.threshold)) {
        return WalletResult::rejected(WalletReject::QuorumDisagreement);
    }
    return commit_and_broadcast(note);
}

std::pair<crypto::KeyPair, Note> Wallet::rotate_identity(uint64_t note_number) {
    if (!holdings_.contains(note_number)) {
        throw UnknownHolding();
    }
    crypto::Seed seed = key_seeder_ ? key_seeder_() : crypto::random_seed();
    crypto::KeyPair fresh = crypto::generate_keypair(seed);

    Note note = make_transfer(note_number, fresh.public_key);
    identities_.push_back(fresh);

    WalletResult committed = commit_and_broadcast(note);
    if (!committed.accepted) {
        throw WalletError("self-transfer rejected by local db");
    }
    return {fresh, holdings_.at(note_number)};
}

void Wallet::on_certificate_applied(const OwnershipCert& cert) {
    auto it = holdings_.find(cert.note_number);
    if (it == holdings_.end()) {
        return;
    }
    if (owns_key(cert.owner_public_key)) {
        it->second.part_a = cert;
    } else {
        holdings_.erase(it);  // transferred away; payee's broadcast is finality
    }
}

}  // namespace owncash
