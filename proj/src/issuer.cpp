#include "owncash/issuer.hpp"

namespace owncash {

std::pair<NoteBody, AuthenticityCert> Issuer::mint_note(
    std::span<const uint8_t> picture, uint64_t amount_minor,
    const std::string& currency) {
    if (amount_minor == 0) {
        throw InvalidAmount();
    }
    if (!dishonest_ && cap_ && issued_.size() >= *cap_) {
        throw IssuanceCapExceeded();
    }

    NoteBody body;
    body.version = 1;
    body.note_number = next_note_number_++;
    body.amount_minor = amount_minor;
    body.currency = currency;
    body.picture_digest = crypto::hash(picture);

    crypto::Digest body_hash = crypto::hash(encode_note_body(body));
    AuthenticityCert cert{keypair_.public_key,
                          crypto::sign(body_hash.bytes, keypair_)};

    issued_.emplace(body.note_number, body);
    return {body, cert};
}

OwnershipCert Issuer::issue_to(uint64_t note_number,
                               const crypto::PublicKey& owner) {
    if (!issued_.contains(note_number)) {
        throw UnknownNote();
    }
    if (!dishonest_ && genesis_done_.contains(note_number)) {
        throw DuplicateGenesis();
    }

    OwnershipCert cert;
    cert.note_number = note_number;
    cert.epoch = 0;
    cert.owner_public_key = owner;
    cert.prev_cert_digest = crypto::kZeroDigest;
    cert.transfer_signature =
        crypto::sign(encode_ownership_statement(cert), keypair_);

    genesis_done_.insert(note_number);
    return cert;
}

Note Issuer::assemble_note(uint64_t note_number, const OwnershipCert& part_a) const {
    auto it = issued_.find(note_number);
    if (it == issued_.end()) {
        throw UnknownNote();
    }
    const NoteBody& body = it->second;
    crypto::Digest body_hash = crypto::hash(encode_note_body(body));
    AuthenticityCert part_c{keypair_.public_key,
                            crypto::sign(body_hash.bytes, keypair_)};
    return Note{part_a, body, part_c};
}

IssuanceAudit audit_issuance(const CertificateDb& db,
                             const crypto::PublicKey& issuer_pub, uint64_t cap) {
    IssuanceAudit audit;
    for (const auto& [note_number, record] : db.records()) {
        const OwnershipCert& genesis =
            record.history.empty() ? record.current : record.history.front();
        if (genesis.epoch != 0) {
            continue;  // chain start pruned, cannot attribute
        }
        if (crypto::verify(encode_ownership_statement(genesis),
                           genesis.transfer_signature, issuer_pub)) {
            ++audit.count;
            audit.note_numbers.push_back(note_number);
        }
    }
    audit.over_cap = audit.count > cap;
    return audit;
}

}  // namespace owncash
