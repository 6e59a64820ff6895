#pragma once

// Shared fixtures: fixed deterministic keys and a small settled ledger.

#include <string>

#include "owncash/certificate_db.hpp"
#include "owncash/issuer.hpp"
#include "owncash/rng.hpp"

namespace owncash::test {

inline crypto::Seed fixed_seed(uint8_t fill) {
    crypto::Seed s;
    s.fill(fill);
    return s;
}

inline crypto::KeyPair fixed_keypair(uint8_t fill) {
    return crypto::generate_keypair(fixed_seed(fill));
}

inline OwnershipCert make_genesis(uint64_t n, const crypto::PublicKey& owner,
                                  const crypto::KeyPair& issuer) {
    OwnershipCert cert;
    cert.note_number = n;
    cert.epoch = 0;
    cert.owner_public_key = owner;
    cert.prev_cert_digest = crypto::kZeroDigest;
    cert.transfer_signature = crypto::sign(encode_ownership_statement(cert), issuer);
    return cert;
}

inline OwnershipCert make_transfer_cert(const OwnershipCert& prev,
                                        const crypto::PublicKey& new_owner,
                                        const crypto::KeyPair& prev_owner_key) {
    OwnershipCert cert;
    cert.note_number = prev.note_number;
    cert.epoch = prev.epoch + 1;
    cert.owner_public_key = new_owner;
    cert.prev_cert_digest = cert_digest(prev);
    cert.transfer_signature =
        crypto::sign(encode_ownership_statement(cert), prev_owner_key);
    return cert;
}

inline NoteBody make_body(uint64_t n, uint64_t amount = 1000,
                          const std::string& currency = "EUR") {
    NoteBody body;
    body.version = 1;
    body.note_number = n;
    body.amount_minor = amount;
    body.currency = currency;
    body.picture_digest = crypto::hash(bytes_of("picture " + std::to_string(n)));
    return body;
}

inline Note make_note(const NoteBody& body, const OwnershipCert& part_a,
                      const crypto::KeyPair& issuer) {
    crypto::Digest body_hash = crypto::hash(encode_note_body(body));
    return Note{part_a, body,
                AuthenticityCert{issuer.public_key,
                                 crypto::sign(body_hash.bytes, issuer)}};
}

}  // namespace owncash::test
